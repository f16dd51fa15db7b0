#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <concepts>
#include <cstdint>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <type_traits>
#include <unordered_set>
#include <vector>

#include "connectif/canonical.hpp"
#include "connectif/structure.hpp"

namespace connectif {

inline constexpr unsigned kMaxEnumerationPoints = 8;

/// Aggregate counts over a set of free families.
struct EnumStats {
  unsigned n = 0;
  std::uint64_t s = 0;  // structures (= free families)
  std::uint64_t c = 0;  // whole ground set connected
  std::uint64_t k = 0;  // whole ground set an irreducible connected part
  unsigned f = 0;       // largest free family
  std::vector<std::uint64_t> hist;  // hist[m] = families with m members
  bool complete = true;             // false when a visitor stopped early

  void record(std::size_t members, bool whole_connected, bool whole_member) {
    ++s;
    if (whole_connected) ++c;
    if (whole_member) ++k;
    f = std::max(f, static_cast<unsigned>(members));
    if (hist.size() <= members) hist.resize(members + 1, 0);
    ++hist[members];
  }

  /// Associative and commutative.
  void merge(const EnumStats& o) {
    s += o.s;
    c += o.c;
    k += o.k;
    f = std::max(f, o.f);
    if (hist.size() < o.hist.size()) hist.resize(o.hist.size(), 0);
    for (std::size_t i = 0; i < o.hist.size(); ++i) hist[i] += o.hist[i];
    complete = complete && o.complete;
  }

  friend bool operator==(const EnumStats&, const EnumStats&) = default;
};

/// A free family together with its generated structure.
struct SearchNode {
  GroundSet ground;
  FreeFamily family;
  ConnectivityStructure closure;
  std::uint64_t max_key = 0;  // mask of the last member, 0 when empty

  static SearchNode root(GroundSet ground) {
    return SearchNode{ground, FreeFamily{ground, {}}, ConnectivityStructure(ground), 0};
  }
};

/// Parts that may extend the family on the right: at least two points, mask
/// above the last member, not already connected.
inline std::vector<Subset> sigma(const SearchNode& node) {
  std::vector<Subset> out;
  const std::uint64_t full = node.ground.full_mask();
  for (std::uint64_t m = node.max_key + 1; m != 0 && m <= full; ++m) {
    const Subset a(m);
    if (a.size() >= 2 && !node.closure.connected(a)) out.push_back(a);
  }
  return out;
}

/// Child node obtained by appending `a`, reusing the parent closure.
inline SearchNode extend(const SearchNode& node, Subset a) {
  require_part(node.ground, a);
  if (a.mask() <= node.max_key || a.size() < 2 || node.closure.connected(a)) {
    throw OutOfDomain(a.to_string() + " does not extend the family on the right");
  }
  std::vector<Subset> sets = node.closure.kstar();
  std::unordered_set<Subset> seen(sets.begin(), sets.end());
  const std::size_t first_new = sets.size();
  sets.push_back(a);
  seen.insert(a);
  for (std::size_t i = first_new; i < sets.size(); ++i) {
    const Subset x = sets[i];
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if (!x.intersects(sets[j])) continue;
      const Subset u = x | sets[j];
      if (seen.insert(u).second) sets.push_back(u);
    }
  }
  std::sort(sets.begin(), sets.end());
  SearchNode child{node.ground, node.family,
                   ConnectivityStructure::from_closed_unchecked(node.ground, std::move(sets)), a.mask()};
  child.family.members.push_back(a);
  return child;
}

enum class VisitAction { Continue, Stop };

struct EnumOptions {
  /// Re-check every visited family with is_free (slow).
  bool verify_freeness = false;
};

namespace detail {

/// Depth-first search state for n <= 8: masks fit a byte and the closure is
/// a 256-bit membership word plus a stack of its stored parts, so that
/// backtracking only pops what a child added.
class Engine {
 public:
  explicit Engine(unsigned n) : n_(n), full_(static_cast<std::uint8_t>((1u << n) - 1)) {
    if (n < 1 || n > kMaxEnumerationPoints) throw TooLarge(n, kMaxEnumerationPoints);
    for (unsigned m = 3; m <= full_; ++m)
      if (std::popcount(m) >= 2) candidates_.push_back(static_cast<std::uint8_t>(m));
    stored_.reserve(256);
    family_.reserve(256);
  }

  unsigned n() const noexcept { return n_; }
  const std::vector<std::uint8_t>& candidates() const noexcept { return candidates_; }
  const std::vector<std::uint8_t>& family() const noexcept { return family_; }
  const std::vector<std::uint8_t>& stored() const noexcept { return stored_; }

  bool member(unsigned m) const noexcept { return (member_[m >> 6] >> (m & 63)) & 1u; }
  bool whole_connected() const noexcept { return n_ == 1 || member(full_); }
  bool whole_member() const noexcept { return !family_.empty() && family_.back() == full_; }

  /// Appends candidate number `idx`; returns the undo mark.
  std::size_t push(std::size_t idx) {
    const std::size_t mark = stored_.size();
    const std::uint8_t a = candidates_[idx];
    family_.push_back(a);
    insert(a);
    for (std::size_t i = mark; i < stored_.size(); ++i) {
      const std::uint8_t x = stored_[i];
      for (std::size_t j = 0; j < stored_.size(); ++j) {
        const std::uint8_t y = stored_[j];
        if ((x & y) == 0) continue;
        const std::uint8_t u = x | y;
        if (!member(u)) insert(u);
      }
    }
    return mark;
  }

  void pop(std::size_t mark) {
    while (stored_.size() > mark) {
      const std::uint8_t m = stored_.back();
      member_[m >> 6] &= ~(std::uint64_t{1} << (m & 63));
      stored_.pop_back();
    }
    family_.pop_back();
  }

  /// Calls visit(*this) at the current node and at every descendant whose
  /// appended parts come from candidates [from, end). Stops when visit
  /// returns false; returns false in that case.
  template <class Visit>
  bool descend(std::size_t from, Visit& visit) {
    if (!visit(*this)) return false;
    for (std::size_t idx = from; idx < candidates_.size(); ++idx) {
      if (member(candidates_[idx])) continue;
      const std::size_t mark = push(idx);
      const bool go_on = descend(idx + 1, visit);
      pop(mark);
      if (!go_on) return false;
    }
    return true;
  }

  FreeFamily free_family() const {
    FreeFamily out{GroundSet(n_), {}};
    for (auto m : family_) out.members.push_back(Subset(m));
    return out;
  }

  ConnectivityStructure closure() const {
    std::vector<Subset> sets;
    sets.reserve(stored_.size());
    for (auto m : stored_) sets.push_back(Subset(m));
    std::sort(sets.begin(), sets.end());
    return ConnectivityStructure::from_closed_unchecked(GroundSet(n_), std::move(sets));
  }

 private:
  void insert(std::uint8_t m) {
    member_[m >> 6] |= std::uint64_t{1} << (m & 63);
    stored_.push_back(m);
  }

  unsigned n_;
  std::uint8_t full_;
  std::vector<std::uint8_t> candidates_;
  std::array<std::uint64_t, 4> member_{};
  std::vector<std::uint8_t> stored_;
  std::vector<std::uint8_t> family_;
};

inline void record_node(EnumStats& st, const Engine& e) {
  st.record(e.family().size(), e.whole_connected(), e.whole_member());
}

/// Runs one task per first-level branch (task 0 is the empty family alone)
/// on `jobs` threads. Each task folds its nodes into a fresh State; states
/// are merged in task order, so the result does not depend on scheduling.
template <class State, class OnNode>
State run_subtrees(unsigned n, unsigned jobs, OnNode on_node,
                   const std::function<void(std::size_t, std::size_t)>& progress = {}) {
  const Engine probe(n);
  const std::size_t tasks = probe.candidates().size() + 1;
  std::vector<State> results(tasks);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    Engine engine(n);
    try {
      for (std::size_t t = next++; t < tasks; t = next++) {
        State& st = results[t];
        if (t == 0) {
          on_node(st, engine);
        } else {
          auto visit = [&](const Engine& e) {
            on_node(st, e);
            return true;
          };
          const std::size_t mark = engine.push(t - 1);
          engine.descend(t, visit);
          engine.pop(mark);
        }
        const std::size_t finished = ++done;
        if (progress) {
          std::lock_guard lock(progress_mutex);
          progress(finished, tasks);
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = tasks;
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  State total{};
  for (const State& r : results) total.merge(r);
  return total;
}

}  // namespace detail

/// Visits every free family on {1..n} depth first, each child extending its
/// parent on the right, starting from the empty family. The visitor takes
/// either (const FreeFamily&) or (const FreeFamily&, const
/// ConnectivityStructure&) and may return VisitAction::Stop.
template <class Visitor>
EnumStats enumerate_free(GroundSet ground, Visitor&& visitor, EnumOptions options = {}) {
  if (ground.size() > kMaxEnumerationPoints) throw TooLarge(ground.size(), kMaxEnumerationPoints);
  detail::Engine engine(ground.size());
  EnumStats stats;
  stats.n = ground.size();

  auto visit = [&](const detail::Engine& e) -> bool {
    detail::record_node(stats, e);
    const FreeFamily family = e.free_family();
    if (options.verify_freeness && !is_free(ground, family.members)) {
      throw std::logic_error("enumeration produced a family that is not free");
    }
    VisitAction action = VisitAction::Continue;
    if constexpr (std::is_invocable_v<Visitor&, const FreeFamily&, const ConnectivityStructure&>) {
      using R = std::invoke_result_t<Visitor&, const FreeFamily&, const ConnectivityStructure&>;
      if constexpr (std::is_same_v<R, VisitAction>) {
        action = visitor(family, e.closure());
      } else {
        visitor(family, e.closure());
      }
    } else {
      using R = std::invoke_result_t<Visitor&, const FreeFamily&>;
      if constexpr (std::is_same_v<R, VisitAction>) {
        action = visitor(family);
      } else {
        visitor(family);
      }
    }
    return action == VisitAction::Continue;
  };
  if (!engine.descend(0, visit)) stats.complete = false;
  return stats;
}

/// Same statistics as enumerate_free, counted on `jobs` threads without
/// materializing any family.
inline EnumStats count_stats(GroundSet ground, unsigned jobs = 1,
                             const std::function<void(std::size_t, std::size_t)>& progress = {}) {
  if (ground.size() > kMaxEnumerationPoints) throw TooLarge(ground.size(), kMaxEnumerationPoints);
  EnumStats total = detail::run_subtrees<EnumStats>(
      ground.size(), jobs, [](EnumStats& st, const detail::Engine& e) { detail::record_node(st, e); },
      progress);
  total.n = ground.size();
  return total;
}

inline constexpr unsigned kMaxIsomorphismPoints = 6;

namespace detail {

struct CanonicalCount {
  std::uint64_t count = 0;
  void merge(const CanonicalCount& o) { count += o.count; }
};

}  // namespace detail

/// Number of structures that are their own canonical form, i.e. the number
/// of isomorphism classes, counted without storing any form.
inline std::uint64_t count_canonical_structures(GroundSet ground, unsigned jobs = 1,
                                                const std::function<void(std::size_t, std::size_t)>& progress = {}) {
  const unsigned n = ground.size();
  if (n > kMaxIsomorphismPoints) throw TooLarge(n, kMaxIsomorphismPoints);
  auto on_node = [n](detail::CanonicalCount& st, const detail::Engine& e) {
    if (detail::labeler_for(n).is_canonical(e.stored())) ++st.count;
  };
  return detail::run_subtrees<detail::CanonicalCount>(n, jobs, on_node, progress).count;
}

/// Number of structures on {1..n} up to relabeling. Up to five points the
/// canonical forms are collected in a hash set; six points switch to the
/// streaming canonicity count.
inline std::uint64_t count_isomorphism_classes(GroundSet ground, unsigned jobs = 1) {
  const unsigned n = ground.size();
  if (n > kMaxIsomorphismPoints) throw TooLarge(n, kMaxIsomorphismPoints);
  if (n == kMaxIsomorphismPoints) return count_canonical_structures(ground, jobs);
  const CanonicalLabeler& labeler = detail::labeler_for(n);
  std::unordered_set<std::uint64_t> forms;
  detail::Engine engine(n);
  auto visit = [&](const detail::Engine& e) {
    forms.insert(labeler.canonical_bits(e.stored())[0]);  // 2^n <= 64 masks
    return true;
  };
  engine.descend(0, visit);
  return forms.size();
}

/// Largest prime dividing `value` (>= 2), by trial division.
inline std::uint64_t largest_prime_factor(std::uint64_t value) {
  if (value < 2) throw OutOfDomain("largest_prime_factor needs a value >= 2");
  std::uint64_t largest = 1;
  for (std::uint64_t p = 2; p * p <= value; p += (p == 2 ? 1 : 2)) {
    while (value % p == 0) {
      largest = p;
      value /= p;
    }
  }
  return value > 1 ? value : largest;
}

}  // namespace connectif
