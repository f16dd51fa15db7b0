#pragma once

// Brute-force references used only by the tests. Nothing here calls into the
// pairwise closure, the reduction search or the enumeration engine.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "connectif/subset.hpp"

namespace connectif::oracle {

using Family = std::set<std::uint64_t>;

inline Family with_singletons(unsigned n, Family f) {
  for (unsigned e = 0; e < n; ++e) f.insert(std::uint64_t{1} << e);
  return f;
}

/// Arbitrary-subfamily axiom: every subfamily with a common point has its
/// union in the family. Exponential in |family|.
inline bool satisfies_axiom(const Family& family) {
  const std::vector<std::uint64_t> sets(family.begin(), family.end());
  const std::size_t m = sets.size();
  for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << m); ++pick) {
    std::uint64_t meet = ~std::uint64_t{0};
    std::uint64_t join = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if ((pick >> i) & 1) {
        meet &= sets[i];
        join |= sets[i];
      }
    }
    if (meet != 0 && !family.count(join)) return false;
  }
  return true;
}

/// One application of the union operator: all unions of subfamilies with a
/// common point. For a point x, the unions of subcollections of the sets
/// through x are built incrementally (exact, at most 2^n of them).
inline Family psi(unsigned n, const Family& family) {
  Family out;
  for (unsigned x = 0; x < n; ++x) {
    const std::uint64_t bit = std::uint64_t{1} << x;
    std::set<std::uint64_t> unions;
    for (std::uint64_t s : family) {
      if (!(s & bit)) continue;
      std::set<std::uint64_t> grown = unions;
      grown.insert(s);
      for (std::uint64_t u : unions) grown.insert(u | s);
      unions = std::move(grown);
    }
    out.insert(unions.begin(), unions.end());
  }
  return out;
}

/// Iterates psi from generators plus singletons until stationary; returns
/// the parts with at least two points.
inline Family psi_closure(unsigned n, const Family& generators) {
  Family current = with_singletons(n, generators);
  for (;;) {
    Family next = psi(n, current);
    if (next == current) break;
    current = std::move(next);
  }
  Family out;
  for (auto s : current)
    if (std::popcount(s) >= 2) out.insert(s);
  return out;
}

/// Every structure on n points, by filtering all families of parts of size
/// >= 2 through the arbitrary-subfamily axiom. Feasible for n <= 4.
inline std::vector<Family> all_structures(unsigned n) {
  std::vector<std::uint64_t> parts;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m)
    if (std::popcount(m) >= 2) parts.push_back(m);
  std::vector<Family> out;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << parts.size()); ++pick) {
    Family f;
    for (std::size_t i = 0; i < parts.size(); ++i)
      if ((pick >> i) & 1) f.insert(parts[i]);
    if (satisfies_axiom(with_singletons(n, f))) out.push_back(std::move(f));
  }
  return out;
}

/// Irreducibility through maximal proper connected parts: a connected part
/// is irreducible iff those maximal parts are pairwise disjoint.
inline bool irreducible(const Family& kstar_and_singletons, std::uint64_t part) {
  std::vector<std::uint64_t> proper;
  for (auto k : kstar_and_singletons)
    if ((k & ~part) == 0 && k != part) proper.push_back(k);
  std::vector<std::uint64_t> maximal;
  for (auto k : proper) {
    bool is_max = true;
    for (auto o : proper)
      if (o != k && (k & ~o) == 0) is_max = false;
    if (is_max) maximal.push_back(k);
  }
  for (std::size_t i = 0; i < maximal.size(); ++i)
    for (std::size_t j = i + 1; j < maximal.size(); ++j)
      if (maximal[i] & maximal[j]) return false;
  return true;
}

/// Connected parts of `within` that no other connected part of `within`
/// strictly contains.
inline std::vector<std::uint64_t> maximal_parts(const Family& with_singles, std::uint64_t within) {
  std::vector<std::uint64_t> inside;
  for (auto k : with_singles)
    if ((k & ~within) == 0) inside.push_back(k);
  std::vector<std::uint64_t> out;
  for (auto k : inside) {
    bool is_max = true;
    for (auto o : inside)
      if (o != k && (k & ~o) == 0) is_max = false;
    if (is_max) out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Random family of parts with >= 2 points.
inline Family random_family(std::mt19937_64& rng, unsigned n, unsigned max_size) {
  std::uniform_int_distribution<std::uint64_t> mask(1, (std::uint64_t{1} << n) - 1);
  std::uniform_int_distribution<unsigned> count(0, max_size);
  Family f;
  const unsigned available = (1u << n) - n - 1;
  const unsigned k = std::min(count(rng), available);
  while (f.size() < k) {
    const auto m = mask(rng);
    if (std::popcount(m) >= 2) f.insert(m);
  }
  return f;
}

/// Counts (s, c) on n points by one-point extension: a structure on n+1
/// points is a structure K on n points together with a union-closed family
/// T of subsets of {1..n} containing the empty set and closed under
/// t -> t | k for every k in K meeting t (T holds the parts through n+1).
inline std::pair<std::uint64_t, std::uint64_t> extension_counts(unsigned n) {
  std::vector<Family> level = {Family{}};
  std::uint64_t connected = 1;
  for (unsigned m = 1; m < n; ++m) {
    const std::uint64_t top = std::uint64_t{1} << m;
    std::vector<Family> unions;  // union-closed families containing 0
    std::function<void(std::uint64_t, Family&)> rec = [&](std::uint64_t s, Family& t) {
      if (s == top) {
        unions.push_back(t);
        return;
      }
      bool forced = false;
      for (auto a : t)
        for (auto b : t)
          if ((a | b) == s) forced = true;
      t.insert(s);
      rec(s + 1, t);
      t.erase(s);
      if (!forced) rec(s + 1, t);
    };
    Family start = {0};
    rec(1, start);
    std::vector<Family> next;
    connected = 0;
    for (const auto& k : level) {
      for (const auto& t : unions) {
        bool ok = true;
        for (auto part : k)
          for (auto x : t)
            if ((x & part) && !t.count(x | part)) ok = false;
        if (!ok) continue;
        Family s = k;
        for (auto x : t)
          if (x) s.insert(x | top);
        if (t.count(top - 1)) ++connected;
        next.push_back(std::move(s));
      }
    }
    level = std::move(next);
  }
  return {level.size(), connected};
}

inline std::vector<Subset> to_subsets(const Family& f) {
  std::vector<Subset> out;
  for (auto m : f) out.push_back(Subset(m));
  return out;
}

inline Family to_family(const std::vector<Subset>& v) {
  Family f;
  for (auto s : v) f.insert(s.mask());
  return f;
}

}  // namespace connectif::oracle
