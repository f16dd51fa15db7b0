#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

#include "connectif/error.hpp"
#include "connectif/subset.hpp"

namespace connectif {

/// An integral connectivity structure on {1..n}.
///
/// Only the connected parts with at least two points are stored; every
/// singleton is connected implicitly. The stored list is strictly ascending
/// by mask and closed under unions of intersecting pairs, which on a finite
/// ground set is the same as closure under unions of any subfamily with a
/// common point.
class ConnectivityStructure {
 public:
  /// The discrete structure: only singletons are connected.
  explicit ConnectivityStructure(GroundSet ground) : ground_(ground) {}

  const GroundSet& ground() const noexcept { return ground_; }
  unsigned size() const noexcept { return ground_.size(); }

  /// Connected parts of cardinality >= 2, ascending by mask.
  const std::vector<Subset>& kstar() const noexcept { return kstar_; }

  /// Membership test without argument validation.
  bool connected(Subset part) const noexcept {
    if (part.size() == 1) return ground_.contains(part.mask());
    return std::binary_search(kstar_.begin(), kstar_.end(), part);
  }

  /// Every connected part, singletons included, ascending by mask.
  std::vector<Subset> connected_family() const {
    std::vector<Subset> all = kstar_;
    for (unsigned e = 1; e <= size(); ++e) all.push_back(singleton(e));
    std::sort(all.begin(), all.end());
    return all;
  }

  friend bool operator==(const ConnectivityStructure&, const ConnectivityStructure&) = default;

  /// Builds a structure from a sorted, duplicate-free, singleton-free list
  /// that the caller knows to be closed. No checks beyond debug assertions.
  static ConnectivityStructure from_closed_unchecked(GroundSet ground, std::vector<Subset> kstar) {
    ConnectivityStructure s(ground);
    s.kstar_ = std::move(kstar);
    return s;
  }

 private:
  GroundSet ground_;
  std::vector<Subset> kstar_;
};

/// Family of parts (>= 2 points each, ascending by mask) every member of
/// which is irreducible in the structure the family generates.
struct FreeFamily {
  GroundSet ground;
  std::vector<Subset> members;

  friend bool operator==(const FreeFamily&, const FreeFamily&) = default;
};

namespace detail {

inline std::vector<Subset> sorted_non_singletons(const GroundSet& ground, std::span<const Subset> sets) {
  std::vector<Subset> out;
  out.reserve(sets.size());
  for (Subset s : sets) {
    require_part(ground, s);
    if (s.size() >= 2) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// First intersecting pair (in mask order) whose union is missing.
inline std::optional<std::pair<Subset, Subset>> closure_defect(const std::vector<Subset>& sorted) {
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      const Subset a = sorted[i];
      const Subset b = sorted[j];
      if (a.intersects(b) && !std::binary_search(sorted.begin(), sorted.end(), a | b)) {
        return std::pair{a, b};
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Validates `sets` as a structure: together with the singletons they must be
/// closed under intersecting unions.
inline ConnectivityStructure make_structure(GroundSet ground, std::span<const Subset> sets) {
  auto kstar = detail::sorted_non_singletons(ground, sets);
  if (auto defect = detail::closure_defect(kstar)) {
    const auto [a, b] = *defect;
    throw AxiomViolation(a.mask(), b.mask(),
                         "closure axiom violated: " + a.to_string() + " and " + b.to_string() +
                             " intersect but " + (a | b).to_string() + " is not connected");
  }
  return ConnectivityStructure::from_closed_unchecked(ground, std::move(kstar));
}

inline ConnectivityStructure make_structure(GroundSet ground, std::initializer_list<Subset> sets) {
  return make_structure(ground, std::span<const Subset>(sets.begin(), sets.size()));
}

/// Smallest integral structure containing every generator.
inline ConnectivityStructure generate(GroundSet ground, std::span<const Subset> generators) {
  std::vector<Subset> sets = detail::sorted_non_singletons(ground, generators);
  std::unordered_set<Subset> seen(sets.begin(), sets.end());
  // Each set is compared, when it is processed, with every set stored so
  // far; a pair is therefore examined once its later member is processed.
  for (std::size_t next = 0; next < sets.size(); ++next) {
    const Subset x = sets[next];
    for (std::size_t j = 0; j < sets.size(); ++j) {
      const Subset k = sets[j];
      if (!x.intersects(k)) continue;
      const Subset u = x | k;
      if (seen.insert(u).second) sets.push_back(u);
    }
  }
  std::sort(sets.begin(), sets.end());
  return ConnectivityStructure::from_closed_unchecked(ground, std::move(sets));
}

inline ConnectivityStructure generate(GroundSet ground, std::initializer_list<Subset> generators) {
  return generate(ground, std::span<const Subset>(generators.begin(), generators.size()));
}

inline bool is_connected(const ConnectivityStructure& s, Subset part) {
  require_part(s.ground(), part);
  return s.connected(part);
}

/// Maximal connected parts of the subspace induced on `within`, ascending by
/// mask. They partition `within`.
inline std::vector<Subset> components(const ConnectivityStructure& s, Subset within) {
  require_part(s.ground(), within);
  // Each block starts as a singleton and absorbs every stored part it meets.
  std::vector<Subset> blocks;
  for (unsigned e : within.elements()) blocks.push_back(singleton(e));
  for (Subset k : s.kstar()) {
    if (!within.contains(k)) continue;
    Subset merged = k;
    std::vector<Subset> kept;
    for (Subset b : blocks) {
      if (b.intersects(merged)) {
        merged = merged | b;
      } else {
        kept.push_back(b);
      }
    }
    kept.push_back(merged);
    blocks = std::move(kept);
  }
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

inline std::vector<Subset> components(const ConnectivityStructure& s) {
  return components(s, full_set(s.ground()));
}

/// A pair of proper connected parts of `part` that intersect and whose union
/// is `part`, or nothing when `part` is irreducible.
inline std::optional<std::pair<Subset, Subset>> reduction_witness(const ConnectivityStructure& s,
                                                                  Subset part) {
  require_part(s.ground(), part);
  if (!s.connected(part)) throw NotConnected(part.to_string() + " is not connected");
  // Singletons never help: a singleton inside K2 adds nothing to K2.
  std::vector<Subset> proper;
  for (Subset k : s.kstar()) {
    if (part.strictly_contains(k)) proper.push_back(k);
  }
  for (std::size_t i = 0; i < proper.size(); ++i) {
    const Subset k1 = proper[i];
    const Subset rest = part - k1;
    for (std::size_t j = i + 1; j < proper.size(); ++j) {
      const Subset k2 = proper[j];
      if (k2.contains(rest) && k2.intersects(k1)) return std::pair{k1, k2};
    }
  }
  return std::nullopt;
}

inline bool is_reducible(const ConnectivityStructure& s, Subset part) {
  return reduction_witness(s, part).has_value();
}

/// Irreducible connected parts, singletons included, ascending by mask.
inline std::vector<Subset> irreducibles(const ConnectivityStructure& s) {
  std::vector<Subset> out;
  for (unsigned e = 1; e <= s.size(); ++e) out.push_back(singleton(e));
  for (Subset k : s.kstar()) {
    if (!reduction_witness(s, k)) out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Irreducible connected parts with at least two points: the free family
/// that generates `s`.
inline std::vector<Subset> free_generators(const ConnectivityStructure& s) {
  std::vector<Subset> out;
  for (Subset k : s.kstar()) {
    if (!reduction_witness(s, k)) out.push_back(k);
  }
  return out;
}

/// Rebuilds a structure from its generic points.
inline ConnectivityStructure reconstruct(GroundSet ground, std::span<const Subset> generic_vertices) {
  Subset covered;
  for (Subset v : generic_vertices) {
    require_part(ground, v);
    covered = covered | v;
  }
  if (covered != full_set(ground)) {
    throw CoverageGap("generic points miss " + (full_set(ground) - covered).to_string());
  }
  return generate(ground, generic_vertices);
}

/// True iff every member is irreducible in the structure the members generate.
inline bool is_free(GroundSet ground, std::span<const Subset> members) {
  for (Subset m : members) {
    require_part(ground, m);
    if (m.size() < 2) throw SingletonMember("member " + m.to_string() + " has fewer than two points");
  }
  const ConnectivityStructure closure = generate(ground, members);
  return std::none_of(members.begin(), members.end(),
                      [&](Subset m) { return reduction_witness(closure, m).has_value(); });
}

/// Lattice meet: the parts connected in both structures.
inline ConnectivityStructure meet(const ConnectivityStructure& a, const ConnectivityStructure& b) {
  if (a.ground() != b.ground()) throw OutOfDomain("meet of structures on different ground sets");
  std::vector<Subset> common;
  std::set_intersection(a.kstar().begin(), a.kstar().end(), b.kstar().begin(), b.kstar().end(),
                        std::back_inserter(common));
  return make_structure(a.ground(), common);
}

/// Image of a subset under the relabeling i -> image[i-1].
inline Subset relabel(Subset s, std::span<const unsigned> image) {
  Subset out;
  for (std::uint64_t m = s.mask(); m != 0; m &= m - 1) {
    out = out | singleton(image[static_cast<std::size_t>(std::countr_zero(m))]);
  }
  return out;
}

/// Relabeled structure pi.s where point i becomes image[i-1]; `image` must
/// be a permutation of 1..n.
inline ConnectivityStructure relabel(const ConnectivityStructure& s, std::span<const unsigned> image) {
  if (image.size() != s.size()) throw OutOfDomain("relabeling has the wrong length");
  std::vector<bool> hit(s.size() + 1, false);
  for (unsigned v : image) {
    if (v < 1 || v > s.size() || hit[v]) throw OutOfDomain("relabeling is not a permutation");
    hit[v] = true;
  }
  std::vector<Subset> mapped;
  mapped.reserve(s.kstar().size());
  for (Subset k : s.kstar()) mapped.push_back(relabel(k, image));
  std::sort(mapped.begin(), mapped.end());
  return ConnectivityStructure::from_closed_unchecked(s.ground(), std::move(mapped));
}

/// Subspace induced on `within`, with its points renumbered 1..|within| in
/// ascending order.
inline ConnectivityStructure induced(const ConnectivityStructure& s, Subset within) {
  require_part(s.ground(), within);
  const std::vector<unsigned> points = within.elements();
  std::vector<unsigned> index(s.size() + 1, 0);
  for (std::size_t i = 0; i < points.size(); ++i) index[points[i]] = static_cast<unsigned>(i + 1);
  std::vector<Subset> kept;
  for (Subset k : s.kstar()) {
    if (!within.contains(k)) continue;
    Subset mapped;
    for (unsigned e : k.elements()) mapped = mapped | singleton(index[e]);
    kept.push_back(mapped);
  }
  std::sort(kept.begin(), kept.end());
  return ConnectivityStructure::from_closed_unchecked(GroundSet(points.size()), std::move(kept));
}

inline ConnectivityStructure discrete(unsigned n) { return ConnectivityStructure(GroundSet(n)); }

/// Brunnian structure on n points: the only non-trivial connected part is
/// the whole set. n = 3 is the Borromean structure.
inline ConnectivityStructure brunnian(unsigned n) {
  const GroundSet ground(n);
  if (n == 1) return ConnectivityStructure(ground);
  return ConnectivityStructure::from_closed_unchecked(ground, {full_set(ground)});
}

inline ConnectivityStructure borromean() { return brunnian(3); }

}  // namespace connectif
