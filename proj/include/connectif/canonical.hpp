#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <memory>
#include <numeric>
#include <span>
#include <vector>

#include "connectif/structure.hpp"

namespace connectif {

/// Brute-force canonical labeling over all n! relabelings (n <= 8).
///
/// A family of masks over {1..8} is kept as a 256-bit membership word. For
/// two families of equal size, the sorted-list lexicographic order coincides
/// with "the smallest mask in the symmetric difference belongs to the
/// smaller family", which is a word-by-word comparison.
class CanonicalLabeler {
 public:
  static constexpr unsigned kMaxPoints = 8;
  using Bits = std::array<std::uint64_t, 4>;

  explicit CanonicalLabeler(unsigned n) : n_(n) {
    if (n < 1 || n > kMaxPoints) throw TooLarge(n, kMaxPoints);
    const std::size_t masks = std::size_t{1} << n;
    std::vector<unsigned> image(n);
    std::iota(image.begin(), image.end(), 0u);
    do {
      std::vector<std::uint8_t> table(masks, 0);
      for (std::size_t m = 1; m < masks; ++m) {
        const unsigned low = static_cast<unsigned>(std::countr_zero(m));
        table[m] = static_cast<std::uint8_t>(table[m & (m - 1)] | (1u << image[low]));
      }
      tables_.push_back(std::move(table));
    } while (std::next_permutation(image.begin(), image.end()));
  }

  unsigned size() const noexcept { return n_; }
  std::size_t permutations() const noexcept { return tables_.size(); }

  static Bits bits_of(std::span<const Subset> family) {
    Bits b{};
    for (Subset k : family) set(b, k.mask());
    return b;
  }

  static bool less(const Bits& a, const Bits& b) noexcept {
    for (std::size_t w = 0; w < a.size(); ++w) {
      const std::uint64_t diff = a[w] ^ b[w];
      if (diff != 0) return (a[w] & diff & (~diff + 1)) != 0;
    }
    return false;
  }

  /// Canonical membership word of the family of masks.
  Bits canonical_bits(std::span<const std::uint8_t> family) const {
    Bits best = image_of(0, family);
    for (std::size_t p = 1; p < tables_.size(); ++p) {
      Bits candidate = image_of(p, family);
      if (less(candidate, best)) best = candidate;
    }
    return best;
  }

  /// True iff no relabeling gives a smaller family.
  bool is_canonical(std::span<const std::uint8_t> family) const {
    const Bits own = image_of(0, family);
    for (std::size_t p = 1; p < tables_.size(); ++p) {
      if (less(image_of(p, family), own)) return false;
    }
    return true;
  }

  static std::vector<Subset> family_of(const Bits& b) {
    std::vector<Subset> out;
    for (std::size_t w = 0; w < b.size(); ++w)
      for (std::uint64_t m = b[w]; m != 0; m &= m - 1)
        out.push_back(Subset(w * 64 + static_cast<unsigned>(std::countr_zero(m))));
    return out;
  }

 private:
  static void set(Bits& b, std::uint64_t mask) noexcept { b[mask >> 6] |= std::uint64_t{1} << (mask & 63); }

  Bits image_of(std::size_t p, std::span<const std::uint8_t> family) const noexcept {
    Bits b{};
    const auto& table = tables_[p];
    for (auto m : family) set(b, table[m]);
    return b;
  }

  unsigned n_;
  std::vector<std::vector<std::uint8_t>> tables_;
};

namespace detail {

inline const CanonicalLabeler& labeler_for(unsigned n) {
  if (n < 1 || n > CanonicalLabeler::kMaxPoints) throw TooLarge(n, CanonicalLabeler::kMaxPoints);
  thread_local std::array<std::unique_ptr<CanonicalLabeler>, CanonicalLabeler::kMaxPoints + 1> cache;
  if (!cache[n]) cache[n] = std::make_unique<CanonicalLabeler>(n);
  return *cache[n];
}

inline std::vector<std::uint8_t> small_masks(const ConnectivityStructure& s) {
  std::vector<std::uint8_t> out;
  out.reserve(s.kstar().size());
  for (Subset k : s.kstar()) out.push_back(static_cast<std::uint8_t>(k.mask()));
  return out;
}

}  // namespace detail

/// The relabeling of `s` whose sorted list of connected parts is
/// lexicographically smallest. Invariant under relabeling of the input.
inline ConnectivityStructure canonicalize(const ConnectivityStructure& s) {
  const CanonicalLabeler& labeler = detail::labeler_for(s.size());
  const auto bits = labeler.canonical_bits(detail::small_masks(s));
  return ConnectivityStructure::from_closed_unchecked(s.ground(), CanonicalLabeler::family_of(bits));
}

inline bool is_canonical(const ConnectivityStructure& s) {
  return detail::labeler_for(s.size()).is_canonical(detail::small_masks(s));
}

}  // namespace connectif
