#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "connectif/error.hpp"

namespace connectif {

/// The ground set {1..n}. Masks are one machine word, so 1 <= n <= 64.
class GroundSet {
 public:
  static constexpr unsigned kMaxSize = 64;

  explicit GroundSet(long long n) : n_(static_cast<unsigned>(n)) {
    if (n < 1 || n > static_cast<long long>(kMaxSize)) throw InvalidGround(n);
  }

  unsigned size() const noexcept { return n_; }

  /// Mask with all n bits set.
  std::uint64_t full_mask() const noexcept {
    return n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
  }

  bool contains(std::uint64_t mask) const noexcept { return (mask & ~full_mask()) == 0; }

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

 private:
  unsigned n_;
};

/// A subset of {1..n} stored as a bitmask: element k lives in bit k-1.
///
/// Subsets are ordered by their raw mask. The weight sum of 2^k over the
/// elements is exactly twice the mask, so mask order is the weight order
/// used by the enumeration.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint64_t mask) : mask_(mask) {}
  Subset(std::initializer_list<unsigned> elements) {
    for (unsigned e : elements) mask_ |= bit(e);
  }

  static Subset of(const std::vector<unsigned>& elements) {
    Subset s;
    for (unsigned e : elements) s.mask_ |= bit(e);
    return s;
  }

  static constexpr std::uint64_t bit(unsigned element) {
    return element >= 1 && element <= 64 ? std::uint64_t{1} << (element - 1) : 0;
  }

  constexpr std::uint64_t mask() const noexcept { return mask_; }
  constexpr bool empty() const noexcept { return mask_ == 0; }
  constexpr unsigned size() const noexcept { return static_cast<unsigned>(std::popcount(mask_)); }
  constexpr bool contains(unsigned element) const noexcept { return (mask_ & bit(element)) != 0; }
  constexpr bool contains(Subset other) const noexcept { return (other.mask_ & ~mask_) == 0; }
  constexpr bool strictly_contains(Subset other) const noexcept {
    return contains(other) && other.mask_ != mask_;
  }
  constexpr bool intersects(Subset other) const noexcept { return (mask_ & other.mask_) != 0; }

  /// Weight of the subset: sum of 2^k over its elements.
  constexpr unsigned __int128 delta_key() const noexcept {
    return static_cast<unsigned __int128>(mask_) << 1;
  }

  /// Elements in ascending order (1-based).
  std::vector<unsigned> elements() const {
    std::vector<unsigned> out;
    for (std::uint64_t m = mask_; m != 0; m &= m - 1)
      out.push_back(static_cast<unsigned>(std::countr_zero(m)) + 1);
    return out;
  }

  /// "{1,2,3}"
  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (unsigned e : elements()) {
      if (!first) out += ',';
      out += std::to_string(e);
      first = false;
    }
    return out + "}";
  }

  constexpr Subset operator|(Subset o) const noexcept { return Subset(mask_ | o.mask_); }
  constexpr Subset operator&(Subset o) const noexcept { return Subset(mask_ & o.mask_); }
  constexpr Subset operator-(Subset o) const noexcept { return Subset(mask_ & ~o.mask_); }

  friend constexpr bool operator==(Subset, Subset) = default;
  friend constexpr std::strong_ordering operator<=>(Subset a, Subset b) {
    return a.mask_ <=> b.mask_;
  }

 private:
  std::uint64_t mask_ = 0;
};

/// Throws EmptySet / OutOfRange unless `s` is a nonempty subset of `ground`.
inline void require_part(const GroundSet& ground, Subset s) {
  if (s.empty()) throw EmptySet();
  if (!ground.contains(s.mask())) throw OutOfRange(s.mask(), ground.size());
}

inline Subset full_set(const GroundSet& ground) { return Subset(ground.full_mask()); }

inline Subset singleton(unsigned element) { return Subset(Subset::bit(element)); }

}  // namespace connectif

template <>
struct std::hash<connectif::Subset> {
  std::size_t operator()(connectif::Subset s) const noexcept {
    return std::hash<std::uint64_t>{}(s.mask());
  }
};
