#pragma once

// Bitmask machinery shared by the exhaustive subset searches.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "mmspace/space.hpp"
#include "mmspace/subset_mask.hpp"

namespace mmspace::detail {

using Bits = std::uint64_t;

/// Throws TooLargeForExact unless space.size() <= limit <= kMaxExactLimit.
void require_exact(const Space& space, std::size_t limit, const char* operation);

/// μ of a bitmask in two table lookups.
class MassTable {
 public:
  explicit MassTable(const Space& space);

  double operator()(Bits bits) const noexcept {
    return low_[bits & low_mask_] + high_[bits >> low_bits_];
  }
  std::size_t size() const noexcept { return n_; }
  /// Mass of points with index >= i.
  double suffix(std::size_t i) const noexcept { return suffix_[i]; }

 private:
  std::size_t n_;
  unsigned low_bits_;
  Bits low_mask_;
  std::vector<double> low_;
  std::vector<double> high_;
  std::vector<double> suffix_;
};

inline Bits full_bits(std::size_t n) noexcept {
  return n >= 64 ? ~Bits{0} : (Bits{1} << n) - 1;
}

/// balls[i] = closed ball B(i, r) as bits.
std::vector<Bits> ball_bits(const Space& space, double r);

inline Bits enlarge_bits(Bits set, const std::vector<Bits>& balls) noexcept {
  Bits out = 0;
  while (set) {
    out |= balls[static_cast<std::size_t>(std::countr_zero(set))];
    set &= set - 1;
  }
  return out;
}

inline SubsetMask to_mask(std::size_t n, Bits bits) { return SubsetMask::from_bits(n, bits); }

/// Visits every inclusion-minimal set with mass >= threshold - tolerance
/// (plus some non-minimal ones whose last element was needed), by adding
/// points in increasing index order and stopping at the first set that
/// reaches the threshold. Every minimal set is visited. visit(bits, mass).
template <class Visit>
void for_each_heavy_set(const MassTable& mass, double threshold, Visit&& visit) {
  const std::size_t n = mass.size();
  const double target = threshold - kMassCompareTolerance;
  struct Frame {
    Bits bits;
    double m;
    std::size_t next;
  };
  std::vector<Frame> stack;
  stack.push_back({0, 0.0, 0});
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.m >= target) {
      visit(f.bits, f.m);
      continue;
    }
    if (f.next >= n || f.m + mass.suffix(f.next) < target) continue;
    for (std::size_t i = n; i-- > f.next;) {
      const Bits b = f.bits | (Bits{1} << i);
      stack.push_back({b, mass(b), i + 1});
    }
  }
}

/// Visits every nonempty set B with keep(B) true, where keep is assumed
/// downward closed (if B fails, every superset fails). visit(bits).
template <class Keep, class Visit>
void for_each_down_set(std::size_t n, Keep&& keep, Visit&& visit) {
  struct Frame {
    Bits bits;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (std::size_t i = n; i-- > 0;) stack.push_back({Bits{1} << i, i + 1});
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (!keep(f.bits)) continue;
    visit(f.bits);
    for (std::size_t i = n; i-- > f.next;) stack.push_back({f.bits | (Bits{1} << i), i + 1});
  }
}

}  // namespace mmspace::detail
