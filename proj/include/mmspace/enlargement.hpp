#pragma once

#include <cstddef>
#include <vector>

#include "mmspace/space.hpp"
#include "mmspace/subset_mask.hpp"

namespace mmspace {

/// A_r = { x : min over a in A of d(x, a) <= r }. Throws EmptySet if A is empty.
SubsetMask enlarge(const Space& space, const SubsetMask& subset, double r);

/// Closed ball B(x, r).
SubsetMask ball(const Space& space, std::size_t center, double r);

/// μ(B(x, r)) in O(n).
double ball_mass(const Space& space, std::size_t center, double r);

/// One instance of μ(B(y, r2)) / μ(B(x, r1)) <= C² (r2/r1)^{log₂ C}.
/// When `r1_open` is set the denominator is the left limit μ({d(x,·) < r1}),
/// i.e. the supremum of the ratio over radii just below r1.
struct DoublingQuadruple {
  std::size_t x = 0;
  std::size_t y = 0;
  double r1 = 0.0;
  double r2 = 0.0;
  bool r1_open = false;
  double lhs = 0.0;
  double rhs = 0.0;

  double slack() const noexcept { return rhs - lhs; }
};

struct CharacterizationResult {
  bool ok = true;
  DoublingQuadruple worst;
  std::size_t quadruples_checked = 0;
};

struct DoublingReport {
  double constant = 1.0;
  std::size_t witness_point = 0;
  double witness_radius = 0.0;
  bool characterization_checked = false;
  bool characterization_ok = true;
  DoublingQuadruple worst_quadruple;
};

/// Points at which the doubling ratio of balls centred at `center` can change:
/// the distances from `center` and their halves.
std::vector<double> doubling_breakpoints(const Space& space, std::size_t center);

/// Best constant C = max over x and r > 0 of μ(B(x,2r)) / μ(B(x,r)). The
/// ratio is a right-continuous step function of r, so scanning the
/// breakpoints is exact. The characterization check is O(n⁴) and runs only
/// when n <= `characterization_limit`.
DoublingReport doubling_constant(const Space& space, std::size_t characterization_limit = 64);

/// Exhaustive check of the doubling characterization for a given C >= 1 over
/// all y, x in B(y, r2), breakpoint r2 and every r1 <= r2 (breakpoints, their
/// left limits, and r1 = r2).
CharacterizationResult check_doubling_characterization(const Space& space, double constant);

}  // namespace mmspace
