#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mmspace/function.hpp"
#include "mmspace/report.hpp"
#include "mmspace/space.hpp"
#include "mmspace/subset_mask.hpp"

namespace mmspace {

/// An expansion coefficient. An empty `value` means Unbounded: no set
/// satisfied the mass constraint.
struct ExpansionResult {
  std::optional<double> value;
  std::optional<SubsetMask> witness;
  double epsilon = 0.5;
  double rho = 1.0;

  bool bounded() const noexcept { return value.has_value(); }
};

/// Exp_G(X; ε, ρ) = min over A with μ(A) >= ε of μ(A_ρ) / ε.
ExpansionResult exp_gromov(const Space& space, double epsilon, double rho,
                           std::size_t exact_limit = kDefaultExactLimit);

/// Exp_L(X; ε, ρ) = min over nonempty B with μ(B_ρ) <= ε of μ(B_ρ) / μ(B).
ExpansionResult exp_ledoux(const Space& space, double epsilon, double rho,
                           std::size_t exact_limit = kDefaultExactLimit);

/// Exp_L^k μ(B) <= μ(B_{kρ}) for k = 1..kmax and every nonempty B with
/// μ(B_{kρ}) <= ε. Skipped when Exp_L is unbounded.
BoundReport iterated_ledoux_check(const Space& space, double epsilon, double rho,
                                  std::size_t kmax,
                                  std::size_t exact_limit = kDefaultExactLimit);

/// Exp_G(X; ε, ρ/lip f) <= Exp_G(f(X); ε, ρ).
BoundReport gromov_monotonicity_check(const Space& space, const LipschitzFunction& f,
                                      double epsilon, double rho,
                                      std::size_t exact_limit = kDefaultExactLimit);

/// Exp_L(ε, ρ) <= C, provided μ(B(x, 2ρ)) <= ε for every x. Skipped and
/// flagged when that hypothesis fails.
BoundReport ledoux_doubling_bound_check(const Space& space, double epsilon, double rho,
                                        std::size_t exact_limit = kDefaultExactLimit);

struct PoincareRow {
  std::string function;
  double variance = 0.0;
  double gradient_energy = 0.0;
  bool holds = true;
};

struct PoincareDiagnostic {
  double constant = 1.0;
  std::vector<PoincareRow> rows;
  bool all_hold = true;
};

/// Var f = ∫f² - (∫f)².
double variance(const Space& space, std::span<const double> f);

/// ∫|∇f|² dμ with |∇f|(x) the largest slope to the nearest neighbours of x.
double gradient_energy(const Space& space, std::span<const double> f);

/// Var f <= C ∫|∇f|² over distance functions and `random_count` random
/// 1-Lipschitz functions. Diagnostic only.
PoincareDiagnostic discrete_poincare_diagnostic(const Space& space, double constant,
                                                std::uint64_t seed = 0,
                                                std::size_t random_count = 8);

}  // namespace mmspace
