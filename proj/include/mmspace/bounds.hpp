#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mmspace/lipschitz.hpp"
#include "mmspace/report.hpp"
#include "mmspace/space.hpp"

namespace mmspace {

// ---------------------------------------------------------------------------
// Closed-form evaluators. Each throws HypothesisViolated naming the failed
// clause when its preconditions do not hold.

/// (1-ε)·L^{1-r/ρ}; requires L > 1 and 0 < ρ <= r.
double rhs_concentration_ledoux(double epsilon, double exp_ledoux, double rho, double r);

/// (1-ε)·G·L^{2-r/ρ}; requires L > 1 and 0 < ρ <= r.
double rhs_concentration_gromov_ledoux(double epsilon, double exp_gromov,
                                       double exp_ledoux, double rho, double r);

/// κ·exp(OD·ln L / 2ρ) / (2(1-ε) L²); a lower bound on Exp_G.
double gromov_answer_lower(double kappa, double epsilon, double rho, double exp_ledoux,
                           double obsdiam);

/// 2(1 - G·ε)·L >= κ
bool gromov_upper_hypothesis(double kappa, double epsilon, double exp_gromov,
                             double exp_ledoux);

/// (2 - κ·exp((OD - 4ρ) ln L / 2ρ)) / (2ε); an upper bound on Exp_G.
double gromov_upper(double kappa, double epsilon, double rho, double exp_ledoux,
                    double obsdiam);

/// (2ρ / ln L)·ln(2L²(1-ε) / ((1+L²) ε κ)); an upper bound on ObsDiam.
double obsdiam_upper_by_ledoux(double kappa, double epsilon, double rho, double exp_ledoux);

struct DiameterBound {
  double value = 0.0;
  double branch_complement = 0.0;
  double branch_epsilon = 0.0;
};

/// ρ/τ · max{ ln(C⁴(1-ε)ε⁻¹ L₁)/ln L₁, 2 ln(C³ τ^{-log₂ C} ε L₀)/ln L₀ } with
/// L₀ = Exp_L(ε, ρ), L₁ = Exp_L(1-ε, ρ) and τ = 1/3 by default.
DiameterBound diameter_upper(double doubling, double epsilon, double rho,
                             double exp_ledoux_eps, double exp_ledoux_complement,
                             double tau = 1.0 / 3.0);

/// (1/λ)·min{ ln Λ, sqrt(2 ln Λ) } for a Laplace functional value Λ >= 1.
double diameter_lower_from_laplace(double laplace, double lambda);

/// diameter_lower_from_laplace(laplace_lower(space, λ)).
double diameter_lower(const Space& space, double lambda, const AscentOptions& options = {});

/// ∫exp(λf)dμ <= exp((λ·diam)²/2) for a mean-zero 1-Lipschitz f.
double laplace_exchange_bound(double lambda, double diameter);

// Example formulas for manifolds, evaluated only.

/// √(π/8)·exp(-(n-1) r² / 2δ²) for the n-sphere of radius δ.
double sphere_gaussian_envelope(double dim, double radius, double r);
/// 2δ·sqrt(2 ln(√(π/2)/κ) / (n-1))
double sphere_obsdiam_bound(double dim, double radius, double kappa);
/// 2 ln(3/2κ) / (ln(3/2)·√λ₁)
double spectral_obsdiam_bound(double lambda1, double kappa);
/// κ·exp(OD·ln(1 + λ₁ερ²)/2ρ) / (2^{2n+1}(1-ε))
double riemannian_gromov_lower(double kappa, double epsilon, double rho, double dim,
                               double lambda1, double obsdiam);
/// 3ρ·max{ ln(2^{5n}(1-ε)/ε)/ln(1+λ₁ερ²), 2 ln(2^{4n}3ⁿε)/ln(1+λ₁(1-ε)ρ²) }
double riemannian_diameter_upper(double epsilon, double rho, double dim, double lambda1);

// ---------------------------------------------------------------------------
// Spectral gap

enum class AdjacencyKind { UnitDistance, Threshold, Knn };

struct AdjacencyRule {
  AdjacencyKind kind = AdjacencyKind::UnitDistance;
  double threshold = 1.0;
  std::size_t k = 1;

  static AdjacencyRule unit_distance() { return {}; }
  static AdjacencyRule at_most(double t) { return {AdjacencyKind::Threshold, t, 1}; }
  static AdjacencyRule nearest(std::size_t k) { return {AdjacencyKind::Knn, 1.0, k}; }
};

/// Parses "unit", "threshold:<t>" or "knn:<k>".
AdjacencyRule parse_adjacency_rule(const std::string& text);

struct SpectralResult {
  double lambda1 = 0.0;
  std::vector<double> eigenvector;
  std::string method;
  /// max |(L/n) v - λ₁ M v|
  double residual = 0.0;
};

/// Second-smallest eigenvalue of (1/n)·L v = λ M v with L the combinatorial
/// Laplacian of the graph and M = diag(μ); for uniform μ this is the
/// spectrum of L itself. Throws DisconnectedGraph.
SpectralResult lambda1_graph(const Space& space, const AdjacencyRule& rule);

/// Eigenvalues (ascending) and column eigenvectors of a symmetric matrix by
/// cyclic Jacobi rotations.
struct SymmetricEigen {
  std::vector<double> values;
  Matrix vectors;
};
SymmetricEigen jacobi_eigen(Matrix a, double tolerance = 1e-14, std::size_t max_sweeps = 100);

// ---------------------------------------------------------------------------
// Full check suite

struct VerifyParams {
  double epsilon = 0.5;
  double kappa = 0.1;
  /// Empty: the distinct pairwise distances up to diameter/2.
  std::vector<double> rho;
  std::vector<double> lambda{0.5, 1.0, 2.0};
  std::size_t exact_limit = kDefaultExactLimit;
  AscentOptions ascent;
  double tau = 1.0 / 3.0;
  std::size_t function_count = 10;
  std::size_t iterate_k = 3;
  /// Test hook: adds 1 to every α fed into an α <= bound comparison.
  bool inject_alpha_fault = false;
};

std::vector<double> default_rho_grid(const Space& space);

/// Runs every applicable check in a fixed order. Checks whose hypotheses
/// fail, or that need exact quantities on a space above the exact limit, are
/// reported as skipped.
std::vector<BoundReport> verify_all(const Space& space, const VerifyParams& params);

}  // namespace mmspace
