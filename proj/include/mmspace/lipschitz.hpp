#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mmspace/function.hpp"
#include "mmspace/space.hpp"

namespace mmspace {

/// Push-forward f_*μ on the line: distinct sorted positions with their masses.
struct PushforwardAtoms {
  std::vector<double> positions;
  std::vector<double> masses;
};

struct ObsDiamEstimate {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> witness;
  std::string method;
};

struct LaplaceEstimate {
  double lambda = 1.0;
  double lower = 1.0;
  std::vector<double> witness;
};

struct AscentOptions {
  std::size_t restarts = 20;
  /// Moves per restart.
  std::size_t budget = 200;
  std::uint64_t seed = 0;
};

/// f(x) = min over anchors a of g(a) + L·d(x, a). Throws AnchorsNotLipschitz
/// naming the violating pair, EmptySet without anchors.
LipschitzFunction mcshane_extend(const Space& space,
                                 std::span<const std::pair<std::size_t, double>> anchors,
                                 double lipschitz);

/// f scaled by L / max(L, lip(f)).
LipschitzFunction shrink_to_lipschitz(const Space& space, const LipschitzFunction& f,
                                      double lipschitz = 1.0);

/// Random 1-Lipschitz function: McShane extension of random anchor values,
/// shrunk to the target constant.
LipschitzFunction random_lipschitz(const Space& space, std::uint64_t seed,
                                   double lipschitz = 1.0);

PushforwardAtoms pushforward(const Space& space, std::span<const double> f);

/// Image of X under f as a space on the line: distinct values, distance
/// |s - t|, pushed masses.
Space pushforward_space(const Space& space, std::span<const double> f);

/// Narrowest window of consecutive atoms carrying mass >= 1 - κ.
double partial_diameter_line(const PushforwardAtoms& atoms, double kappa);

/// min over A with μ(A) >= 1 - κ of diam(A). Throws TooLargeForExact.
double partial_diameter_space(const Space& space, double kappa,
                              std::size_t exact_limit = kDefaultExactLimit);

/// partial_diameter_line(pushforward(f), κ).
double observable_spread(const Space& space, std::span<const double> f, double kappa);

/// Lower bound on ObsDiam(X; -κ) from 1-Lipschitz candidates: distance
/// functions, distances to pairs, and coordinate ascent from random starts.
/// `upper` is left at +infinity.
ObsDiamEstimate obsdiam_lower(const Space& space, double kappa,
                              const AscentOptions& options = {});

/// 2·min{ r in {0} ∪ D : α^ε(r) <= κ/2 }. Requires ε <= 1/2.
double obsdiam_upper(const Space& space, double kappa, double epsilon,
                     std::size_t exact_limit = kDefaultExactLimit);

/// Lower bound and the upper bound above in one estimate.
ObsDiamEstimate obsdiam_sandwich(const Space& space, double kappa, double epsilon,
                                 const AscentOptions& options = {},
                                 std::size_t exact_limit = kDefaultExactLimit);

/// Reference value for n <= 5: maximum over the lattice hℤ ∩ [-diam, diam]
/// with f(p₀) = 0, refined by exact linear programs over every ordering of
/// the points. Throws TooLargeForOracle.
double obsdiam_oracle(const Space& space, double kappa, double step);

/// ∫ exp(λ f) dμ
double laplace_value(const Space& space, std::span<const double> f, double lambda);

/// Lower bound on the Laplace functional from centered 1-Lipschitz
/// candidates and coordinate ascent.
LaplaceEstimate laplace_lower(const Space& space, double lambda,
                              const AscentOptions& options = {});

/// Reference value for n <= 5: lattice functions shrunk and centered, plus
/// every vertex of the 1-Lipschitz polytope modulo constants.
double laplace_oracle(const Space& space, double lambda, double step);

}  // namespace mmspace
