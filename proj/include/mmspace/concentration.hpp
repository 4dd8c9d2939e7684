#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mmspace/function.hpp"
#include "mmspace/report.hpp"
#include "mmspace/space.hpp"
#include "mmspace/subset_mask.hpp"

namespace mmspace {

struct AlphaResult {
  double value = 0.0;
  SubsetMask witness;
};

/// α^ε(r) = max over A with μ(A) >= ε of 1 - μ(A_r), by exhaustive search
/// over inclusion-minimal A. Throws TooLargeForExact when n > exact_limit.
AlphaResult alpha_exact(const Space& space, double epsilon, double r,
                        std::size_t exact_limit = kDefaultExactLimit);

struct ConcentrationProfile {
  double epsilon = 0.5;
  std::vector<double> radii;
  std::vector<double> values;
  std::vector<SubsetMask> witnesses;
};

/// Elementwise alpha_exact over sorted radii. All radii share one search.
ConcentrationProfile alpha_profile(const Space& space, double epsilon,
                                   std::span<const double> radii,
                                   std::size_t exact_limit = kDefaultExactLimit);

/// α^ε as a right-continuous step function of r. The value can only change at
/// r in {0} ∪ D, so it is computed once at those breakpoints and looked up.
class AlphaFunction {
 public:
  AlphaFunction(const Space& space, double epsilon,
                std::size_t exact_limit = kDefaultExactLimit);

  double epsilon() const noexcept { return epsilon_; }
  double operator()(double r) const;
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  double epsilon_;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// α^ε(r) <= α^{1-ε}(r) for ε >= 1/2, mirrored for ε <= 1/2.
bool alpha_swap_check(const Space& space, double epsilon, double r,
                      std::size_t exact_limit = kDefaultExactLimit);

/// Cap-family estimate of α^ε for spaces too large for exact search: the
/// candidate sets are the smallest balls of mass >= ε around `centers` points.
/// A lower estimate only.
ConcentrationProfile alpha_ball_estimate(const Space& space, double epsilon,
                                         std::span<const double> radii,
                                         std::size_t centers, std::uint64_t seed);

enum class EnvelopeKind { Exponential, Gaussian };

/// Envelope C1·exp(-C2·r) or C1·exp(-C2·r²).
struct ProfileFit {
  EnvelopeKind kind = EnvelopeKind::Exponential;
  double c1 = 1.0;
  double c2 = 1.0;
  /// Max |ln α - ln envelope| of the least-squares fit, before inflation.
  double residual = 0.0;
  /// C1 from the least-squares fit, before inflation to dominate.
  double c1_fit = 1.0;

  double operator()(double r) const;
};

/// Least-squares fit of ln α over positive entries, then C1 inflated so the
/// envelope dominates every profile value. C2 is clamped to a tiny positive
/// rate when the data do not decay. Throws DegenerateProfile with fewer than
/// two positive values.
ProfileFit fit_profile(const ConcentrationProfile& profile, EnvelopeKind kind);

/// Exponential envelope dominating a Gaussian one: C1·exp(-C2 r²) <=
/// C1·e^{C2/4}·exp(-C2 r) for all r, since r² >= r - 1/4.
ProfileFit gaussian_to_exponential(const ProfileFit& gaussian);

/// Smallest attained value m with μ(f <= m) >= ε and μ(f >= m) >= 1 - ε.
double quantile(const Space& space, const LipschitzFunction& f, double epsilon);

/// The two concentration inequalities, one report per r (and per form):
/// μ(|f - m_f| > r) <= α^ε(r/L) + α^{1-ε}(r/L), and for ε >= 1/2 also
/// <= 2 α^{1-ε}(r/L), where L = lip(f).
std::vector<BoundReport> check_concentration_inequality(
    const Space& space, const LipschitzFunction& f, double epsilon,
    std::span<const double> radii, std::size_t exact_limit = kDefaultExactLimit);

/// Same, reusing precomputed step functions for ε and 1 - ε.
std::vector<BoundReport> check_concentration_inequality(
    const Space& space, const LipschitzFunction& f, const AlphaFunction& alpha_eps,
    const AlphaFunction& alpha_complement, std::span<const double> radii);

/// The r grid on which the concentration inequality can change: {0}, the
/// deviations |f - m_f| and L·D.
std::vector<double> concentration_radii(const Space& space, const LipschitzFunction& f,
                                        double epsilon);

}  // namespace mmspace
