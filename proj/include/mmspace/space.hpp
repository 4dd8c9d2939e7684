#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mmspace/subset_mask.hpp"

namespace mmspace {

/// Absolute tolerance for symmetry and the triangle inequality.
inline constexpr double kMetricTolerance = 1e-12;
/// Absolute tolerance for total mass after validation.
inline constexpr double kMassTolerance = 1e-12;
/// Weights summing to within this of 1 are renormalized; farther is an error.
inline constexpr double kRenormalizeWindow = 1e-9;
/// Masses compared against thresholds (ε, κ, ...) use this slack.
inline constexpr double kMassCompareTolerance = 1e-12;
/// Closed-ball membership: d <= r + kRadiusTolerance.
inline constexpr double kRadiusTolerance = 1e-12;

inline constexpr std::size_t kDefaultExactLimit = 22;
inline constexpr std::size_t kMaxExactLimit = 26;
inline constexpr std::size_t kDefaultMaxPoints = 4096;

using Matrix = std::vector<std::vector<double>>;

/// A finite metric measure space (X, d, μ): n points, a validated distance
/// matrix and strictly positive probability weights. Immutable once built.
class Space {
 public:
  /// Validates and builds. Throws Error with kinds ShapeMismatch, NonFinite,
  /// AsymmetricDistance, NonpositiveDistance, TriangleViolation (message names
  /// the worst triple), NonpositiveWeight, MassNotOne.
  static Space validate(const Matrix& dist, std::vector<double> weight,
                        std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return n_; }
  double d(std::size_t i, std::size_t j) const noexcept { return dist_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {dist_.data() + i * n_, n_};
  }
  double weight(std::size_t i) const noexcept { return weight_[i]; }
  std::span<const double> weights() const noexcept { return weight_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  Matrix distance_matrix() const;
  double mass(const SubsetMask& subset) const;
  double diameter() const noexcept { return diameter_; }
  /// Sorted distinct positive pairwise distances.
  const std::vector<double>& distances() const noexcept { return distances_; }

 private:
  Space() = default;

  std::size_t n_ = 0;
  std::vector<double> dist_;
  std::vector<double> weight_;
  std::vector<std::string> labels_;
  double diameter_ = 0.0;
  std::vector<double> distances_;
};

double diameter(const Space& space);

/// Sorts and merges values closer than `tolerance`; used for breakpoint grids.
std::vector<double> unique_sorted(std::vector<double> values, double tolerance = 0.0);

// ---------------------------------------------------------------------------
// Generators

struct Cycle { std::size_t n; };
struct Hypercube { std::size_t dim; };
struct Path { std::size_t n; };
/// `count` i.i.d. uniform points on the `dim`-sphere of radius `radius` in
/// R^{dim+1}, geodesic distance radius·angle, uniform weights.
struct SampledSphere {
  std::size_t dim;
  double radius;
  std::size_t count;
  std::uint64_t seed;
};
/// Random positive symmetric draw closed under shortest paths.
struct RandomMetric {
  std::size_t n;
  std::uint64_t seed;
  bool random_weights = true;
};

using GeneratorKind = std::variant<Cycle, Hypercube, Path, SampledSphere, RandomMetric>;

Space generate(const GeneratorKind& kind, std::size_t max_points = kDefaultMaxPoints);

Space cycle(std::size_t n);
Space hypercube(std::size_t dim);
Space path(std::size_t n);
Space sampled_sphere(std::size_t dim, double radius, std::size_t count, std::uint64_t seed);
Space random_metric(std::size_t n, std::uint64_t seed, bool random_weights = true);

/// Two points at distance `d` with the given weights.
Space two_point(double d = 1.0, double w0 = 0.5);
Space single_point();

}  // namespace mmspace
