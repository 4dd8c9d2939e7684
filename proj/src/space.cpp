#include "mmspace/space.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mmspace/error.hpp"
#include "mmspace/random.hpp"

namespace mmspace {

namespace {

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

Space Space::validate(const Matrix& dist, std::vector<double> weight,
                      std::vector<std::string> labels) {
  const std::size_t n = dist.size();
  if (n == 0) fail(ErrorKind::ShapeMismatch, "space must have at least one point");
  for (const auto& row : dist) {
    if (row.size() != n) fail(ErrorKind::ShapeMismatch, "distance matrix is not square");
  }
  if (weight.size() != n) {
    fail(ErrorKind::ShapeMismatch, "weight length " + std::to_string(weight.size()) +
                                       " does not match point count " + std::to_string(n));
  }
  if (!labels.empty() && labels.size() != n) {
    fail(ErrorKind::ShapeMismatch, "label count does not match point count");
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(dist[i][j])) {
        fail(ErrorKind::NonFinite, "dist[" + std::to_string(i) + "][" + std::to_string(j) +
                                       "] is not finite");
      }
    }
    if (!std::isfinite(weight[i])) {
      fail(ErrorKind::NonFinite, "weight[" + std::to_string(i) + "] is not finite");
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(dist[i][i]) > kMetricTolerance) {
      fail(ErrorKind::NonpositiveDistance,
           "dist[" + std::to_string(i) + "][" + std::to_string(i) + "] must be 0");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(dist[i][j] - dist[j][i]) > kMetricTolerance) {
        fail(ErrorKind::AsymmetricDistance,
             "dist[" + std::to_string(i) + "][" + std::to_string(j) + "]=" + fmt_double(dist[i][j]) +
                 " differs from dist[" + std::to_string(j) + "][" + std::to_string(i) +
                 "]=" + fmt_double(dist[j][i]));
      }
      if (!(dist[i][j] > 0.0)) {
        fail(ErrorKind::NonpositiveDistance,
             "distinct points " + std::to_string(i) + " and " + std::to_string(j) +
                 " are at distance " + fmt_double(dist[i][j]));
      }
    }
  }

  Space space;
  space.n_ = n;
  space.dist_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(dist[i].begin(), dist[i].end(), space.dist_.begin() + static_cast<std::ptrdiff_t>(i * n));
  }

  // |d(i,k) - d(j,k)| <= d(i,j) over all pairs {i,j} and all k covers every
  // triangle inequality exactly once per orientation.
  double worst = 0.0;
  std::size_t wi = 0, wj = 0, wk = 0;
  const double* D = space.dist_.data();
  for (std::size_t i = 0; i < n; ++i) {
    const double* ri = D + i * n;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double* rj = D + j * n;
      const double dij = ri[j];
      double local = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        local = std::max(local, std::abs(ri[k] - rj[k]) - dij);
      }
      if (local > worst) {
        worst = local;
        wi = i;
        wj = j;
        for (std::size_t k = 0; k < n; ++k) {
          if (std::abs(ri[k] - rj[k]) - dij == local) {
            wk = k;
            break;
          }
        }
      }
    }
  }
  if (worst > kMetricTolerance) {
    // Report as d(a,c) > d(a,b) + d(b,c) with b the middle point.
    const bool i_far = D[wi * n + wk] > D[wj * n + wk];
    const std::size_t a = i_far ? wi : wj;
    const std::size_t b = i_far ? wj : wi;
    const std::size_t c = wk;
    fail(ErrorKind::TriangleViolation,
         "worst triple (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
             "): d(" + std::to_string(a) + "," + std::to_string(c) + ")=" + fmt_double(D[a * n + c]) +
             " > d(" + std::to_string(a) + "," + std::to_string(b) + ")+d(" + std::to_string(b) + "," +
             std::to_string(c) + ")=" + fmt_double(D[a * n + b] + D[b * n + c]) +
             " (excess " + fmt_double(worst) + ")");
  }

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(weight[i] > 0.0)) {
      fail(ErrorKind::NonpositiveWeight,
           "weight[" + std::to_string(i) + "]=" + fmt_double(weight[i]) + " is not positive");
    }
    total += weight[i];
  }
  if (std::abs(total - 1.0) > kRenormalizeWindow) {
    fail(ErrorKind::MassNotOne, "total mass " + fmt_double(total) + " is not 1");
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    for (double& w : weight) w /= total;
  }
  space.weight_ = std::move(weight);
  space.labels_ = std::move(labels);

  std::vector<double> all;
  all.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) all.push_back(space.d(i, j));
  }
  space.distances_ = unique_sorted(std::move(all));
  space.diameter_ = space.distances_.empty() ? 0.0 : space.distances_.back();
  return space;
}

Matrix Space::distance_matrix() const {
  Matrix m(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) m[i][j] = d(i, j);
  }
  return m;
}

double Space::mass(const SubsetMask& subset) const {
  if (subset.size() != n_) fail(ErrorKind::ShapeMismatch, "subset mask size does not match space");
  double total = 0.0;
  for (std::size_t i : subset.indices()) total += weight_[i];
  return total;
}

double diameter(const Space& space) { return space.diameter(); }

std::vector<double> unique_sorted(std::vector<double> values, double tolerance) {
  std::sort(values.begin(), values.end());
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) {
    if (out.empty() || v - out.back() > tolerance) out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generators

namespace {

std::vector<double> uniform_weights(std::size_t n) {
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

void check_size(std::size_t n, std::size_t max_points) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "generator size must be at least 1");
  if (n > max_points) {
    fail(ErrorKind::SizeOverflow, "requested " + std::to_string(n) + " points exceeds limit " +
                                      std::to_string(max_points));
  }
}

struct GenerateVisitor {
  std::size_t max_points;

  Space operator()(const Cycle& c) const {
    check_size(c.n, max_points);
    return cycle(c.n);
  }
  Space operator()(const Hypercube& h) const {
    if (h.dim >= 63 || (std::size_t{1} << h.dim) > max_points) {
      fail(ErrorKind::SizeOverflow, "hypercube dimension " + std::to_string(h.dim) + " exceeds point limit " +
                                        std::to_string(max_points));
    }
    return hypercube(h.dim);
  }
  Space operator()(const Path& p) const {
    check_size(p.n, max_points);
    return path(p.n);
  }
  Space operator()(const SampledSphere& s) const {
    check_size(s.count, max_points);
    return sampled_sphere(s.dim, s.radius, s.count, s.seed);
  }
  Space operator()(const RandomMetric& r) const {
    check_size(r.n, max_points);
    return random_metric(r.n, r.seed, r.random_weights);
  }
};

}  // namespace

Space generate(const GeneratorKind& kind, std::size_t max_points) {
  return std::visit(GenerateVisitor{max_points}, kind);
}

Space cycle(std::size_t n) {
  check_size(n, kDefaultMaxPoints);
  Matrix d(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      d[i][j] = static_cast<double>(std::min(gap, n - gap));
    }
  }
  return Space::validate(d, uniform_weights(n));
}

Space hypercube(std::size_t dim) {
  if (dim > 12) fail(ErrorKind::SizeOverflow, "hypercube dimension above 12");
  const std::size_t n = std::size_t{1} << dim;
  Matrix d(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i][j] = static_cast<double>(std::popcount(i ^ j));
  }
  return Space::validate(d, uniform_weights(n));
}

Space path(std::size_t n) {
  check_size(n, kDefaultMaxPoints);
  Matrix d(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i][j] = std::abs(static_cast<double>(i) - static_cast<double>(j));
  }
  return Space::validate(d, uniform_weights(n));
}

Space sampled_sphere(std::size_t dim, double radius, std::size_t count, std::uint64_t seed) {
  if (dim < 1) fail(ErrorKind::InvalidArgument, "sphere dimension must be at least 1");
  if (!(radius > 0.0)) fail(ErrorKind::InvalidArgument, "sphere radius must be positive");
  check_size(count, kDefaultMaxPoints);
  Rng rng(seed);
  const std::size_t ambient = dim + 1;
  std::vector<std::vector<double>> pts(count, std::vector<double>(ambient));
  for (auto& p : pts) {
    double norm = 0.0;
    do {
      norm = 0.0;
      for (double& x : p) {
        x = rng.normal();
        norm += x * x;
      }
    } while (norm < 1e-24);
    norm = std::sqrt(norm);
    for (double& x : p) x /= norm;
  }
  Matrix d(count, std::vector<double>(count, 0.0));
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      // atan2 of |u×v| and u·v is accurate at both small and near-π angles.
      double dot = 0.0;
      double cross2 = 0.0;
      for (std::size_t k = 0; k < ambient; ++k) dot += pts[i][k] * pts[j][k];
      for (std::size_t k = 0; k < ambient; ++k) {
        const double diff = pts[i][k] - dot * pts[j][k];
        cross2 += diff * diff;
      }
      const double angle = std::atan2(std::sqrt(cross2), dot);
      d[i][j] = d[j][i] = radius * angle;
    }
  }
  return Space::validate(d, uniform_weights(count));
}

Space random_metric(std::size_t n, std::uint64_t seed, bool random_weights) {
  check_size(n, kDefaultMaxPoints);
  Rng rng(seed);
  Matrix d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = rng.uniform(0.1, 1.0);
  }
  // Floyd-Warshall closure makes the draw a metric.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  }
  std::vector<double> w(n);
  if (random_weights) {
    double total = 0.0;
    for (double& x : w) {
      x = rng.uniform(0.5, 1.5);
      total += x;
    }
    for (double& x : w) x /= total;
  } else {
    w = uniform_weights(n);
  }
  return Space::validate(d, std::move(w));
}

Space two_point(double d, double w0) {
  return Space::validate({{0.0, d}, {d, 0.0}}, {w0, 1.0 - w0});
}

Space single_point() { return Space::validate({{0.0}}, {1.0}); }

}  // namespace mmspace
