#include "mmspace/enlargement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mmspace/error.hpp"

namespace mmspace {

namespace {

/// Distances from one point sorted ascending, with prefix masses, so that
/// closed and open ball masses are binary searches.
struct SortedRow {
  std::vector<double> dist;
  std::vector<double> prefix;  // prefix[k] = mass of the k nearest points

  SortedRow(const Space& space, std::size_t x) {
    const std::size_t n = space.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return space.d(x, a) < space.d(x, b); });
    dist.resize(n);
    prefix.assign(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      dist[k] = space.d(x, order[k]);
      prefix[k + 1] = prefix[k] + space.weight(order[k]);
    }
  }

  double closed(double r) const {
    const auto it = std::upper_bound(dist.begin(), dist.end(), r + kRadiusTolerance);
    return prefix[static_cast<std::size_t>(it - dist.begin())];
  }

  /// μ{ d(x, ·) < r }: the left limit of closed(s) as s increases to r.
  double open(double r) const {
    const auto it = std::lower_bound(dist.begin(), dist.end(), r - kRadiusTolerance);
    return prefix[static_cast<std::size_t>(it - dist.begin())];
  }
};

double characterization_rhs(double constant, double r1, double r2) {
  return constant * constant * std::pow(r2 / r1, std::log2(constant));
}

}  // namespace

SubsetMask enlarge(const Space& space, const SubsetMask& subset, double r) {
  const std::size_t n = space.size();
  if (subset.size() != n) fail(ErrorKind::ShapeMismatch, "subset size does not match space");
  if (subset.empty()) fail(ErrorKind::EmptySet, "cannot enlarge an empty set");
  if (!(r >= 0.0)) fail(ErrorKind::InvalidArgument, "radius must be nonnegative");
  const auto members = subset.indices();
  SubsetMask out(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t a : members) {
      if (space.d(x, a) <= r + kRadiusTolerance) {
        out.set(x);
        break;
      }
    }
  }
  return out;
}

SubsetMask ball(const Space& space, std::size_t center, double r) {
  if (center >= space.size()) fail(ErrorKind::InvalidArgument, "center out of range");
  return enlarge(space, SubsetMask::singleton(space.size(), center), r);
}

double ball_mass(const Space& space, std::size_t center, double r) {
  double m = 0.0;
  const auto row = space.row(center);
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] <= r + kRadiusTolerance) m += space.weight(j);
  }
  return m;
}

std::vector<double> doubling_breakpoints(const Space& space, std::size_t center) {
  std::vector<double> out;
  for (double d : space.row(center)) {
    if (d > 0.0) {
      out.push_back(d);
      out.push_back(d / 2.0);
    }
  }
  return unique_sorted(std::move(out));
}

DoublingReport doubling_constant(const Space& space, std::size_t characterization_limit) {
  DoublingReport report;
  const std::size_t n = space.size();
  for (std::size_t x = 0; x < n; ++x) {
    const SortedRow row(space, x);
    for (double r : doubling_breakpoints(space, x)) {
      const double ratio = row.closed(2.0 * r) / row.closed(r);
      if (ratio > report.constant) {
        report.constant = ratio;
        report.witness_point = x;
        report.witness_radius = r;
      }
    }
  }
  if (n <= characterization_limit) {
    const auto check = check_doubling_characterization(space, report.constant);
    report.characterization_checked = true;
    report.characterization_ok = check.ok;
    report.worst_quadruple = check.worst;
  }
  return report;
}

CharacterizationResult check_doubling_characterization(const Space& space, double constant) {
  if (!(constant >= 1.0)) fail(ErrorKind::InvalidArgument, "doubling constant must be >= 1");
  const std::size_t n = space.size();
  std::vector<SortedRow> rows;
  rows.reserve(n);
  std::vector<std::vector<double>> breakpoints;
  breakpoints.reserve(n);
  for (std::size_t x = 0; x < n; ++x) {
    rows.emplace_back(space, x);
    breakpoints.push_back(doubling_breakpoints(space, x));
  }

  CharacterizationResult result;
  double worst_slack = std::numeric_limits<double>::infinity();
  auto consider = [&](std::size_t x, std::size_t y, double r1, double r2, bool open,
                      double denominator) {
    DoublingQuadruple q{x, y, r1, r2, open, rows[y].closed(r2) / denominator,
                        characterization_rhs(constant, r1, r2)};
    ++result.quadruples_checked;
    // Relative slack so that large ratios are not held to an absolute 1e-12.
    const double slack = (q.rhs - q.lhs) / q.rhs;
    if (slack < worst_slack) {
      worst_slack = slack;
      result.worst = q;
    }
  };

  for (std::size_t y = 0; y < n; ++y) {
    // The left side only changes when r2 crosses a distance from y, and the
    // right side grows with r2, so r2 ranges over those distances.
    for (double r2 : breakpoints[y]) {
      for (std::size_t x = 0; x < n; ++x) {
        if (space.d(x, y) > r2 + kRadiusTolerance) continue;
        // For r1 in [b_k, b_{k+1}) the denominator is fixed and the right side
        // decreases, so the supremum sits at the left limit of b_{k+1}, or at
        // r1 = r2 when r2 falls inside the interval.
        for (double b : breakpoints[x]) {
          if (b > r2 + kRadiusTolerance) break;
          consider(x, y, b, r2, true, rows[x].open(b));
        }
        consider(x, y, r2, r2, false, rows[x].closed(r2));
      }
    }
  }
  result.ok = worst_slack >= -1e-12;
  return result;
}

}  // namespace mmspace
