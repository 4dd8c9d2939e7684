#include "mmspace/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "exact.hpp"
#include "mmspace/error.hpp"
#include "mmspace/parallel.hpp"
#include "mmspace/random.hpp"

namespace mmspace {

namespace {

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) fail(ErrorKind::InvalidArgument, "epsilon must lie in (0, 1)");
}

struct AlphaPoint {
  double value = 0.0;
  detail::Bits witness = 0;
};

/// One enumeration of the heavy sets, evaluated at every radius.
std::vector<AlphaPoint> alpha_points(const Space& space, double epsilon,
                                     std::span<const double> radii, std::size_t limit) {
  require_epsilon(epsilon);
  detail::require_exact(space, limit, "alpha");
  for (double r : radii) {
    if (!(r >= 0.0)) fail(ErrorKind::InvalidArgument, "radius must be nonnegative");
  }
  const std::size_t n = space.size();
  const detail::MassTable mass(space);
  const detail::Bits full = detail::full_bits(n);
  std::vector<std::vector<detail::Bits>> balls;
  balls.reserve(radii.size());
  for (double r : radii) balls.push_back(detail::ball_bits(space, r));

  std::vector<AlphaPoint> out(radii.size());
  std::vector<bool> seen(radii.size(), false);
  detail::for_each_heavy_set(mass, epsilon, [&](detail::Bits a, double) {
    for (std::size_t k = 0; k < radii.size(); ++k) {
      // Complement mass, so a full enlargement gives exactly 0.
      const double missing = mass(full & ~detail::enlarge_bits(a, balls[k]));
      if (!seen[k] || missing > out[k].value) {
        out[k] = {missing, a};
        seen[k] = true;
      }
    }
  });
  return out;
}

void check_monotone(std::span<const double> radii, std::span<const double> values) {
  std::vector<std::size_t> order(radii.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return radii[a] < radii[b]; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (values[order[k]] > values[order[k - 1]]) {
      throw std::logic_error("concentration profile is not nonincreasing in r");
    }
  }
}

}  // namespace

AlphaResult alpha_exact(const Space& space, double epsilon, double r, std::size_t exact_limit) {
  const double radii[] = {r};
  const auto p = alpha_points(space, epsilon, radii, exact_limit)[0];
  return {p.value, detail::to_mask(space.size(), p.witness)};
}

ConcentrationProfile alpha_profile(const Space& space, double epsilon,
                                   std::span<const double> radii, std::size_t exact_limit) {
  const auto points = alpha_points(space, epsilon, radii, exact_limit);
  ConcentrationProfile profile;
  profile.epsilon = epsilon;
  profile.radii.assign(radii.begin(), radii.end());
  for (const auto& p : points) {
    profile.values.push_back(p.value);
    profile.witnesses.push_back(detail::to_mask(space.size(), p.witness));
  }
  check_monotone(profile.radii, profile.values);
  return profile;
}

AlphaFunction::AlphaFunction(const Space& space, double epsilon, std::size_t exact_limit)
    : epsilon_(epsilon) {
  breakpoints_.push_back(0.0);
  breakpoints_.insert(breakpoints_.end(), space.distances().begin(), space.distances().end());
  for (const auto& p : alpha_points(space, epsilon, breakpoints_, exact_limit)) {
    values_.push_back(p.value);
  }
  check_monotone(breakpoints_, values_);
}

double AlphaFunction::operator()(double r) const {
  if (std::isinf(r)) return r > 0 ? 0.0 : values_.front();
  if (!(r >= 0.0)) fail(ErrorKind::InvalidArgument, "radius must be nonnegative");
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), r + kRadiusTolerance);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

bool alpha_swap_check(const Space& space, double epsilon, double r, std::size_t exact_limit) {
  const double a = alpha_exact(space, epsilon, r, exact_limit).value;
  const double b = alpha_exact(space, 1.0 - epsilon, r, exact_limit).value;
  return epsilon >= 0.5 ? a <= b + kMassCompareTolerance : b <= a + kMassCompareTolerance;
}

ConcentrationProfile alpha_ball_estimate(const Space& space, double epsilon,
                                         std::span<const double> radii, std::size_t centers,
                                         std::uint64_t seed) {
  require_epsilon(epsilon);
  const std::size_t n = space.size();
  centers = std::min(centers, n);
  Rng rng(seed);
  std::vector<std::size_t> chosen(n);
  std::iota(chosen.begin(), chosen.end(), std::size_t{0});
  for (std::size_t i = 0; i < centers; ++i) {
    std::swap(chosen[i], chosen[i + rng.below(n - i)]);
  }
  chosen.resize(centers);

  std::vector<std::vector<double>> per_center(centers, std::vector<double>(radii.size(), 0.0));
  parallel_for(centers, [&](std::size_t c) {
    const std::size_t center = chosen[c];
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
      return space.d(center, a) < space.d(center, b);
    });
    // Smallest ball around the center with mass >= ε.
    std::vector<std::size_t> cap;
    double m = 0.0;
    for (std::size_t k = 0; k < n && m < epsilon - kMassCompareTolerance; ++k) {
      cap.push_back(order[k]);
      m += space.weight(order[k]);
    }
    std::vector<double> to_cap(n, std::numeric_limits<double>::infinity());
    for (std::size_t a : cap) {
      const auto row = space.row(a);
      for (std::size_t x = 0; x < n; ++x) to_cap[x] = std::min(to_cap[x], row[x]);
    }
    for (std::size_t k = 0; k < radii.size(); ++k) {
      double missing = 0.0;
      for (std::size_t x = 0; x < n; ++x) {
        if (to_cap[x] > radii[k] + kRadiusTolerance) missing += space.weight(x);
      }
      per_center[c][k] = missing;
    }
  });

  ConcentrationProfile profile;
  profile.epsilon = epsilon;
  profile.radii.assign(radii.begin(), radii.end());
  profile.values.assign(radii.size(), 0.0);
  for (const auto& row : per_center) {
    for (std::size_t k = 0; k < radii.size(); ++k) {
      profile.values[k] = std::max(profile.values[k], row[k]);
    }
  }
  return profile;
}

double ProfileFit::operator()(double r) const {
  const double g = kind == EnvelopeKind::Gaussian ? r * r : r;
  return c1 * std::exp(-c2 * g);
}

ProfileFit fit_profile(const ConcentrationProfile& profile, EnvelopeKind kind) {
  if (profile.radii.size() != profile.values.size()) {
    fail(ErrorKind::ShapeMismatch, "profile radii and values differ in length");
  }
  std::vector<double> g;
  std::vector<double> y;
  for (std::size_t k = 0; k < profile.radii.size(); ++k) {
    if (profile.values[k] > 0.0) {
      const double r = profile.radii[k];
      g.push_back(kind == EnvelopeKind::Gaussian ? r * r : r);
      y.push_back(std::log(profile.values[k]));
    }
  }
  if (g.size() < 2) fail(ErrorKind::DegenerateProfile, "need at least two positive profile values");

  const double m = static_cast<double>(g.size());
  const double gm = std::accumulate(g.begin(), g.end(), 0.0) / m;
  const double ym = std::accumulate(y.begin(), y.end(), 0.0) / m;
  double sgg = 0.0;
  double sgy = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    sgg += (g[k] - gm) * (g[k] - gm);
    sgy += (g[k] - gm) * (y[k] - ym);
  }
  constexpr double kMinRate = 1e-9;
  double rate = sgg > 0.0 ? -sgy / sgg : 0.0;
  rate = std::max(rate, kMinRate);
  const double intercept = ym + rate * gm;

  ProfileFit fit;
  fit.kind = kind;
  fit.c2 = rate;
  fit.c1_fit = std::exp(intercept);
  double top = intercept;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double model = intercept - rate * g[k];
    fit.residual = std::max(fit.residual, std::abs(y[k] - model));
    top = std::max(top, y[k] + rate * g[k]);
  }
  fit.c1 = std::exp(top);
  return fit;
}

ProfileFit gaussian_to_exponential(const ProfileFit& gaussian) {
  if (gaussian.kind != EnvelopeKind::Gaussian) {
    fail(ErrorKind::InvalidArgument, "expected a gaussian envelope");
  }
  ProfileFit out = gaussian;
  out.kind = EnvelopeKind::Exponential;
  out.c1 = gaussian.c1 * std::exp(gaussian.c2 / 4.0);
  out.c1_fit = gaussian.c1_fit * std::exp(gaussian.c2 / 4.0);
  return out;
}

double quantile(const Space& space, const LipschitzFunction& f, double epsilon) {
  require_epsilon(epsilon);
  std::vector<double> values(f.values().begin(), f.values().end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  for (double m : values) {
    double below = 0.0;
    double above = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] <= m) below += space.weight(i);
      if (f[i] >= m) above += space.weight(i);
    }
    if (below >= epsilon - kMassCompareTolerance && above >= 1.0 - epsilon - kMassCompareTolerance) {
      return m;
    }
  }
  // Only reached through rounding: the largest value always qualifies.
  return values.back();
}

std::vector<double> concentration_radii(const Space& space, const LipschitzFunction& f,
                                        double epsilon) {
  const double m = quantile(space, f, epsilon);
  std::vector<double> radii{0.0};
  for (double v : f.values()) radii.push_back(std::abs(v - m));
  for (double d : space.distances()) radii.push_back(f.lip() * d);
  return unique_sorted(std::move(radii));
}

std::vector<BoundReport> check_concentration_inequality(
    const Space& space, const LipschitzFunction& f, const AlphaFunction& alpha_eps,
    const AlphaFunction& alpha_complement, std::span<const double> radii) {
  const double epsilon = alpha_eps.epsilon();
  const double lip = f.lip();
  const double m = quantile(space, f, epsilon);
  std::vector<BoundReport> out;
  for (double r : radii) {
    const double cut = r + kRadiusTolerance * std::max(1.0, std::abs(r));
    double lhs = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (std::abs(f[i] - m) > cut) lhs += space.weight(i);
    }
    const double s = lip > 0.0 ? r / lip : std::numeric_limits<double>::infinity();
    const double a = alpha_eps(s);
    const double b = alpha_complement(s);
    const Inputs inputs{{"r", r}, {"epsilon", epsilon}, {"lip", lip}, {"median", m}};
    out.push_back(make_check("concentration.two_sided", lhs, Relation::LessEqual, a + b, inputs));
    if (epsilon >= 0.5) {
      out.push_back(make_check("concentration.complement_doubled", lhs, Relation::LessEqual,
                               2.0 * b, inputs));
    }
  }
  return out;
}

std::vector<BoundReport> check_concentration_inequality(const Space& space,
                                                        const LipschitzFunction& f,
                                                        double epsilon,
                                                        std::span<const double> radii,
                                                        std::size_t exact_limit) {
  require_epsilon(epsilon);
  const AlphaFunction a(space, epsilon, exact_limit);
  const AlphaFunction b(space, 1.0 - epsilon, exact_limit);
  return check_concentration_inequality(space, f, a, b, radii);
}

}  // namespace mmspace
