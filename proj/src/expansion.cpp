#include "mmspace/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "exact.hpp"
#include "mmspace/enlargement.hpp"
#include "mmspace/error.hpp"
#include "mmspace/lipschitz.hpp"
#include "mmspace/random.hpp"

namespace mmspace {

namespace {

void require_params(double epsilon, double rho) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) fail(ErrorKind::InvalidArgument, "epsilon must lie in (0, 1)");
  if (!(rho > 0.0)) fail(ErrorKind::InvalidArgument, "rho must be positive");
}

std::string bits_hex(std::size_t n, detail::Bits bits) { return detail::to_mask(n, bits).to_hex(); }

}  // namespace

ExpansionResult exp_gromov(const Space& space, double epsilon, double rho, std::size_t exact_limit) {
  require_params(epsilon, rho);
  detail::require_exact(space, exact_limit, "exp_gromov");
  const std::size_t n = space.size();
  const detail::MassTable mass(space);
  const auto balls = detail::ball_bits(space, rho);
  double best = std::numeric_limits<double>::infinity();
  detail::Bits witness = 0;
  detail::for_each_heavy_set(mass, epsilon, [&](detail::Bits a, double) {
    const double grown = mass(detail::enlarge_bits(a, balls));
    if (grown < best) {
      best = grown;
      witness = a;
    }
  });
  ExpansionResult out;
  out.epsilon = epsilon;
  out.rho = rho;
  // μ(A_ρ) >= μ(A) >= ε up to the mass tolerance.
  out.value = std::max(1.0, best / epsilon);
  out.witness = detail::to_mask(n, witness);
  return out;
}

ExpansionResult exp_ledoux(const Space& space, double epsilon, double rho, std::size_t exact_limit) {
  require_params(epsilon, rho);
  detail::require_exact(space, exact_limit, "exp_ledoux");
  const std::size_t n = space.size();
  const detail::MassTable mass(space);
  const auto balls = detail::ball_bits(space, rho);
  const double cap = epsilon + kMassCompareTolerance;
  double best = std::numeric_limits<double>::infinity();
  detail::Bits witness = 0;
  detail::for_each_down_set(
      n, [&](detail::Bits b) { return mass(detail::enlarge_bits(b, balls)) <= cap; },
      [&](detail::Bits b) {
        const double ratio = mass(detail::enlarge_bits(b, balls)) / mass(b);
        if (ratio < best) {
          best = ratio;
          witness = b;
        }
      });
  ExpansionResult out;
  out.epsilon = epsilon;
  out.rho = rho;
  if (witness != 0) {
    out.value = std::max(1.0, best);
    out.witness = detail::to_mask(n, witness);
  }
  return out;
}

BoundReport iterated_ledoux_check(const Space& space, double epsilon, double rho,
                                  std::size_t kmax, std::size_t exact_limit) {
  const Inputs inputs{{"epsilon", epsilon}, {"rho", rho}, {"kmax", static_cast<double>(kmax)}};
  const auto ledoux = exp_ledoux(space, epsilon, rho, exact_limit);
  if (!ledoux.bounded()) return make_skip("ledoux.iterated", "Exp_L unbounded", inputs);
  const std::size_t n = space.size();
  const detail::MassTable mass(space);
  const double cap = epsilon + kMassCompareTolerance;
  const double value = *ledoux.value;

  BoundReport worst = make_check("ledoux.iterated", 0.0, Relation::LessEqual, 0.0, inputs);
  double worst_slack = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= kmax; ++k) {
    const auto balls = detail::ball_bits(space, static_cast<double>(k) * rho);
    const double factor = std::pow(value, static_cast<double>(k));
    detail::for_each_down_set(
        n, [&](detail::Bits b) { return mass(detail::enlarge_bits(b, balls)) <= cap; },
        [&](detail::Bits b) {
          const double lhs = factor * mass(b);
          const double rhs = mass(detail::enlarge_bits(b, balls));
          if (rhs - lhs < worst_slack) {
            worst_slack = rhs - lhs;
            worst = make_check("ledoux.iterated", lhs, Relation::LessEqual, rhs, inputs);
            worst.inputs.emplace_back("k", static_cast<double>(k));
            worst.witness = bits_hex(n, b);
          }
        });
  }
  return worst;
}

BoundReport gromov_monotonicity_check(const Space& space, const LipschitzFunction& f,
                                      double epsilon, double rho, std::size_t exact_limit) {
  Inputs inputs{{"epsilon", epsilon}, {"rho", rho}, {"lip", f.lip()}};
  if (f.lip() <= 0.0) return make_skip("gromov.monotonicity", "f is constant", inputs);
  const Space image = pushforward_space(space, f.values());
  const auto x = exp_gromov(space, epsilon, rho / f.lip(), exact_limit);
  const auto y = exp_gromov(image, epsilon, rho, exact_limit);
  return make_check("gromov.monotonicity", *x.value, Relation::LessEqual, *y.value,
                    std::move(inputs));
}

BoundReport ledoux_doubling_bound_check(const Space& space, double epsilon, double rho,
                                        std::size_t exact_limit) {
  Inputs inputs{{"epsilon", epsilon}, {"rho", rho}};
  const std::size_t n = space.size();
  std::size_t center = n;
  for (std::size_t x = 0; x < n && center == n; ++x) {
    if (ball_mass(space, x, 2.0 * rho) <= epsilon + kMassCompareTolerance) center = x;
  }
  if (center == n) {
    return make_skip("ledoux.doubling", "no x with mu(B(x, 2 rho)) <= epsilon", inputs);
  }
  const auto ledoux = exp_ledoux(space, epsilon, rho, exact_limit);
  const double c = doubling_constant(space, 0).constant;
  inputs.emplace_back("doubling", c);
  auto r = make_check("ledoux.doubling", *ledoux.value, Relation::LessEqual, c, std::move(inputs));
  r.witness = "x=" + std::to_string(center);
  return r;
}

double variance(const Space& space, std::span<const double> f) {
  double m1 = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    m1 += space.weight(i) * f[i];
    m2 += space.weight(i) * f[i] * f[i];
  }
  return std::max(0.0, m2 - m1 * m1);
}

double gradient_energy(const Space& space, std::span<const double> f) {
  const std::size_t n = space.size();
  double energy = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t y = 0; y < n; ++y) {
      if (y != x) nearest = std::min(nearest, space.d(x, y));
    }
    double slope = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      if (y != x && space.d(x, y) <= nearest + kRadiusTolerance) {
        slope = std::max(slope, std::abs(f[x] - f[y]) / space.d(x, y));
      }
    }
    energy += space.weight(x) * slope * slope;
  }
  return energy;
}

PoincareDiagnostic discrete_poincare_diagnostic(const Space& space, double constant,
                                                std::uint64_t seed, std::size_t random_count) {
  if (!(constant > 0.0)) fail(ErrorKind::InvalidArgument, "Poincare constant must be positive");
  PoincareDiagnostic out;
  out.constant = constant;
  auto add = [&](std::string name, std::span<const double> f) {
    PoincareRow row{std::move(name), variance(space, f), gradient_energy(space, f), true};
    row.holds = row.variance <= constant * row.gradient_energy + kCheckTolerance;
    out.all_hold = out.all_hold && row.holds;
    out.rows.push_back(std::move(row));
  };
  for (std::size_t x = 0; x < space.size(); ++x) {
    add("distance:" + std::to_string(x), space.row(x));
  }
  for (std::size_t k = 0; k < random_count; ++k) {
    const auto f = random_lipschitz(space, derive_seed(seed, k));
    add("random:" + std::to_string(k), f.values());
  }
  return out;
}

}  // namespace mmspace
