// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any hard criterion fails; the sampled-sphere demo only warns.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "mmspace/bounds.hpp"
#include "mmspace/concentration.hpp"
#include "mmspace/enlargement.hpp"
#include "mmspace/expansion.hpp"
#include "mmspace/lipschitz.hpp"
#include "mmspace/random.hpp"
#include "oracles.hpp"

using namespace mmspace;

namespace {

constexpr std::uint64_t kSweepSeed = 20240601;
constexpr std::size_t kSweepSpaces = 200;
constexpr double kSlack = -1e-9;

struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  double worst = std::numeric_limits<double>::infinity();
  std::string first_failure;

  /// Records lhs <= rhs.
  void le(double lhs, double rhs, const std::string& where) {
    ++checks;
    const double slack = rhs - lhs;
    worst = std::min(worst, slack);
    if (slack < kSlack) {
      if (failures++ == 0) first_failure = where;
    }
  }
  void require(bool ok, const std::string& where) { le(ok ? 0.0 : 1.0, 0.0, where); }
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

bool g_hard_failure = false;

void verdict(int id, const std::string& title, const Tally& t, double seconds, double time_limit,
             bool soft = false, const std::string& extra = {}) {
  const bool in_time = seconds <= time_limit;
  const bool ok = t.failures == 0 && in_time && t.checks > 0;
  const char* tag = ok ? "PASS" : (soft ? "WARN" : "FAIL");
  if (!ok && !soft) g_hard_failure = true;
  std::printf("[%s] %d %s: %zu checks, %zu failures, worst slack %.3g, %.2fs (limit %.0fs)%s%s\n", tag, id,
              title.c_str(), t.checks, t.failures, t.worst, seconds, time_limit,
              extra.empty() ? "" : ", ", extra.c_str());
  if (t.failures > 0) std::printf("       first failure: %s\n", t.first_failure.c_str());
  if (!in_time) std::printf("       over the time limit\n");
  std::fflush(stdout);
}

struct SweepSpace {
  std::uint64_t seed;
  Space space;
};

std::vector<SweepSpace> sweep_spaces(std::size_t count, std::size_t min_n, std::size_t max_n,
                                     std::uint64_t stream) {
  std::vector<SweepSpace> out;
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(kSweepSeed + stream, i));
    const std::size_t n = min_n + rng.below(max_n - min_n + 1);
    const std::uint64_t seed = rng.next();
    out.push_back({seed, random_metric(n, seed)});
  }
  return out;
}

std::string where(std::size_t i, const std::string& what) { return "space " + std::to_string(i) + ": " + what; }

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

int main() {
  const auto spaces = sweep_spaces(kSweepSpaces, 4, 10, 0);
  constexpr double eps = 0.5;

  // 1. Concentration inequality over random 1-Lipschitz functions.
  {
    Timer timer;
    Tally t;
    for (std::size_t i = 0; i < spaces.size(); ++i) {
      const auto& s = spaces[i].space;
      const AlphaFunction a(s, eps);
      const AlphaFunction b(s, 1.0 - eps);
      for (std::uint64_t k = 0; k < 10; ++k) {
        const auto f = random_lipschitz(s, derive_seed(spaces[i].seed, 100 + k));
        const auto radii = concentration_radii(s, f, eps);
        for (const auto& rep : check_concentration_inequality(s, f, a, b, radii)) {
          if (rep.name == "concentration.two_sided") t.le(rep.lhs, rep.rhs, where(i, "f" + std::to_string(k)));
        }
      }
    }
    verdict(1, "concentration inequality", t, timer.seconds(), 120);
  }

  // 2. Observable diameter duality; the κ = 0.3 lower bounds are reused below.
  std::vector<double> obsdiam_03(spaces.size());
  {
    Timer timer;
    Tally t;
    for (std::size_t i = 0; i < spaces.size(); ++i) {
      const auto& s = spaces[i].space;
      for (double kappa : {0.1, 0.3, 0.5}) {
        const double lower = obsdiam_lower(s, kappa, {20, 200, spaces[i].seed}).lower;
        if (kappa == 0.3) obsdiam_03[i] = lower;
        t.le(lower, obsdiam_upper(s, kappa, eps), where(i, "kappa " + fmt(kappa)));
      }
    }
    verdict(2, "observable diameter duality", t, timer.seconds(), 600);
  }

  // 3. Estimators against the n <= 5 reference values.
  {
    Timer timer;
    Tally t;
    constexpr double h = 0.05;
    const auto small = sweep_spaces(50, 2, 5, 1);
    for (std::size_t i = 0; i < small.size(); ++i) {
      const auto& s = small[i].space;
      const AscentOptions opts{20, 200, small[i].seed};
      for (double kappa : {0.1, 0.3, 0.5}) {
        const double ref = obsdiam_oracle(s, kappa, h);
        const double lower = obsdiam_lower(s, kappa, opts).lower;
        const double upper = obsdiam_upper(s, kappa, eps);
        t.le(lower - h * s.diameter(), ref, where(i, "obsdiam lower, kappa " + fmt(kappa)));
        t.le(ref, upper + 1e-9, where(i, "obsdiam upper, kappa " + fmt(kappa)));
      }
      for (double lambda : {0.5, 1.0, 2.0}) {
        const double ref = laplace_oracle(s, lambda, h);
        const double lower = laplace_lower(s, lambda, opts).lower;
        t.le(lower - 0.1 * lambda * h * lower, ref, where(i, "laplace, lambda " + fmt(lambda)));
      }
    }
    verdict(3, "oracle sandwich", t, timer.seconds(), 300);
  }

  // Exact expansion data shared by criteria 4-6.
  struct RhoRow {
    double rho;
    double gromov;
    std::optional<double> ledoux_eps;
    std::optional<double> ledoux_comp;
  };
  std::vector<std::vector<RhoRow>> rows(spaces.size());
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    const auto& s = spaces[i].space;
    for (double rho : default_rho_grid(s)) {
      rows[i].push_back({rho, *exp_gromov(s, eps, rho).value, exp_ledoux(s, eps, rho).value,
                         exp_ledoux(s, 1.0 - eps, rho).value});
    }
  }
  auto above_one = [](const std::optional<double>& v) { return v && *v > 1.0; };

  // 4. Exponential concentration from the expansion coefficients.
  {
    Timer timer;
    Tally t;
    for (std::size_t i = 0; i < spaces.size(); ++i) {
      const auto& s = spaces[i].space;
      const AlphaFunction a(s, eps);
      for (const auto& row : rows[i]) {
        if (!above_one(row.ledoux_comp)) continue;
        for (int k = 1; k <= 3; ++k) {
          const double r = k * row.rho;
          if (r > s.diameter() + kRadiusTolerance) break;
          const double l = *row.ledoux_comp;
          const double rhs_l = rhs_concentration_ledoux(eps, l, row.rho, r);
          const double rhs_gl = rhs_concentration_gromov_ledoux(eps, row.gromov, l, row.rho, r);
          const std::string at = where(i, "rho " + fmt(row.rho) + ", r " + fmt(r));
          t.le(a(r), rhs_l, at + " (Ledoux)");
          t.le(a(r), rhs_gl, at + " (Gromov-Ledoux)");
          t.le(rhs_l, rhs_gl, at + " (sharper)");
        }
      }
    }
    verdict(4, "concentration from expansion coefficients", t, timer.seconds(), 600);
  }

  // 5. Exp_G against the observable diameter.
  {
    Timer timer;
    Tally t;
    std::size_t upper_cases = 0;
    constexpr double kappa = 0.3;
    for (std::size_t i = 0; i < spaces.size(); ++i) {
      const double od = obsdiam_03[i];
      for (const auto& row : rows[i]) {
        if (!above_one(row.ledoux_comp)) continue;
        const double l = *row.ledoux_comp;
        const std::string at = where(i, "rho " + fmt(row.rho));
        t.le(gromov_answer_lower(kappa, eps, row.rho, l, od), row.gromov, at + " (lower)");
        if (gromov_upper_hypothesis(kappa, eps, row.gromov, l)) {
          ++upper_cases;
          t.le(row.gromov, gromov_upper(kappa, eps, row.rho, l, od), at + " (upper)");
          t.le(od, obsdiam_upper_by_ledoux(kappa, eps, row.rho, l), at + " (obsdiam)");
        }
      }
    }
    verdict(5, "expansion versus observable diameter", t, timer.seconds(), 600, false,
            std::to_string(upper_cases) + " cases meet the upper-bound hypothesis");
  }

  // 6. Diameter bounds.
  {
    Timer timer;
    Tally t;
    for (std::size_t i = 0; i < spaces.size(); ++i) {
      const auto& s = spaces[i].space;
      const double c = doubling_constant(s, 0).constant;
      for (const auto& row : rows[i]) {
        if (!above_one(row.ledoux_eps) || !above_one(row.ledoux_comp)) continue;
        const auto bound = diameter_upper(c, eps, row.rho, *row.ledoux_eps, *row.ledoux_comp);
        t.le(s.diameter(), bound.value, where(i, "upper, rho " + fmt(row.rho)));
      }
      for (double lambda : {0.5, 1.0, 2.0}) {
        t.le(diameter_lower(s, lambda, {20, 200, spaces[i].seed}), s.diameter(),
             where(i, "lower, lambda " + fmt(lambda)));
      }
    }
    verdict(6, "diameter bounds", t, timer.seconds(), 600);
  }

  // 7. Worked values.
  {
    Timer timer;
    Tally t;
    auto near = [&](double got, double want, double tol, const std::string& what) {
      t.le(std::abs(got - want), tol, what + " = " + fmt(got) + ", expected " + fmt(want));
    };
    const auto c6 = cycle(6);
    const auto two = two_point();
    for (int rep = 0; rep < 2; ++rep) {
      near(alpha_exact(c6, 0.5, 1.0).value, 1.0 / 6.0, 1e-12, "cycle(6) alpha");
      near(*exp_gromov(c6, 0.5, 1.0).value, 5.0 / 3.0, 1e-12, "cycle(6) Exp_G");
      near(*exp_ledoux(c6, 0.5, 1.0).value, 3.0, 1e-12, "cycle(6) Exp_L");
      near(doubling_constant(c6).constant, oracle::doubling(c6), 1e-12, "cycle(6) doubling");
      near(alpha_exact(two, 0.5, 0.5).value, 0.5, 1e-12, "two-point alpha");
      near(obsdiam_oracle(two, 0.3, 0.01), 1.0, 1e-6, "two-point ObsDiam");
      near(laplace_oracle(two, 1.0, 0.01), std::cosh(0.5), 1e-6, "two-point Lap(1)");
    }
    // Seeded estimators land on the same bits whatever the seed.
    const double od0 = obsdiam_lower(two, 0.3, {20, 200, 0}).lower;
    const double lap0 = laplace_lower(two, 1.0, {20, 200, 0}).lower;
    near(od0, 1.0, 1e-6, "two-point obsdiam_lower");
    near(lap0, std::cosh(0.5), 1e-6, "two-point laplace_lower");
    for (std::uint64_t seed = 1; seed < 10; ++seed) {
      t.require(obsdiam_lower(two, 0.3, {20, 200, seed}).lower == od0, "obsdiam_lower seed " + std::to_string(seed));
      t.require(laplace_lower(two, 1.0, {20, 200, seed}).lower == lap0, "laplace_lower seed " + std::to_string(seed));
      t.require(obsdiam_lower(c6, 0.1, {20, 200, seed}).lower == 3.0, "cycle(6) obsdiam_lower seed " + std::to_string(seed));
    }
    verdict(7, "worked values", t, timer.seconds(), 600);
  }

  // 8. Sampled sphere against the Gaussian envelope.
  {
    Timer timer;
    Tally t;
    const auto s = sampled_sphere(2, 1.0, 2000, 1);
    std::vector<double> radii;
    for (int k = 0; k < 10; ++k) radii.push_back(k * (s.diameter() / 3.0) / 9.0);
    const auto profile = alpha_ball_estimate(s, 0.5, radii, 50, 7);
    for (std::size_t k = 0; k < radii.size(); ++k) {
      t.le(profile.values[k], sphere_gaussian_envelope(2, 1.0, radii[k]) + 0.05, "r = " + fmt(radii[k]));
    }
    const auto fit = fit_profile(profile, EnvelopeKind::Gaussian);
    t.require(fit.c2 >= 0.5 && fit.c2 <= 2.0, "fitted C2 = " + fmt(fit.c2));
    verdict(8, "sphere Gaussian envelope", t, timer.seconds(), 180, true, "fitted C2 " + fmt(fit.c2));
  }

  // 9. Spectral gaps of cycles and complete graphs.
  {
    Timer timer;
    Tally t;
    for (std::size_t n = 4; n <= 12; ++n) {
      const double want = 2.0 * (1.0 - std::cos(2.0 * std::numbers::pi / static_cast<double>(n)));
      const auto got = lambda1_graph(cycle(n), AdjacencyRule::unit_distance());
      t.le(std::abs(got.lambda1 - want), 1e-8, "cycle(" + std::to_string(n) + ")");
      Matrix d(n, std::vector<double>(n, 1.0));
      for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
      const auto k = Space::validate(d, std::vector<double>(n, 1.0 / static_cast<double>(n)));
      const auto kn = lambda1_graph(k, AdjacencyRule::unit_distance());
      t.le(std::abs(kn.lambda1 - static_cast<double>(n)), 1e-8, "K_" + std::to_string(n));
    }
    verdict(9, "spectral gap", t, timer.seconds(), 60);
  }

  return g_hard_failure ? 1 : 0;
}
