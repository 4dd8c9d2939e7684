#include "mmspace/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "exact.hpp"
#include "mmspace/concentration.hpp"
#include "mmspace/error.hpp"
#include "mmspace/parallel.hpp"
#include "mmspace/random.hpp"

namespace mmspace {

namespace {

constexpr std::size_t kOracleLimit = 5;
constexpr double kLipSlack = 1e-12;

void require_kappa(double kappa) {
  if (!(kappa > 0.0 && kappa < 1.0)) fail(ErrorKind::InvalidArgument, "kappa must lie in (0, 1)");
}

void require_oracle(const Space& space, double step) {
  if (space.size() > kOracleLimit) {
    fail(ErrorKind::TooLargeForOracle,
         "oracle supports at most 5 points, got " + std::to_string(space.size()));
  }
  if (!(step > 0.0)) fail(ErrorKind::InvalidArgument, "oracle step must be positive");
}

std::vector<double> scaled_to_lip(const Space& space, std::vector<double> f, double target) {
  const double lip = lipschitz_constant(space, f);
  if (lip > target) {
    const double s = target / lip;
    for (double& v : f) v *= s;
  }
  return f;
}

void center(const Space& space, std::vector<double>& f) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m += space.weight(i) * f[i];
  for (double& v : f) v -= m;
}

bool is_one_lipschitz(const Space& space, std::span<const double> f) {
  return lipschitz_constant(space, f) <= 1.0 + kLipSlack;
}

/// Moves f[i] to the nearest value keeping every pair 1-Lipschitz, all other
/// values fixed. f must be 1-Lipschitz apart from point i.
void clamp_point(const Space& space, std::vector<double>& f, std::size_t i) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (j == i) continue;
    lo = std::max(lo, f[j] - space.d(i, j));
    hi = std::min(hi, f[j] + space.d(i, j));
  }
  if (lo <= hi) f[i] = std::clamp(f[i], lo, hi);
}

/// Candidate family shared by both estimators: distance functions and
/// distances to pairs.
std::vector<std::vector<double>> distance_candidates(const Space& space) {
  const std::size_t n = space.size();
  std::vector<std::vector<double>> out;
  for (std::size_t x = 0; x < n; ++x) {
    const auto row = space.row(x);
    out.emplace_back(row.begin(), row.end());
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      std::vector<double> f(n);
      for (std::size_t x = 0; x < n; ++x) f[x] = std::min(space.d(x, a), space.d(x, b));
      out.push_back(std::move(f));
    }
  }
  return out;
}

/// Rounding in the repairs can gain an ulp without a better function; only
/// relative gains above this count as improvements.
constexpr double kAscentGain = 1e-12;

bool gains(double value, double incumbent) {
  return value > incumbent + kAscentGain * std::max(1.0, std::abs(incumbent));
}

struct AscentResult {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<double> f;
};

/// Derivative-free coordinate ascent. Each move shifts one value by ±h·diam
/// and tries two repairs: rescaling the whole function, and clamping the moved
/// value into its Lipschitz interval. `normalize` maps either to a feasible
/// function. h halves after 2n consecutive non-improving moves.
AscentResult coordinate_ascent(const Space& space, std::vector<double> f,
                               const std::function<double(std::span<const double>)>& objective,
                               const std::function<void(std::vector<double>&)>& normalize,
                               Rng& rng, std::size_t budget) {
  const std::size_t n = space.size();
  const double diam = space.diameter();
  normalize(f);
  AscentResult best{objective(f), f};
  if (n < 2 || diam <= 0.0) return best;
  double h = 0.5;
  std::size_t failures = 0;
  for (std::size_t move = 0; move < budget && h > 1e-6; ++move) {
    const std::size_t i = rng.below(n);
    const double delta = (rng.below(2) == 0 ? 1.0 : -1.0) * h * diam;

    std::vector<double> scaled = best.f;
    scaled[i] += delta;
    normalize(scaled);

    std::vector<double> clamped = best.f;
    clamped[i] += delta;
    clamp_point(space, clamped, i);
    normalize(clamped);

    bool improved = false;
    for (auto* cand : {&scaled, &clamped}) {
      const double v = objective(*cand);
      if (gains(v, best.value)) {
        best = {v, std::move(*cand)};
        improved = true;
      }
    }
    if (improved) {
      failures = 0;
    } else if (++failures >= 2 * n) {
      h /= 2.0;
      failures = 0;
    }
  }
  return best;
}

/// Runs `restarts` ascents in parallel. Restart 0 starts from `seed_start`,
/// the others from random 1-Lipschitz functions. Ties keep the lowest index.
AscentResult multi_start(const Space& space, const std::vector<double>& seed_start,
                         const std::function<double(std::span<const double>)>& objective,
                         const std::function<void(std::vector<double>&)>& normalize,
                         const AscentOptions& options) {
  const std::size_t restarts = std::max<std::size_t>(1, options.restarts);
  std::vector<AscentResult> results(restarts);
  parallel_for(restarts, [&](std::size_t k) {
    const std::uint64_t stream_seed = derive_seed(options.seed, k);
    Rng rng(stream_seed);
    std::vector<double> start = seed_start;
    if (k > 0) {
      const auto g = random_lipschitz(space, derive_seed(stream_seed, 1));
      start.assign(g.values().begin(), g.values().end());
    }
    results[k] = coordinate_ascent(space, std::move(start), objective, normalize, rng, options.budget);
  });
  std::size_t best = 0;
  for (std::size_t k = 1; k < restarts; ++k) {
    if (gains(results[k].value, results[best].value)) best = k;
  }
  return results[best];
}

// ---------------------------------------------------------------------------
// Dense simplex for max c·x, A x <= b, x >= 0 with b >= 0, Bland's rule.

struct LinearProgram {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> c;
};

std::vector<double> solve_lp(const LinearProgram& lp) {
  const std::size_t m = lp.a.size();
  const std::size_t nv = lp.c.size();
  const std::size_t cols = nv + m;
  constexpr double kPivot = 1e-12;
  std::vector<std::vector<double>> t(m, std::vector<double>(cols + 1, 0.0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < nv; ++j) t[i][j] = lp.a[i][j];
    t[i][nv + i] = 1.0;
    t[i][cols] = lp.b[i];
    basis[i] = nv + i;
  }
  std::vector<double> z(cols + 1, 0.0);
  for (std::size_t j = 0; j < nv; ++j) z[j] = -lp.c[j];

  for (std::size_t iter = 0; iter < 10000; ++iter) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (z[j] < -kPivot) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] > kPivot) {
        const double ratio = t[i][cols] / t[i][enter];
        if (ratio < best_ratio - 1e-15 ||
            (ratio <= best_ratio + 1e-15 && leave < m && basis[i] < basis[leave])) {
          best_ratio = std::min(best_ratio, ratio);
          leave = i;
        }
      }
    }
    if (leave == m) fail(ErrorKind::InvalidArgument, "linear program is unbounded");
    const double p = t[leave][enter];
    for (double& v : t[leave]) v /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0.0) continue;
      const double factor = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= factor * t[leave][j];
    }
    const double factor = z[enter];
    for (std::size_t j = 0; j <= cols; ++j) z[j] -= factor * t[leave][j];
    basis[leave] = enter;
  }
  std::vector<double> x(nv, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < nv) x[basis[i]] = std::max(0.0, t[i][cols]);
  }
  return x;
}

/// Exact ObsDiam for a fixed ordering of the points: maximize the narrowest
/// heavy window over 1-Lipschitz functions nondecreasing along `order`.
std::vector<double> best_for_order(const Space& space, const std::vector<std::size_t>& order,
                                   double kappa) {
  const std::size_t n = order.size();
  const std::size_t nv = n;  // f(order[1..n-1]) then t
  const std::size_t t_var = n - 1;
  LinearProgram lp;
  lp.c.assign(nv, 0.0);
  lp.c[t_var] = 1.0;
  auto var = [](std::size_t k) { return k - 1; };  // position k >= 1
  auto row = [&]() { return std::vector<double>(nv, 0.0); };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto r = row();
      r[var(j)] += 1.0;
      if (i > 0) r[var(i)] -= 1.0;
      lp.a.push_back(std::move(r));
      lp.b.push_back(space.d(order[i], order[j]));
    }
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    auto r = row();
    r[var(k)] += 1.0;
    r[var(k + 1)] -= 1.0;
    lp.a.push_back(std::move(r));
    lp.b.push_back(0.0);
  }
  const double need = 1.0 - kappa - kMassCompareTolerance;
  for (std::size_t lo = 0; lo < n; ++lo) {
    double m = 0.0;
    for (std::size_t hi = lo; hi < n; ++hi) {
      m += space.weight(order[hi]);
      if (m >= need) {
        auto r = row();
        r[t_var] += 1.0;
        if (hi > lo) {
          r[var(hi)] -= 1.0;
          if (lo > 0) r[var(lo)] += 1.0;
        }
        lp.a.push_back(std::move(r));
        lp.b.push_back(0.0);
        break;
      }
    }
  }
  const auto x = solve_lp(lp);
  std::vector<double> f(space.size(), 0.0);
  for (std::size_t k = 1; k < n; ++k) f[order[k]] = x[var(k)];
  return f;
}

/// Lattice functions with f(0) = 0 and values in hℤ ∩ [-diam, diam] whose
/// pairwise differences stay within d + slack. visit(f).
void for_each_lattice_function(const Space& space, double step, double slack,
                               const std::function<void(const std::vector<double>&)>& visit) {
  const std::size_t n = space.size();
  const double diam = space.diameter();
  const auto kmax = static_cast<long>(std::floor(diam / step + 1e-9));
  std::vector<double> f(n, 0.0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      visit(f);
      return;
    }
    double lo = -diam;
    double hi = diam;
    for (std::size_t j = 0; j < i; ++j) {
      lo = std::max(lo, f[j] - space.d(i, j) - slack);
      hi = std::min(hi, f[j] + space.d(i, j) + slack);
    }
    const long klo = std::max(-kmax, static_cast<long>(std::ceil(lo / step - 1e-9)));
    const long khi = std::min(kmax, static_cast<long>(std::floor(hi / step + 1e-9)));
    for (long k = klo; k <= khi; ++k) {
      f[i] = static_cast<double>(k) * step;
      rec(i + 1);
    }
  };
  rec(1);
}

}  // namespace

LipschitzFunction mcshane_extend(const Space& space,
                                 std::span<const std::pair<std::size_t, double>> anchors,
                                 double lipschitz) {
  if (anchors.empty()) fail(ErrorKind::EmptySet, "McShane extension needs at least one anchor");
  if (!(lipschitz >= 0.0)) fail(ErrorKind::InvalidArgument, "Lipschitz constant must be nonnegative");
  const std::size_t n = space.size();
  for (const auto& [a, ga] : anchors) {
    if (a >= n) fail(ErrorKind::InvalidArgument, "anchor point out of range");
    if (!std::isfinite(ga)) fail(ErrorKind::NonFinite, "anchor value is not finite");
  }
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    for (std::size_t j = i + 1; j < anchors.size(); ++j) {
      const auto [a, ga] = anchors[i];
      const auto [b, gb] = anchors[j];
      const double allowed = lipschitz * space.d(a, b);
      if (std::abs(ga - gb) > allowed + kLipSlack * std::max(1.0, allowed)) {
        fail(ErrorKind::AnchorsNotLipschitz,
             "anchors " + std::to_string(a) + " and " + std::to_string(b) + " differ by " +
                 std::to_string(std::abs(ga - gb)) + " > " + std::to_string(allowed));
      }
    }
  }
  std::vector<double> f(n, std::numeric_limits<double>::infinity());
  for (std::size_t x = 0; x < n; ++x) {
    for (const auto& [a, ga] : anchors) f[x] = std::min(f[x], ga + lipschitz * space.d(x, a));
  }
  return LipschitzFunction(space, std::move(f));
}

LipschitzFunction shrink_to_lipschitz(const Space& space, const LipschitzFunction& f,
                                      double lipschitz) {
  if (!(lipschitz > 0.0)) fail(ErrorKind::InvalidArgument, "Lipschitz target must be positive");
  if (f.lip() <= lipschitz) return f;
  std::vector<double> g(f.values().begin(), f.values().end());
  const double s = lipschitz / f.lip();
  for (double& v : g) v *= s;
  return LipschitzFunction(space, std::move(g));
}

LipschitzFunction random_lipschitz(const Space& space, std::uint64_t seed, double lipschitz) {
  const std::size_t n = space.size();
  Rng rng(seed);
  const double scale = std::max(space.diameter(), 1.0) * lipschitz;
  std::vector<double> raw(n);
  for (double& v : raw) v = rng.uniform(0.0, scale);
  auto shrunk = scaled_to_lip(space, raw, lipschitz);
  if (n < 2 || rng.below(2) == 0) return LipschitzFunction(space, std::move(shrunk));
  // McShane extension from a random subset of the shrunk values reaches the
  // full Lipschitz constant far more often than scaling alone.
  std::vector<std::pair<std::size_t, double>> anchors;
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.below(2) == 0) anchors.emplace_back(i, shrunk[i]);
  }
  if (anchors.empty()) anchors.emplace_back(rng.below(n), 0.0);
  auto ext = mcshane_extend(space, anchors, lipschitz);
  return shrink_to_lipschitz(space, ext, lipschitz);
}

PushforwardAtoms pushforward(const Space& space, std::span<const double> f) {
  if (f.size() != space.size()) fail(ErrorKind::ShapeMismatch, "function size mismatch");
  std::vector<std::size_t> order(f.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return f[a] < f[b]; });
  PushforwardAtoms atoms;
  for (std::size_t i : order) {
    if (!atoms.positions.empty() && atoms.positions.back() == f[i]) {
      atoms.masses.back() += space.weight(i);
    } else {
      atoms.positions.push_back(f[i]);
      atoms.masses.push_back(space.weight(i));
    }
  }
  return atoms;
}

Space pushforward_space(const Space& space, std::span<const double> f) {
  const auto atoms = pushforward(space, f);
  const std::size_t m = atoms.positions.size();
  Matrix d(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) d[i][j] = std::abs(atoms.positions[i] - atoms.positions[j]);
  }
  return Space::validate(d, atoms.masses);
}

double partial_diameter_line(const PushforwardAtoms& atoms, double kappa) {
  require_kappa(kappa);
  const std::size_t m = atoms.positions.size();
  if (m == 0) fail(ErrorKind::EmptySet, "no atoms");
  const double need = 1.0 - kappa - kMassCompareTolerance;
  double best = std::numeric_limits<double>::infinity();
  double window = 0.0;
  std::size_t hi = 0;
  for (std::size_t lo = 0; lo < m; ++lo) {
    while (hi < m && window < need) window += atoms.masses[hi++];
    if (window < need) break;
    best = std::min(best, atoms.positions[hi - 1] - atoms.positions[lo]);
    window -= atoms.masses[lo];
  }
  return best;
}

double observable_spread(const Space& space, std::span<const double> f, double kappa) {
  return partial_diameter_line(pushforward(space, f), kappa);
}

double partial_diameter_space(const Space& space, double kappa, std::size_t exact_limit) {
  require_kappa(kappa);
  detail::require_exact(space, exact_limit, "partial_diameter_space");
  const std::size_t n = space.size();
  const detail::MassTable mass(space);
  const double need = 1.0 - kappa - kMassCompareTolerance;
  double best = space.diameter();
  // Depth-first over sets in increasing index order, stopping at the first
  // heavy set and pruning once the running diameter cannot improve.
  std::function<void(detail::Bits, double, double, std::size_t)> rec =
      [&](detail::Bits bits, double m, double diam, std::size_t next) {
        if (diam >= best) return;
        if (m >= need) {
          best = diam;
          return;
        }
        if (next >= n || m + mass.suffix(next) < need) return;
        for (std::size_t i = next; i < n; ++i) {
          double d = diam;
          for (detail::Bits rest = bits; rest; rest &= rest - 1) {
            d = std::max(d, space.d(i, static_cast<std::size_t>(std::countr_zero(rest))));
          }
          rec(bits | (detail::Bits{1} << i), m + space.weight(i), d, i + 1);
        }
      };
  rec(0, 0.0, 0.0, 0);
  return best;
}

ObsDiamEstimate obsdiam_lower(const Space& space, double kappa, const AscentOptions& options) {
  require_kappa(kappa);
  const std::size_t n = space.size();
  ObsDiamEstimate est;
  est.upper = std::numeric_limits<double>::infinity();
  est.method = "candidates";
  est.witness.assign(n, 0.0);
  auto objective = [&](std::span<const double> f) { return observable_spread(space, f, kappa); };
  est.lower = objective(est.witness);
  for (auto& f : distance_candidates(space)) {
    const double v = objective(f);
    if (v > est.lower) {
      est.lower = v;
      est.witness = std::move(f);
    }
  }
  if (n < 2 || options.budget == 0) return est;
  auto normalize = [&](std::vector<double>& f) { f = scaled_to_lip(space, std::move(f), 1.0); };
  const auto best = multi_start(space, est.witness, objective, normalize, options);
  if (gains(best.value, est.lower)) {
    est.lower = best.value;
    est.witness = best.f;
    est.method = "ascent";
  }
  return est;
}

double obsdiam_upper(const Space& space, double kappa, double epsilon, std::size_t exact_limit) {
  require_kappa(kappa);
  if (!(epsilon > 0.0 && epsilon <= 0.5)) fail(ErrorKind::InvalidArgument, "epsilon must lie in (0, 1/2]");
  const AlphaFunction alpha(space, epsilon, exact_limit);
  for (std::size_t k = 0; k < alpha.breakpoints().size(); ++k) {
    if (alpha.values()[k] <= kappa / 2.0 + kMassCompareTolerance) return 2.0 * alpha.breakpoints()[k];
  }
  return 2.0 * space.diameter();
}

ObsDiamEstimate obsdiam_sandwich(const Space& space, double kappa, double epsilon,
                                 const AscentOptions& options, std::size_t exact_limit) {
  auto est = obsdiam_lower(space, kappa, options);
  est.upper = obsdiam_upper(space, kappa, epsilon, exact_limit);
  return est;
}

double obsdiam_oracle(const Space& space, double kappa, double step) {
  require_kappa(kappa);
  require_oracle(space, step);
  const std::size_t n = space.size();
  double best = 0.0;
  for_each_lattice_function(space, step, kLipSlack, [&](const std::vector<double>& f) {
    best = std::max(best, observable_spread(space, f, kappa));
  });
  if (n < 2) return best;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  do {
    const auto f = best_for_order(space, order, kappa);
    if (is_one_lipschitz(space, f)) best = std::max(best, observable_spread(space, f, kappa));
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

double laplace_value(const Space& space, std::span<const double> f, double lambda) {
  if (f.size() != space.size()) fail(ErrorKind::ShapeMismatch, "function size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += space.weight(i) * std::exp(lambda * f[i]);
  return s;
}

LaplaceEstimate laplace_lower(const Space& space, double lambda, const AscentOptions& options) {
  if (!(lambda > 0.0)) fail(ErrorKind::InvalidArgument, "lambda must be positive");
  const std::size_t n = space.size();
  LaplaceEstimate est;
  est.lambda = lambda;
  est.witness.assign(n, 0.0);
  auto objective = [&](std::span<const double> f) { return laplace_value(space, f, lambda); };
  est.lower = objective(est.witness);
  for (auto f : distance_candidates(space)) {
    for (double sign : {1.0, -1.0}) {
      std::vector<double> g(f);
      for (double& v : g) v *= sign;
      center(space, g);
      const double v = objective(g);
      if (v > est.lower) {
        est.lower = v;
        est.witness = std::move(g);
      }
    }
  }
  if (n < 2 || options.budget == 0) return est;
  auto normalize = [&](std::vector<double>& f) {
    f = scaled_to_lip(space, std::move(f), 1.0);
    center(space, f);
  };
  const auto best = multi_start(space, est.witness, objective, normalize, options);
  if (gains(best.value, est.lower)) {
    est.lower = best.value;
    est.witness = best.f;
  }
  return est;
}

double laplace_oracle(const Space& space, double lambda, double step) {
  if (!(lambda > 0.0)) fail(ErrorKind::InvalidArgument, "lambda must be positive");
  require_oracle(space, step);
  const std::size_t n = space.size();
  double best = 1.0;
  auto evaluate = [&](std::vector<double> f) {
    f = scaled_to_lip(space, std::move(f), 1.0);
    center(space, f);
    best = std::max(best, laplace_value(space, f, lambda));
  };
  for_each_lattice_function(space, step, step, evaluate);

  // The objective is convex, so its maximum over the polytope of 1-Lipschitz
  // functions with f(0) = 0 sits at a vertex. Every vertex is fixed by n - 1
  // tight constraints forming a spanning tree, built here point by point.
  std::vector<double> f(n, 0.0);
  std::vector<bool> placed(n, false);
  placed[0] = true;
  std::function<void(std::size_t)> rec = [&](std::size_t count) {
    if (count == n) {
      if (is_one_lipschitz(space, f)) evaluate(f);
      return;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (placed[j]) continue;
      placed[j] = true;
      for (std::size_t i = 0; i < n; ++i) {
        if (!placed[i] || i == j) continue;
        for (double sign : {1.0, -1.0}) {
          f[j] = f[i] + sign * space.d(i, j);
          rec(count + 1);
        }
      }
      placed[j] = false;
    }
  };
  rec(1);
  return best;
}

}  // namespace mmspace
