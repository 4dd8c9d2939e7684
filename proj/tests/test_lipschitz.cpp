#include <doctest.h>

#include <cmath>

#include "mmspace/bounds.hpp"
#include "mmspace/lipschitz.hpp"
#include "mmspace/parallel.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace mmspace;

namespace {

using Anchor = std::pair<std::size_t, double>;

/// Best spread over f with f(0) = 0 and values on hℤ ∩ [-diam, diam],
/// keeping only 1-Lipschitz lattice functions.
double lattice_obsdiam(const Space& s, double kappa, double h) {
  const auto steps = static_cast<int>(std::floor(s.diameter() / h));
  const std::size_t n = s.size();
  std::vector<double> f(n, 0.0);
  std::vector<int> idx(n, -steps);
  double best = 0.0;
  while (true) {
    for (std::size_t i = 1; i < n; ++i) f[i] = idx[i] * h;
    if (oracle::lip(s, f) <= 1.0 + 1e-12) best = std::max(best, oracle::spread(s, f, kappa));
    std::size_t i = 1;
    while (i < n && ++idx[i] > steps) idx[i++] = -steps;
    if (i >= n) break;
  }
  return best;
}

}  // namespace

TEST_CASE("McShane extension") {
  const auto c6 = cycle(6);
  const std::vector<Anchor> one{{2, 0.0}};
  const auto f = mcshane_extend(c6, one, 1.0);
  for (std::size_t i = 0; i < 6; ++i) CHECK(f[i] == c6.d(2, i));
  CHECK(f.lip() == 1.0);

  const std::vector<Anchor> two{{0, 0.0}, {3, 3.0}};
  const auto g = mcshane_extend(c6, two, 1.0);
  for (std::size_t i = 0; i < 6; ++i) CHECK(g[i] == c6.d(0, i));

  std::vector<Anchor> all;
  for (std::size_t i = 0; i < 6; ++i) all.emplace_back(i, 0.1 * static_cast<double>(i % 3));
  const auto h = mcshane_extend(c6, all, 1.0);
  for (std::size_t i = 0; i < 6; ++i) CHECK(h[i] == all[i].second);

  const std::vector<Anchor> bad{{0, 0.0}, {1, 5.0}};
  CHECK_ERROR_KIND(mcshane_extend(c6, bad, 1.0), AnchorsNotLipschitz);
  CHECK_ERROR_KIND(mcshane_extend(c6, std::vector<Anchor>{}, 1.0), EmptySet);
}

TEST_CASE("McShane extension is L-Lipschitz and agrees on anchors") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    const auto s = oracle::random_space(2 + rng.below(9), seed);
    const double lip = rng.uniform(0.5, 2.0);
    std::vector<Anchor> anchors{{0, 0.0}};
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (rng.uniform() < 0.5) continue;
      // Feasible anchor value: inside the McShane/Whitney interval.
      double lo = -1e300;
      double hi = 1e300;
      for (const auto& [a, v] : anchors) {
        lo = std::max(lo, v - lip * s.d(i, a));
        hi = std::min(hi, v + lip * s.d(i, a));
      }
      anchors.emplace_back(i, rng.uniform(lo, hi));
    }
    const auto f = mcshane_extend(s, anchors, lip);
    CHECK(oracle::lip(s, {f.values().begin(), f.values().end()}) <= lip + 1e-12);
    for (const auto& [a, v] : anchors) CHECK(f[a] == doctest::Approx(v).epsilon(1e-14));
  }
}

TEST_CASE("shrink and random functions") {
  const auto p = path(3);
  const auto f = shrink_to_lipschitz(p, LipschitzFunction(p, {0.0, 2.0, 4.0}));
  CHECK(f[1] == 1.0);
  CHECK(f[2] == 2.0);
  const LipschitzFunction g(p, {0.0, 0.5, 1.0});
  CHECK(shrink_to_lipschitz(p, g).values()[2] == 1.0);
  CHECK_ERROR_KIND(shrink_to_lipschitz(p, g, 0.0), InvalidArgument);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s = oracle::random_space(2 + seed % 10, seed);
    const auto r = random_lipschitz(s, seed);
    CHECK(oracle::lip(s, {r.values().begin(), r.values().end()}) <= 1.0 + 1e-12);
    CHECK(random_lipschitz(s, seed).values()[0] == r[0]);
  }
}

TEST_CASE("pushforward aggregates atoms") {
  const auto c4 = cycle(4);
  const auto atoms = pushforward(c4, distance_function(c4, 0).values());
  CHECK(atoms.positions == std::vector<double>{0.0, 1.0, 2.0});
  CHECK(atoms.masses[0] == doctest::Approx(0.25));
  CHECK(atoms.masses[1] == doctest::Approx(0.5));
  CHECK(atoms.masses[2] == doctest::Approx(0.25));
  const std::vector<double> flat(4, 3.0);
  const auto one = pushforward(c4, flat);
  CHECK(one.positions.size() == 1);
  CHECK(one.masses[0] == doctest::Approx(1.0));
  const auto img = pushforward_space(c4, distance_function(c4, 0).values());
  CHECK(img.size() == 3);
  CHECK(img.d(0, 2) == 2.0);
}

TEST_CASE("partial diameter on the line") {
  CHECK(partial_diameter_line({{0, 1, 2, 3}, {0.25, 0.25, 0.25, 0.25}}, 0.3) == 2.0);
  CHECK(partial_diameter_line({{5}, {1.0}}, 0.1) == 0.0);
  CHECK(partial_diameter_line({{0, 1}, {0.5, 0.5}}, 0.6) == 0.0);
  CHECK_ERROR_KIND(partial_diameter_line({{0, 1}, {0.5, 0.5}}, 1.0), InvalidArgument);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const auto s = oracle::random_space(1 + rng.below(10), seed);
    std::vector<double> f(s.size());
    for (double& v : f) v = std::round(rng.uniform(0, 4)) / 2.0;
    const double kappa = rng.uniform(0.01, 0.99);
    CHECK(observable_spread(s, f, kappa) == doctest::Approx(oracle::spread(s, f, kappa)).epsilon(1e-14));
  }
}

TEST_CASE("partial diameter of the space") {
  CHECK(partial_diameter_space(two_point(), 0.6) == 0.0);
  CHECK(partial_diameter_space(two_point(), 0.4) == 1.0);
  // Any four points of the 6-cycle contain an antipodal pair.
  CHECK(partial_diameter_space(cycle(6), 1.0 / 3.0) == 3.0);
  CHECK(partial_diameter_space(cycle(6), 0.5) == 2.0);
  CHECK(partial_diameter_space(two_point(1.0, 0.95), 0.1) == 0.0);
  CHECK_ERROR_KIND(partial_diameter_space(cycle(30), 0.5), TooLargeForExact);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    const auto s = oracle::random_space(1 + rng.below(10), seed);
    const double kappa = rng.uniform(0.01, 0.99);
    CHECK(partial_diameter_space(s, kappa) == oracle::partial_diameter(s, kappa));
  }
}

TEST_CASE("observable diameter worked values") {
  const auto two = two_point();
  const auto est = obsdiam_lower(two, 0.3);
  CHECK(est.lower == doctest::Approx(1.0));
  CHECK(obsdiam_lower(single_point(), 0.3).lower == 0.0);
  CHECK(obsdiam_lower(cycle(6), 0.1).lower == doctest::Approx(3.0));
  CHECK(obsdiam_upper(two, 0.5, 0.5) == 2.0);
  CHECK(obsdiam_upper(cycle(6), 0.5, 0.5) == 2.0);
  CHECK(obsdiam_upper(two_point(1.0, 0.95), 0.2, 0.5) == 0.0);
  CHECK_ERROR_KIND(obsdiam_upper(two, 0.5, 0.6), InvalidArgument);
  CHECK(obsdiam_oracle(two, 0.3, 0.25) == doctest::Approx(1.0));
  CHECK(obsdiam_oracle(single_point(), 0.3, 0.25) == 0.0);
  CHECK(std::abs(obsdiam_oracle(path(3), 0.2, 0.25) - obsdiam_lower(path(3), 0.2).lower) <= 0.25);
  CHECK_ERROR_KIND(obsdiam_oracle(cycle(6), 0.3, 0.25), TooLargeForOracle);
  CHECK_ERROR_KIND(obsdiam_oracle(two, 0.3, 0.0), InvalidArgument);
  const auto sandwich = obsdiam_sandwich(cycle(6), 0.5, 0.5);
  CHECK(sandwich.lower <= sandwich.upper);
}

TEST_CASE("observable diameter witnesses are 1-Lipschitz and attain the bound") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = oracle::random_space(3 + seed % 7, seed);
    const auto est = obsdiam_lower(s, 0.2, {4, 60, seed});
    CHECK(oracle::lip(s, est.witness) <= 1.0 + 1e-12);
    CHECK(oracle::spread(s, est.witness, 0.2) == doctest::Approx(est.lower).epsilon(1e-12));
    CHECK(est.lower <= oracle::partial_diameter(s, 0.2) + 1e-12);
  }
}

TEST_CASE("observable diameter sandwich against the oracles") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Rng rng(seed);
    const auto s = oracle::random_space(2 + rng.below(3), seed);
    const double kappa = std::vector<double>{0.1, 0.3, 0.5}[seed % 3];
    const double exact = obsdiam_oracle(s, kappa, 0.05);
    const double lower = obsdiam_lower(s, kappa, {6, 100, seed}).lower;
    const double upper = obsdiam_upper(s, kappa, 0.5);
    CHECK(lower <= exact + 1e-9);
    CHECK(exact <= upper + 1e-9);
    CHECK(lower >= exact - 0.05 * s.diameter());
    if (s.size() <= 3) CHECK(lattice_obsdiam(s, kappa, 0.05) <= exact + 1e-9);
  }
}

TEST_CASE("ascent is deterministic across thread counts") {
  const auto s = oracle::random_space(9, 17);
  set_thread_count(1);
  const auto a = obsdiam_lower(s, 0.2, {6, 80, 3});
  const auto la = laplace_lower(s, 1.5, {6, 80, 3});
  set_thread_count(4);
  const auto b = obsdiam_lower(s, 0.2, {6, 80, 3});
  const auto lb = laplace_lower(s, 1.5, {6, 80, 3});
  set_thread_count(0);
  CHECK(a.lower == b.lower);
  CHECK(a.witness == b.witness);
  CHECK(la.lower == lb.lower);
}

TEST_CASE("Laplace functional worked values") {
  CHECK(laplace_lower(single_point(), 1.0).lower == 1.0);
  CHECK(laplace_oracle(single_point(), 1.0, 0.1) == 1.0);
  const auto two = two_point();
  CHECK(laplace_lower(two, 1.0).lower == doctest::Approx(std::cosh(0.5)).epsilon(1e-9));
  CHECK(std::abs(laplace_oracle(two, 1.0, 0.05) - std::cosh(0.5)) <= 1e-6);
  CHECK(laplace_lower(cycle(6), 1e-6).lower == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(laplace_oracle(path(3), 2.0, 0.1) >= laplace_lower(path(3), 2.0).lower - 1e-9);
  CHECK_ERROR_KIND(laplace_lower(two, 0.0), InvalidArgument);
  CHECK_ERROR_KIND(laplace_value(two, std::vector<double>{1.0}, 1.0), ShapeMismatch);
}

TEST_CASE("Laplace estimates: witnesses, oracle and exchange bound") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Rng rng(seed);
    const auto s = oracle::random_space(2 + rng.below(3), seed);
    double prev_oracle = 1.0;
    for (double lambda : {0.5, 1.0, 2.0}) {
      const auto est = laplace_lower(s, lambda, {6, 100, seed});
      double mean = 0.0;
      for (std::size_t i = 0; i < s.size(); ++i) mean += s.weight(i) * est.witness[i];
      CHECK(std::abs(mean) <= 1e-12);
      CHECK(oracle::lip(s, est.witness) <= 1.0 + 1e-12);
      CHECK(laplace_value(s, est.witness, lambda) == doctest::Approx(est.lower).epsilon(1e-12));
      const double exact = laplace_oracle(s, lambda, 0.05);
      CHECK(exact >= est.lower - 1e-9);
      CHECK(exact >= prev_oracle - 1e-12);
      prev_oracle = exact;
      CHECK(exact <= laplace_exchange_bound(lambda, s.diameter()));
      // Hoeffding: a mean-zero variable with range at most diam.
      CHECK(exact <= std::exp(lambda * lambda * s.diameter() * s.diameter() / 8.0) + 1e-12);
    }
  }
}
