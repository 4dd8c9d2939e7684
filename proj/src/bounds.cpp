#include "mmspace/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>

#include "mmspace/concentration.hpp"
#include "mmspace/enlargement.hpp"
#include "mmspace/error.hpp"
#include "mmspace/expansion.hpp"
#include "mmspace/random.hpp"

namespace mmspace {

namespace {

void hypothesis(bool ok, const char* clause) {
  if (!ok) fail(ErrorKind::HypothesisViolated, clause);
}

void require_open_unit(double value, const char* clause) {
  hypothesis(value > 0.0 && value < 1.0, clause);
}

}  // namespace

double rhs_concentration_ledoux(double epsilon, double exp_ledoux, double rho, double r) {
  require_open_unit(epsilon, "epsilon must lie in (0, 1)");
  hypothesis(exp_ledoux > 1.0, "Exp_L must exceed 1");
  hypothesis(rho > 0.0 && rho <= r + kRadiusTolerance, "need 0 < rho <= r");
  return (1.0 - epsilon) * std::pow(exp_ledoux, 1.0 - r / rho);
}

double rhs_concentration_gromov_ledoux(double epsilon, double exp_gromov, double exp_ledoux,
                                       double rho, double r) {
  require_open_unit(epsilon, "epsilon must lie in (0, 1)");
  hypothesis(exp_gromov >= 1.0, "Exp_G must be at least 1");
  hypothesis(exp_ledoux > 1.0, "Exp_L must exceed 1");
  hypothesis(rho > 0.0 && rho <= r + kRadiusTolerance, "need 0 < rho <= r");
  return (1.0 - epsilon) * exp_gromov * std::pow(exp_ledoux, 2.0 - r / rho);
}

namespace {

void require_section6(double kappa, double epsilon, double rho, double exp_ledoux) {
  require_open_unit(kappa, "kappa must lie in (0, 1)");
  hypothesis(epsilon > 0.0 && epsilon <= 0.5, "epsilon must lie in (0, 1/2]");
  hypothesis(rho > 0.0, "rho must be positive");
  hypothesis(exp_ledoux > 1.0, "Exp_L must exceed 1");
}

}  // namespace

double gromov_answer_lower(double kappa, double epsilon, double rho, double exp_ledoux,
                           double obsdiam) {
  require_section6(kappa, epsilon, rho, exp_ledoux);
  const double ln_l = std::log(exp_ledoux);
  return kappa * std::exp(obsdiam * ln_l / (2.0 * rho)) /
         (2.0 * (1.0 - epsilon) * exp_ledoux * exp_ledoux);
}

bool gromov_upper_hypothesis(double kappa, double epsilon, double exp_gromov, double exp_ledoux) {
  return 2.0 * (1.0 - exp_gromov * epsilon) * exp_ledoux >= kappa;
}

double gromov_upper(double kappa, double epsilon, double rho, double exp_ledoux, double obsdiam) {
  require_section6(kappa, epsilon, rho, exp_ledoux);
  const double ln_l = std::log(exp_ledoux);
  return (2.0 - kappa * std::exp((obsdiam - 4.0 * rho) * ln_l / (2.0 * rho))) / (2.0 * epsilon);
}

double obsdiam_upper_by_ledoux(double kappa, double epsilon, double rho, double exp_ledoux) {
  require_section6(kappa, epsilon, rho, exp_ledoux);
  const double l2 = exp_ledoux * exp_ledoux;
  const double arg = 2.0 * l2 * (1.0 - epsilon) / ((1.0 + l2) * epsilon * kappa);
  if (!(arg > 0.0)) fail(ErrorKind::NotInformative, "logarithm argument is not positive");
  return 2.0 * rho / std::log(exp_ledoux) * std::log(arg);
}

DiameterBound diameter_upper(double doubling, double epsilon, double rho, double exp_ledoux_eps,
                             double exp_ledoux_complement, double tau) {
  hypothesis(doubling >= 1.0, "doubling constant must be at least 1");
  hypothesis(epsilon > 0.0 && epsilon <= 0.5, "epsilon must lie in (0, 1/2]");
  hypothesis(rho > 0.0, "rho must be positive");
  hypothesis(std::min(exp_ledoux_eps, exp_ledoux_complement) > 1.0, "both Exp_L must exceed 1");
  hypothesis(tau > 0.0 && tau <= 1.0 / 3.0 + 1e-15, "tau must lie in (0, 1/3]");
  const double p = std::log2(doubling);
  const double c = doubling;
  DiameterBound out;
  out.branch_complement = rho *
                          std::log(std::pow(c, 4) * (1.0 - epsilon) / epsilon * exp_ledoux_complement) /
                          (tau * std::log(exp_ledoux_complement));
  out.branch_epsilon = 2.0 * rho *
                       std::log(std::pow(c, 3) * std::pow(tau, -p) * epsilon * exp_ledoux_eps) /
                       (tau * std::log(exp_ledoux_eps));
  out.value = std::max(out.branch_complement, out.branch_epsilon);
  return out;
}

double diameter_lower_from_laplace(double laplace, double lambda) {
  if (!(lambda > 0.0)) fail(ErrorKind::InvalidArgument, "lambda must be positive");
  const double ln_l = std::max(0.0, std::log(laplace));
  return std::min(ln_l, std::sqrt(2.0 * ln_l)) / lambda;
}

double diameter_lower(const Space& space, double lambda, const AscentOptions& options) {
  return diameter_lower_from_laplace(laplace_lower(space, lambda, options).lower, lambda);
}

double laplace_exchange_bound(double lambda, double diameter) {
  const double t = lambda * diameter;
  return std::exp(t * t / 2.0);
}

double sphere_gaussian_envelope(double dim, double radius, double r) {
  return std::sqrt(std::numbers::pi / 8.0) * std::exp(-(dim - 1.0) * r * r / (2.0 * radius * radius));
}

double sphere_obsdiam_bound(double dim, double radius, double kappa) {
  return 2.0 * radius * std::sqrt(2.0 * std::log(std::sqrt(std::numbers::pi / 2.0) / kappa) / (dim - 1.0));
}

double spectral_obsdiam_bound(double lambda1, double kappa) {
  return 2.0 * std::log(3.0 / (2.0 * kappa)) / (std::log(1.5) * std::sqrt(lambda1));
}

double riemannian_gromov_lower(double kappa, double epsilon, double rho, double dim,
                               double lambda1, double obsdiam) {
  const double growth = std::log1p(lambda1 * epsilon * rho * rho);
  return kappa * std::exp(obsdiam * growth / (2.0 * rho)) /
         (std::pow(2.0, 2.0 * dim + 1.0) * (1.0 - epsilon));
}

double riemannian_diameter_upper(double epsilon, double rho, double dim, double lambda1) {
  const double a = std::log(std::pow(2.0, 5.0 * dim) * (1.0 - epsilon) / epsilon) /
                   std::log1p(lambda1 * epsilon * rho * rho);
  const double b = 2.0 * std::log(std::pow(2.0, 4.0 * dim) * std::pow(3.0, dim) * epsilon) /
                   std::log1p(lambda1 * (1.0 - epsilon) * rho * rho);
  return 3.0 * rho * std::max(a, b);
}

// ---------------------------------------------------------------------------
// Spectral gap

AdjacencyRule parse_adjacency_rule(const std::string& text) {
  if (text == "unit" || text == "unit_distance") return AdjacencyRule::unit_distance();
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string kind = text.substr(0, colon);
    const std::string arg = text.substr(colon + 1);
    try {
      std::size_t used = 0;
      if (kind == "threshold") {
        const double t = std::stod(arg, &used);
        if (used == arg.size() && t > 0.0) return AdjacencyRule::at_most(t);
      } else if (kind == "knn") {
        const unsigned long k = std::stoul(arg, &used);
        if (used == arg.size() && k > 0) return AdjacencyRule::nearest(k);
      }
    } catch (const std::exception&) {
    }
  }
  fail(ErrorKind::InvalidArgument,
       "graph rule must be unit, threshold:<t> or knn:<k>, got '" + text + "'");
}

SymmetricEigen jacobi_eigen(Matrix a, double tolerance, std::size_t max_sweeps) {
  const std::size_t n = a.size();
  Matrix v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) s += a[i][j] * a[i][j];
    }
    return std::sqrt(s);
  };
  double scale = 0.0;
  for (const auto& row : a) {
    for (double x : row) scale = std::max(scale, std::abs(x));
  }
  for (std::size_t sweep = 0; sweep < max_sweeps && off_norm() > tolerance * std::max(1.0, scale);
       ++sweep) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p];
          const double vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return a[x][x] < a[y][y]; });
  SymmetricEigen out;
  out.vectors.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    out.values.push_back(a[order[k]][order[k]]);
    for (std::size_t i = 0; i < n; ++i) out.vectors[i][k] = v[i][order[k]];
  }
  return out;
}

namespace {

std::vector<std::vector<bool>> adjacency(const Space& space, const AdjacencyRule& rule) {
  const std::size_t n = space.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  switch (rule.kind) {
    case AdjacencyKind::UnitDistance:
    case AdjacencyKind::Threshold:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          adj[i][j] = rule.kind == AdjacencyKind::UnitDistance
                          ? std::abs(space.d(i, j) - 1.0) <= kMetricTolerance
                          : space.d(i, j) <= rule.threshold + kRadiusTolerance;
        }
      }
      break;
    case AdjacencyKind::Knn:
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> others;
        for (std::size_t j = 0; j < n; ++j) {
          if (j != i) others.push_back(j);
        }
        std::stable_sort(others.begin(), others.end(),
                         [&](auto a, auto b) { return space.d(i, a) < space.d(i, b); });
        for (std::size_t k = 0; k < std::min(rule.k, others.size()); ++k) {
          adj[i][others[k]] = true;
          adj[others[k]][i] = true;
        }
      }
      break;
  }
  return adj;
}

bool connected(const std::vector<std::vector<bool>>& adj) {
  const std::size_t n = adj.size();
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j) {
      if (adj[i][j] && !seen[j]) {
        seen[j] = true;
        ++count;
        stack.push_back(j);
      }
    }
  }
  return count == n;
}

}  // namespace

SpectralResult lambda1_graph(const Space& space, const AdjacencyRule& rule) {
  const std::size_t n = space.size();
  if (n < 2) fail(ErrorKind::InvalidArgument, "spectral gap needs at least two points");
  const auto adj = adjacency(space, rule);
  if (!connected(adj)) fail(ErrorKind::DisconnectedGraph, "adjacency graph is disconnected");

  const double scale = 1.0 / static_cast<double>(n);
  Matrix lap(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (adj[i][j]) {
        lap[i][j] -= scale;
        lap[i][i] += scale;
      }
    }
  }
  Matrix sym(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      sym[i][j] = lap[i][j] / std::sqrt(space.weight(i) * space.weight(j));
    }
  }
  const auto eig = jacobi_eigen(sym);
  SpectralResult out;
  out.method = "jacobi";
  out.lambda1 = eig.values[1];
  out.eigenvector.resize(n);
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.eigenvector[i] = eig.vectors[i][1] / std::sqrt(space.weight(i));
    norm += space.weight(i) * out.eigenvector[i] * out.eigenvector[i];
  }
  for (double& x : out.eigenvector) x /= std::sqrt(norm);
  for (std::size_t i = 0; i < n; ++i) {
    double lv = 0.0;
    for (std::size_t j = 0; j < n; ++j) lv += lap[i][j] * out.eigenvector[j];
    out.residual = std::max(out.residual,
                            std::abs(lv - out.lambda1 * space.weight(i) * out.eigenvector[i]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Full check suite

std::vector<double> default_rho_grid(const Space& space) {
  std::vector<double> out;
  for (double d : space.distances()) {
    if (d <= space.diameter() / 2.0 + kRadiusTolerance) out.push_back(d);
  }
  return out;
}

namespace {

struct RhoData {
  double rho = 0.0;
  ExpansionResult gromov;
  ExpansionResult ledoux_eps;
  ExpansionResult ledoux_complement;
};

std::string too_large(const Space& space, std::size_t limit) {
  return "TooLargeForExact: n = " + std::to_string(space.size()) + " > " + std::to_string(limit);
}

bool above_one(const ExpansionResult& r) { return r.bounded() && *r.value > 1.0; }

std::string describe(const ExpansionResult& r, const char* name) {
  return std::string(name) + (r.bounded() ? " = 1" : " unbounded");
}

void keep_worst(std::optional<BoundReport>& worst, BoundReport candidate) {
  if (!worst || candidate.slack() < worst->slack()) worst = std::move(candidate);
}

}  // namespace

std::vector<BoundReport> verify_all(const Space& space, const VerifyParams& params) {
  const double eps = params.epsilon;
  const double kappa = params.kappa;
  if (!(eps > 0.0 && eps < 1.0)) fail(ErrorKind::InvalidArgument, "epsilon must lie in (0, 1)");
  if (!(kappa > 0.0 && kappa < 1.0)) fail(ErrorKind::InvalidArgument, "kappa must lie in (0, 1)");
  const std::size_t limit = params.exact_limit;
  if (limit > kMaxExactLimit) fail(ErrorKind::InvalidArgument, "exact limit exceeds 26");
  const bool exact = space.size() <= limit;
  const double diam = space.diameter();
  const double fault = params.inject_alpha_fault ? 1.0 : 0.0;
  const std::vector<double> rho_grid = params.rho.empty() ? default_rho_grid(space) : params.rho;
  const Inputs base{{"epsilon", eps}, {"kappa", kappa}};
  std::vector<BoundReport> out;

  auto with = [](Inputs inputs, std::initializer_list<std::pair<std::string, double>> extra) {
    inputs.insert(inputs.end(), extra.begin(), extra.end());
    return inputs;
  };

  std::optional<AlphaFunction> alpha_eps;
  std::optional<AlphaFunction> alpha_comp;
  if (exact) {
    alpha_eps.emplace(space, eps, limit);
    alpha_comp.emplace(space, 1.0 - eps, limit);
  }

  // Concentration inequalities and the range of α.
  if (exact) {
    out.push_back(make_check("alpha.range", (*alpha_eps)(0.0) + fault, Relation::LessEqual,
                             1.0 - eps, base));
    std::optional<BoundReport> swap;
    for (double r : alpha_eps->breakpoints()) {
      const double a = (*alpha_eps)(r);
      const double b = (*alpha_comp)(r);
      keep_worst(swap, eps >= 0.5 ? make_check("alpha.swap", a, Relation::LessEqual, b, with(base, {{"r", r}}))
                                  : make_check("alpha.swap", b, Relation::LessEqual, a, with(base, {{"r", r}})));
    }
    if (swap) out.push_back(*swap);
    for (std::size_t k = 0; k < params.function_count; ++k) {
      const auto f = random_lipschitz(space, derive_seed(params.ascent.seed, 1000 + k));
      const auto radii = concentration_radii(space, f, eps);
      std::optional<BoundReport> two_sided;
      std::optional<BoundReport> doubled;
      for (auto& row : check_concentration_inequality(space, f, *alpha_eps, *alpha_comp, radii)) {
        row.inputs.emplace_back("function", static_cast<double>(k));
        keep_worst(row.name == "concentration.two_sided" ? two_sided : doubled, std::move(row));
      }
      if (two_sided) out.push_back(*two_sided);
      if (doubled) out.push_back(*doubled);
    }
  } else {
    out.push_back(make_skip("concentration.two_sided", too_large(space, limit), base));
  }

  // Observable diameter sandwich.
  const auto lower = obsdiam_lower(space, kappa, params.ascent);
  std::optional<double> upper;
  if (exact) {
    upper = obsdiam_upper(space, kappa, std::min(eps, 1.0 - eps), limit);
    auto r = make_check("obsdiam.duality", lower.lower, Relation::LessEqual, *upper, base);
    r.witness = "lower witness method " + lower.method;
    out.push_back(std::move(r));
  } else {
    out.push_back(make_skip("obsdiam.duality", too_large(space, limit), base));
  }

  // Expansion coefficients per ρ.
  std::vector<RhoData> per_rho;
  if (exact) {
    for (double rho : rho_grid) {
      per_rho.push_back({rho, exp_gromov(space, eps, rho, limit), exp_ledoux(space, eps, rho, limit),
                         exp_ledoux(space, 1.0 - eps, rho, limit)});
    }
  } else if (!rho_grid.empty()) {
    out.push_back(make_skip("expansion", too_large(space, limit), base));
  }

  for (const auto& d : per_rho) {
    const double rho = d.rho;
    const Inputs in = with(base, {{"rho", rho}});
    const bool l1_ok = above_one(d.ledoux_complement);
    const double l1 = l1_ok ? *d.ledoux_complement.value : 0.0;
    const double g = *d.gromov.value;

    // Exponential concentration from Ledoux's coefficient, and with Gromov's.
    for (int k = 1; k <= 3; ++k) {
      const double r = k * rho;
      if (r > diam + kRadiusTolerance) break;
      const Inputs rin = with(in, {{"r", r}});
      if (!l1_ok) {
        const auto why = describe(d.ledoux_complement, "Exp_L(1-eps)");
        out.push_back(make_skip("concentration.ledoux", why, rin));
        out.push_back(make_skip("concentration.gromov_ledoux", why, rin));
        continue;
      }
      const double a = (*alpha_eps)(r) + fault;
      const double rhs_l = rhs_concentration_ledoux(eps, l1, rho, r);
      const double rhs_gl = rhs_concentration_gromov_ledoux(eps, g, l1, rho, r);
      out.push_back(make_check("concentration.ledoux", a, Relation::LessEqual, rhs_l, rin));
      out.push_back(make_check("concentration.gromov_ledoux", a, Relation::LessEqual, rhs_gl, rin));
      out.push_back(make_check("concentration.ledoux_sharper", rhs_l, Relation::LessEqual, rhs_gl, rin));
    }

    // Two-sided control of Exp_G by ObsDiam and Exp_L. obsdiam_lower may be
    // substituted: the lower bound grows and the upper bound shrinks with it.
    const Inputs oin = with(in, {{"obsdiam_lower", lower.lower}});
    if (eps > 0.5) {
      out.push_back(make_skip("gromov.answer_lower", "epsilon > 1/2", oin));
    } else if (!l1_ok) {
      out.push_back(make_skip("gromov.answer_lower", describe(d.ledoux_complement, "Exp_L(1-eps)"), oin));
    } else {
      out.push_back(make_check("gromov.answer_lower", g, Relation::GreaterEqual,
                               gromov_answer_lower(kappa, eps, rho, l1, lower.lower), oin));
      if (!gromov_upper_hypothesis(kappa, eps, g, l1)) {
        const char* why = "2(1 - Exp_G eps) Exp_L < kappa";
        out.push_back(make_skip("gromov.upper", why, oin));
        out.push_back(make_skip("obsdiam.upper_by_ledoux", why, oin));
      } else {
        out.push_back(make_check("gromov.upper", g, Relation::LessEqual,
                                 gromov_upper(kappa, eps, rho, l1, lower.lower), oin));
        out.push_back(make_check("obsdiam.upper_by_ledoux", lower.lower, Relation::LessEqual,
                                 obsdiam_upper_by_ledoux(kappa, eps, rho, l1), oin));
      }
    }
  }

  // Diameter bounds.
  DoublingReport doubling = doubling_constant(space, 0);
  for (const auto& d : per_rho) {
    const Inputs in = with(base, {{"rho", d.rho}, {"doubling", doubling.constant}, {"tau", params.tau}});
    if (eps > 0.5) {
      out.push_back(make_skip("diameter.upper", "epsilon > 1/2", in));
    } else if (!above_one(d.ledoux_eps) || !above_one(d.ledoux_complement)) {
      out.push_back(make_skip("diameter.upper",
                              describe(d.ledoux_eps, "Exp_L(eps)") + ", " +
                                  describe(d.ledoux_complement, "Exp_L(1-eps)"),
                              in));
    } else {
      const auto bound = diameter_upper(doubling.constant, eps, d.rho, *d.ledoux_eps.value,
                                        *d.ledoux_complement.value, params.tau);
      out.push_back(make_check("diameter.upper", diam, Relation::LessEqual, bound.value, in));
    }
  }
  for (double lambda : params.lambda) {
    const auto lap = laplace_lower(space, lambda, params.ascent);
    const Inputs in = with(base, {{"lambda", lambda}, {"laplace_lower", lap.lower}});
    out.push_back(make_check("diameter.lower", diameter_lower_from_laplace(lap.lower, lambda),
                             Relation::LessEqual, diam, in));
    out.push_back(make_check("laplace.exchange", lap.lower, Relation::LessEqual,
                             laplace_exchange_bound(lambda, diam), in));
  }

  // Doubling measures.
  if (space.size() <= 64) {
    const auto ch = check_doubling_characterization(space, doubling.constant);
    const auto& q = ch.worst;
    auto r = make_check("doubling.characterization", q.lhs, Relation::LessEqual, q.rhs,
                        {{"doubling", doubling.constant}, {"r1", q.r1}, {"r2", q.r2}});
    r.witness = "x=" + std::to_string(q.x) + " y=" + std::to_string(q.y) + (q.r1_open ? " r1-" : "");
    if (ch.quadruples_checked == 0) {
      r = make_check("doubling.characterization", 0.0, Relation::LessEqual, 0.0,
                     {{"doubling", doubling.constant}});
    }
    out.push_back(std::move(r));
  } else {
    out.push_back(make_skip("doubling.characterization", "more than 64 points", base));
  }
  for (const auto& d : per_rho) {
    out.push_back(ledoux_doubling_bound_check(space, eps, d.rho, limit));
    out.push_back(iterated_ledoux_check(space, eps, d.rho, params.iterate_k, limit));
    if (space.size() > 1) {
      const auto f = random_lipschitz(space, derive_seed(params.ascent.seed, 2000));
      out.push_back(gromov_monotonicity_check(space, f, eps, d.rho, limit));
    }
  }
  return out;
}

}  // namespace mmspace
