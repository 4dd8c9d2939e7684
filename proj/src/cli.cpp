#include "mmspace/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mmspace/bounds.hpp"
#include "mmspace/concentration.hpp"
#include "mmspace/enlargement.hpp"
#include "mmspace/error.hpp"
#include "mmspace/expansion.hpp"
#include "mmspace/io.hpp"
#include "mmspace/lipschitz.hpp"
#include "mmspace/parallel.hpp"
#include "mmspace/random.hpp"

namespace mmspace {

namespace {

using nlohmann::json;

const std::string kSkippedExact = "skipped: TooLargeForExact";

struct RunConfig {
  std::string input;
  std::string output;
  double epsilon = 0.5;
  double kappa = 0.1;
  std::vector<double> rho;
  std::vector<double> lambda{0.5, 1.0, 2.0};
  std::uint64_t seed = 0;
  std::size_t exact_limit = kDefaultExactLimit;
  double oracle_step = 0.05;
  std::size_t budget = 200;
  std::size_t restarts = 20;
  std::size_t threads = 0;
  std::string format = "json";
  double tau = 1.0 / 3.0;
  std::string graph_rule;
  std::string inject_fault;
  std::size_t functions = 10;

  // generate
  std::string kind;
  std::size_t n = 6;
  std::size_t dim = 2;
  double radius = 1.0;
  std::size_t count = 100;
  bool uniform_weights = false;

  // sweep
  std::size_t min_n = 4;
  std::size_t max_n = 10;
};

AscentOptions ascent(const RunConfig& c) { return {c.restarts, c.budget, c.seed}; }

VerifyParams verify_params(const RunConfig& c) {
  VerifyParams p;
  p.epsilon = c.epsilon;
  p.kappa = c.kappa;
  p.rho = c.rho;
  p.lambda = c.lambda;
  p.exact_limit = c.exact_limit;
  p.ascent = ascent(c);
  p.tau = c.tau;
  p.function_count = c.functions;
  p.inject_alpha_fault = c.inject_fault == "alpha";
  return p;
}

json num(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

json expansion_json(const ExpansionResult& r) {
  if (!r.bounded()) return "unbounded";
  return json{{"value", *r.value}, {"witness", r.witness->to_hex()}};
}

void emit(const RunConfig& c, std::ostream& out, const std::string& text) {
  if (c.output.empty()) {
    out << text;
  } else {
    write_file(c.output, text);
  }
}

int cmd_validate(const RunConfig& c, std::ostream& out) {
  const Space s = load_space(c.input);
  out << json{{"valid", true}, {"n", s.size()}, {"diameter", s.diameter()}}.dump() << "\n";
  return kExitOk;
}

int cmd_generate(const RunConfig& c, std::ostream& out) {
  Space s = [&] {
    if (c.kind == "cycle") return generate(Cycle{c.n});
    if (c.kind == "path") return generate(Path{c.n});
    if (c.kind == "hypercube") return generate(Hypercube{c.dim});
    if (c.kind == "sphere") return generate(SampledSphere{c.dim, c.radius, c.count, c.seed});
    if (c.kind == "random") return generate(RandomMetric{c.n, c.seed, !c.uniform_weights});
    fail(ErrorKind::InvalidArgument,
         "unknown generator '" + c.kind + "' (cycle, path, hypercube, sphere, random)");
  }();
  emit(c, out, space_to_json(s));
  return kExitOk;
}

int cmd_report(const RunConfig& c, std::ostream& out) {
  const Space s = load_space(c.input);
  const bool exact = s.size() <= c.exact_limit;
  json rep;
  rep["n"] = s.size();
  rep["diameter"] = s.diameter();
  rep["epsilon"] = c.epsilon;
  rep["kappa"] = c.kappa;
  rep["seed"] = c.seed;

  const auto dbl = doubling_constant(s);
  json dj{{"constant", dbl.constant},
          {"witness_point", dbl.witness_point},
          {"witness_radius", dbl.witness_radius}};
  if (dbl.characterization_checked) dj["characterization_ok"] = dbl.characterization_ok;
  rep["doubling"] = dj;

  const std::vector<double> rho = c.rho.empty() ? default_rho_grid(s) : c.rho;
  if (exact) {
    std::vector<double> radii{0.0};
    radii.insert(radii.end(), s.distances().begin(), s.distances().end());
    const auto prof = alpha_profile(s, c.epsilon, radii, c.exact_limit);
    json pj = json::array();
    for (std::size_t k = 0; k < radii.size(); ++k) {
      pj.push_back({{"r", radii[k]}, {"alpha", prof.values[k]}, {"witness", prof.witnesses[k].to_hex()}});
    }
    rep["alpha_profile"] = pj;
    json ej = json::array();
    for (double r : rho) {
      ej.push_back({{"rho", r},
                    {"exp_gromov", expansion_json(exp_gromov(s, c.epsilon, r, c.exact_limit))},
                    {"exp_ledoux", expansion_json(exp_ledoux(s, c.epsilon, r, c.exact_limit))},
                    {"exp_ledoux_complement",
                     expansion_json(exp_ledoux(s, 1.0 - c.epsilon, r, c.exact_limit))}});
    }
    rep["expansion"] = ej;
    rep["partial_diameter"] = partial_diameter_space(s, c.kappa, c.exact_limit);
  } else {
    rep["alpha_profile"] = kSkippedExact;
    rep["expansion"] = kSkippedExact;
    rep["partial_diameter"] = kSkippedExact;
  }

  const auto od = obsdiam_lower(s, c.kappa, ascent(c));
  json oj{{"lower", od.lower},
          {"method", od.method},
          {"witness", {{"f", od.witness}, {"lip", lipschitz_constant(s, od.witness)}}}};
  oj["upper"] = exact ? json(obsdiam_upper(s, c.kappa, std::min(c.epsilon, 1.0 - c.epsilon), c.exact_limit))
                      : json(kSkippedExact);
  if (s.size() <= 5) oj["oracle"] = obsdiam_oracle(s, c.kappa, c.oracle_step);
  rep["obsdiam"] = oj;

  json lj = json::array();
  for (double lambda : c.lambda) {
    const auto lap = laplace_lower(s, lambda, ascent(c));
    json row{{"lambda", lambda},
             {"lower", lap.lower},
             {"diameter_lower", diameter_lower_from_laplace(lap.lower, lambda)}};
    if (s.size() <= 5) row["oracle"] = laplace_oracle(s, lambda, c.oracle_step);
    lj.push_back(row);
  }
  rep["laplace"] = lj;

  if (!c.graph_rule.empty()) {
    const auto sp = lambda1_graph(s, parse_adjacency_rule(c.graph_rule));
    rep["spectral"] = {{"rule", c.graph_rule}, {"lambda1", sp.lambda1}, {"residual", sp.residual},
                       {"method", sp.method}};
  }
  emit(c, out, rep.dump(2) + "\n");
  return kExitOk;
}

std::string render(const RunConfig& c, const std::vector<BoundReport>& reports) {
  return c.format == "csv" ? reports_to_csv(reports) : reports_to_json(reports);
}

int cmd_check(const RunConfig& c, std::ostream& out) {
  const Space s = load_space(c.input);
  const auto reports = verify_all(s, verify_params(c));
  emit(c, out, render(c, reports));
  return all_passed(reports) ? kExitOk : kExitFailure;
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
  if (c.min_n < 1 || c.max_n < c.min_n) fail(ErrorKind::InvalidArgument, "need 1 <= min-n <= max-n");
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::size_t skipped = 0;
  json failing = json::array();
  for (std::size_t i = 0; i < c.count; ++i) {
    Rng rng(derive_seed(c.seed, i));
    const std::size_t n = c.min_n + rng.below(c.max_n - c.min_n + 1);
    const std::uint64_t space_seed = rng.next();
    const Space s = random_metric(n, space_seed);
    RunConfig local = c;
    local.seed = space_seed;
    const auto reports = verify_all(s, verify_params(local));
    checks += reports.size();
    failures += count_failed(reports);
    skipped += count_skipped(reports);
    for (const auto& r : reports) {
      if (r.failed()) {
        failing.push_back({{"space", i}, {"n", n}, {"seed", space_seed}, {"name", r.name},
                           {"lhs", num(r.lhs)}, {"rhs", num(r.rhs)}});
      }
    }
  }
  json summary{{"spaces", c.count}, {"checks", checks}, {"failures", failures},
               {"skipped", skipped}, {"failing", failing}};
  emit(c, out, summary.dump(2) + "\n");
  return failures == 0 ? kExitOk : kExitFailure;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io:
    case ErrorKind::InvalidArgument:
      return kExitUsage;
    default:
      return kExitFailure;
  }
}

void report_error(std::ostream& err, std::string_view kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Finite metric measure spaces: concentration, expansion and diameter bounds", "mmspace"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file; command-line flags take precedence");

  app.add_option("--epsilon", c.epsilon, "mass threshold epsilon in (0,1)")->capture_default_str();
  app.add_option("--kappa", c.kappa, "observable diameter parameter kappa in (0,1)")->capture_default_str();
  app.add_option("--rho", c.rho, "rho grid (default: distances up to diameter/2)")->delimiter(',');
  app.add_option("--lambda", c.lambda, "lambda grid for the Laplace functional")->delimiter(',');
  app.add_option("--seed", c.seed, "seed for randomized procedures")->capture_default_str();
  app.add_option("--exact-limit", c.exact_limit, "largest n for exact subset search")
      ->check(CLI::Range(std::size_t{1}, kMaxExactLimit))
      ->capture_default_str();
  app.add_option("--oracle-step", c.oracle_step, "lattice step of the n <= 5 oracles")->capture_default_str();
  app.add_option("--budget", c.budget, "ascent moves per restart")->capture_default_str();
  app.add_option("--restarts", c.restarts, "ascent restarts")->capture_default_str();
  app.add_option("--threads", c.threads, "worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--format", c.format, "output format for check")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--tau", c.tau, "diameter bound parameter in (0, 1/3]")->capture_default_str();
  app.add_option("--graph-rule", c.graph_rule, "unit | threshold:<t> | knn:<k>");
  app.add_option("--functions", c.functions, "random functions in the concentration checks")
      ->capture_default_str();
  app.add_option("--inject-fault", c.inject_fault, "test hook: 'alpha' corrupts alpha values")
      ->check(CLI::IsMember({"alpha"}));
  app.add_option("-o,--output", c.output, "write output to a file instead of stdout");

  auto* validate = app.add_subcommand("validate", "validate a space document");
  validate->add_option("path", c.input)->required();
  auto* gen = app.add_subcommand("generate", "write a generated space document");
  gen->add_option("kind", c.kind, "cycle | path | hypercube | sphere | random")->required();
  gen->add_option("--n", c.n, "number of points (cycle, path, random)");
  gen->add_option("--dim", c.dim, "dimension (hypercube, sphere)");
  gen->add_option("--radius", c.radius, "sphere radius");
  gen->add_option("--count", c.count, "sphere sample size");
  gen->add_flag("--uniform-weights", c.uniform_weights, "uniform weights for random metrics");
  auto* report = app.add_subcommand("report", "report the quantities of a space");
  report->add_option("path", c.input)->required();
  auto* check = app.add_subcommand("check", "run every inequality check");
  check->add_option("path", c.input)->required();
  auto* sweep = app.add_subcommand("sweep", "run the checks on random spaces");
  sweep->add_option("--count", c.count, "number of spaces")->capture_default_str();
  sweep->add_option("--min-n", c.min_n, "smallest space")->capture_default_str();
  sweep->add_option("--max-n", c.max_n, "largest space")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report_error(err, "Usage", e.what());
    return kExitUsage;
  }

  set_thread_count(c.threads);
  try {
    if (*validate) return cmd_validate(c, out);
    if (*gen) return cmd_generate(c, out);
    if (*report) return cmd_report(c, out);
    if (*check) return cmd_check(c, out);
    if (*sweep) return cmd_sweep(c, out);
  } catch (const Error& e) {
    report_error(err, to_string(e.kind()), e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    report_error(err, "Internal", e.what());
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace mmspace
