#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "mmspace/cli.hpp"
#include "mmspace/io.hpp"
#include "mmspace/space.hpp"

using namespace mmspace;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

/// A scratch directory removed when the test case ends.
struct Scratch {
  std::filesystem::path dir;
  Scratch() {
    dir = std::filesystem::temp_directory_path() /
          ("mmspace_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::create_directories(dir);
  }
  ~Scratch() { std::filesystem::remove_all(dir); }
  std::string file(const std::string& name, const std::string& text) const {
    const auto p = dir / name;
    write_file(p, text);
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("validate") {
  Scratch tmp;
  const auto good = tmp.file("two.json", R"({"distances": [[0, 1], [1, 0]], "weights": [0.5, 0.5]})");
  auto r = run({"validate", good});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["n"] == 2);

  const auto asym = tmp.file("asym.json", R"({"distances": [[0, 1], [2, 0]]})");
  r = run({"validate", asym});
  CHECK(r.code == 1);
  CHECK(json::parse(r.err)["error"] == "AsymmetricDistance");

  r = run({"validate", tmp.path("missing.json")});
  CHECK(r.code == 2);
  CHECK(json::parse(r.err)["error"] == "Io");

  const auto broken = tmp.file("broken.json", "{\"distances\": [[0, 1]");
  r = run({"validate", broken});
  CHECK(r.code == 1);
  CHECK(json::parse(r.err)["error"] == "Parse");
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--epsilon", "abc", "validate", "x"}).code == 2);
  CHECK(run({"--exact-limit", "27", "validate", "x"}).code == 2);
  CHECK(run({"generate", "torus"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("generate writes valid documents") {
  Scratch tmp;
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"generate", "cycle", "--n", "6"},
        {"generate", "path", "--n", "4"},
        {"generate", "hypercube", "--dim", "3"},
        {"generate", "sphere", "--dim", "2", "--count", "20", "--seed", "4"},
        {"generate", "random", "--n", "7", "--seed", "9"}}) {
    const auto r = run(args);
    REQUIRE(r.code == 0);
    CHECK_NOTHROW(parse_space(r.out));
  }
  const auto out = tmp.path("c.json");
  CHECK(run({"generate", "cycle", "--n", "5", "-o", out}).code == 0);
  CHECK(load_space(out).size() == 5);
}

TEST_CASE("report on worked spaces") {
  Scratch tmp;
  const auto c6 = tmp.file("c6.json", space_to_json(cycle(6)));
  auto r = run({"--rho", "1", "report", c6});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["expansion"][0]["exp_ledoux"]["value"].get<double>() == doctest::Approx(3.0));
  CHECK(j["expansion"][0]["exp_gromov"]["value"].get<double>() == doctest::Approx(5.0 / 3.0));
  CHECK(j["alpha_profile"][1]["alpha"].get<double>() == doctest::Approx(1.0 / 6.0));
  CHECK(j["diameter"] == 3.0);

  r = run({"--graph-rule", "unit", "report", c6});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["spectral"]["lambda1"].get<double>() == doctest::Approx(1.0));

  const auto one = tmp.file("one.json", space_to_json(single_point()));
  r = run({"report", one});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["diameter"] == 0.0);

  const auto big = tmp.file("big.json", space_to_json(random_metric(30, 1)));
  r = run({"--restarts", "2", "--budget", "20", "report", big});
  REQUIRE(r.code == 0);
  const auto b = json::parse(r.out);
  CHECK(b["alpha_profile"] == "skipped: TooLargeForExact");
  CHECK(b["expansion"] == "skipped: TooLargeForExact");
  CHECK(b["obsdiam"]["upper"] == "skipped: TooLargeForExact");
  CHECK(b["obsdiam"]["lower"].get<double>() > 0.0);
}

TEST_CASE("check exit codes") {
  Scratch tmp;
  const auto c6 = tmp.file("c6.json", space_to_json(cycle(6)));
  auto r = run({"--kappa", "0.5", "--rho", "1", "check", c6});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out).size() > 10);

  r = run({"--inject-fault", "alpha", "check", c6});
  CHECK(r.code == 1);
  bool any_failed = false;
  for (const auto& rep : json::parse(r.out)) any_failed = any_failed || rep["pass"] == false;
  CHECK(any_failed);

  r = run({"--format", "csv", "check", c6});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("name,lhs,relation,rhs,pass,reason\n", 0) == 0);

  const auto out = tmp.path("checks.json");
  CHECK(run({"-o", out, "check", c6}).code == 0);
  CHECK(json::parse(read_file(out)).is_array());
}

TEST_CASE("output is byte-identical for identical configurations") {
  Scratch tmp;
  const auto s = tmp.file("s.json", space_to_json(random_metric(8, 3)));
  const std::vector<std::string> args{"--seed", "11", "--restarts", "4", "report", s};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> threaded{"--seed", "11", "--restarts", "4", "--threads", "1", "report", s};
  CHECK(run(threaded).out == run(args).out);
  const std::vector<std::string> chk{"--seed", "5", "check", s};
  CHECK(run(chk).out == run(chk).out);
}

TEST_CASE("sweep") {
  auto r = run({"--kappa", "0.3", "--functions", "3", "--restarts", "3", "sweep", "--count", "15"});
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["spaces"] == 15);
  CHECK(j["failures"] == 0);
  CHECK(j["checks"].get<std::size_t>() > j["skipped"].get<std::size_t>());
  CHECK(run({"sweep", "--min-n", "5", "--max-n", "4"}).code == 2);
}

TEST_CASE("config file with flags taking precedence") {
  Scratch tmp;
  const auto c6 = tmp.file("c6.json", space_to_json(cycle(6)));
  const auto cfg = tmp.file("run.cfg", "epsilon=0.4\nkappa=0.2\n");
  auto r = run({"--config", cfg, "report", c6});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["epsilon"] == 0.4);
  CHECK(j["kappa"] == 0.2);
  r = run({"--config", cfg, "--epsilon", "0.3", "report", c6});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["epsilon"] == 0.3);
  CHECK(j["kappa"] == 0.2);
  CHECK(run({"--config", tmp.path("none.cfg"), "report", c6}).code == 2);
}
