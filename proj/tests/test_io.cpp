#include <doctest.h>

#include <cmath>
#include <filesystem>

#include <json.hpp>

#include "mmspace/concentration.hpp"
#include "mmspace/io.hpp"
#include "mmspace/report.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace mmspace;

TEST_CASE("parse a space document") {
  const auto s = parse_space(R"({"distances": [[0, 1], [1, 0]], "weights": [0.5, 0.5]})");
  CHECK(s.size() == 2);
  CHECK(s.diameter() == 1.0);
  const auto u = parse_space(R"({"distances": [[0, 2, 1], [2, 0, 1], [1, 1, 0]], "labels": ["a", "b", "c"]})");
  CHECK(u.weight(2) == doctest::Approx(1.0 / 3.0));
  CHECK(u.labels()[1] == "b");
}

TEST_CASE("parse errors") {
  CHECK_ERROR_KIND(parse_space("{"), Parse);
  CHECK_ERROR_KIND(parse_space("[1, 2]"), Parse);
  CHECK_ERROR_KIND(parse_space(R"({"weights": [1]})"), Parse);
  CHECK_ERROR_KIND(parse_space(R"({"distances": [["x"]]})"), Parse);
  CHECK_ERROR_KIND(parse_space(R"({"distances": [[0, 1], [2, 0]]})"), AsymmetricDistance);
  CHECK_ERROR_KIND(parse_space(R"({"distances": [[0, 1], [1, 0]], "labels": ["a"]})"), ShapeMismatch);
  CHECK_ERROR_KIND(load_space("/nonexistent/space.json"), Io);
}

TEST_CASE("space documents round-trip") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = oracle::random_space(2 + seed, seed);
    const auto t = parse_space(space_to_json(s));
    CHECK(t.distance_matrix() == s.distance_matrix());
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(t.weight(i) == s.weight(i));
  }
}

TEST_CASE("file helpers") {
  const auto path = std::filesystem::temp_directory_path() / "mmspace_test_io.json";
  write_file(path, space_to_json(cycle(5)));
  CHECK(load_space(path).size() == 5);
  std::filesystem::remove(path);
  CHECK_ERROR_KIND(read_file(path), Io);
  CHECK_ERROR_KIND(write_file("/nonexistent/dir/x.json", "x"), Io);
}

TEST_CASE("format_double round-trips at full precision") {
  Rng rng(3);
  for (int k = 0; k < 2000; ++k) {
    const double x = std::ldexp(rng.uniform(-1, 1), static_cast<int>(rng.below(80)) - 40);
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0 / 3.0).size() <= 24);
}

TEST_CASE("profile CSV round-trips without precision loss") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = oracle::random_space(3 + seed % 6, seed);
    std::vector<double> radii{0.0};
    for (double d : s.distances()) radii.push_back(d / 3.0);
    const auto p = alpha_profile(s, 0.4, radii);
    const auto csv = profile_to_csv(p);
    CHECK(csv.rfind("r,alpha,witness_mask_hex\n", 0) == 0);
    const auto q = profile_from_csv(csv, 0.4, s.size());
    CHECK(q.radii == p.radii);
    CHECK(q.values == p.values);
    REQUIRE(q.witnesses.size() == p.witnesses.size());
    for (std::size_t k = 0; k < p.witnesses.size(); ++k) CHECK(q.witnesses[k] == p.witnesses[k]);
  }
  CHECK_ERROR_KIND(profile_from_csv("radius,alpha\n", 0.5), Parse);
  CHECK_ERROR_KIND(profile_from_csv("r,alpha,witness_mask_hex\n1;2\n", 0.5), Parse);
  CHECK_ERROR_KIND(profile_from_csv("r,alpha,witness_mask_hex\nx,0.5,1\n", 0.5), Parse);
  CHECK_ERROR_KIND(profile_from_csv("r,alpha,witness_mask_hex\n1,0.5,g\n", 0.5, 4), Parse);
  CHECK_ERROR_KIND(profile_from_csv("r,alpha,witness_mask_hex\n1,0.5,1f\n", 0.5, 4), Parse);
}

TEST_CASE("report serialization") {
  std::vector<BoundReport> reports;
  reports.push_back(make_check("a.le", 0.1, Relation::LessEqual, 1.0 / 3.0, {{"r", 2.0}}));
  reports.push_back(make_check("a.ge", 0.1, Relation::GreaterEqual, 0.2));
  reports.push_back(make_skip("a.skip", "Exp_L unbounded"));
  CHECK(*reports[0].pass);
  CHECK(!*reports[1].pass);
  CHECK(reports[2].skipped());
  CHECK(count_failed(reports) == 1);
  CHECK(count_skipped(reports) == 1);
  CHECK(!all_passed(reports));

  const auto json = nlohmann::json::parse(reports_to_json(reports));
  REQUIRE(json.size() == 3);
  CHECK(json[0]["name"] == "a.le");
  CHECK(json[0]["rhs"].get<double>() == 1.0 / 3.0);
  CHECK(json[1]["pass"] == false);
  CHECK(json[2]["pass"] == "skipped");
  CHECK(json[2]["reason"] == "Exp_L unbounded");

  const auto csv = reports_to_csv(reports);
  CHECK(csv.find("0.3333333333333333") != std::string::npos);
  CHECK(csv.find("a.skip") != std::string::npos);
}

TEST_CASE("function JSON") {
  const auto j = nlohmann::json::parse(function_to_json(std::vector<double>{0.0, 0.25}, 0.5));
  CHECK(j["f"][1].get<double>() == 0.25);
  CHECK(j["lip"].get<double>() == 0.5);
}
