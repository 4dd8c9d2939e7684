#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mmspace {

/// Slack below which a checked inequality counts as failed.
inline constexpr double kCheckTolerance = 1e-9;

enum class Relation { LessEqual, GreaterEqual };

/// One checked inequality. `pass` is empty when the hypotheses were not met
/// and the check was skipped.
struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  Relation relation = Relation::LessEqual;
  bool hypotheses_met = true;
  std::string reason;
  std::optional<bool> pass;
  std::vector<std::pair<std::string, double>> inputs;
  std::string witness;

  /// rhs - lhs for <=, lhs - rhs for >=.
  double slack() const noexcept {
    return relation == Relation::LessEqual ? rhs - lhs : lhs - rhs;
  }
  bool skipped() const noexcept { return !pass.has_value(); }
  bool failed() const noexcept { return pass.has_value() && !*pass; }
};

using Inputs = std::vector<std::pair<std::string, double>>;

BoundReport make_check(std::string name, double lhs, Relation relation, double rhs,
                       Inputs inputs = {}, double tolerance = kCheckTolerance);
BoundReport make_skip(std::string name, std::string reason, Inputs inputs = {});

bool all_passed(const std::vector<BoundReport>& reports);
std::size_t count_failed(const std::vector<BoundReport>& reports);
std::size_t count_skipped(const std::vector<BoundReport>& reports);

}  // namespace mmspace
