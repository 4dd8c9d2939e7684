#include "mmspace/report.hpp"

#include <algorithm>
#include <cmath>

namespace mmspace {

BoundReport make_check(std::string name, double lhs, Relation relation, double rhs,
                       Inputs inputs, double tolerance) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.relation = relation;
  r.inputs = std::move(inputs);
  r.pass = std::isfinite(lhs) && std::isfinite(rhs) && r.slack() >= -tolerance;
  return r;
}

BoundReport make_skip(std::string name, std::string reason, Inputs inputs) {
  BoundReport r;
  r.name = std::move(name);
  r.hypotheses_met = false;
  r.reason = std::move(reason);
  r.inputs = std::move(inputs);
  return r;
}

bool all_passed(const std::vector<BoundReport>& reports) { return count_failed(reports) == 0; }

std::size_t count_failed(const std::vector<BoundReport>& reports) {
  return static_cast<std::size_t>(
      std::count_if(reports.begin(), reports.end(), [](const auto& r) { return r.failed(); }));
}

std::size_t count_skipped(const std::vector<BoundReport>& reports) {
  return static_cast<std::size_t>(
      std::count_if(reports.begin(), reports.end(), [](const auto& r) { return r.skipped(); }));
}

}  // namespace mmspace
