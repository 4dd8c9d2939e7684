#include "mmspace/function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mmspace/error.hpp"

namespace mmspace {

double lipschitz_constant(const Space& space, std::span<const double> values) {
  const std::size_t n = space.size();
  if (values.size() != n) {
    fail(ErrorKind::ShapeMismatch, "function has " + std::to_string(values.size()) +
                                       " values for a space of " + std::to_string(n) + " points");
  }
  double lip = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(values[i])) fail(ErrorKind::NonFinite, "function value is not finite");
    for (std::size_t j = i + 1; j < n; ++j) {
      lip = std::max(lip, std::abs(values[i] - values[j]) / space.d(i, j));
    }
  }
  return lip;
}

LipschitzFunction::LipschitzFunction(const Space& space, std::vector<double> values)
    : values_(std::move(values)), lip_(lipschitz_constant(space, values_)) {}

double LipschitzFunction::mean(const Space& space) const {
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) s += space.weight(i) * values_[i];
  return s;
}

LipschitzFunction distance_function(const Space& space, std::size_t source) {
  if (source >= space.size()) fail(ErrorKind::InvalidArgument, "source point out of range");
  const auto row = space.row(source);
  return LipschitzFunction(space, std::vector<double>(row.begin(), row.end()));
}

LipschitzFunction distance_to_set(const Space& space, const SubsetMask& set) {
  if (set.size() != space.size()) fail(ErrorKind::ShapeMismatch, "subset size mismatch");
  if (set.empty()) fail(ErrorKind::EmptySet, "distance to an empty set");
  std::vector<double> f(space.size(), std::numeric_limits<double>::infinity());
  for (std::size_t a : set.indices()) {
    for (std::size_t x = 0; x < space.size(); ++x) f[x] = std::min(f[x], space.d(x, a));
  }
  return LipschitzFunction(space, std::move(f));
}

}  // namespace mmspace
