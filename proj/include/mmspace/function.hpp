#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mmspace/space.hpp"

namespace mmspace {

/// Real-valued observable on the points of a space, with its Lipschitz
/// constant max |f(i) - f(j)| / d(i, j) computed on construction.
class LipschitzFunction {
 public:
  LipschitzFunction(const Space& space, std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  double lip() const noexcept { return lip_; }

  /// ∫ f dμ
  double mean(const Space& space) const;

 private:
  std::vector<double> values_;
  double lip_ = 0.0;
};

double lipschitz_constant(const Space& space, std::span<const double> values);

/// x ↦ d(x, source)
LipschitzFunction distance_function(const Space& space, std::size_t source);
/// x ↦ min over a in A of d(x, a); A must be nonempty.
LipschitzFunction distance_to_set(const Space& space, const SubsetMask& set);

}  // namespace mmspace
