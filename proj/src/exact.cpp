#include "exact.hpp"

#include <string>

#include "mmspace/error.hpp"

namespace mmspace::detail {

void require_exact(const Space& space, std::size_t limit, const char* operation) {
  if (limit > kMaxExactLimit) {
    fail(ErrorKind::InvalidArgument,
         "exact limit " + std::to_string(limit) + " exceeds " + std::to_string(kMaxExactLimit));
  }
  if (space.size() > limit) {
    fail(ErrorKind::TooLargeForExact, std::string(operation) + ": n = " +
                                          std::to_string(space.size()) + " exceeds exact limit " +
                                          std::to_string(limit));
  }
}

MassTable::MassTable(const Space& space) : n_(space.size()) {
  low_bits_ = static_cast<unsigned>(n_ < 13 ? n_ : 13);
  low_mask_ = (Bits{1} << low_bits_) - 1;
  const std::size_t high_bits = n_ - low_bits_;
  low_.assign(std::size_t{1} << low_bits_, 0.0);
  high_.assign(std::size_t{1} << high_bits, 0.0);
  for (std::size_t b = 1; b < low_.size(); ++b) {
    const auto i = static_cast<std::size_t>(std::countr_zero(b));
    low_[b] = low_[b & (b - 1)] + space.weight(i);
  }
  for (std::size_t b = 1; b < high_.size(); ++b) {
    const auto i = static_cast<std::size_t>(std::countr_zero(b));
    high_[b] = high_[b & (b - 1)] + space.weight(low_bits_ + i);
  }
  suffix_.assign(n_ + 1, 0.0);
  for (std::size_t i = n_; i-- > 0;) suffix_[i] = suffix_[i + 1] + space.weight(i);
}

std::vector<Bits> ball_bits(const Space& space, double r) {
  const std::size_t n = space.size();
  std::vector<Bits> balls(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (space.d(i, j) <= r + kRadiusTolerance) balls[i] |= Bits{1} << j;
    }
  }
  return balls;
}

}  // namespace mmspace::detail
