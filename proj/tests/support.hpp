#pragma once

#include <optional>

#include "mmspace/error.hpp"

namespace testing {

/// Kind of the mmspace::Error thrown by `fn`, empty when nothing is thrown.
template <class Fn>
std::optional<mmspace::ErrorKind> error_kind(Fn&& fn) {
  try {
    fn();
  } catch (const mmspace::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace testing

#define CHECK_ERROR_KIND(expr, expected) \
  CHECK(testing::error_kind([&] { (void)(expr); }) == std::optional{mmspace::ErrorKind::expected})
