#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace mmspace {

/// A subset of the points {0, ..., n-1} of a finite space, stored as an
/// n-bit membership mask.
class SubsetMask {
 public:
  SubsetMask() = default;
  explicit SubsetMask(std::size_t n);

  static SubsetMask full(std::size_t n);
  static SubsetMask singleton(std::size_t n, std::size_t i);
  /// Low `n` bits of `bits`; requires n <= 64.
  static SubsetMask from_bits(std::size_t n, std::uint64_t bits);
  static SubsetMask from_indices(std::size_t n, const std::vector<std::size_t>& indices);

  std::size_t size() const noexcept { return n_; }
  bool test(std::size_t i) const;
  void set(std::size_t i, bool value = true);
  std::size_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }
  bool is_subset_of(const SubsetMask& other) const;
  std::vector<std::size_t> indices() const;

  /// Requires size() <= 64.
  std::uint64_t to_bits() const;
  /// Lowercase hex, most significant nibble first, no prefix.
  std::string to_hex() const;

  SubsetMask& operator|=(const SubsetMask& other);
  SubsetMask& operator&=(const SubsetMask& other);
  SubsetMask complement() const;

  friend bool operator==(const SubsetMask&, const SubsetMask&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

inline SubsetMask operator|(SubsetMask a, const SubsetMask& b) { return a |= b; }
inline SubsetMask operator&(SubsetMask a, const SubsetMask& b) { return a &= b; }

}  // namespace mmspace
