#include "mmspace/subset_mask.hpp"

#include <bit>

#include "mmspace/error.hpp"

namespace mmspace {

namespace {

std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

void check_same_size(std::size_t a, std::size_t b) {
  if (a != b) {
    fail(ErrorKind::ShapeMismatch,
         "subset masks of different sizes: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

SubsetMask::SubsetMask(std::size_t n) : n_(n), words_(word_count(n), 0) {}

SubsetMask SubsetMask::full(std::size_t n) {
  SubsetMask m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i);
  return m;
}

SubsetMask SubsetMask::singleton(std::size_t n, std::size_t i) {
  SubsetMask m(n);
  m.set(i);
  return m;
}

SubsetMask SubsetMask::from_bits(std::size_t n, std::uint64_t bits) {
  if (n > 64) fail(ErrorKind::InvalidArgument, "from_bits requires n <= 64");
  SubsetMask m(n);
  if (n == 0) return m;
  const std::uint64_t keep = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  m.words_[0] = bits & keep;
  return m;
}

SubsetMask SubsetMask::from_indices(std::size_t n, const std::vector<std::size_t>& indices) {
  SubsetMask m(n);
  for (std::size_t i : indices) m.set(i);
  return m;
}

bool SubsetMask::test(std::size_t i) const {
  if (i >= n_) fail(ErrorKind::InvalidArgument, "point index out of range");
  return (words_[i / 64] >> (i % 64)) & 1U;
}

void SubsetMask::set(std::size_t i, bool value) {
  if (i >= n_) fail(ErrorKind::InvalidArgument, "point index out of range");
  const std::uint64_t bit = std::uint64_t{1} << (i % 64);
  if (value) {
    words_[i / 64] |= bit;
  } else {
    words_[i / 64] &= ~bit;
  }
}

std::size_t SubsetMask::count() const noexcept {
  std::size_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool SubsetMask::is_subset_of(const SubsetMask& other) const {
  check_same_size(n_, other.n_);
  for (std::size_t k = 0; k < words_.size(); ++k) {
    if ((words_[k] & ~other.words_[k]) != 0) return false;
  }
  return true;
}

std::vector<std::size_t> SubsetMask::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < words_.size(); ++k) {
    std::uint64_t w = words_[k];
    while (w != 0) {
      out.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

std::uint64_t SubsetMask::to_bits() const {
  if (n_ > 64) fail(ErrorKind::InvalidArgument, "to_bits requires n <= 64");
  return words_.empty() ? 0 : words_[0];
}

std::string SubsetMask::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t nibbles = n_ == 0 ? 1 : (n_ + 3) / 4;
  std::string out(nibbles, '0');
  for (std::size_t k = 0; k < nibbles; ++k) {
    const std::size_t bit = 4 * k;
    const unsigned value = static_cast<unsigned>((words_.empty() ? 0 : words_[bit / 64] >> (bit % 64)) & 0xF);
    out[nibbles - 1 - k] = kDigits[value];
  }
  return out;
}

SubsetMask& SubsetMask::operator|=(const SubsetMask& other) {
  check_same_size(n_, other.n_);
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
  return *this;
}

SubsetMask& SubsetMask::operator&=(const SubsetMask& other) {
  check_same_size(n_, other.n_);
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
  return *this;
}

SubsetMask SubsetMask::complement() const {
  SubsetMask m(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (!test(i)) m.set(i);
  }
  return m;
}

}  // namespace mmspace
