#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace syncsmith {

// Unsigned arbitrary-precision integer, just big enough for lcm(1..k)
// arithmetic: multiply and divide by machine words, compare, print.
class BigUint {
 public:
  BigUint() : words_{0} {}
  explicit BigUint(std::uint64_t v) : words_{v} {}

  static BigUint one() { return BigUint(1); }

  bool is_zero() const { return words_.size() == 1 && words_[0] == 0; }

  void mul_word(std::uint64_t m);
  // Divides in place, returns the remainder. d must be nonzero.
  std::uint64_t divmod_word(std::uint64_t d);
  std::uint64_t mod_word(std::uint64_t d) const;

  bool operator==(const BigUint& other) const { return words_ == other.words_; }
  bool operator!=(const BigUint& other) const { return !(*this == other); }
  bool operator<(const BigUint& other) const;
  bool operator<=(const BigUint& other) const { return !(other < *this); }

  std::optional<std::uint64_t> to_u64() const;
  std::string to_string() const;

  // Natural log of the value; requires nonzero.
  double log() const;

  std::size_t bit_length() const;

 private:
  void trim();
  std::vector<std::uint64_t> words_;  // little-endian, no trailing zero words
};

}  // namespace syncsmith
