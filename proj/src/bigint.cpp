#include "syncsmith/bigint.hpp"

#include <cmath>
#include <stdexcept>

namespace syncsmith {

void BigUint::trim() {
  while (words_.size() > 1 && words_.back() == 0) words_.pop_back();
}

void BigUint::mul_word(std::uint64_t m) {
  unsigned __int128 carry = 0;
  for (auto& w : words_) {
    unsigned __int128 cur = static_cast<unsigned __int128>(w) * m + carry;
    w = static_cast<std::uint64_t>(cur);
    carry = cur >> 64;
  }
  if (carry != 0) words_.push_back(static_cast<std::uint64_t>(carry));
  trim();
}

std::uint64_t BigUint::divmod_word(std::uint64_t d) {
  if (d == 0) throw std::domain_error("BigUint: division by zero");
  unsigned __int128 rem = 0;
  for (std::size_t i = words_.size(); i-- > 0;) {
    unsigned __int128 cur = (rem << 64) | words_[i];
    words_[i] = static_cast<std::uint64_t>(cur / d);
    rem = cur % d;
  }
  trim();
  return static_cast<std::uint64_t>(rem);
}

std::uint64_t BigUint::mod_word(std::uint64_t d) const {
  if (d == 0) throw std::domain_error("BigUint: division by zero");
  unsigned __int128 rem = 0;
  for (std::size_t i = words_.size(); i-- > 0;) {
    rem = ((rem << 64) | words_[i]) % d;
  }
  return static_cast<std::uint64_t>(rem);
}

bool BigUint::operator<(const BigUint& other) const {
  if (words_.size() != other.words_.size())
    return words_.size() < other.words_.size();
  for (std::size_t i = words_.size(); i-- > 0;) {
    if (words_[i] != other.words_[i]) return words_[i] < other.words_[i];
  }
  return false;
}

std::optional<std::uint64_t> BigUint::to_u64() const {
  if (words_.size() > 1) return std::nullopt;
  return words_[0];
}

std::string BigUint::to_string() const {
  if (is_zero()) return "0";
  BigUint tmp = *this;
  std::string digits;
  while (!tmp.is_zero()) {
    std::uint64_t chunk = tmp.divmod_word(1000000000ull);
    for (int k = 0; k < 9; ++k) {
      digits.push_back(static_cast<char>('0' + chunk % 10));
      chunk /= 10;
    }
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  return std::string(digits.rbegin(), digits.rend());
}

std::size_t BigUint::bit_length() const {
  std::uint64_t top = words_.back();
  if (top == 0) return 1;
  std::size_t bits = 0;
  while (top != 0) {
    ++bits;
    top >>= 1;
  }
  return bits + 64 * (words_.size() - 1);
}

double BigUint::log() const {
  if (is_zero()) throw std::domain_error("BigUint: log of zero");
  // Top 128 bits give far more mantissa than a double can hold.
  std::size_t n = words_.size();
  long double mant = static_cast<long double>(words_[n - 1]);
  long double scale = 64.0L * static_cast<long double>(n - 1);
  if (n >= 2) {
    mant = mant * 18446744073709551616.0L + static_cast<long double>(words_[n - 2]);
    scale -= 64.0L;
  }
  constexpr long double ln2 = 0.69314718055994530941723212145818L;
  return static_cast<double>(std::log(mant) + scale * ln2);
}

}  // namespace syncsmith
