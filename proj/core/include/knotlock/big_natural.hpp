#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace knotlock {

/// Exact natural number (>= 0) of unbounded size, backed by GMP.
///
/// Subtraction that would go negative throws std::domain_error instead of
/// wrapping; every other operation is closed over the naturals.
class BigNatural {
 public:
  BigNatural() = default;
  BigNatural(std::uint64_t value) : value_(static_cast<unsigned long>(value)) {}  // NOLINT
  explicit BigNatural(const mpz_class& value);

  /// Parses a canonical base-10 literal: digits only, no sign, no leading zeros.
  static BigNatural parse(std::string_view text);

  [[nodiscard]] std::string to_string() const { return value_.get_str(10); }
  [[nodiscard]] const mpz_class& raw() const noexcept { return value_; }

  [[nodiscard]] bool is_zero() const noexcept { return sgn(value_) == 0; }
  [[nodiscard]] bool is_one() const noexcept { return value_ == 1; }
  [[nodiscard]] bool is_even() const { return mpz_even_p(value_.get_mpz_t()) != 0; }
  [[nodiscard]] bool fits_u64() const noexcept { return value_.fits_ulong_p(); }
  [[nodiscard]] std::uint64_t to_u64() const;

  /// Number of base-10 digits; zero has one digit.
  [[nodiscard]] std::size_t decimal_digits() const;
  [[nodiscard]] std::size_t bit_length() const;

  [[nodiscard]] BigNatural pow(std::uint64_t exponent) const;
  [[nodiscard]] bool divisible_by(const BigNatural& d) const;

  BigNatural& operator+=(const BigNatural& rhs) { value_ += rhs.value_; return *this; }
  BigNatural& operator-=(const BigNatural& rhs);
  BigNatural& operator*=(const BigNatural& rhs) { value_ *= rhs.value_; return *this; }
  BigNatural& operator/=(const BigNatural& rhs);
  BigNatural& operator%=(const BigNatural& rhs);

  friend BigNatural operator+(BigNatural a, const BigNatural& b) { return a += b; }
  friend BigNatural operator-(BigNatural a, const BigNatural& b) { return a -= b; }
  friend BigNatural operator*(BigNatural a, const BigNatural& b) { return a *= b; }
  friend BigNatural operator/(BigNatural a, const BigNatural& b) { return a /= b; }
  friend BigNatural operator%(BigNatural a, const BigNatural& b) { return a %= b; }

  friend bool operator==(const BigNatural& a, const BigNatural& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const BigNatural& a, const BigNatural& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const BigNatural& n) {
    return os << n.to_string();
  }

 private:
  mpz_class value_;
};

}  // namespace knotlock
