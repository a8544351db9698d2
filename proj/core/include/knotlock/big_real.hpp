#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "knotlock/big_natural.hpp"

namespace knotlock {

/// Signed decimal value `mantissa * 10^exponent`.
///
/// Addition, subtraction and multiplication are exact; rounding only happens
/// where a significant-digit count is passed explicitly. This is the working
/// type behind BigReal and the log/exp helpers.
class Decimal {
 public:
  Decimal() = default;
  Decimal(mpz_class mantissa, long exponent);
  static Decimal from_natural(const BigNatural& n) { return Decimal(n.raw(), 0); }
  static Decimal from_int(long v) { return Decimal(mpz_class(v), 0); }

  [[nodiscard]] const mpz_class& mantissa() const noexcept { return mantissa_; }
  [[nodiscard]] long exponent() const noexcept { return exponent_; }
  [[nodiscard]] int sign() const noexcept { return sgn(mantissa_); }
  [[nodiscard]] bool is_zero() const noexcept { return sign() == 0; }

  /// Count of digits in |mantissa| (zero counts as one).
  [[nodiscard]] std::size_t digits() const;
  /// floor(log10 |x|); undefined for zero.
  [[nodiscard]] long magnitude() const { return static_cast<long>(digits()) - 1 + exponent_; }

  /// Round-half-even to `significant` digits. Values already that short are
  /// returned unchanged (no zero padding).
  [[nodiscard]] Decimal rounded(std::size_t significant) const;
  [[nodiscard]] Decimal truncated(std::size_t significant) const;
  [[nodiscard]] Decimal abs() const { return Decimal(::abs(mantissa_), exponent_); }
  [[nodiscard]] Decimal negated() const { return Decimal(-mantissa_, exponent_); }

  /// floor(x) as an integer.
  [[nodiscard]] mpz_class floor_integer() const;

  friend Decimal operator+(const Decimal& a, const Decimal& b);
  friend Decimal operator-(const Decimal& a, const Decimal& b) { return a + b.negated(); }
  friend Decimal operator*(const Decimal& a, const Decimal& b) {
    return Decimal(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
  }
  friend int compare(const Decimal& a, const Decimal& b);
  friend bool operator==(const Decimal& a, const Decimal& b) { return compare(a, b) == 0; }
  friend bool operator<(const Decimal& a, const Decimal& b) { return compare(a, b) < 0; }

 private:
  mpz_class mantissa_;
  long exponent_ = 0;
};

/// Correctly rounded (half-even) quotient to `significant` digits. Divisor must be nonzero.
Decimal divide(const Decimal& a, const Decimal& b, std::size_t significant);

/// Natural logarithm of x > 0, accurate to about `significant` digits relative
/// to the result (including results very close to zero, i.e. x close to 1).
Decimal ln(const Decimal& x, std::size_t significant);

/// e^x accurate to about `significant` digits relative.
Decimal exp(const Decimal& x, std::size_t significant);

/// x^e by left-to-right squaring, rounded to `working` digits. Intermediates
/// carry about log2(e) extra bits, so the relative error stays near 10^-working.
/// Throws std::overflow_error when the result's magnitude is out of range.
Decimal power(const Decimal& x, const BigNatural& e, std::size_t working);

/// Positive real carried at a fixed number of significant decimal digits.
///
/// The mantissa always has exactly `precision()` digits, so the canonical
/// decimal rendering is unique and survives a parse/render round trip
/// bit-exactly.
class BigReal {
 public:
  BigReal() : value_(mpz_class(1), 0) {}
  static BigReal one(std::size_t precision);
  /// Rounds half-even to `precision` digits; x must be positive.
  static BigReal from_decimal(const Decimal& x, std::size_t precision);
  static BigReal from_natural(const BigNatural& n, std::size_t precision);
  /// Parses a plain positional decimal ("1.6223", "0.0042", "2304."). The
  /// precision is the number of significant digits written. Throws
  /// Error(InvalidInput) on anything else.
  static BigReal parse(std::string_view text);

  [[nodiscard]] std::size_t precision() const noexcept { return precision_; }
  [[nodiscard]] const Decimal& value() const noexcept { return value_; }

  /// Canonical rendering: explicit decimal point, no exponent, exactly
  /// precision() significant digits. Throws Error(InvalidInput) if the value
  /// has integer digits beyond its precision (not representable without an
  /// exponent).
  [[nodiscard]] std::string to_string() const;

  /// The first `k` significant digits (truncated, not rounded) rendered
  /// positionally, e.g. leading_digits(5) of 1.08958... is "1.0895".
  [[nodiscard]] std::string leading_digits(std::size_t k) const;

  [[nodiscard]] BigReal rounded(std::size_t precision) const;
  [[nodiscard]] BigReal truncated(std::size_t precision) const;

  [[nodiscard]] BigNatural nearest_integer() const;
  /// True iff |x - n| <= num/den, evaluated exactly.
  [[nodiscard]] bool within(const BigNatural& n, std::uint64_t num, std::uint64_t den) const;

  friend bool operator==(const BigReal& a, const BigReal& b) {
    return a.precision_ == b.precision_ && a.value_.mantissa() == b.value_.mantissa() &&
           a.value_.exponent() == b.value_.exponent();
  }

 private:
  BigReal(Decimal v, std::size_t precision) : value_(std::move(v)), precision_(precision) {}

  Decimal value_;
  std::size_t precision_ = 1;
};

/// n^(1/e) rounded half-even to `precision` significant digits. Requires n >= 1, e >= 1.
BigReal real_root(const BigNatural& n, const BigNatural& e, std::size_t precision);

/// x^e carried at x's precision. Intermediates use guard digits so the only
/// material error is the amplification of x's own rounding.
BigReal real_pow_int(const BigReal& x, const BigNatural& e);

}  // namespace knotlock
