#include "knotlock/big_natural.hpp"

#include <stdexcept>

#include "knotlock/error.hpp"

namespace knotlock {

BigNatural::BigNatural(const mpz_class& value) : value_(value) {
  if (sgn(value_) < 0) throw std::domain_error("BigNatural: negative value");
}

BigNatural BigNatural::parse(std::string_view text) {
  if (text.empty()) throw Error(Errc::InvalidInput, "empty integer literal");
  for (char c : text) {
    if (c < '0' || c > '9') throw Error(Errc::InvalidInput, "not a decimal integer: " + std::string(text));
  }
  if (text.size() > 1 && text.front() == '0') {
    throw Error(Errc::InvalidInput, "leading zero in integer literal: " + std::string(text));
  }
  BigNatural out;
  out.value_.set_str(std::string(text), 10);
  return out;
}

std::uint64_t BigNatural::to_u64() const {
  if (!fits_u64()) throw std::overflow_error("BigNatural does not fit in 64 bits");
  return value_.get_ui();
}

std::size_t BigNatural::decimal_digits() const {
  if (is_zero()) return 1;
  // mpz_sizeinbase may overshoot by one for base 10.
  std::size_t n = mpz_sizeinbase(value_.get_mpz_t(), 10);
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, n - 1);
  return value_ < p ? n - 1 : n;
}

std::size_t BigNatural::bit_length() const {
  return is_zero() ? 0 : mpz_sizeinbase(value_.get_mpz_t(), 2);
}

BigNatural BigNatural::pow(std::uint64_t exponent) const {
  BigNatural out;
  mpz_pow_ui(out.value_.get_mpz_t(), value_.get_mpz_t(), exponent);
  return out;
}

bool BigNatural::divisible_by(const BigNatural& d) const {
  if (d.is_zero()) return is_zero();
  return mpz_divisible_p(value_.get_mpz_t(), d.value_.get_mpz_t()) != 0;
}

BigNatural& BigNatural::operator-=(const BigNatural& rhs) {
  if (value_ < rhs.value_) throw std::domain_error("BigNatural: subtraction underflow");
  value_ -= rhs.value_;
  return *this;
}

BigNatural& BigNatural::operator/=(const BigNatural& rhs) {
  if (rhs.is_zero()) throw std::domain_error("BigNatural: division by zero");
  mpz_fdiv_q(value_.get_mpz_t(), value_.get_mpz_t(), rhs.value_.get_mpz_t());
  return *this;
}

BigNatural& BigNatural::operator%=(const BigNatural& rhs) {
  if (rhs.is_zero()) throw std::domain_error("BigNatural: division by zero");
  mpz_fdiv_r(value_.get_mpz_t(), value_.get_mpz_t(), rhs.value_.get_mpz_t());
  return *this;
}

}  // namespace knotlock
