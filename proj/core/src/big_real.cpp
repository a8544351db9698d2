#include "knotlock/big_real.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "knotlock/error.hpp"

namespace knotlock {
namespace {

mpz_class pow10(unsigned long k) {
  // Rounding and digit counting ask for the same few powers over and over.
  constexpr unsigned long kCached = 4096;
  if (k <= kCached) {
    thread_local std::map<unsigned long, mpz_class> cache;
    auto it = cache.find(k);
    if (it == cache.end()) {
      mpz_class p;
      mpz_ui_pow_ui(p.get_mpz_t(), 10, k);
      it = cache.emplace(k, std::move(p)).first;
    }
    return it->second;
  }
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, k);
  return p;
}

std::size_t digit_count(const mpz_class& m) {
  if (sgn(m) == 0) return 1;
  const std::size_t n = mpz_sizeinbase(m.get_mpz_t(), 10);
  if (n == 1) return 1;
  return mpz_cmpabs(m.get_mpz_t(), pow10(n - 1).get_mpz_t()) < 0 ? n - 1 : n;
}

std::size_t count_digits(std::uint64_t v) {
  std::size_t n = 1;
  while (v >= 10) {
    v /= 10;
    ++n;
  }
  return n;
}

// ---- fixed point: integers scaled by S = 10^F ------------------------------

mpz_class to_fixed(const Decimal& x, unsigned long frac_digits) {
  const long shift = x.exponent() + static_cast<long>(frac_digits);
  mpz_class out;
  if (shift >= 0) {
    out = x.mantissa() * pow10(static_cast<unsigned long>(shift));
  } else {
    mpz_fdiv_q(out.get_mpz_t(), x.mantissa().get_mpz_t(),
               pow10(static_cast<unsigned long>(-shift)).get_mpz_t());
  }
  return out;
}

// atanh(z) for |z| <= 1/3, z scaled by s.
mpz_class atanh_fixed(const mpz_class& z, const mpz_class& s) {
  mpz_class sum = z;
  mpz_class z2 = z * z / s;
  mpz_class power = z;
  for (unsigned long n = 3;; n += 2) {
    power = power * z2 / s;
    mpz_class term = power / n;
    if (sgn(term) == 0) break;
    sum += term;
  }
  return sum;
}

mpz_class ln2_fixed(const mpz_class& s) { return 2 * atanh_fixed(s / 3, s); }

mpz_class ln10_fixed(const mpz_class& s) {
  // ln 10 = 3 ln 2 + ln(5/4), and ln(5/4) = 2 atanh(1/9).
  return 3 * ln2_fixed(s) + 2 * atanh_fixed(s / 9, s);
}

}  // namespace

// ---- Decimal ----------------------------------------------------------------

Decimal::Decimal(mpz_class mantissa, long exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent) {}

std::size_t Decimal::digits() const { return digit_count(mantissa_); }

Decimal Decimal::rounded(std::size_t significant) const {
  if (significant == 0) throw std::invalid_argument("rounded: zero digits");
  const std::size_t d = digits();
  if (is_zero() || d <= significant) return *this;
  unsigned long k = static_cast<unsigned long>(d - significant);
  const mpz_class p = pow10(k);
  mpz_class q;
  mpz_class r;
  mpz_class m = ::abs(mantissa_);
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
  const int c = cmp(2 * r, p);
  if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()))) ++q;
  if (digit_count(q) > significant) {
    q /= 10;
    ++k;
  }
  if (sign() < 0) q = -q;
  return Decimal(std::move(q), exponent_ + static_cast<long>(k));
}

Decimal Decimal::truncated(std::size_t significant) const {
  if (significant == 0) throw std::invalid_argument("truncated: zero digits");
  const std::size_t d = digits();
  if (is_zero() || d <= significant) return *this;
  const unsigned long k = static_cast<unsigned long>(d - significant);
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), mantissa_.get_mpz_t(), pow10(k).get_mpz_t());
  return Decimal(std::move(q), exponent_ + static_cast<long>(k));
}

mpz_class Decimal::floor_integer() const {
  if (exponent_ >= 0) return mantissa_ * pow10(static_cast<unsigned long>(exponent_));
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), mantissa_.get_mpz_t(),
             pow10(static_cast<unsigned long>(-exponent_)).get_mpz_t());
  return q;
}

Decimal operator+(const Decimal& a, const Decimal& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const long e = std::min(a.exponent_, b.exponent_);
  mpz_class ma = a.mantissa_ * pow10(static_cast<unsigned long>(a.exponent_ - e));
  mpz_class mb = b.mantissa_ * pow10(static_cast<unsigned long>(b.exponent_ - e));
  return Decimal(ma + mb, e);
}

int compare(const Decimal& a, const Decimal& b) {
  const int sa = a.sign();
  const int sb = b.sign();
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  // Same sign: magnitudes decide unless they coincide.
  const long ma = a.magnitude();
  const long mb = b.magnitude();
  if (ma != mb) return (ma < mb) == (sa > 0) ? -1 : 1;
  return (a - b).sign();
}

Decimal divide(const Decimal& a, const Decimal& b, std::size_t significant) {
  if (b.is_zero()) throw std::domain_error("divide: zero divisor");
  if (a.is_zero()) return Decimal();
  const long shift = static_cast<long>(significant) + 2 + static_cast<long>(b.digits()) -
                     static_cast<long>(a.digits());
  const unsigned long k = shift > 0 ? static_cast<unsigned long>(shift) : 0;
  mpz_class num = ::abs(a.mantissa()) * pow10(k);
  mpz_class den = ::abs(b.mantissa());
  mpz_class q;
  mpz_class r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  // A sticky digit keeps half-even honest when the remainder is nonzero.
  q = q * 10 + (sgn(r) != 0 ? 1 : 0);
  if (a.sign() * b.sign() < 0) q = -q;
  return Decimal(std::move(q), a.exponent() - b.exponent() - static_cast<long>(k) - 1)
      .rounded(significant);
}

Decimal ln(const Decimal& x, std::size_t significant) {
  if (x.sign() <= 0) throw std::domain_error("ln: non-positive argument");

  // Scale into [1, 10) by a power of ten; values in [0.5, 2) are left alone
  // so that a result near zero keeps its relative accuracy.
  long lead = x.magnitude();
  Decimal y = x;
  const Decimal half(mpz_class(5), -1);
  const Decimal two(mpz_class(2), 0);
  if (!(compare(x, half) >= 0 && compare(x, two) < 0)) {
    y = Decimal(x.mantissa(), x.exponent() - lead);
  } else {
    lead = 0;
  }

  std::size_t zeros = 0;
  const Decimal t = y - Decimal::from_int(1);
  if (t.is_zero() && lead == 0) return Decimal();
  if (!t.is_zero() && t.magnitude() < 0) zeros = static_cast<std::size_t>(-t.magnitude());

  const unsigned long frac = static_cast<unsigned long>(
      significant + 10 + zeros + count_digits(static_cast<std::uint64_t>(std::labs(lead))));
  const mpz_class s = pow10(frac);
  mpz_class v = to_fixed(y, frac);

  unsigned long halvings = 0;
  const mpz_class limit = 3 * s / 2;
  while (v > limit) {
    v /= 2;
    ++halvings;
  }

  const mpz_class z = (v - s) * s / (v + s);
  mpz_class result = 2 * atanh_fixed(z, s);
  if (halvings != 0) result += halvings * ln2_fixed(s);
  if (lead != 0) result += lead * ln10_fixed(s);
  return Decimal(std::move(result), -static_cast<long>(frac)).rounded(significant);
}

Decimal exp(const Decimal& x, std::size_t significant) {
  if (x.is_zero()) return Decimal::from_int(1);
  const long mx = x.magnitude();
  if (mx > 17) throw std::overflow_error("exp: argument too large");

  constexpr unsigned long kHalvings = 12;
  const unsigned long frac =
      static_cast<unsigned long>(significant + 15 + static_cast<std::size_t>(std::max(0L, mx + 1)));
  const mpz_class s = pow10(frac);

  const mpz_class xs = to_fixed(x, frac);
  const mpz_class l10 = ln10_fixed(s);
  mpz_class k;
  mpz_class r;
  mpz_fdiv_qr(k.get_mpz_t(), r.get_mpz_t(), xs.get_mpz_t(), l10.get_mpz_t());

  // exp(r) = exp(r / 2^h)^(2^h), with r in [0, ln 10).
  r >>= kHalvings;
  mpz_class sum = s;
  mpz_class term = s;
  for (unsigned long n = 1;; ++n) {
    term = term * r / s / n;
    if (sgn(term) == 0) break;
    sum += term;
  }
  for (unsigned long i = 0; i < kHalvings; ++i) sum = sum * sum / s;

  return Decimal(std::move(sum), k.get_si() - static_cast<long>(frac)).rounded(significant);
}

// ---- BigReal ----------------------------------------------------------------

namespace {

Decimal pad_to(const Decimal& x, std::size_t precision) {
  const std::size_t d = x.digits();
  if (d >= precision) return x;
  const unsigned long extra = static_cast<unsigned long>(precision - d);
  return Decimal(x.mantissa() * pow10(extra), x.exponent() - static_cast<long>(extra));
}

void require_precision(std::size_t precision) {
  if (precision == 0) throw Error(Errc::InvalidInput, "precision must be at least one digit");
}

}  // namespace

BigReal BigReal::one(std::size_t precision) {
  require_precision(precision);
  return BigReal(pad_to(Decimal::from_int(1), precision), precision);
}

BigReal BigReal::from_decimal(const Decimal& x, std::size_t precision) {
  require_precision(precision);
  if (x.sign() <= 0) throw Error(Errc::InvalidInput, "BigReal must be positive");
  return BigReal(pad_to(x.rounded(precision), precision), precision);
}

BigReal BigReal::from_natural(const BigNatural& n, std::size_t precision) {
  return from_decimal(Decimal::from_natural(n), precision);
}

BigReal BigReal::parse(std::string_view text) {
  const auto bad = [&](const char* why) {
    return Error(Errc::InvalidInput, std::string(why) + ": '" + std::string(text) + "'");
  };
  const auto dot = text.find('.');
  if (dot == std::string_view::npos || text.find('.', dot + 1) != std::string_view::npos) {
    throw bad("decimal needs exactly one point");
  }
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac = text.substr(dot + 1);
  if (whole.empty()) throw bad("missing integer part");
  if (whole.size() > 1 && whole.front() == '0') throw bad("leading zero");
  for (char c : whole) {
    if (c < '0' || c > '9') throw bad("non-digit");
  }
  for (char c : frac) {
    if (c < '0' || c > '9') throw bad("non-digit");
  }
  std::string digits = std::string(whole) + std::string(frac);
  const auto first = digits.find_first_not_of('0');
  if (first == std::string::npos) throw bad("value must be positive");
  digits.erase(0, first);
  mpz_class m(digits, 10);
  return BigReal(Decimal(std::move(m), -static_cast<long>(frac.size())), digits.size());
}

std::string BigReal::to_string() const {
  if (value_.exponent() > 0) {
    throw Error(Errc::InvalidInput, "value has more integer digits than its precision");
  }
  const std::string s = value_.mantissa().get_str(10);
  const std::size_t f = static_cast<std::size_t>(-value_.exponent());
  const std::size_t p = s.size();
  if (f == 0) return s + ".";
  if (f >= p) return "0." + std::string(f - p, '0') + s;
  return s.substr(0, p - f) + "." + s.substr(p - f);
}

std::string BigReal::leading_digits(std::size_t k) const {
  return truncated(std::min(k, precision_)).to_string();
}

BigReal BigReal::rounded(std::size_t precision) const { return from_decimal(value_, precision); }

BigReal BigReal::truncated(std::size_t precision) const {
  require_precision(precision);
  return BigReal(pad_to(value_.truncated(precision), precision), precision);
}

BigNatural BigReal::nearest_integer() const {
  if (value_.exponent() >= 0) {
    return BigNatural(value_.mantissa() * pow10(static_cast<unsigned long>(value_.exponent())));
  }
  const mpz_class p = pow10(static_cast<unsigned long>(-value_.exponent()));
  mpz_class q;
  mpz_class r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), value_.mantissa().get_mpz_t(), p.get_mpz_t());
  const int c = cmp(2 * r, p);
  if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()))) ++q;
  return BigNatural(q);
}

bool BigReal::within(const BigNatural& n, std::uint64_t num, std::uint64_t den) const {
  const Decimal diff = (value_ - Decimal::from_natural(n)).abs();
  // |diff| * den <= num, exactly.
  const Decimal lhs = diff * Decimal(mpz_class(static_cast<unsigned long>(den)), 0);
  return compare(lhs, Decimal(mpz_class(static_cast<unsigned long>(num)), 0)) <= 0;
}

// ---- roots and powers -------------------------------------------------------

namespace {

std::size_t guard_for(const BigNatural& e) {
  return 10 + count_digits(static_cast<std::uint64_t>(e.bit_length()));
}

// exp(ln(n) / e) to about `significant` digits; seeds the Newton iteration.
Decimal initial_root(const BigNatural& n, const BigNatural& e, std::size_t significant) {
  const std::size_t extra = 6 + count_digits(static_cast<std::uint64_t>(n.decimal_digits()));
  const Decimal ln_n = ln(Decimal::from_natural(n), significant + extra);
  const Decimal t = divide(ln_n, Decimal::from_natural(e), significant + extra);
  return exp(t, significant + 5);
}

// Binary floating point u * 2^s used inside the power and root loops, where
// truncating by a shift is several times cheaper than decimal rounding.
struct Binary {
  mpz_class u;
  long s = 0;
};

std::size_t bits_for_digits(std::size_t digits) {
  // log2(10) < 3.3220
  return digits * 33220 / 10000 + 16;
}

long bit_length(const mpz_class& v) {
  return sgn(v) == 0 ? 0 : static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

Binary trim(Binary x, std::size_t width) {
  const long excess = bit_length(x.u) - static_cast<long>(width);
  if (excess > 0) {
    mpz_tdiv_q_2exp(x.u.get_mpz_t(), x.u.get_mpz_t(), static_cast<mp_bitcnt_t>(excess));
    x.s += excess;
  }
  return x;
}

Binary mul(const Binary& a, const Binary& b, std::size_t width) {
  return trim(Binary{a.u * b.u, a.s + b.s}, width);
}

Binary div(const Binary& a, const Binary& b, std::size_t width) {
  const long k = std::max(0L, static_cast<long>(width) + bit_length(b.u) - bit_length(a.u) + 1);
  mpz_class q = a.u;
  mpz_mul_2exp(q.get_mpz_t(), q.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  mpz_tdiv_q(q.get_mpz_t(), q.get_mpz_t(), b.u.get_mpz_t());
  return trim(Binary{std::move(q), a.s - k - b.s}, width);
}

Binary add(const Binary& a, const Binary& b, std::size_t width) {
  const Binary& hi = a.s >= b.s ? a : b;
  const Binary& lo = a.s >= b.s ? b : a;
  mpz_class u = hi.u;
  mpz_mul_2exp(u.get_mpz_t(), u.get_mpz_t(), static_cast<mp_bitcnt_t>(hi.s - lo.s));
  return trim(Binary{u + lo.u, lo.s}, width);
}

Binary to_binary(const Decimal& x, std::size_t width) {
  if (x.exponent() >= 0) {
    return trim(Binary{x.mantissa() * pow10(static_cast<unsigned long>(x.exponent())), 0}, width);
  }
  return div(Binary{x.mantissa(), 0},
             Binary{pow10(static_cast<unsigned long>(-x.exponent())), 0}, width);
}

// Exact: 2^-k = 5^k * 10^-k.
Decimal to_decimal(const Binary& x) {
  if (x.s >= 0) {
    mpz_class u = x.u;
    mpz_mul_2exp(u.get_mpz_t(), u.get_mpz_t(), static_cast<mp_bitcnt_t>(x.s));
    return Decimal(std::move(u), 0);
  }
  mpz_class five;
  mpz_ui_pow_ui(five.get_mpz_t(), 5, static_cast<unsigned long>(-x.s));
  return Decimal(x.u * five, x.s);
}

// Left-to-right square-and-multiply; each step truncates to `width` bits,
// so the relative error stays below about 2 e 2^-width.
Binary binary_power(const Binary& x, const BigNatural& e, std::size_t width) {
  constexpr long kExponentLimit = 1L << 60;
  Binary result = x;
  for (std::size_t i = e.bit_length() - 1; i-- > 0;) {
    result = mul(result, result, width);
    if (mpz_tstbit(e.raw().get_mpz_t(), i)) result = mul(result, x, width);
    // A squaring at most doubles the exponent, so this fires before overflow.
    if (std::abs(result.s) > kExponentLimit) throw std::overflow_error("power: result out of range");
  }
  return result;
}

// Newton on x^e = n: x <- x + x (n - x^e) / (e x^e). With relative error d
// the step leaves about e d^2 / 2, so correct digits beyond log10(e) double.
Decimal newton_root(const BigNatural& n, const BigNatural& e, std::size_t target) {
  constexpr std::size_t kSeedDigits = 20;
  const std::size_t log_e = e.decimal_digits();
  const std::size_t guard = guard_for(e);
  std::size_t accurate = log_e + kSeedDigits;
  Binary x = to_binary(initial_root(n, e, accurate + 10), bits_for_digits(accurate + guard));

  const Binary nb{n.raw(), 0};
  const Binary eb{e.raw(), 0};
  while (accurate < target) {
    const std::size_t next = std::min(2 * accurate - log_e - 2, target);
    const std::size_t width = bits_for_digits(next + guard);
    const Binary y = binary_power(x, e, width);
    const Binary residual = add(trim(nb, width), Binary{-y.u, y.s}, width);
    const Binary step = div(mul(x, residual, width), mul(eb, y, width), width);
    x = add(x, step, width);
    accurate = next;
  }
  return to_decimal(x);
}

bool is_exact_root(const BigNatural& c, const BigNatural& e, const BigNatural& n) {
  if (c.is_zero()) return false;
  if (c.is_one()) return n.is_one();
  if (!e.fits_u64()) return false;
  // c^e would outgrow n; skip the exponentiation.
  if ((c.bit_length() - 1) * e.to_u64() > n.bit_length()) return false;
  return c.pow(e.to_u64()) == n;
}

}  // namespace

Decimal power(const Decimal& x, const BigNatural& e, std::size_t working) {
  if (e.is_zero()) return Decimal::from_int(1);
  if (x.is_zero()) return Decimal();
  const std::size_t width = bits_for_digits(working) + e.bit_length();
  return to_decimal(binary_power(to_binary(x, width), e, width)).rounded(working);
}

BigReal real_root(const BigNatural& n, const BigNatural& e, std::size_t precision) {
  require_precision(precision);
  if (n.is_zero()) throw Error(Errc::InvalidInput, "real_root: n must be >= 1");
  if (e.is_zero()) throw Error(Errc::InvalidInput, "real_root: e must be >= 1");
  if (n.is_one()) return BigReal::one(precision);
  if (e.is_one()) return BigReal::from_natural(n, precision);

  std::size_t target = precision + 10;
  Decimal x;
  for (int attempt = 0; attempt < 4; ++attempt) {
    x = newton_root(n, e, target).rounded(target);
    const std::size_t d = x.digits();
    if (d <= precision) break;
    // Round half-even is only in doubt when the discarded tail sits within
    // the approximation error of exactly one half unit.
    const unsigned long k = static_cast<unsigned long>(d - precision);
    mpz_class tail;
    mpz_class m = ::abs(x.mantissa());
    mpz_tdiv_r(tail.get_mpz_t(), m.get_mpz_t(), pow10(k).get_mpz_t());
    const mpz_class half = 5 * pow10(k - 1);
    if (mpz_cmpabs_ui(mpz_class(tail - half).get_mpz_t(), 1000) > 0) break;
    const BigNatural c(::abs(x.rounded(static_cast<std::size_t>(std::max(1L, x.magnitude() + 1)))
                                .floor_integer()));
    for (const BigNatural& candidate : {c, c + BigNatural(1)}) {
      if (is_exact_root(candidate, e, n)) return BigReal::from_natural(candidate, precision);
    }
    target += precision / 2 + 20;
  }
  return BigReal::from_decimal(x, precision);
}

BigReal real_pow_int(const BigReal& x, const BigNatural& e) {
  if (e.is_zero()) return BigReal::one(x.precision());
  const Decimal y = power(x.value(), e, x.precision() + guard_for(e));
  return BigReal::from_decimal(y, x.precision());
}

}  // namespace knotlock
