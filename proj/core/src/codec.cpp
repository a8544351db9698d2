#include "knotlock/codec.hpp"

#include <algorithm>
#include <string>

#include "knotlock/error.hpp"
#include "knotlock/primes.hpp"

namespace knotlock {
namespace {

// ceil(log10 x) for x >= 1, exactly.
std::size_t ceil_log10(const BigNatural& x) {
  if (x <= BigNatural(1)) return 0;
  const std::size_t d = x.decimal_digits();
  return BigNatural(10).pow(d - 1) == x ? d - 1 : d;
}

std::uint64_t alpha_power_u64(std::uint64_t alpha, std::uint64_t d) {
  const BigNatural v = BigNatural(alpha).pow(d);
  if (!v.fits_u64()) {
    throw Error(Errc::InvalidInput, "alpha^" + std::to_string(d) + " is too large to encode");
  }
  return v.to_u64();
}

// Upper bound on the digit count of beta^e, from a low-precision logarithm.
// Returns false when the bound does not fit in a size_t.
bool estimate_power_digits(const BigReal& beta, const BigNatural& e, std::size_t& digits) {
  // beta may sit within 10^-digits(e) of one, so the logarithm needs that many
  // extra digits to keep its relative accuracy.
  const std::size_t sig = 30 + e.decimal_digits();
  const Decimal x = beta.value().rounded(sig);
  const Decimal log10_beta = divide(ln(x, sig), ln(Decimal::from_int(10), sig), sig);
  if (log10_beta.sign() <= 0) {
    digits = 1;
    return true;
  }
  const mpz_class bound = (log10_beta * Decimal::from_natural(e)).floor_integer() + 2;
  if (!bound.fits_ulong_p()) return false;
  digits = bound.get_ui();
  return true;
}

}  // namespace

void EncodingPayload::validate() const {
  if (entries.empty()) throw Error(Errc::InvalidInput, "payload has no strands");
  if (alpha < 2) throw Error(Errc::InvalidInput, "alpha must be at least 2");
  std::vector<BigNatural> primes;
  primes.reserve(entries.size());
  for (const StrandCode& e : entries) {
    if (std::find(primes.begin(), primes.end(), e.prime) != primes.end()) {
      throw Error(Errc::DuplicatePrime, "prime " + e.prime.to_string() + " appears twice");
    }
    if (!is_prime(e.prime)) throw Error(Errc::NotPrime, e.prime.to_string() + " is not prime");
    primes.push_back(e.prime);
  }
}

std::uint64_t EncodingPayload::total_twists() const {
  std::uint64_t m = 0;
  for (const StrandCode& e : entries) m += e.twists;
  return m;
}

EncodingPayload EncodingPayload::sorted() const {
  EncodingPayload out = *this;
  std::sort(out.entries.begin(), out.entries.end(),
            [](const StrandCode& a, const StrandCode& b) { return a.prime < b.prime; });
  return out;
}

std::vector<Framing> EncodingPayload::framing() const {
  std::vector<Framing> out;
  out.reserve(entries.size());
  for (const StrandCode& e : entries) out.push_back(Framing::twists(e.twists));
  return out;
}

std::size_t contract_precision(const BigNatural& n, std::uint64_t alpha, std::uint64_t m) {
  return ceil_log10(n) + ceil_log10(twist_exponent(alpha, m)) + kGuardDigits;
}

BigNatural twist_exponent(std::uint64_t alpha, std::uint64_t m) { return BigNatural(alpha).pow(m); }

EncodedPackage encode(const EncodingPayload& payload) {
  payload.validate();
  EncodedPackage pkg;
  pkg.alpha = payload.alpha;
  pkg.m = payload.total_twists();
  pkg.n = BigNatural(1);
  pkg.beta.alpha = payload.alpha;
  for (const StrandCode& e : payload.entries) {
    pkg.n *= e.prime.pow(alpha_power_u64(payload.alpha, e.twists));
    pkg.beta.factors.push_back(
        {e.prime, static_cast<std::int64_t>(e.twists) - static_cast<std::int64_t>(pkg.m)});
  }
  const std::size_t precision = contract_precision(pkg.n, pkg.alpha, pkg.m);
  pkg.beta.decimal = real_root(pkg.n, twist_exponent(pkg.alpha, pkg.m), precision);
  return pkg;
}

BigReal evaluate_exact_beta(const BetaValue& beta, std::uint64_t m, std::size_t precision) {
  if (beta.factors.empty()) throw Error(Errc::InvalidInput, "beta has no factors");
  // Fixed point with `frac` fractional digits; every factor is >= 1, so the
  // relative accuracy is at least that of the absolute accuracy.
  const unsigned long frac = precision + kGuardDigits;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac);
  mpz_class scale_pow;
  mpz_pow_ui(scale_pow.get_mpz_t(), scale.get_mpz_t(), beta.alpha - 1);

  mpz_class product = scale;
  for (const BetaValue::Factor& f : beta.factors) {
    if (f.exponent > 0 || static_cast<std::uint64_t>(-f.exponent) > m) {
      throw Error(Errc::InvalidInput, "beta exponent outside [-M, 0]");
    }
    mpz_class y = f.prime.raw() * scale;
    for (std::int64_t k = 0; k < -f.exponent; ++k) {
      mpz_class widened = y * scale_pow;
      mpz_root(y.get_mpz_t(), widened.get_mpz_t(), beta.alpha);
    }
    product = product * y / scale;
  }
  return BigReal::from_decimal(Decimal(product, -static_cast<long>(frac)), precision);
}

BigNatural reconstruct_n(std::uint64_t alpha, const BigReal& beta, std::uint64_t m) {
  if (alpha < 2) throw Error(Errc::InvalidInput, "alpha must be at least 2");
  const BigNatural e = twist_exponent(alpha, m);

  // N can never have more digits than a contract-respecting beta carries, so
  // a larger estimate is already a breach and spares the huge power.
  std::size_t digits = 0;
  if (!estimate_power_digits(beta, e, digits) || digits > beta.precision() + 1) {
    throw Error(Errc::PrecisionBreach, "beta carries too few digits for its power");
  }
  const std::size_t working =
      std::max(beta.precision(), digits) + 20 + e.decimal_digits();
  const Decimal value = power(beta.value(), e, working);

  const Decimal half(mpz_class(5), -1);
  const mpz_class nearest = (value + half).floor_integer();
  const Decimal gap = (value - Decimal(nearest, 0)).abs();
  if (sgn(nearest) <= 0 || Decimal(mpz_class(25), -2) < gap) {
    throw Error(Errc::PrecisionBreach, "beta^(alpha^M) is not close to an integer");
  }
  BigNatural n(nearest);
  const std::size_t needed = contract_precision(n, alpha, m);
  if (beta.precision() < needed) {
    throw Error(Errc::PrecisionBreach, "beta has " + std::to_string(beta.precision()) +
                                           " digits, contract needs " + std::to_string(needed));
  }
  return n;
}

EncodingPayload decode(const BigNatural& n, std::uint64_t alpha) {
  if (alpha < 2) throw Error(Errc::InvalidInput, "alpha must be at least 2");
  if (n < BigNatural(2)) throw Error(Errc::InvalidInput, "N must be at least 2");
  EncodingPayload out;
  out.alpha = alpha;
  const Factorization f = factorize(n);
  for (const PrimePower& pp : f.entries()) {
    std::uint64_t j = pp.multiplicity;
    std::uint64_t d = 0;
    while (j % alpha == 0) {
      j /= alpha;
      ++d;
    }
    if (j != 1) {
      throw Error(Errc::NotAPowerOfAlpha, "multiplicity " + std::to_string(pp.multiplicity) +
                                              " of " + pp.prime.to_string() +
                                              " is not a power of " + std::to_string(alpha));
    }
    out.entries.push_back({pp.prime, d});
  }
  return out;
}

bool verify_twist_identity(const EncodingPayload& payload, const BigReal& beta) {
  constexpr std::size_t kDigits = 60;
  if (payload.entries.empty() || payload.alpha < 2) return false;
  const Decimal ln_beta = ln(beta.value().rounded(kDigits), kDigits);
  if (ln_beta.sign() <= 0) return false;

  Decimal sum;
  for (const StrandCode& e : payload.entries) {
    const Decimal weight = Decimal::from_natural(BigNatural(payload.alpha).pow(e.twists));
    sum = sum + weight * ln(Decimal::from_natural(e.prime), kDigits);
  }
  const Decimal ratio = divide(sum, ln_beta, kDigits);
  if (ratio.sign() <= 0) return false;
  const Decimal m_prime =
      divide(ln(ratio, kDigits), ln(Decimal::from_int(static_cast<long>(payload.alpha)), kDigits),
             kDigits);
  const Decimal diff = (m_prime - Decimal::from_int(static_cast<long>(payload.total_twists()))).abs();
  return diff < Decimal(mpz_class(1), -6);
}

}  // namespace knotlock
