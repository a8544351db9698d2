#include "knotlock/primes.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>

#include "knotlock/error.hpp"

namespace knotlock {
namespace {

constexpr std::uint32_t kTrialBound = 1u << 16;

const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    std::vector<bool> composite(kTrialBound, false);
    std::vector<unsigned long> out;
    for (std::uint32_t i = 2; i < kTrialBound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j < kTrialBound; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool strong_probable_prime(const mpz_class& n, const mpz_class& d, unsigned long s,
                           const mpz_class& base) {
  const mpz_class n_minus_1 = n - 1;
  mpz_class x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

bool miller_rabin(const mpz_class& n) {
  if (n < 2) return false;
  static constexpr std::array<unsigned long, 12> kWitnesses = {2,  3,  5,  7,  11, 13,
                                                               17, 19, 23, 29, 31, 37};
  for (unsigned long p : kWitnesses) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  mpz_class d = n - 1;
  const unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;

  // These twelve bases are a proven deterministic set below 3.3e24.
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
    return std::all_of(kWitnesses.begin(), kWitnesses.end(), [&](unsigned long a) {
      return strong_probable_prime(n, d, s, mpz_class(a));
    });
  }

  // Beyond 64 bits: 64 rounds, bases drawn from a fixed-seed generator so the
  // answer is reproducible.
  std::mt19937_64 rng(0x6b6e6f746c6f636bULL);
  const mpz_class span = n - 3;
  for (int round = 0; round < 64; ++round) {
    mpz_class a = rng();
    a = (a << 64) + rng();
    a = a % span + 2;
    if (!strong_probable_prime(n, d, s, a)) return false;
  }
  return true;
}

// Brent's variant of Pollard rho. Returns a nontrivial divisor of a composite n.
mpz_class pollard_brent(const mpz_class& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  constexpr unsigned long kBatch = 128;
  constexpr unsigned long kMaxRun = 1ul << 28;
  for (unsigned long c = 1;; ++c) {
    const auto f = [&](const mpz_class& v) { return mpz_class((v * v + c) % n); };
    mpz_class y = 2 + c;
    mpz_class x;
    mpz_class ys;
    mpz_class q = 1;
    mpz_class g = 1;
    unsigned long r = 1;
    while (g == 1 && r < kMaxRun) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      for (unsigned long k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const unsigned long steps = std::min(kBatch, r - k);
        for (unsigned long i = 0; i < steps; ++i) {
          y = f(y);
          q = q * abs(mpz_class(x - y)) % n;
        }
        g = gcd(q, n);
      }
      r *= 2;
    }
    if (g == n) {
      // The batch overshot; replay it one step at a time.
      do {
        ys = f(ys);
        g = gcd(mpz_class(abs(mpz_class(x - ys))), n);
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
  }
}

using Multiplicities = std::map<mpz_class, std::uint64_t>;

// Factors a cofactor free of the trial primes (or any cofactor, for the rho backend).
void split(const mpz_class& m, std::uint64_t mult, Multiplicities& out) {
  if (m == 1) return;
  if (miller_rabin(m)) {
    out[m] += mult;
    return;
  }
  if (mpz_perfect_power_p(m.get_mpz_t())) {
    const std::size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
    for (unsigned long k : small_primes()) {
      if (k > bits) break;
      mpz_class root;
      if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), k) != 0) {
        split(root, mult * k, out);
        return;
      }
    }
  }
  const mpz_class d = pollard_brent(m);
  split(d, mult, out);
  split(m / d, mult, out);
}

Factorization to_factorization(const Multiplicities& found) {
  std::vector<PrimePower> entries;
  entries.reserve(found.size());
  for (const auto& [p, j] : found) entries.push_back({BigNatural(p), j});
  return Factorization(std::move(entries));
}

}  // namespace

Factorization::Factorization(std::vector<PrimePower> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  for (auto& e : entries) {
    if (e.multiplicity == 0) continue;
    if (!entries_.empty() && entries_.back().prime == e.prime) {
      entries_.back().multiplicity += e.multiplicity;
    } else {
      entries_.push_back(std::move(e));
    }
  }
}

BigNatural Factorization::multiply_out() const {
  BigNatural out(1);
  for (const auto& e : entries_) out *= e.prime.pow(e.multiplicity);
  return out;
}

bool is_prime(const BigNatural& n) { return miller_rabin(n.raw()); }

Factorization factorize(const BigNatural& n, FactorBackend backend) {
  if (n < BigNatural(2)) throw Error(Errc::InvalidInput, "factorize needs n >= 2");
  Multiplicities found;
  mpz_class rest = n.raw();

  switch (backend) {
    case FactorBackend::Auto:
      for (unsigned long p : small_primes()) {
        // Past sqrt(rest) whatever is left is 1 or prime.
        if (mpz_cmp_ui(rest.get_mpz_t(), p * p) < 0) break;
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
        const mpz_class prime(p);
        found[prime] += mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), prime.get_mpz_t());
      }
      split(rest, 1, found);
      break;
    case FactorBackend::TrialDivision:
      for (mpz_class d = 2; d * d <= rest; d += (d == 2 ? 1 : 2)) {
        if (mpz_divisible_p(rest.get_mpz_t(), d.get_mpz_t())) {
          found[d] += mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), d.get_mpz_t());
        }
      }
      if (rest > 1) found[rest] += 1;
      break;
    case FactorBackend::PollardRho:
      split(rest, 1, found);
      break;
  }
  return to_factorization(found);
}

BigNatural totient(const Factorization& f) {
  BigNatural phi(1);
  for (const auto& [p, j] : f.entries()) {
    phi *= p.pow(j - 1) * (p - BigNatural(1));
  }
  return phi;
}

BigNatural mod_pow(const BigNatural& base, const BigNatural& exp, const BigNatural& modulus) {
  if (modulus < BigNatural(2)) throw Error(Errc::InvalidModulus, "modulus must be >= 2");
  const mpz_class& m = modulus.raw();
  const mpz_class b = base.raw() % m;
  mpz_class result = 1;
  for (std::size_t i = exp.bit_length(); i-- > 0;) {
    result = result * result % m;
    if (mpz_tstbit(exp.raw().get_mpz_t(), i)) result = result * b % m;
  }
  return BigNatural(result);
}

BigNatural gcd(const BigNatural& a, const BigNatural& b) {
  if (a.is_zero() && b.is_zero()) throw Error(Errc::InvalidInput, "gcd(0, 0) is undefined");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.raw().get_mpz_t(), b.raw().get_mpz_t());
  return BigNatural(g);
}

BigNatural next_prime(const BigNatural& n) {
  BigNatural c = n + BigNatural(1);
  while (!is_prime(c)) c += BigNatural(1);
  return c;
}

}  // namespace knotlock
