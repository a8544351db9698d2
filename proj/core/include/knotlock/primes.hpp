#pragma once

#include <cstdint>
#include <vector>

#include "knotlock/big_natural.hpp"

namespace knotlock {

struct PrimePower {
  BigNatural prime;
  std::uint64_t multiplicity = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization with strictly ascending primes and multiplicities >= 1.
class Factorization {
 public:
  Factorization() = default;
  /// Sorts and merges duplicate primes. Does not certify primality.
  explicit Factorization(std::vector<PrimePower> entries);

  [[nodiscard]] const std::vector<PrimePower>& entries() const noexcept { return entries_; }
  [[nodiscard]] BigNatural multiply_out() const;

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  std::vector<PrimePower> entries_;
};

enum class FactorBackend {
  Auto,           ///< trial division below 2^16, then Pollard-rho
  TrialDivision,  ///< exhaustive trial division; only sensible below ~10^14
  PollardRho,     ///< Pollard-rho (Brent) from the start, no trial sieve
};

/// Deterministic for n < 2^64 (fixed Miller-Rabin witness set); above that,
/// 64 Miller-Rabin rounds with fixed pseudo-random bases.
bool is_prime(const BigNatural& n);

/// Throws Error(InvalidInput) for n < 2.
Factorization factorize(const BigNatural& n, FactorBackend backend = FactorBackend::Auto);

/// Euler's phi from a factorization: prod p^(j-1) * (p-1).
BigNatural totient(const Factorization& f);

/// base^exp mod modulus by left-to-right square-and-multiply.
/// Throws Error(InvalidModulus) for modulus < 2.
BigNatural mod_pow(const BigNatural& base, const BigNatural& exp, const BigNatural& modulus);

/// Throws Error(InvalidInput) when both are zero.
BigNatural gcd(const BigNatural& a, const BigNatural& b);

/// Smallest prime strictly greater than n.
BigNatural next_prime(const BigNatural& n);

}  // namespace knotlock
