#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "knotlock/big_natural.hpp"
#include "knotlock/big_real.hpp"
#include "knotlock/braid.hpp"

namespace knotlock {

/// One framed strand of the message: its prime and its half-twist count.
struct StrandCode {
  BigNatural prime;
  std::uint64_t twists = 0;

  friend bool operator==(const StrandCode&, const StrandCode&) = default;
};

/// The semantic message: distinct primes with twist counts, and the base alpha.
/// Untwisted strands carry no prime and never appear here.
struct EncodingPayload {
  std::vector<StrandCode> entries;
  std::uint64_t alpha = 2;

  /// Throws InvalidInput (empty, alpha < 2), DuplicatePrime or NotPrime.
  void validate() const;
  [[nodiscard]] std::uint64_t total_twists() const;
  /// Same payload with entries ordered by ascending prime.
  [[nodiscard]] EncodingPayload sorted() const;
  /// Untwisted-free framing vector, one strand per entry in entry order.
  [[nodiscard]] std::vector<Framing> framing() const;

  friend bool operator==(const EncodingPayload&, const EncodingPayload&) = default;
};

/// beta in closed form: prod p^(alpha^(exponent)), exponent = d - M <= 0,
/// together with its decimal rendering at the contract precision.
struct BetaValue {
  struct Factor {
    BigNatural prime;
    std::int64_t exponent = 0;

    friend bool operator==(const Factor&, const Factor&) = default;
  };

  std::uint64_t alpha = 2;
  std::vector<Factor> factors;
  BigReal decimal;
};

struct EncodedPackage {
  BigNatural n;
  std::uint64_t m = 0;
  std::uint64_t alpha = 2;
  BetaValue beta;
};

/// Significant digits needed so that beta^(alpha^M) lands within 0.5 of N:
/// ceil(log10 N) + ceil(M log10 alpha) + 10, both ceilings computed exactly.
std::size_t contract_precision(const BigNatural& n, std::uint64_t alpha, std::uint64_t m);

inline constexpr std::size_t kGuardDigits = 10;

/// alpha^M as an exact natural number.
BigNatural twist_exponent(std::uint64_t alpha, std::uint64_t m);

EncodedPackage encode(const EncodingPayload& payload);

/// Evaluates the closed form of beta to `precision` digits by iterated integer
/// alpha-th roots of each prime, independently of real_root.
BigReal evaluate_exact_beta(const BetaValue& beta, std::uint64_t m, std::size_t precision);

/// N = round(beta^(alpha^M)). Throws PrecisionBreach when beta is carried at
/// fewer digits than the contract precision of the N it would produce, or
/// when the power is more than 0.25 away from every integer.
BigNatural reconstruct_n(std::uint64_t alpha, const BigReal& beta, std::uint64_t m);

/// Factorizes N and reads each multiplicity as alpha^d. Entries ascend by prime.
/// Throws NotAPowerOfAlpha or InvalidInput (N < 2, alpha < 2).
EncodingPayload decode(const BigNatural& n, std::uint64_t alpha);

/// Recomputes M' = log_alpha(sum alpha^d_k log_beta p_k) and checks |M' - M| < 1e-6.
bool verify_twist_identity(const EncodingPayload& payload, const BigReal& beta);

}  // namespace knotlock
