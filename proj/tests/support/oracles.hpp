#pragma once

// Plain 64-bit reference implementations. They share no code with the
// library, so agreement between the two is meaningful.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "knotlock/codec.hpp"

namespace oracle {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline std::vector<std::pair<u64, u64>> trial_factor(u64 n) {
  std::vector<std::pair<u64, u64>> out;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    u64 k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    out.emplace_back(p, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// Counts coprime residues directly; only for small n.
inline u64 totient_by_count(u64 n) {
  u64 count = 0;
  for (u64 k = 1; k <= n; ++k) {
    u64 a = n;
    u64 b = k;
    while (b != 0) {
      const u64 t = a % b;
      a = b;
      b = t;
    }
    if (a == 1) ++count;
  }
  return count;
}

// phi(n) = n * prod (1 - 1/p).
inline u64 totient_by_formula(u64 n) {
  u64 phi = n;
  for (const auto& [p, k] : trial_factor(n)) phi = phi / p * (p - 1);
  return phi;
}

inline u64 mod_pow(u64 base, u64 exp, u64 mod) {
  u64 result = 1 % mod;
  base %= mod;
  while (exp != 0) {
    if (exp & 1) result = static_cast<u64>(static_cast<u128>(result) * base % mod);
    base = static_cast<u64>(static_cast<u128>(base) * base % mod);
    exp >>= 1;
  }
  return result;
}

inline u64 gcd(u64 a, u64 b) {
  while (b != 0) {
    const u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline bool is_prime_naive(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<u64> primes_below(u64 limit) {
  std::vector<u64> out;
  for (u64 k = 2; k < limit; ++k) {
    if (is_prime_naive(k)) out.push_back(k);
  }
  return out;
}

// A payload of distinct primes from `pool`, 1..max_strands strands,
// twist counts 0..max_twists and alpha drawn from `alphas`.
inline knotlock::EncodingPayload random_payload(std::mt19937_64& rng, const std::vector<u64>& pool,
                                                std::size_t max_strands, u64 max_twists,
                                                const std::vector<u64>& alphas) {
  knotlock::EncodingPayload payload;
  payload.alpha = alphas[rng() % alphas.size()];
  const std::size_t strands = 1 + rng() % max_strands;
  std::set<u64> chosen;
  while (chosen.size() < strands) chosen.insert(pool[rng() % pool.size()]);
  for (const u64 p : chosen) payload.entries.push_back({p, rng() % (max_twists + 1)});
  std::shuffle(payload.entries.begin(), payload.entries.end(), rng);
  return payload;
}

// Alice and Bob payloads for an honest session: shared alpha, no shared
// prime, and every one of Bob's primes below N_A.
inline std::pair<knotlock::EncodingPayload, knotlock::EncodingPayload> session_pair(
    std::mt19937_64& rng, const std::vector<u64>& pool, std::size_t max_strands, u64 max_twists,
    const std::vector<u64>& alphas) {
  for (;;) {
    knotlock::EncodingPayload a = random_payload(rng, pool, max_strands, max_twists, alphas);
    knotlock::EncodingPayload b = random_payload(rng, pool, max_strands, max_twists, {a.alpha});
    const knotlock::BigNatural n_a = knotlock::encode(a).n;
    bool ok = true;
    for (const auto& y : b.entries) {
      ok = ok && y.prime < n_a;
      for (const auto& x : a.entries) ok = ok && x.prime != y.prime;
    }
    if (ok) return {std::move(a), std::move(b)};
  }
}

}  // namespace oracle
