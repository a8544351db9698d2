#include <benchmark/benchmark.h>

#include <random>

#include "knotlock/codec.hpp"
#include "knotlock/linkage.hpp"
#include "knotlock/primes.hpp"
#include "knotlock/session.hpp"

namespace {

using namespace knotlock;

// s strands, each with d half-twists, on the first s odd primes.
EncodingPayload uniform_payload(std::size_t s, std::uint64_t d, std::uint64_t alpha) {
  EncodingPayload p;
  p.alpha = alpha;
  BigNatural prime(2);
  for (std::size_t k = 0; k < s; ++k) {
    prime = next_prime(prime);
    p.entries.push_back({prime, d});
  }
  return p;
}

void BM_Encode(benchmark::State& state) {
  const EncodingPayload p = uniform_payload(static_cast<std::size_t>(state.range(0)),
                                            static_cast<std::uint64_t>(state.range(1)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(encode(p));
  state.counters["digits"] = static_cast<double>(encode(p).beta.decimal.precision());
}
BENCHMARK(BM_Encode)->Args({2, 2})->Args({4, 4})->Args({6, 6})->Unit(benchmark::kMillisecond);

void BM_Reconstruct(benchmark::State& state) {
  const EncodingPayload p = uniform_payload(static_cast<std::size_t>(state.range(0)),
                                            static_cast<std::uint64_t>(state.range(1)), 2);
  const EncodedPackage pkg = encode(p);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_n(p.alpha, pkg.beta.decimal, pkg.m));
}
BENCHMARK(BM_Reconstruct)->Args({2, 2})->Args({4, 4})->Args({6, 6})->Unit(benchmark::kMillisecond);

void BM_RealRoot(benchmark::State& state) {
  const auto digits = static_cast<std::size_t>(state.range(0));
  const BigNatural n = BigNatural(3457440000ULL);
  for (auto _ : state) benchmark::DoNotOptimize(real_root(n, BigNatural(256), digits));
}
BENCHMARK(BM_RealRoot)->RangeMultiplier(10)->Range(10, 100000)->Unit(benchmark::kMicrosecond);

void BM_Factorize(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto bits = static_cast<unsigned>(state.range(0));
  const auto backend = static_cast<FactorBackend>(state.range(1));
  std::vector<BigNatural> inputs;
  for (int k = 0; k < 64; ++k) inputs.emplace_back(2 + rng() % ((1ULL << bits) - 2));
  std::size_t at = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(factorize(inputs[at], backend));
    at = (at + 1) % inputs.size();
  }
}
BENCHMARK(BM_Factorize)
    ->ArgsProduct({{20, 40, 60}, {static_cast<long>(FactorBackend::Auto),
                                  static_cast<long>(FactorBackend::PollardRho)}})
    ->Args({40, static_cast<long>(FactorBackend::TrialDivision)})
    ->Unit(benchmark::kMicrosecond);

void BM_LoopbackSession(benchmark::State& state) {
  wire::PartyConfig alice;
  alice.payload.entries = {{BigNatural(2), 3}, {BigNatural(3), 1}};
  wire::PartyConfig bob;
  bob.payload.entries = {{BigNatural(5), 2}, {BigNatural(7), 2}};
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_loopback_session(alice, bob, ++seed));
}
BENCHMARK(BM_LoopbackSession)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
