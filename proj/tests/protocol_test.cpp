#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "knotlock/error.hpp"
#include "knotlock/linkage.hpp"
#include "knotlock/primes.hpp"
#include "knotlock/protocol.hpp"
#include "knotlock/wire.hpp"
#include "oracles.hpp"
#include "tamper.hpp"

namespace knotlock {
namespace {

EncodingPayload payload(std::initializer_list<std::pair<std::uint64_t, std::uint64_t>> entries,
                        std::uint64_t alpha = 2) {
  EncodingPayload out;
  out.alpha = alpha;
  for (const auto& [p, d] : entries) out.entries.push_back({p, d});
  return out;
}

const EncodingPayload kAlice = payload({{2, 3}, {3, 1}});
const EncodingPayload kBob = payload({{5, 2}, {7, 2}});

TEST(PartyState, DerivesPrivateValues) {
  const PartyState alice(Role::Challenger, kAlice);
  EXPECT_EQ(alice.n(), BigNatural(2304));
  EXPECT_EQ(alice.m(), 4U);
  EXPECT_EQ(alice.phi(), BigNatural(768));
  EXPECT_EQ(alice.phase(), SessionPhase::Idle);
  const PartyState bob(Role::Responder, kBob);
  EXPECT_EQ(bob.phi(), BigNatural(1029000));
}

TEST(Protocol, WorkedExampleAccepts) {
  PartyState alice(Role::Challenger, kAlice);
  PartyState bob(Role::Responder, kBob);
  const ShareMessage challenge = make_challenge(alice, 1);
  EXPECT_EQ(alice.phase(), SessionPhase::ChallengeSent);
  EXPECT_EQ(challenge.kind, ShareMessage::Kind::Challenge);

  const ResponseMessage response = respond(bob, challenge, 1);
  EXPECT_EQ(bob.phase(), SessionPhase::Responded);
  EXPECT_EQ(response.beta_prime.leading_digits(5), "2.4322");
  EXPECT_EQ(response.beta_double_prime.leading_digits(5), "1.0895");
  EXPECT_EQ(total_framing(response.link_carrier), 8U);
  EXPECT_EQ(closure(response.link_carrier).component_count(), 2U);
  EXPECT_EQ(response.b, BigNatural(11));
  EXPECT_EQ(response.gamma, BigNatural(1296540001));
  EXPECT_EQ(response.gamma, mod_pow(11, 1029000, 3457440000ULL));
  EXPECT_TRUE(mod_pow(*response.gamma, 768, 3457440000ULL).is_one());

  EXPECT_EQ(verify(alice, response), Verdict::accept());
  EXPECT_EQ(alice.phase(), SessionPhase::Verified);
}

TEST(Protocol, ShareDecodeReadsPayload) {
  const PartyState alice(Role::Challenger, kAlice);
  const ShareMessage share = make_share(alice, 9);
  EXPECT_EQ(share_decode(PartyState(Role::Responder, kBob), share), kAlice);
}

TEST(Protocol, PrimeCollisionAndNoValidPrime) {
  PartyState alice(Role::Challenger, kAlice);
  const ShareMessage challenge = make_challenge(alice, 2);

  PartyState clash(Role::Responder, payload({{3, 2}, {7, 1}}));
  try {
    respond(clash, challenge, 2);
    FAIL() << "expected PrimeCollision";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::PrimeCollision);
  }
  EXPECT_EQ(clash.phase(), SessionPhase::Failed);

  PartyState big(Role::Responder, payload({{2311, 1}}));
  try {
    respond(big, challenge, 2);
    FAIL() << "expected NoValidPrime";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NoValidPrime);
  }
}

TEST(Protocol, ResponderAdoptsChallengeAlpha) {
  PartyState alice(Role::Challenger, payload({{2, 1}, {3, 2}}, 3));
  PartyState bob(Role::Responder, payload({{5, 1}, {7, 1}}, 2));
  const ResponseMessage response = respond(bob, make_challenge(alice, 4), 4);
  EXPECT_EQ(bob.payload().alpha, 3U);
  EXPECT_TRUE(verify(alice, response).accepted());
}

TEST(Protocol, GammaIsOptional) {
  PartyState alice(Role::Challenger, kAlice);
  PartyState bob(Role::Responder, kBob);
  ResponseMessage response = respond(bob, make_challenge(alice, 3), 3);
  response.gamma.reset();
  response.b.reset();
  EXPECT_TRUE(verify(alice, response).accepted());

  PartyState alice2(Role::Challenger, kAlice);
  ResponseMessage half = respond(bob, make_challenge(alice2, 3), 3);
  half.b.reset();
  EXPECT_EQ(verify(alice2, half).reason(), VerdictReason::MalformedMessage);
}

TEST(Protocol, VerdictReasons) {
  PartyState alice(Role::Challenger, kAlice);
  PartyState bob(Role::Responder, kBob);
  const ResponseMessage honest = respond(bob, make_challenge(alice, 5), 5);

  // A link that drops one of Alice's primes is not divisible by N_A.
  {
    PartyState a(Role::Challenger, kAlice);
    PartyState other(Role::Responder, payload({{5, 2}, {7, 2}}));
    PartyState fake_alice(Role::Challenger, payload({{2, 3}, {11, 1}}));
    const ResponseMessage r = respond(other, make_challenge(fake_alice, 5), 5);
    EXPECT_EQ(verify(a, r).reason(), VerdictReason::NotDivisible);
  }
  {
    PartyState a(Role::Challenger, kAlice);
    ResponseMessage r = honest;
    r.gamma = *r.gamma + BigNatural(1);
    EXPECT_EQ(verify(a, r).reason(), VerdictReason::GammaCheckFailed);
  }
  {
    PartyState a(Role::Challenger, kAlice);
    ResponseMessage r = honest;
    r.beta_double_prime = r.beta_double_prime.truncated(8);
    EXPECT_EQ(verify(a, r).reason(), VerdictReason::PrecisionBreach);
  }
}

TEST(Protocol, SharedPrimeIsNotCoprime) {
  // Hand-built link: Bob's half is 3^2 * 5^2, so N_B shares 3 with Alice.
  PartyState alice(Role::Challenger, kAlice);
  const EncodingPayload bob_side = payload({{3, 1}, {5, 1}});
  const BigNatural n_b = encode(bob_side).n;
  const BigNatural n_link = alice.n() * n_b;
  const std::uint64_t m_link = 4 + 2;
  ResponseMessage r;
  r.link_carrier = disjoint_union(knot_carrier(kAlice.framing()), knot_carrier(bob_side.framing()));
  r.beta_double_prime =
      real_root(n_link, twist_exponent(2, m_link), contract_precision(n_link, 2, m_link));
  r.beta_prime = encode(bob_side).beta.decimal;
  EXPECT_EQ(verify(alice, r).reason(), VerdictReason::NotCoprime);
}

TEST(Protocol, MismatchedBetaPrimeIsNotDivisible) {
  PartyState alice(Role::Challenger, kAlice);
  PartyState bob(Role::Responder, kBob);
  ResponseMessage r = respond(bob, make_challenge(alice, 6), 6);
  r.beta_prime = encode(payload({{5, 3}, {7, 1}})).beta.decimal;
  EXPECT_EQ(verify(alice, r).reason(), VerdictReason::NotDivisible);
}

TEST(Protocol, EveryTamperClassIsRejected) {
  std::mt19937_64 rng(17);
  const std::vector<std::uint64_t> pool = oracle::primes_below(100);
  for (int trial = 0; trial < 20; ++trial) {
    auto [pa, pb] = oracle::session_pair(rng, pool, 3, 3, {2, 3});
    PartyState alice(Role::Challenger, pa);
    PartyState bob(Role::Responder, pb);
    const ResponseMessage honest = respond(bob, make_challenge(alice, trial), trial);
    for (const tamper::Field f : {tamper::Field::Gamma, tamper::Field::BetaPrime,
                                  tamper::Field::BetaDoublePrime, tamper::Field::CarrierFraming}) {
      PartyState a(Role::Challenger, pa);
      EXPECT_FALSE(verify(a, tamper::apply(honest, f, rng)).accepted()) << tamper::name(f);
    }
    ASSERT_TRUE(verify(alice, honest).accepted());
  }
}

TEST(Protocol, TotientsNeverReachTheWire) {
  PartyState alice(Role::Challenger, kAlice);
  PartyState bob(Role::Responder, kBob);
  const std::string challenge = wire::emit(make_challenge(alice, 8));
  const std::string response =
      wire::emit(respond(bob, std::get<ShareMessage>(wire::parse(challenge)), 8));
  std::istringstream words(challenge + response);
  for (std::string w; words >> w;) {
    EXPECT_NE(w, alice.phi().to_string());
    EXPECT_NE(w, bob.phi().to_string());
  }
}

TEST(SmallestCoprimePrime, SkipsDivisors) {
  EXPECT_EQ(smallest_coprime_prime(3457440000ULL), BigNatural(11));
  EXPECT_EQ(smallest_coprime_prime(1), BigNatural(2));
  EXPECT_EQ(smallest_coprime_prime(30), BigNatural(7));
}

}  // namespace
}  // namespace knotlock
