#include "knotlock/protocol.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "knotlock/error.hpp"
#include "knotlock/linkage.hpp"
#include "knotlock/primes.hpp"

namespace knotlock {
namespace {

// Bob's carrier must not mirror Alice's obfuscation when both use one seed.
constexpr std::uint64_t kResponderSeedMix = 0x9e3779b97f4a7c15ULL;

template <typename F>
auto advance(PartyState& party, SessionPhase done, F&& step) {
  try {
    auto out = step();
    party.set_phase(done);
    return out;
  } catch (...) {
    party.set_phase(SessionPhase::Failed);
    throw;
  }
}

}  // namespace

std::string_view to_string(VerdictReason reason) noexcept {
  switch (reason) {
    case VerdictReason::Ok: return "OK";
    case VerdictReason::NotDivisible: return "NotDivisible";
    case VerdictReason::NotCoprime: return "NotCoprime";
    case VerdictReason::GammaCheckFailed: return "GammaCheckFailed";
    case VerdictReason::PrecisionBreach: return "PrecisionBreach";
    case VerdictReason::MalformedMessage: return "MalformedMessage";
  }
  return "Unknown";
}

PartyState::PartyState(Role role, EncodingPayload payload, std::uint64_t obfuscation_moves)
    : role_(role), payload_(std::move(payload)), moves_(obfuscation_moves) {
  derive();
}

void PartyState::rebase(std::uint64_t alpha) {
  payload_.alpha = alpha;
  derive();
}

void PartyState::derive() {
  payload_.validate();
  std::vector<PrimePower> powers;
  for (const StrandCode& e : payload_.entries) {
    const BigNatural j = BigNatural(payload_.alpha).pow(e.twists);
    if (!j.fits_u64()) throw Error(Errc::InvalidInput, "twist count too large for alpha");
    powers.push_back({e.prime, j.to_u64()});
  }
  const Factorization f(std::move(powers));
  n_ = f.multiply_out();
  m_ = payload_.total_twists();
  phi_ = totient(f);
}

FramedBraid make_carrier(const EncodingPayload& payload, std::uint64_t seed, std::uint64_t moves) {
  return obfuscate(knot_carrier(payload.framing()), seed, moves);
}

ShareMessage make_share(const PartyState& sender, std::uint64_t seed) {
  const EncodedPackage pkg = encode(sender.payload());
  ShareMessage msg;
  msg.kind = ShareMessage::Kind::Share;
  msg.carrier = make_carrier(sender.payload(), seed, sender.obfuscation_moves());
  msg.alpha = pkg.alpha;
  msg.beta = pkg.beta.decimal;
  return msg;
}

ShareMessage make_challenge(PartyState& alice, std::uint64_t seed) {
  return advance(alice, SessionPhase::ChallengeSent, [&] {
    ShareMessage msg = make_share(alice, seed);
    msg.kind = ShareMessage::Kind::Challenge;
    return msg;
  });
}

EncodingPayload share_decode(const PartyState& /*bob*/, const ShareMessage& msg) {
  const std::uint64_t m = total_framing(msg.carrier);
  return decode(reconstruct_n(msg.alpha, msg.beta, m), msg.alpha);
}

ResponseMessage respond(PartyState& bob, const ShareMessage& challenge, std::uint64_t seed) {
  return advance(bob, SessionPhase::Responded, [&] {
    if (challenge.alpha != bob.payload().alpha) bob.rebase(challenge.alpha);

    // Alice's side, as far as Bob can see it.
    EncodedPackage alice;
    alice.alpha = challenge.alpha;
    alice.m = total_framing(challenge.carrier);
    alice.n = reconstruct_n(challenge.alpha, challenge.beta, alice.m);
    alice.beta.alpha = challenge.alpha;
    alice.beta.decimal = challenge.beta;
    for (const StrandCode& e : decode(alice.n, challenge.alpha).entries) {
      alice.beta.factors.push_back(
          {e.prime, static_cast<std::int64_t>(e.twists) - static_cast<std::int64_t>(alice.m)});
    }

    for (const StrandCode& e : bob.payload().entries) {
      for (const BetaValue::Factor& f : alice.beta.factors) {
        if (f.prime == e.prime) {
          throw Error(Errc::PrimeCollision, "prime " + e.prime.to_string() + " is Alice's");
        }
      }
      if (!(e.prime < alice.n)) {
        throw Error(Errc::NoValidPrime, "prime " + e.prime.to_string() + " is not below N_A");
      }
    }

    const FramedBraid carrier_b =
        make_carrier(bob.payload(), seed ^ kResponderSeedMix, bob.obfuscation_moves());
    const EncodedPackage own = encode(bob.payload());
    const LinkedPackage link = link_encode(alice, challenge.carrier, bob.payload(), carrier_b);

    ResponseMessage out;
    out.link_carrier = link.carrier;
    out.beta_prime = own.beta.decimal;
    out.beta_double_prime = link.beta_link.decimal;
    const BigNatural b = smallest_coprime_prime(link.n_link);
    out.gamma = mod_pow(b, bob.phi(), link.n_link);
    out.b = b;
    return out;
  });
}

Verdict verify(PartyState& alice, const ResponseMessage& response) {
  const auto reject = [&alice](VerdictReason r) {
    alice.set_phase(SessionPhase::Failed);
    return Verdict(r);
  };
  try {
    const std::uint64_t alpha = alice.payload().alpha;
    const std::uint64_t m_link = total_framing(response.link_carrier);
    if (m_link < alice.m()) return reject(VerdictReason::MalformedMessage);

    const BigNatural n_link = reconstruct_n(alpha, response.beta_double_prime, m_link);
    if (!n_link.divisible_by(alice.n())) return reject(VerdictReason::NotDivisible);
    const BigNatural n_b = n_link / alice.n();
    if (n_b.is_one()) return reject(VerdictReason::MalformedMessage);

    // beta' must describe the same quotient.
    if (reconstruct_n(alpha, response.beta_prime, m_link - alice.m()) != n_b) {
      return reject(VerdictReason::NotDivisible);
    }

    for (const StrandCode& e : alice.payload().entries) {
      if (n_b.divisible_by(e.prime)) return reject(VerdictReason::NotCoprime);
    }

    if (response.gamma || response.b) {
      if (!response.gamma || !response.b) return reject(VerdictReason::MalformedMessage);
      const BigNatural& gamma = *response.gamma;
      const BigNatural& b = *response.b;
      if (b.is_zero() || !gcd(b, n_link).is_one() || !(gamma < n_link)) {
        return reject(VerdictReason::GammaCheckFailed);
      }
      if (!mod_pow(gamma, alice.phi(), n_link).is_one()) {
        return reject(VerdictReason::GammaCheckFailed);
      }
      // The check above passes for any value that is 1 mod N_B and prime to
      // N_A. Alice knows N_B by now and it decodes cheaply, so pin gamma down.
      std::vector<PrimePower> powers;
      for (const StrandCode& e : decode(n_b, alpha).entries) {
        powers.push_back({e.prime, BigNatural(alpha).pow(e.twists).to_u64()});
      }
      if (mod_pow(b, totient(Factorization(std::move(powers))), n_link) != gamma) {
        return reject(VerdictReason::GammaCheckFailed);
      }
    }
    alice.set_phase(SessionPhase::Verified);
    return Verdict::accept();
  } catch (const Error& e) {
    return reject(e.code() == Errc::PrecisionBreach ? VerdictReason::PrecisionBreach
                                                    : VerdictReason::MalformedMessage);
  } catch (const std::exception&) {
    return reject(VerdictReason::MalformedMessage);
  }
}

BigNatural smallest_coprime_prime(const BigNatural& n) {
  BigNatural p(2);
  while (n.divisible_by(p)) p = next_prime(p);
  return p;
}

}  // namespace knotlock
