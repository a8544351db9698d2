#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "knotlock/big_natural.hpp"
#include "knotlock/big_real.hpp"
#include "knotlock/braid.hpp"
#include "knotlock/codec.hpp"

namespace knotlock {

/// Carrier knot plus (alpha, beta). Sent as SHARE for plain information
/// sharing, or as CHALLENGE to open an authentication session.
struct ShareMessage {
  enum class Kind { Share, Challenge };

  Kind kind = Kind::Share;
  FramedBraid carrier;
  std::uint64_t alpha = 2;
  BigReal beta;

  friend bool operator==(const ShareMessage&, const ShareMessage&) = default;
};

struct ResponseMessage {
  FramedBraid link_carrier;
  BigReal beta_prime;
  BigReal beta_double_prime;
  std::optional<BigNatural> gamma;
  std::optional<BigNatural> b;

  friend bool operator==(const ResponseMessage&, const ResponseMessage&) = default;
};

enum class VerdictReason {
  Ok,
  NotDivisible,
  NotCoprime,
  GammaCheckFailed,
  PrecisionBreach,
  MalformedMessage,
};

std::string_view to_string(VerdictReason reason) noexcept;

class Verdict {
 public:
  explicit Verdict(VerdictReason reason) : reason_(reason) {}
  static Verdict accept() { return Verdict(VerdictReason::Ok); }

  [[nodiscard]] bool accepted() const noexcept { return reason_ == VerdictReason::Ok; }
  [[nodiscard]] VerdictReason reason() const noexcept { return reason_; }

  friend bool operator==(const Verdict&, const Verdict&) = default;

 private:
  VerdictReason reason_;
};

enum class Role { Challenger, Responder };

enum class SessionPhase { Idle, ChallengeSent, Responded, Verified, Failed };

/// One party's private view of a session. The totient is the private key and
/// never leaves this object.
class PartyState {
 public:
  /// Validates the payload and derives N, M and phi(N).
  PartyState(Role role, EncodingPayload payload, std::uint64_t obfuscation_moves = 8);

  [[nodiscard]] Role role() const noexcept { return role_; }
  [[nodiscard]] const EncodingPayload& payload() const noexcept { return payload_; }
  [[nodiscard]] const BigNatural& n() const noexcept { return n_; }
  [[nodiscard]] std::uint64_t m() const noexcept { return m_; }
  [[nodiscard]] const BigNatural& phi() const noexcept { return phi_; }
  [[nodiscard]] std::uint64_t obfuscation_moves() const noexcept { return moves_; }
  [[nodiscard]] SessionPhase phase() const noexcept { return phase_; }

  void set_phase(SessionPhase phase) noexcept { phase_ = phase; }
  /// Re-targets the payload to another base (the responder adopts the
  /// challenger's alpha) and recomputes N and phi.
  void rebase(std::uint64_t alpha);

 private:
  void derive();

  Role role_;
  EncodingPayload payload_;
  std::uint64_t moves_;
  BigNatural n_;
  std::uint64_t m_ = 0;
  BigNatural phi_;
  SessionPhase phase_ = SessionPhase::Idle;
};

/// Builds the seeded, obfuscated carrier for a payload's twist vector.
FramedBraid make_carrier(const EncodingPayload& payload, std::uint64_t seed, std::uint64_t moves);

ShareMessage make_share(const PartyState& sender, std::uint64_t seed);
ShareMessage make_challenge(PartyState& alice, std::uint64_t seed);

/// Errors: PrecisionBreach, NotAPowerOfAlpha, PrimeCollision, NoValidPrime.
ResponseMessage respond(PartyState& bob, const ShareMessage& challenge, std::uint64_t seed);

/// Never throws. gamma must satisfy gamma^phi(N_A) = 1 mod N_link and equal
/// b^phi(N_B) mod N_link, with N_B recovered from the link as N_link / N_A.
Verdict verify(PartyState& alice, const ResponseMessage& response);

/// Errors: PrecisionBreach, NotAPowerOfAlpha.
EncodingPayload share_decode(const PartyState& bob, const ShareMessage& msg);

/// Smallest prime that does not divide n.
BigNatural smallest_coprime_prime(const BigNatural& n);

}  // namespace knotlock
