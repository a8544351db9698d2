#include <gtest/gtest.h>

#include <random>

#include "knotlock/protocol.hpp"
#include "knotlock/wire.hpp"
#include "oracles.hpp"

namespace knotlock {
namespace {

const char* const kShare =
    "%KNOTWIRE 1\n"
    "TYPE SHARE\n"
    "BRAID s=3\n"
    "WORD -1 +1 +1 +1 +1 -1 +2 +1\n"
    "FRAME 2 2 0\n"
    "ALPHA 2\n"
    "BETA 1.622389603610978 P=16\n"
    "END\n";

const char* const kResponse =
    "%KNOTWIRE 1\n"
    "TYPE RESPONSE\n"
    "BRAID s=4\n"
    "WORD +1 -3\n"
    "FRAME 3 1 2 2\n"
    "BETA1 2.432299279097787350 P=19\n"
    "BETA2 1.0895841082403764604304 P=23\n"
    "GAMMA 1296540001\n"
    "B 11\n"
    "END\n";

Errc parse_error(const std::string& text) {
  try {
    wire::parse(text);
  } catch (const wire::ParseError& e) {
    return e.code();
  }
  ADD_FAILURE() << "parsed without error:\n" << text;
  return Errc::InvalidInput;
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const std::size_t at = text.find(from);
  EXPECT_NE(at, std::string::npos) << from;
  return text.replace(at, from.size(), to);
}

TEST(Wire, ShareRoundTripIsByteExact) {
  const wire::Message msg = wire::parse(kShare);
  const auto& share = std::get<ShareMessage>(msg);
  EXPECT_EQ(share.kind, ShareMessage::Kind::Share);
  EXPECT_EQ(share.carrier.strands(), 3U);
  EXPECT_EQ(total_framing(share.carrier), 4U);
  EXPECT_EQ(share.beta.precision(), 16U);
  EXPECT_EQ(wire::emit(msg), kShare);
}

TEST(Wire, ResponseRoundTripIsByteExact) {
  const wire::Message msg = wire::parse(kResponse);
  const auto& r = std::get<ResponseMessage>(msg);
  EXPECT_EQ(r.gamma, BigNatural(1296540001));
  EXPECT_EQ(r.b, BigNatural(11));
  EXPECT_EQ(wire::emit(msg), kResponse);
}

TEST(Wire, ResponseWithoutGamma) {
  const std::string text = replace(kResponse, "GAMMA 1296540001\nB 11\n", "");
  const auto r = std::get<ResponseMessage>(wire::parse(text));
  EXPECT_FALSE(r.gamma.has_value());
  EXPECT_EQ(wire::emit(r), text);
}

TEST(Wire, EmptyWordIsADash) {
  ShareMessage msg;
  msg.kind = ShareMessage::Kind::Challenge;
  msg.carrier = FramedBraid::trivial({Framing::twists(1), Framing::untwisted()});
  msg.beta = BigReal::parse("1.5");
  const std::string text = wire::emit(msg);
  EXPECT_NE(text.find("\nWORD -\n"), std::string::npos);
  EXPECT_NE(text.find("\nFRAME 1 .\n"), std::string::npos);
  EXPECT_EQ(std::get<ShareMessage>(wire::parse(text)), msg);
}

TEST(Wire, VerdictIsFourLines) {
  EXPECT_EQ(wire::emit(Verdict::accept()), "%KNOTWIRE 1\nTYPE VERDICT\nVERDICT ACCEPT OK\nEND\n");
  EXPECT_EQ(wire::emit(Verdict(VerdictReason::NotCoprime)),
            "%KNOTWIRE 1\nTYPE VERDICT\nVERDICT REJECT NOT_COPRIME\nEND\n");
  for (VerdictReason r : {VerdictReason::Ok, VerdictReason::NotDivisible, VerdictReason::NotCoprime,
                          VerdictReason::GammaCheckFailed, VerdictReason::PrecisionBreach,
                          VerdictReason::MalformedMessage}) {
    EXPECT_EQ(std::get<Verdict>(wire::parse(wire::emit(Verdict(r)))), Verdict(r));
  }
}

TEST(Wire, VerdictMustAgreeWithReason) {
  EXPECT_EQ(parse_error("%KNOTWIRE 1\nTYPE VERDICT\nVERDICT ACCEPT NOT_COPRIME\nEND\n"),
            Errc::BadField);
  EXPECT_EQ(parse_error("%KNOTWIRE 1\nTYPE VERDICT\nVERDICT REJECT OK\nEND\n"), Errc::BadField);
  EXPECT_EQ(parse_error("%KNOTWIRE 1\nTYPE VERDICT\nVERDICT MAYBE OK\nEND\n"), Errc::BadField);
}

TEST(Wire, HeaderErrors) {
  EXPECT_EQ(parse_error(replace(kShare, "%KNOTWIRE 1", "%KNOTWIRX 1")), Errc::BadMagic);
  EXPECT_EQ(parse_error(replace(kShare, "%KNOTWIRE 1", "%KNOTWIRE 2")), Errc::BadVersion);
  EXPECT_EQ(parse_error(replace(kShare, "%KNOTWIRE 1", "%KNOTWIRE")), Errc::BadVersion);
  EXPECT_EQ(parse_error(replace(kShare, "TYPE SHARE", "TYPE SHOUT")), Errc::BadField);
  EXPECT_EQ(parse_error(""), Errc::TruncatedDocument);
}

TEST(Wire, TruncationIsDetected) {
  const std::string full = kShare;
  EXPECT_EQ(parse_error(replace(full, "END\n", "")), Errc::TruncatedDocument);
  EXPECT_EQ(parse_error(full.substr(0, full.size() - 1)), Errc::TruncatedDocument);
  EXPECT_EQ(parse_error(full.substr(0, full.find("ALPHA"))), Errc::TruncatedDocument);
}

TEST(Wire, FieldErrors) {
  EXPECT_EQ(parse_error(replace(kShare, "FRAME 2 2 0", "FRAME 2 2")), Errc::BadField);
  EXPECT_EQ(parse_error(replace(kShare, "FRAME 2 2 0", "FRAME 2 2 x")), Errc::BadField);
  EXPECT_EQ(parse_error(replace(kShare, "FRAME 2 2 0", "FRAME 2 02 0")), Errc::BadField);
  EXPECT_EQ(parse_error(replace(kShare, "+2 +1", "+3 +1")), Errc::BadField);
  EXPECT_EQ(parse_error(replace(kShare, "+2 +1", "+0 +1")), Errc::BadField);
  EXPECT_EQ(parse_error(replace(kShare, "+2 +1", "2 +1")), Errc::BadField);
  EXPECT_EQ(parse_error(replace(kShare, "BRAID s=3", "BRAID 3")), Errc::BadField);
  EXPECT_EQ(parse_error(replace(kShare, "ALPHA 2", "ALPHA 1")), Errc::BadField);
  EXPECT_EQ(parse_error(replace(kShare, "P=16", "P=15")), Errc::BadField);
  EXPECT_EQ(parse_error(replace(kShare, "P=16", "")), Errc::BadField);
  EXPECT_EQ(parse_error(replace(kShare, "1.622389603610978", "1.62238960361097e0")), Errc::BadField);
  EXPECT_EQ(parse_error(replace(kShare, "ALPHA 2\n", "")), Errc::BadField);
  EXPECT_EQ(parse_error(replace(kShare, "END\n", "SEED 4\nEND\n")), Errc::BadField);
  EXPECT_EQ(parse_error(std::string(kShare) + "TYPE SHARE\n"), Errc::BadField);
  EXPECT_EQ(parse_error(replace(kResponse, "B 11\n", "")), Errc::BadField);
  EXPECT_EQ(parse_error(replace(kResponse, "GAMMA 1296540001\n", "")), Errc::BadField);
  EXPECT_EQ(parse_error(replace(kResponse, "GAMMA 1296540001", "GAMMA -5")), Errc::BadField);
}

TEST(Wire, WhitespaceIsStrict) {
  EXPECT_EQ(parse_error(replace(kShare, "ALPHA 2", "ALPHA 2 ")), Errc::BadField);
  EXPECT_EQ(parse_error(replace(kShare, "ALPHA 2", "ALPHA  2")), Errc::BadField);
  EXPECT_EQ(parse_error(replace(kShare, "ALPHA 2\n", "ALPHA 2\r\n")), Errc::BadField);
  EXPECT_EQ(parse_error(replace(kShare, "ALPHA 2\n", "\nALPHA 2\n")), Errc::BadField);
}

TEST(Wire, ConfigRoundTrip) {
  wire::PartyConfig cfg;
  cfg.payload.alpha = 3;
  cfg.payload.entries = {{BigNatural(5), 2}, {BigNatural(7), 0}};
  cfg.seed = 99;
  cfg.moves = 4;
  const std::string text = wire::emit_config(cfg);
  EXPECT_EQ(text,
            "%KNOTWIRE 1\nTYPE CONFIG\nPRIMES 5 7\nTWISTS 2 0\nALPHA 3\nSEED 99\nMOVES 4\nEND\n");
  EXPECT_EQ(wire::parse_config(text), cfg);

  const wire::PartyConfig minimal =
      wire::parse_config("%KNOTWIRE 1\nTYPE CONFIG\nPRIMES 2 3\nTWISTS 3 1\nALPHA 2\nEND\n");
  EXPECT_EQ(minimal.seed, 0U);
  EXPECT_EQ(minimal.moves, 8U);
  EXPECT_THROW(wire::parse_config(kShare), wire::ParseError);
  EXPECT_THROW(
      wire::parse_config("%KNOTWIRE 1\nTYPE CONFIG\nPRIMES 2 3\nTWISTS 3\nALPHA 2\nEND\n"),
      wire::ParseError);
}

TEST(Wire, RandomMessagesRoundTrip) {
  std::mt19937_64 rng(23);
  const std::vector<std::uint64_t> pool = oracle::primes_below(500);
  for (int k = 0; k < 100; ++k) {
    const EncodingPayload p = oracle::random_payload(rng, pool, 5, 4, {2, 3, 5});
    ShareMessage msg;
    msg.kind = k % 2 == 0 ? ShareMessage::Kind::Share : ShareMessage::Kind::Challenge;
    msg.carrier = make_carrier(p, rng(), rng() % 30);
    msg.alpha = p.alpha;
    msg.beta = encode(p).beta.decimal;
    const std::string text = wire::emit(msg);
    const wire::Message back = wire::parse(text);
    ASSERT_EQ(std::get<ShareMessage>(back), msg);
    ASSERT_EQ(wire::emit(back), text);
  }
}

}  // namespace
}  // namespace knotlock
