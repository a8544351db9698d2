#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "knotlock/codec.hpp"
#include "knotlock/error.hpp"
#include "knotlock/protocol.hpp"

// Canonical text format, version 1:
//
//   %KNOTWIRE 1
//   TYPE SHARE|CHALLENGE|RESPONSE|VERDICT
//   BRAID s=<int>                    (SHARE, CHALLENGE, RESPONSE)
//   WORD <+i|-i>... | WORD -
//   FRAME <int|.>...
//   ALPHA <int>                      (SHARE, CHALLENGE)
//   BETA <decimal> P=<digits>        (SHARE, CHALLENGE)
//   BETA1 <decimal> P=<digits>       (RESPONSE)
//   BETA2 <decimal> P=<digits>       (RESPONSE)
//   GAMMA <int>                      (RESPONSE, optional)
//   B <int>                          (RESPONSE, optional, required with GAMMA)
//   VERDICT ACCEPT|REJECT <REASON>   (VERDICT)
//   END
//
// Every line ends in LF; no trailing whitespace; fields in the order above.

namespace knotlock::wire {

inline constexpr std::string_view kMagic = "%KNOTWIRE";
inline constexpr int kVersion = 1;

/// Parse failure. line() is 1-based, 0 when the failure is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(Errc code, std::size_t line, const std::string& reason)
      : Error(code, "line " + std::to_string(line) + ": " + reason), line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

using Message = std::variant<ShareMessage, ResponseMessage, Verdict>;

std::string emit(const ShareMessage& msg);
std::string emit(const ResponseMessage& msg);
std::string emit(const Verdict& verdict);
std::string emit(const Message& msg);

/// Errors: BadMagic, BadVersion, BadField, TruncatedDocument (all as ParseError).
Message parse(std::string_view text);

/// Party configuration: PRIMES, TWISTS, ALPHA, SEED and MOVES lines inside a
/// `TYPE CONFIG` document.
struct PartyConfig {
  EncodingPayload payload;
  std::uint64_t seed = 0;
  std::uint64_t moves = 8;

  friend bool operator==(const PartyConfig&, const PartyConfig&) = default;
};

std::string emit_config(const PartyConfig& config);
PartyConfig parse_config(std::string_view text);

std::string_view reason_token(VerdictReason reason) noexcept;

}  // namespace knotlock::wire
