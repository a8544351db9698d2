#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "knotlock/protocol.hpp"
#include "knotlock/transport.hpp"
#include "knotlock/wire.hpp"

namespace knotlock {

enum class Direction { AliceToBob, BobToAlice };

std::string_view to_string(Direction d) noexcept;

struct TranscriptEntry {
  Direction direction;
  std::string document;
  std::chrono::system_clock::time_point timestamp;
};

/// Ordered record of one challenge-response session. A completed session
/// alternates directions and ends with the VERDICT document; a session that
/// failed locally records the failure instead of a verdict.
struct SessionTranscript {
  std::vector<TranscriptEntry> entries;
  std::optional<Verdict> verdict;
  std::optional<std::string> failure;
  /// Code of the library error behind `failure`, when there was one.
  std::optional<Errc> failure_code;

  [[nodiscard]] bool accepted() const { return verdict && verdict->accepted(); }
  /// Direction + document pairs only; timestamps are not part of comparisons.
  [[nodiscard]] std::vector<std::pair<Direction, std::string>> documents() const;
};

void print_transcript(std::ostream& os, const SessionTranscript& transcript);

/// make_challenge -> respond -> verify in-process. Deterministic in `seed`;
/// both parties use it for their carrier obfuscation.
SessionTranscript run_loopback_session(const wire::PartyConfig& alice,
                                       const wire::PartyConfig& bob, std::uint64_t seed);

/// Challenger side over a connected stream: send CHALLENGE, read RESPONSE,
/// send VERDICT. Transport problems are recorded as the failure.
SessionTranscript serve_session(transport::Stream& stream, const wire::PartyConfig& alice,
                                std::uint64_t seed);

/// Responder side over a connected stream.
SessionTranscript client_session(transport::Stream& stream, const wire::PartyConfig& bob,
                                 std::uint64_t seed);

/// Accepts connections and runs each session on its own thread, each owning
/// its PartyState. Returns after `max_sessions` sessions (0 = forever).
/// `on_done` is called (serialized) with every finished transcript.
void serve(transport::Listener& listener, const wire::PartyConfig& alice, std::uint64_t seed,
           std::size_t max_sessions,
           const std::function<void(const SessionTranscript&)>& on_done);

}  // namespace knotlock
