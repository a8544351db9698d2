#include "knotlock/session.hpp"

#include <ctime>
#include <iomanip>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

namespace knotlock {
namespace {

void record(SessionTranscript& t, Direction d, std::string document) {
  t.entries.push_back({d, std::move(document), std::chrono::system_clock::now()});
}

template <typename T>
T expect(const std::string& document, std::string_view what) {
  wire::Message msg = wire::parse(document);
  if (auto* m = std::get_if<T>(&msg)) return std::move(*m);
  throw Error(Errc::InvalidInput, "expected a " + std::string(what) + " document");
}

ShareMessage expect_challenge(const std::string& document) {
  ShareMessage msg = expect<ShareMessage>(document, "CHALLENGE");
  if (msg.kind != ShareMessage::Kind::Challenge) {
    throw Error(Errc::InvalidInput, "expected a CHALLENGE document, got SHARE");
  }
  return msg;
}

// Alice's reading of Bob's reply: anything unparseable is a malformed message.
Verdict judge(PartyState& alice, const std::string& document) {
  ResponseMessage response;
  try {
    response = expect<ResponseMessage>(document, "RESPONSE");
  } catch (const Error&) {
    alice.set_phase(SessionPhase::Failed);
    return Verdict(VerdictReason::MalformedMessage);
  }
  return verify(alice, response);
}

std::string timestamp(std::chrono::system_clock::time_point tp) {
  const std::time_t secs = std::chrono::system_clock::to_time_t(tp);
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(tp.time_since_epoch()).count() % 1000;
  std::tm utc{};
  gmtime_r(&secs, &utc);
  std::ostringstream os;
  os << std::put_time(&utc, "%Y-%m-%dT%H:%M:%S") << '.' << std::setw(3) << std::setfill('0') << ms
     << 'Z';
  return os.str();
}

}  // namespace

std::string_view to_string(Direction d) noexcept {
  return d == Direction::AliceToBob ? "alice -> bob" : "bob -> alice";
}

std::vector<std::pair<Direction, std::string>> SessionTranscript::documents() const {
  std::vector<std::pair<Direction, std::string>> out;
  out.reserve(entries.size());
  for (const TranscriptEntry& e : entries) out.emplace_back(e.direction, e.document);
  return out;
}

void print_transcript(std::ostream& os, const SessionTranscript& transcript) {
  for (const TranscriptEntry& e : transcript.entries) {
    os << "# " << timestamp(e.timestamp) << ' ' << to_string(e.direction) << '\n' << e.document;
  }
  if (transcript.verdict) {
    os << "# verdict " << (transcript.verdict->accepted() ? "ACCEPT " : "REJECT ")
       << wire::reason_token(transcript.verdict->reason()) << '\n';
  }
  if (transcript.failure) os << "# failure " << *transcript.failure << '\n';
}

SessionTranscript run_loopback_session(const wire::PartyConfig& alice_cfg,
                                       const wire::PartyConfig& bob_cfg, std::uint64_t seed) {
  SessionTranscript t;
  try {
    PartyState alice(Role::Challenger, alice_cfg.payload, alice_cfg.moves);
    PartyState bob(Role::Responder, bob_cfg.payload, bob_cfg.moves);

    // Each side works from the document text, exactly as over a socket.
    record(t, Direction::AliceToBob, wire::emit(make_challenge(alice, seed)));
    const ShareMessage challenge = expect_challenge(t.entries.back().document);
    record(t, Direction::BobToAlice, wire::emit(respond(bob, challenge, seed)));
    const Verdict verdict = judge(alice, t.entries.back().document);
    record(t, Direction::AliceToBob, wire::emit(verdict));
    t.verdict = verdict;
  } catch (const Error& e) {
    t.failure = e.what();
    t.failure_code = e.code();
  } catch (const std::exception& e) {
    t.failure = e.what();
  }
  return t;
}

SessionTranscript serve_session(transport::Stream& stream, const wire::PartyConfig& alice_cfg,
                                std::uint64_t seed) {
  SessionTranscript t;
  try {
    PartyState alice(Role::Challenger, alice_cfg.payload, alice_cfg.moves);
    std::string challenge = wire::emit(make_challenge(alice, seed));
    stream.write_document(challenge);
    record(t, Direction::AliceToBob, std::move(challenge));

    std::optional<std::string> reply = stream.read_document();
    if (!reply) {
      throw Error(Errc::Transport, "peer closed the connection without responding");
    }
    record(t, Direction::BobToAlice, *reply);
    const Verdict verdict = judge(alice, *reply);
    std::string verdict_doc = wire::emit(verdict);
    stream.write_document(verdict_doc);
    record(t, Direction::AliceToBob, std::move(verdict_doc));
    t.verdict = verdict;
  } catch (const Error& e) {
    t.failure = e.what();
    t.failure_code = e.code();
  } catch (const std::exception& e) {
    t.failure = e.what();
  }
  stream.shutdown_write();
  return t;
}

SessionTranscript client_session(transport::Stream& stream, const wire::PartyConfig& bob_cfg,
                                 std::uint64_t seed) {
  SessionTranscript t;
  try {
    PartyState bob(Role::Responder, bob_cfg.payload, bob_cfg.moves);
    std::optional<std::string> challenge = stream.read_document();
    if (!challenge) {
      throw Error(Errc::Transport, "peer closed the connection before challenging");
    }
    record(t, Direction::AliceToBob, *challenge);
    std::string response = wire::emit(respond(bob, expect_challenge(*challenge), seed));
    stream.write_document(response);
    record(t, Direction::BobToAlice, std::move(response));

    std::optional<std::string> verdict_doc = stream.read_document();
    if (!verdict_doc) {
      throw Error(Errc::Transport, "peer closed the connection without a verdict");
    }
    record(t, Direction::AliceToBob, *verdict_doc);
    t.verdict = expect<Verdict>(*verdict_doc, "VERDICT");
  } catch (const Error& e) {
    t.failure = e.what();
    t.failure_code = e.code();
  } catch (const std::exception& e) {
    t.failure = e.what();
  }
  stream.shutdown_write();
  return t;
}

void serve(transport::Listener& listener, const wire::PartyConfig& alice, std::uint64_t seed,
           std::size_t max_sessions,
           const std::function<void(const SessionTranscript&)>& on_done) {
  // Workers own copies of everything they touch, so a detached worker may
  // outlive this call.
  auto report = std::make_shared<std::mutex>();
  std::vector<std::thread> workers;
  try {
    for (std::size_t served = 0; max_sessions == 0 || served < max_sessions; ++served) {
      std::thread worker([report, alice, on_done, seed, stream = listener.accept()]() mutable {
        const SessionTranscript t = serve_session(stream, alice, seed);
        const std::lock_guard<std::mutex> lock(*report);
        if (on_done) on_done(t);
      });
      if (max_sessions == 0) {
        worker.detach();
      } else {
        workers.push_back(std::move(worker));
      }
    }
  } catch (...) {
    for (std::thread& w : workers) w.join();
    throw;
  }
  for (std::thread& w : workers) w.join();
}

}  // namespace knotlock
