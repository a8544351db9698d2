#include <gtest/gtest.h>

#include <sstream>
#include <thread>

#include "knotlock/session.hpp"

namespace knotlock {
namespace {

wire::PartyConfig config(std::initializer_list<std::pair<std::uint64_t, std::uint64_t>> entries,
                         std::uint64_t alpha = 2) {
  wire::PartyConfig cfg;
  cfg.payload.alpha = alpha;
  for (const auto& [p, d] : entries) cfg.payload.entries.push_back({p, d});
  return cfg;
}

const wire::PartyConfig kAlice = config({{2, 3}, {3, 1}});
const wire::PartyConfig kBob = config({{5, 2}, {7, 2}});

struct SocketRun {
  SessionTranscript server;
  SessionTranscript client;
};

SocketRun run_over_socket(const wire::PartyConfig& alice, const wire::PartyConfig& bob,
                          std::uint64_t seed) {
  transport::Listener listener(transport::Endpoint{"127.0.0.1", 0});
  SocketRun out;
  std::thread server([&] {
    transport::Stream s = listener.accept();
    out.server = serve_session(s, alice, seed);
  });
  transport::Stream c = transport::connect(transport::Endpoint{"127.0.0.1", listener.port()});
  out.client = client_session(c, bob, seed);
  server.join();
  return out;
}

TEST(Loopback, WorkedExampleAccepts) {
  const SessionTranscript t = run_loopback_session(kAlice, kBob, 1);
  ASSERT_FALSE(t.failure) << *t.failure;
  ASSERT_EQ(t.entries.size(), 3U);
  EXPECT_EQ(t.entries[0].direction, Direction::AliceToBob);
  EXPECT_EQ(t.entries[1].direction, Direction::BobToAlice);
  EXPECT_EQ(t.entries[2].direction, Direction::AliceToBob);
  EXPECT_TRUE(t.accepted());
  EXPECT_EQ(t.entries[2].document, "%KNOTWIRE 1\nTYPE VERDICT\nVERDICT ACCEPT OK\nEND\n");
}

TEST(Loopback, DeterministicForSeed) {
  EXPECT_EQ(run_loopback_session(kAlice, kBob, 7).documents(),
            run_loopback_session(kAlice, kBob, 7).documents());
  EXPECT_NE(run_loopback_session(kAlice, kBob, 7).documents(),
            run_loopback_session(kAlice, kBob, 8).documents());
}

TEST(Loopback, CollisionIsRecordedAsFailure) {
  const SessionTranscript t = run_loopback_session(kAlice, config({{3, 1}, {5, 1}}), 1);
  ASSERT_TRUE(t.failure);
  EXPECT_EQ(t.failure_code, Errc::PrimeCollision);
  EXPECT_FALSE(t.verdict);
  EXPECT_EQ(t.entries.size(), 1U);
}

TEST(Socket, MatchesLoopbackByteForByte) {
  const SocketRun run = run_over_socket(kAlice, kBob, 42);
  const SessionTranscript loop = run_loopback_session(kAlice, kBob, 42);
  ASSERT_FALSE(run.server.failure) << *run.server.failure;
  ASSERT_FALSE(run.client.failure) << *run.client.failure;
  EXPECT_TRUE(run.server.accepted());
  EXPECT_TRUE(run.client.accepted());
  EXPECT_EQ(run.server.documents(), loop.documents());
  EXPECT_EQ(run.client.documents(), loop.documents());
}

TEST(Socket, ResponderFailureClosesSession) {
  const SocketRun ok = run_over_socket(kAlice, config({{11, 1}}), 3);
  EXPECT_TRUE(ok.client.accepted());

  // Bob gives up on a shared prime; Alice only sees the connection close.
  const SocketRun clash = run_over_socket(kAlice, config({{2, 1}}), 3);
  EXPECT_TRUE(clash.client.failure);
  EXPECT_EQ(clash.client.failure_code, Errc::PrimeCollision);
  EXPECT_TRUE(clash.server.failure);
  EXPECT_EQ(clash.server.failure_code, Errc::Transport);
}

TEST(Socket, ServeHandlesSeveralSessions) {
  transport::Listener listener(transport::Endpoint{"127.0.0.1", 0});
  std::vector<SessionTranscript> seen;
  std::thread server([&] {
    serve(listener, kAlice, 5, 3, [&](const SessionTranscript& t) { seen.push_back(t); });
  });
  std::vector<std::thread> clients;
  std::vector<SessionTranscript> client_side(3);
  for (std::size_t k = 0; k < 3; ++k) {
    clients.emplace_back([&, k] {
      transport::Stream c = transport::connect(transport::Endpoint{"127.0.0.1", listener.port()});
      client_side[k] = client_session(c, kBob, 5);
    });
  }
  for (std::thread& t : clients) t.join();
  server.join();
  ASSERT_EQ(seen.size(), 3U);
  for (const SessionTranscript& t : seen) EXPECT_TRUE(t.accepted());
  for (const SessionTranscript& t : client_side) EXPECT_TRUE(t.accepted());
}

TEST(Socket, RefusedConnectionIsTransportError) {
  std::uint16_t port = 0;
  {
    transport::Listener probe(transport::Endpoint{"127.0.0.1", 0});
    port = probe.port();
  }
  try {
    transport::connect(transport::Endpoint{"127.0.0.1", port});
    FAIL() << "connected to a closed port";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Transport);
  }
}

TEST(Endpoint, ParseAndRender) {
  EXPECT_EQ(transport::Endpoint::parse("127.0.0.1:8080").port, 8080);
  EXPECT_EQ(transport::Endpoint::parse("[::1]:9").host, "::1");
  EXPECT_EQ((transport::Endpoint{"::1", 9}).to_string(), "[::1]:9");
  EXPECT_EQ(transport::Endpoint::parse(":7").host, "");
  EXPECT_THROW(transport::Endpoint::parse("localhost"), Error);
  EXPECT_THROW(transport::Endpoint::parse("localhost:70000"), Error);
  EXPECT_THROW(transport::Endpoint::parse("localhost:"), Error);
}

TEST(Transcript, PrintsHeadersAndVerdict) {
  std::ostringstream os;
  print_transcript(os, run_loopback_session(kAlice, kBob, 1));
  const std::string text = os.str();
  EXPECT_NE(text.find(" alice -> bob\n%KNOTWIRE 1\nTYPE CHALLENGE\n"), std::string::npos);
  EXPECT_NE(text.find(" bob -> alice\n%KNOTWIRE 1\nTYPE RESPONSE\n"), std::string::npos);
  EXPECT_NE(text.find("# verdict ACCEPT OK\n"), std::string::npos);
}

}  // namespace
}  // namespace knotlock
