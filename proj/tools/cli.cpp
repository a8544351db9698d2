#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "knotlock/codec.hpp"
#include "knotlock/protocol.hpp"
#include "knotlock/session.hpp"
#include "knotlock/transport.hpp"
#include "knotlock/wire.hpp"

namespace knotlock::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  ss << in.rdbuf();
  return ss.str();
}

wire::PartyConfig load_config(const std::string& path) {
  try {
    return wire::parse_config(read_input(path));
  } catch (const Error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::string address_or_env(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("KNOTLOCK_ADDR"); env != nullptr && *env != '\0') return env;
  throw UsageError("no address given and KNOTLOCK_ADDR is not set");
}

// Library errors that point at the caller's input rather than at a peer.
bool is_usage_error(Errc code) {
  switch (code) {
    case Errc::InvalidInput:
    case Errc::InvalidModulus:
    case Errc::DuplicatePrime:
    case Errc::NotPrime:
      return true;
    default:
      return false;
  }
}

int transcript_status(const SessionTranscript& t) {
  if (t.failure) return t.failure_code == Errc::Transport ? kTransport : kRejected;
  return t.accepted() ? kOk : kRejected;
}

struct Options {
  // encode / decode
  std::vector<std::string> primes;
  std::vector<std::uint64_t> twists;
  std::uint64_t alpha = 2;
  std::string n;
  bool emit = false;
  // documents and configs
  std::string in;
  std::string config;
  std::string state;
  std::optional<std::uint64_t> seed;
  std::uint64_t moves = 8;
  // transport
  std::string address;
  std::size_t sessions = 1;
};

int do_encode(const Options& o, std::ostream& out) {
  if (o.primes.size() != o.twists.size()) {
    throw UsageError("--primes and --twists need the same number of entries");
  }
  EncodingPayload payload;
  payload.alpha = o.alpha;
  for (std::size_t k = 0; k < o.primes.size(); ++k) {
    payload.entries.push_back({BigNatural::parse(o.primes[k]), o.twists[k]});
  }
  const EncodedPackage pkg = encode(payload);
  if (o.emit) {
    ShareMessage msg;
    msg.carrier = make_carrier(payload, o.seed.value_or(0), o.moves);
    msg.alpha = pkg.alpha;
    msg.beta = pkg.beta.decimal;
    out << wire::emit(msg);
  } else {
    out << "N=" << pkg.n << " M=" << pkg.m << " beta=" << pkg.beta.decimal.to_string() << '\n';
  }
  return kOk;
}

int do_decode(const Options& o, std::ostream& out) {
  EncodingPayload payload;
  if (!o.in.empty()) {
    const wire::Message msg = wire::parse(read_input(o.in));
    const auto* share = std::get_if<ShareMessage>(&msg);
    if (share == nullptr) throw UsageError("decode --in expects a SHARE or CHALLENGE document");
    payload = share_decode(PartyState(Role::Responder, {{{2, 0}}, share->alpha}), *share);
  } else if (!o.n.empty()) {
    payload = decode(BigNatural::parse(o.n), o.alpha);
  } else {
    throw UsageError("decode needs --n or --in");
  }
  const char* sep = "";
  for (const StrandCode& e : payload.entries) {
    out << sep << '(' << e.prime << ',' << e.twists << ')';
    sep = " ";
  }
  out << '\n';
  return kOk;
}

int do_challenge(const Options& o, std::ostream& out) {
  const wire::PartyConfig cfg = load_config(o.config);
  PartyState alice(Role::Challenger, cfg.payload, cfg.moves);
  out << wire::emit(make_challenge(alice, o.seed.value_or(cfg.seed)));
  return kOk;
}

int do_respond(const Options& o, std::ostream& out) {
  const wire::PartyConfig cfg = load_config(o.config);
  const wire::Message msg = wire::parse(read_input(o.in));
  const auto* challenge = std::get_if<ShareMessage>(&msg);
  if (challenge == nullptr) {
    throw wire::ParseError(Errc::BadField, 2, "expected a CHALLENGE document");
  }
  PartyState bob(Role::Responder, cfg.payload, cfg.moves);
  out << wire::emit(respond(bob, *challenge, o.seed.value_or(cfg.seed)));
  return kOk;
}

int do_verify(const Options& o, std::ostream& out) {
  const wire::PartyConfig cfg = load_config(o.state);
  PartyState alice(Role::Challenger, cfg.payload, cfg.moves);
  const std::string text = read_input(o.in);
  Verdict verdict(VerdictReason::MalformedMessage);
  try {
    const wire::Message msg = wire::parse(text);
    if (const auto* response = std::get_if<ResponseMessage>(&msg)) {
      verdict = verify(alice, *response);
    }
  } catch (const wire::ParseError&) {
    // stays MalformedMessage
  }
  if (o.emit) {
    out << wire::emit(verdict);
  } else {
    out << (verdict.accepted() ? "ACCEPT " : "REJECT ") << wire::reason_token(verdict.reason())
        << '\n';
  }
  return verdict.accepted() ? kOk : kRejected;
}

int do_equiv(const Options& o, std::ostream& out) {
  wire::Message msg = wire::parse(read_input(o.in));
  const std::uint64_t seed = o.seed.value_or(0);
  if (auto* share = std::get_if<ShareMessage>(&msg)) {
    share->carrier = obfuscate(share->carrier, seed, o.moves);
  } else if (auto* response = std::get_if<ResponseMessage>(&msg)) {
    response->link_carrier = obfuscate(response->link_carrier, seed, o.moves);
  } else {
    throw UsageError("a VERDICT document carries no braid");
  }
  out << wire::emit(msg);
  return kOk;
}

int do_serve(const Options& o, std::ostream& out, std::ostream& err) {
  const wire::PartyConfig cfg = load_config(o.config);
  const transport::Endpoint ep = transport::Endpoint::parse(address_or_env(o.address));
  transport::Listener listener(ep);
  err << "listening on " << transport::Endpoint{ep.host, listener.port()}.to_string() << std::endl;
  int status = kOk;
  serve(listener, cfg, o.seed.value_or(cfg.seed), o.sessions, [&](const SessionTranscript& t) {
    print_transcript(out, t);
    out.flush();
    status = std::max(status, transcript_status(t));
  });
  return status;
}

int do_connect(const Options& o, std::ostream& out) {
  const wire::PartyConfig cfg = load_config(o.config);
  transport::Stream stream = transport::connect(transport::Endpoint::parse(address_or_env(o.address)));
  const SessionTranscript t = client_session(stream, cfg, o.seed.value_or(cfg.seed));
  print_transcript(out, t);
  return transcript_status(t);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Framed-knot encoding and challenge-response authentication", "knotlock"};
  app.require_subcommand(1);
  Options o;

  const auto add_seed = [&o](CLI::App* sub, const char* help) {
    sub->add_option("--seed", o.seed, help);
  };

  auto* enc = app.add_subcommand("encode", "Encode primes and twist counts into N, M and beta");
  enc->add_option("--primes", o.primes, "Comma-separated primes")->delimiter(',')->required();
  enc->add_option("--twists", o.twists, "Comma-separated half-twist counts")
      ->delimiter(',')
      ->required();
  enc->add_option("--alpha", o.alpha, "Base alpha (integer >= 2)")->capture_default_str();
  enc->add_flag("--emit", o.emit, "Print a SHARE document instead of the summary line");
  add_seed(enc, "Obfuscation seed for --emit");
  enc->add_option("--moves", o.moves, "Obfuscation moves for --emit")->capture_default_str();

  auto* dec = app.add_subcommand("decode", "Recover the payload from N or a SHARE document");
  dec->add_option("--n", o.n, "The natural number N");
  dec->add_option("--alpha", o.alpha, "Base alpha")->capture_default_str();
  dec->add_option("--in", o.in, "SHARE or CHALLENGE document ('-' for stdin)");

  auto* chal = app.add_subcommand("challenge", "Emit a CHALLENGE document");
  chal->add_option("--config", o.config, "Challenger config")->required();
  add_seed(chal, "Overrides the config SEED");

  auto* resp = app.add_subcommand("respond", "Answer a CHALLENGE with a RESPONSE document");
  resp->add_option("--in", o.in, "CHALLENGE document ('-' for stdin)")->required();
  resp->add_option("--config", o.config, "Responder config")->required();
  add_seed(resp, "Overrides the config SEED");

  auto* ver = app.add_subcommand("verify", "Check a RESPONSE; exit 0 only on ACCEPT");
  ver->add_option("--in", o.in, "RESPONSE document ('-' for stdin)")->required();
  ver->add_option("--state", o.state, "Challenger config holding the private payload")
      ->required();
  ver->add_flag("--emit", o.emit, "Print a VERDICT document");

  auto* eq = app.add_subcommand("equiv", "Re-emit a document with an equivalent carrier braid");
  eq->add_option("--in", o.in, "SHARE, CHALLENGE or RESPONSE document")->required();
  eq->add_option("--moves", o.moves, "Equivalence moves")->capture_default_str();
  add_seed(eq, "Move seed");

  auto* srv = app.add_subcommand("serve", "Run the challenger side over TCP");
  srv->add_option("--listen", o.address, "host:port (default: $KNOTLOCK_ADDR)");
  srv->add_option("--config", o.config, "Challenger config")->required();
  srv->add_option("--sessions", o.sessions, "Sessions to serve, 0 = forever")
      ->capture_default_str();
  add_seed(srv, "Overrides the config SEED");

  auto* con = app.add_subcommand("connect", "Run the responder side over TCP");
  con->add_option("--to", o.address, "host:port (default: $KNOTLOCK_ADDR)");
  con->add_option("--config", o.config, "Responder config")->required();
  add_seed(con, "Overrides the config SEED");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (enc->parsed()) return do_encode(o, out);
    if (dec->parsed()) return do_decode(o, out);
    if (chal->parsed()) return do_challenge(o, out);
    if (resp->parsed()) return do_respond(o, out);
    if (ver->parsed()) return do_verify(o, out);
    if (eq->parsed()) return do_equiv(o, out);
    if (srv->parsed()) return do_serve(o, out, err);
    if (con->parsed()) return do_connect(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (e.code() == Errc::Transport) return kTransport;
    return is_usage_error(e.code()) ? kUsage : kRejected;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace knotlock::cli
