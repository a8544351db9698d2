#include "knotlock/wire.hpp"

#include <charconv>
#include <sstream>
#include <vector>

namespace knotlock::wire {
namespace {

constexpr std::string_view kEnd = "END";

// ---- emit -------------------------------------------------------------------

void emit_header(std::ostringstream& os, std::string_view type) {
  os << kMagic << ' ' << kVersion << '\n' << "TYPE " << type << '\n';
}

void emit_braid(std::ostringstream& os, const FramedBraid& braid) {
  os << "BRAID s=" << braid.strands() << '\n' << "WORD";
  if (braid.word().empty()) os << " -";
  for (const Generator& g : braid.word()) os << ' ' << (g.sign() > 0 ? '+' : '-') << g.index();
  os << '\n' << "FRAME";
  for (const Framing& f : braid.framing()) {
    os << ' ';
    if (f.is_untwisted()) {
      os << '.';
    } else {
      os << f.count();
    }
  }
  os << '\n';
}

void emit_real(std::ostringstream& os, std::string_view key, const BigReal& x) {
  os << key << ' ' << x.to_string() << " P=" << x.precision() << '\n';
}

// ---- parse ------------------------------------------------------------------

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const std::size_t sp = line.find(' ', pos);
    const std::size_t end = sp == std::string_view::npos ? line.size() : sp;
    out.push_back(line.substr(pos, end - pos));
    if (sp == std::string_view::npos) break;
    pos = sp + 1;
  }
  return out;
}

class Reader {
 public:
  explicit Reader(std::string_view text) {
    if (text.empty()) throw ParseError(Errc::TruncatedDocument, 0, "empty document");
    std::size_t pos = 0;
    while (pos < text.size()) {
      const std::size_t nl = text.find('\n', pos);
      if (nl == std::string_view::npos) {
        // A final line without its LF can only be a cut-off document.
        lines_.push_back(text.substr(pos));
        unterminated_ = true;
        break;
      }
      lines_.push_back(text.substr(pos, nl - pos));
      pos = nl + 1;
    }
  }

  [[nodiscard]] std::size_t line_no() const { return next_; }

  [[noreturn]] void fail(std::string_view reason) const {
    throw ParseError(Errc::BadField, next_, std::string(reason));
  }

  /// Next line, which must not be the terminator.
  std::string_view take() {
    const std::string_view line = take_raw();
    if (line == kEnd) {
      throw ParseError(Errc::BadField, next_, "END before all required fields");
    }
    check_clean(line);
    return line;
  }

  std::string_view take_raw() {
    if (next_ >= lines_.size() || (next_ + 1 == lines_.size() && unterminated_)) {
      throw ParseError(Errc::TruncatedDocument, next_ + 1, "document ends without END");
    }
    return lines_[next_++];
  }

  /// Next line as (key, rest), requiring `key`.
  std::vector<std::string_view> field(std::string_view key) {
    const std::string_view line = take();
    std::vector<std::string_view> words = split_words(line);
    if (words.front() != key) fail("expected " + std::string(key));
    words.erase(words.begin());
    if (words.empty()) fail(std::string(key) + " has no value");
    return words;
  }

  /// True when the next line starts with `key ` (without consuming it).
  [[nodiscard]] bool peek(std::string_view key) const {
    if (next_ >= lines_.size()) return false;
    const std::string_view line = lines_[next_];
    return line.size() > key.size() && line.substr(0, key.size()) == key &&
           line[key.size()] == ' ';
  }

  void finish() {
    if (next_ >= lines_.size() || (next_ + 1 == lines_.size() && unterminated_)) {
      throw ParseError(Errc::TruncatedDocument, next_ + 1, "document ends without END");
    }
    if (lines_[next_] != kEnd) {
      ++next_;
      fail("unexpected field '" + std::string(split_words(lines_[next_ - 1]).front()) + "'");
    }
    ++next_;
    if (next_ != lines_.size()) {
      ++next_;
      fail("content after END");
    }
  }

 private:
  void check_clean(std::string_view line) const {
    if (line.empty()) fail("empty line");
    if (line.back() == ' ' || line.back() == '\r' || line.front() == ' ') {
      fail("stray whitespace");
    }
    if (line.find("  ") != std::string_view::npos) fail("double space");
  }

  std::vector<std::string_view> lines_;
  bool unterminated_ = false;
  std::size_t next_ = 0;
};

std::uint64_t parse_u64(Reader& r, std::string_view token, std::string_view what) {
  std::uint64_t v = 0;
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc() || ptr != end || token.empty() || (token.size() > 1 && token[0] == '0')) {
    r.fail("bad " + std::string(what) + " '" + std::string(token) + "'");
  }
  return v;
}

BigNatural parse_natural(Reader& r, std::string_view token, std::string_view what) {
  try {
    return BigNatural::parse(token);
  } catch (const Error&) {
    r.fail("bad " + std::string(what) + " '" + std::string(token) + "'");
  }
}

std::string_view single(Reader& r, const std::vector<std::string_view>& words,
                        std::string_view key) {
  if (words.size() != 1) r.fail(std::string(key) + " takes one value");
  return words.front();
}

FramedBraid parse_braid(Reader& r) {
  const std::string_view braid_line = single(r, r.field("BRAID"), "BRAID");
  if (braid_line.substr(0, 2) != "s=") r.fail("BRAID needs s=<strands>");
  const std::uint64_t s = parse_u64(r, braid_line.substr(2), "strand count");
  if (s == 0) r.fail("a braid needs at least one strand");

  const std::vector<std::string_view> word_tokens = r.field("WORD");
  std::vector<Generator> word;
  if (!(word_tokens.size() == 1 && word_tokens.front() == "-")) {
    for (std::string_view tok : word_tokens) {
      if (tok.size() < 2 || (tok[0] != '+' && tok[0] != '-')) {
        r.fail("bad generator '" + std::string(tok) + "'");
      }
      const std::uint64_t i = parse_u64(r, tok.substr(1), "generator index");
      if (i == 0 || i >= s) r.fail("generator index " + std::string(tok) + " out of range");
      word.emplace_back(i, tok[0] == '+' ? 1 : -1);
    }
  }

  const std::vector<std::string_view> frame_tokens = r.field("FRAME");
  if (frame_tokens.size() != s) {
    r.fail("FRAME has " + std::to_string(frame_tokens.size()) + " entries for " +
           std::to_string(s) + " strands");
  }
  std::vector<Framing> framing;
  for (std::string_view tok : frame_tokens) {
    framing.push_back(tok == "." ? Framing::untwisted()
                                 : Framing::twists(parse_u64(r, tok, "framing value")));
  }
  return FramedBraid(s, std::move(word), std::move(framing));
}

BigReal parse_real(Reader& r, std::string_view key) {
  const std::vector<std::string_view> words = r.field(key);
  if (words.size() != 2 || words[1].substr(0, 2) != "P=") {
    r.fail(std::string(key) + " needs <decimal> P=<digits>");
  }
  const std::uint64_t p = parse_u64(r, words[1].substr(2), "precision");
  BigReal x;
  try {
    x = BigReal::parse(words[0]);
  } catch (const Error& e) {
    r.fail(e.what());
  }
  if (x.precision() != p) {
    r.fail(std::string(key) + " has " + std::to_string(x.precision()) +
           " significant digits but P=" + std::to_string(p));
  }
  return x;
}

std::uint64_t parse_alpha(Reader& r) {
  const std::uint64_t alpha = parse_u64(r, single(r, r.field("ALPHA"), "ALPHA"), "alpha");
  if (alpha < 2) r.fail("alpha must be at least 2");
  return alpha;
}

VerdictReason reason_from_token(Reader& r, std::string_view token) {
  for (VerdictReason reason :
       {VerdictReason::Ok, VerdictReason::NotDivisible, VerdictReason::NotCoprime,
        VerdictReason::GammaCheckFailed, VerdictReason::PrecisionBreach,
        VerdictReason::MalformedMessage}) {
    if (reason_token(reason) == token) return reason;
  }
  r.fail("unknown verdict reason '" + std::string(token) + "'");
}

void parse_preamble(Reader& r, std::string_view& type) {
  const std::string_view first = r.take_raw();
  const std::vector<std::string_view> magic = split_words(first);
  if (magic.front() != kMagic) throw ParseError(Errc::BadMagic, 1, "missing %KNOTWIRE header");
  if (magic.size() != 2 || magic[1] != std::to_string(kVersion)) {
    throw ParseError(Errc::BadVersion, 1, "unsupported version line '" + std::string(first) + "'");
  }
  type = single(r, r.field("TYPE"), "TYPE");
}

}  // namespace

std::string_view reason_token(VerdictReason reason) noexcept {
  switch (reason) {
    case VerdictReason::Ok: return "OK";
    case VerdictReason::NotDivisible: return "NOT_DIVISIBLE";
    case VerdictReason::NotCoprime: return "NOT_COPRIME";
    case VerdictReason::GammaCheckFailed: return "GAMMA_CHECK_FAILED";
    case VerdictReason::PrecisionBreach: return "PRECISION_BREACH";
    case VerdictReason::MalformedMessage: return "MALFORMED_MESSAGE";
  }
  return "UNKNOWN";
}

std::string emit(const ShareMessage& msg) {
  std::ostringstream os;
  emit_header(os, msg.kind == ShareMessage::Kind::Challenge ? "CHALLENGE" : "SHARE");
  emit_braid(os, msg.carrier);
  os << "ALPHA " << msg.alpha << '\n';
  emit_real(os, "BETA", msg.beta);
  os << kEnd << '\n';
  return os.str();
}

std::string emit(const ResponseMessage& msg) {
  std::ostringstream os;
  emit_header(os, "RESPONSE");
  emit_braid(os, msg.link_carrier);
  emit_real(os, "BETA1", msg.beta_prime);
  emit_real(os, "BETA2", msg.beta_double_prime);
  if (msg.gamma) os << "GAMMA " << *msg.gamma << '\n';
  if (msg.b) os << "B " << *msg.b << '\n';
  os << kEnd << '\n';
  return os.str();
}

std::string emit(const Verdict& verdict) {
  std::ostringstream os;
  emit_header(os, "VERDICT");
  os << "VERDICT " << (verdict.accepted() ? "ACCEPT" : "REJECT") << ' '
     << reason_token(verdict.reason()) << '\n';
  os << kEnd << '\n';
  return os.str();
}

std::string emit(const Message& msg) {
  return std::visit([](const auto& m) { return emit(m); }, msg);
}

Message parse(std::string_view text) {
  Reader r(text);
  std::string_view type;
  parse_preamble(r, type);

  if (type == "SHARE" || type == "CHALLENGE") {
    ShareMessage msg;
    msg.kind = type == "SHARE" ? ShareMessage::Kind::Share : ShareMessage::Kind::Challenge;
    msg.carrier = parse_braid(r);
    msg.alpha = parse_alpha(r);
    msg.beta = parse_real(r, "BETA");
    r.finish();
    return msg;
  }
  if (type == "RESPONSE") {
    ResponseMessage msg;
    msg.link_carrier = parse_braid(r);
    msg.beta_prime = parse_real(r, "BETA1");
    msg.beta_double_prime = parse_real(r, "BETA2");
    if (r.peek("GAMMA")) {
      msg.gamma = parse_natural(r, single(r, r.field("GAMMA"), "GAMMA"), "gamma");
      if (!r.peek("B")) r.fail("GAMMA requires B");
      msg.b = parse_natural(r, single(r, r.field("B"), "B"), "b");
    } else if (r.peek("B")) {
      r.field("B");
      r.fail("B without GAMMA");
    }
    r.finish();
    return msg;
  }
  if (type == "VERDICT") {
    const std::vector<std::string_view> words = r.field("VERDICT");
    if (words.size() != 2) r.fail("VERDICT needs ACCEPT|REJECT <REASON>");
    const VerdictReason reason = reason_from_token(r, words[1]);
    if ((words[0] == "ACCEPT") != (reason == VerdictReason::Ok) ||
        (words[0] != "ACCEPT" && words[0] != "REJECT")) {
      r.fail("verdict and reason disagree");
    }
    r.finish();
    return Verdict(reason);
  }
  r.fail("unknown TYPE '" + std::string(type) + "'");
}

std::string emit_config(const PartyConfig& config) {
  std::ostringstream os;
  emit_header(os, "CONFIG");
  os << "PRIMES";
  for (const StrandCode& e : config.payload.entries) os << ' ' << e.prime;
  os << '\n' << "TWISTS";
  for (const StrandCode& e : config.payload.entries) os << ' ' << e.twists;
  os << '\n'
     << "ALPHA " << config.payload.alpha << '\n'
     << "SEED " << config.seed << '\n'
     << "MOVES " << config.moves << '\n'
     << kEnd << '\n';
  return os.str();
}

PartyConfig parse_config(std::string_view text) {
  Reader r(text);
  std::string_view type;
  parse_preamble(r, type);
  if (type != "CONFIG") r.fail("expected TYPE CONFIG");

  PartyConfig config;
  const std::vector<std::string_view> primes = r.field("PRIMES");
  const std::vector<std::string_view> twists = r.field("TWISTS");
  if (primes.size() != twists.size()) r.fail("PRIMES and TWISTS differ in length");
  for (std::size_t k = 0; k < primes.size(); ++k) {
    config.payload.entries.push_back(
        {parse_natural(r, primes[k], "prime"), parse_u64(r, twists[k], "twist count")});
  }
  config.payload.alpha = parse_alpha(r);
  if (r.peek("SEED")) config.seed = parse_u64(r, single(r, r.field("SEED"), "SEED"), "seed");
  if (r.peek("MOVES")) config.moves = parse_u64(r, single(r, r.field("MOVES"), "MOVES"), "moves");
  r.finish();
  return config;
}

}  // namespace knotlock::wire
