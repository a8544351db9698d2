#include "knotlock/linkage.hpp"

#include <random>
#include <string>

#include "knotlock/error.hpp"

namespace knotlock {

FramedBraid disjoint_union(const FramedBraid& a, const FramedBraid& b) {
  std::vector<Generator> word = a.word();
  word.reserve(a.word().size() + b.word().size());
  for (const Generator& g : b.word()) word.emplace_back(g.index() + a.strands(), g.sign());
  std::vector<Framing> framing = a.framing();
  framing.insert(framing.end(), b.framing().begin(), b.framing().end());
  return FramedBraid(a.strands() + b.strands(), std::move(word), std::move(framing));
}

FramedBraid interleave(const FramedBraid& link, std::size_t boundary, std::uint64_t seed,
                       std::size_t pairs) {
  if (boundary == 0 || boundary >= link.strands()) {
    throw Error(Errc::InvalidInput, "boundary " + std::to_string(boundary) +
                                        " is not between two strands");
  }
  std::mt19937_64 rng(seed);
  std::vector<Generator> word = link.word();
  for (std::size_t k = 0; k < pairs; ++k) {
    const Generator g(boundary, rng() % 2 == 0 ? 1 : -1);
    const auto at = static_cast<std::ptrdiff_t>(rng() % (word.size() + 1));
    word.insert(word.begin() + at, {g, g.inverse()});
  }
  return FramedBraid(link.strands(), std::move(word), link.framing());
}

LinkedPackage link_encode(const EncodedPackage& a, const FramedBraid& carrier_a,
                          const EncodingPayload& b, const FramedBraid& carrier_b) {
  b.validate();
  if (b.alpha != a.alpha) {
    throw Error(Errc::InvalidInput, "both sides of a link must share alpha");
  }
  for (const StrandCode& e : b.entries) {
    for (const BetaValue::Factor& f : a.beta.factors) {
      if (f.prime == e.prime) {
        throw Error(Errc::PrimeCollision, "prime " + e.prime.to_string() + " is used by both sides");
      }
    }
  }
  if (total_framing(carrier_a) != a.m || total_framing(carrier_b) != b.total_twists()) {
    throw Error(Errc::InvalidInput, "carrier framing does not match its payload");
  }

  const EncodedPackage pkg_b = encode(b);
  LinkedPackage out;
  out.carrier = disjoint_union(carrier_a, carrier_b);
  out.n_link = a.n * pkg_b.n;
  out.m_link = a.m + pkg_b.m;
  out.beta_link.alpha = a.alpha;
  const auto shift = [&](const BetaValue::Factor& f, std::uint64_t own_m) {
    // Exponents are d - M; re-anchor them on the link's total.
    const std::int64_t d = f.exponent + static_cast<std::int64_t>(own_m);
    return BetaValue::Factor{f.prime, d - static_cast<std::int64_t>(out.m_link)};
  };
  for (const auto& f : a.beta.factors) out.beta_link.factors.push_back(shift(f, a.m));
  for (const auto& f : pkg_b.beta.factors) out.beta_link.factors.push_back(shift(f, pkg_b.m));
  out.beta_link.decimal = real_root(out.n_link, twist_exponent(a.alpha, out.m_link),
                                    contract_precision(out.n_link, a.alpha, out.m_link));
  return out;
}

LinkedPackage link_encode(const EncodedPackage& a, const EncodingPayload& b) {
  std::vector<Framing> framing_a;
  for (const BetaValue::Factor& f : a.beta.factors) {
    framing_a.push_back(Framing::twists(static_cast<std::uint64_t>(f.exponent + static_cast<std::int64_t>(a.m))));
  }
  return link_encode(a, knot_carrier(std::move(framing_a)), b, knot_carrier(b.framing()));
}

}  // namespace knotlock
