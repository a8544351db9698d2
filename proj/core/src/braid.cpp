#include "knotlock/braid.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "knotlock/error.hpp"

namespace knotlock {

Generator::Generator(std::size_t index, int sign) : index_(index), sign_(sign) {
  if (index == 0) throw Error(Errc::InvalidInput, "generator indices start at 1");
  if (sign != 1 && sign != -1) throw Error(Errc::InvalidInput, "generator sign must be +1 or -1");
}

FramedBraid::FramedBraid(std::size_t strands, std::vector<Generator> word,
                         std::vector<Framing> framing)
    : strands_(strands), word_(std::move(word)), framing_(std::move(framing)) {
  if (strands_ == 0) throw Error(Errc::InvalidInput, "a braid needs at least one strand");
  if (framing_.size() != strands_) {
    throw Error(Errc::InvalidInput, "framing has " + std::to_string(framing_.size()) +
                                        " entries for " + std::to_string(strands_) + " strands");
  }
  for (const Generator& g : word_) {
    if (g.index() >= strands_) {
      throw Error(Errc::InvalidInput, "generator sigma_" + std::to_string(g.index()) +
                                          " needs more than " + std::to_string(strands_) +
                                          " strands");
    }
  }
}

FramedBraid FramedBraid::trivial(std::vector<Framing> framing) {
  const std::size_t s = framing.size();
  return FramedBraid(s, {}, std::move(framing));
}

bool FramedBraid::orientable() const { return total_framing(*this) % 2 == 0; }

std::vector<ComponentFraming> ClosureSummary::framing_multiset() const {
  std::vector<ComponentFraming> out = framing;
  std::sort(out.begin(), out.end());
  return out;
}

Permutation permutation_of(const FramedBraid& braid) {
  // at[p] = starting position of the strand currently at position p.
  std::vector<std::size_t> at(braid.strands());
  std::iota(at.begin(), at.end(), std::size_t{0});
  for (const Generator& g : braid.word()) std::swap(at[g.index() - 1], at[g.index()]);
  Permutation image(braid.strands());
  for (std::size_t p = 0; p < at.size(); ++p) image[at[p]] = p;
  return image;
}

ClosureSummary closure(const FramedBraid& braid) {
  const Permutation image = permutation_of(braid);
  std::vector<bool> seen(image.size(), false);
  ClosureSummary out;
  for (std::size_t start = 0; start < image.size(); ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> component;
    ComponentFraming f{0, true};
    for (std::size_t k = start; !seen[k]; k = image[k]) {
      seen[k] = true;
      component.push_back(k + 1);
      const Framing& strand = braid.framing()[k];
      f.half_twists += strand.count();
      f.untwisted_only = f.untwisted_only && strand.is_untwisted();
    }
    std::sort(component.begin(), component.end());
    out.components.push_back(std::move(component));
    out.framing.push_back(f);
  }
  return out;
}

std::uint64_t total_framing(const FramedBraid& braid) {
  std::uint64_t total = 0;
  for (const Framing& f : braid.framing()) total += f.count();
  return total;
}

FramedBraid conjugate(const FramedBraid& braid, Generator g) {
  std::vector<Generator> word;
  word.reserve(braid.word().size() + 2);
  word.push_back(g);
  word.insert(word.end(), braid.word().begin(), braid.word().end());
  word.push_back(g.inverse());
  // The leading g swaps which strand starts at positions i-1 and i.
  std::vector<Framing> framing = braid.framing();
  if (g.index() < framing.size()) std::swap(framing[g.index() - 1], framing[g.index()]);
  return FramedBraid(braid.strands(), std::move(word), std::move(framing));
}

FramedBraid stabilize(const FramedBraid& braid, int sign) {
  std::vector<Generator> word = braid.word();
  word.emplace_back(braid.strands(), sign);
  std::vector<Framing> framing = braid.framing();
  framing.push_back(Framing::untwisted());
  return FramedBraid(braid.strands() + 1, std::move(word), std::move(framing));
}

namespace {

std::vector<std::size_t> component_labels(const FramedBraid& braid) {
  const Permutation image = permutation_of(braid);
  std::vector<std::size_t> label(image.size(), image.size());
  for (std::size_t start = 0; start < image.size(); ++start) {
    for (std::size_t k = start; label[k] == image.size(); k = image[k]) label[k] = start;
  }
  return label;
}

}  // namespace

FramedBraid slide_twist(const FramedBraid& braid, std::size_t from, std::size_t to) {
  const std::size_t s = braid.strands();
  if (from == 0 || to == 0 || from > s || to > s) {
    throw Error(Errc::InvalidInput, "strand index out of range");
  }
  const std::vector<std::size_t> label = component_labels(braid);
  if (label[from - 1] != label[to - 1]) {
    throw Error(Errc::DifferentComponents, "strands " + std::to_string(from) + " and " +
                                               std::to_string(to) + " close separately");
  }
  if (braid.framing()[from - 1].count() == 0) {
    throw Error(Errc::NothingToSlide, "strand " + std::to_string(from) + " has no half-twist");
  }
  std::vector<Framing> framing = braid.framing();
  framing[from - 1] = Framing::twists(framing[from - 1].count() - 1);
  framing[to - 1] = Framing::twists(framing[to - 1].count() + 1);
  return FramedBraid(s, braid.word(), std::move(framing));
}

FramedBraid obfuscate(const FramedBraid& braid, std::uint64_t seed, std::uint64_t moves) {
  // Plain modulo over mt19937_64 output keeps the sequence identical across
  // standard libraries, which uniform_int_distribution does not.
  std::mt19937_64 rng(seed);
  const auto pick = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  const auto sign = [&rng] { return rng() % 2 == 0 ? 1 : -1; };

  FramedBraid out = braid;
  for (std::uint64_t step = 0; step < moves; ++step) {
    const std::size_t s = out.strands();
    switch (pick(3)) {
      case 0:
        if (s > 1) {
          out = conjugate(out, Generator(1 + pick(s - 1), sign()));
          break;
        }
        [[fallthrough]];
      case 1:
        out = stabilize(out, sign());
        break;
      default: {
        std::vector<std::size_t> twisted;
        for (std::size_t k = 0; k < s; ++k) {
          if (out.framing()[k].count() > 0) twisted.push_back(k);
        }
        if (twisted.empty()) break;
        const std::size_t from = twisted[pick(twisted.size())];
        const std::vector<std::size_t> label = component_labels(out);
        std::vector<std::size_t> mates;
        for (std::size_t k = 0; k < s; ++k) {
          if (k != from && label[k] == label[from]) mates.push_back(k);
        }
        if (mates.empty()) break;
        out = slide_twist(out, from + 1, mates[pick(mates.size())] + 1);
        break;
      }
    }
  }
  return out;
}

FramedBraid knot_carrier(std::vector<Framing> framing) {
  const std::size_t s = framing.size();
  if (s == 0) throw Error(Errc::InvalidInput, "a carrier needs at least one strand");
  std::vector<Generator> word;
  if (s > 1) {
    word.reserve((s - 1) * (s + 1));
    for (std::size_t round = 0; round <= s; ++round) {
      for (std::size_t i = 1; i < s; ++i) word.emplace_back(i, 1);
    }
  }
  return FramedBraid(s, std::move(word), std::move(framing));
}

}  // namespace knotlock
