#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace knotlock {

/// Artin generator sigma_i (sign +1) or its inverse (sign -1). Indices are 1-based.
class Generator {
 public:
  Generator(std::size_t index, int sign);

  [[nodiscard]] std::size_t index() const noexcept { return index_; }
  [[nodiscard]] int sign() const noexcept { return sign_; }
  [[nodiscard]] Generator inverse() const { return Generator(index_, -sign_); }

  friend bool operator==(const Generator&, const Generator&) = default;

 private:
  std::size_t index_;
  int sign_;
};

/// Half-twist count carried by one strand, or the untwisted marker.
class Framing {
 public:
  static Framing untwisted() { return Framing(); }
  static Framing twists(std::uint64_t d) { return Framing(d); }

  [[nodiscard]] bool is_untwisted() const noexcept { return !twists_.has_value(); }
  /// Half-twists, counting an untwisted strand as zero.
  [[nodiscard]] std::uint64_t count() const noexcept { return twists_.value_or(0); }

  friend bool operator==(const Framing&, const Framing&) = default;

 private:
  Framing() = default;
  explicit Framing(std::uint64_t d) : twists_(d) {}

  std::optional<std::uint64_t> twists_;
};

/// Framed braid in normal form: an Artin word plus one framing per strand.
/// The framing vector is indexed by the strand's starting position.
class FramedBraid {
 public:
  /// One untwisted strand, empty word.
  FramedBraid() : strands_(1), framing_{Framing::untwisted()} {}
  /// Throws Error(InvalidInput) when a generator index is >= strands or the
  /// framing vector length differs from strands.
  FramedBraid(std::size_t strands, std::vector<Generator> word, std::vector<Framing> framing);

  /// Identity braid (empty word), one strand per framing entry.
  static FramedBraid trivial(std::vector<Framing> framing);

  [[nodiscard]] std::size_t strands() const noexcept { return strands_; }
  [[nodiscard]] const std::vector<Generator>& word() const noexcept { return word_; }
  [[nodiscard]] const std::vector<Framing>& framing() const noexcept { return framing_; }

  /// True when the total framing is even (the ribbon closes orientably).
  [[nodiscard]] bool orientable() const;

  friend bool operator==(const FramedBraid&, const FramedBraid&) = default;

 private:
  std::size_t strands_;
  std::vector<Generator> word_;
  std::vector<Framing> framing_;
};

/// Permutation on {1..s} stored 0-based: image[k] is where the strand that
/// starts at position k ends up.
using Permutation = std::vector<std::size_t>;

struct ComponentFraming {
  std::uint64_t half_twists = 0;
  bool untwisted_only = false;

  friend bool operator==(const ComponentFraming&, const ComponentFraming&) = default;
  friend auto operator<=>(const ComponentFraming&, const ComponentFraming&) = default;
};

struct ClosureSummary {
  /// Each component lists its 1-based strand indices ascending; components are
  /// ordered by their smallest strand.
  std::vector<std::vector<std::size_t>> components;
  std::vector<ComponentFraming> framing;

  [[nodiscard]] std::size_t component_count() const noexcept { return components.size(); }
  /// Per-component framings sorted, for comparisons that ignore strand labels.
  [[nodiscard]] std::vector<ComponentFraming> framing_multiset() const;
};

Permutation permutation_of(const FramedBraid& braid);
ClosureSummary closure(const FramedBraid& braid);
std::uint64_t total_framing(const FramedBraid& braid);

/// Markov conjugation: word becomes g . word . g^-1 and the framing follows its strand.
FramedBraid conjugate(const FramedBraid& braid, Generator g);

/// Markov stabilization: adds an untwisted strand and appends sigma_s^sign.
FramedBraid stabilize(const FramedBraid& braid, int sign);

/// Moves one half-twist from strand `from` to strand `to` (1-based), which
/// must close into the same component.
/// Errors: DifferentComponents, NothingToSlide, InvalidInput (out of range).
FramedBraid slide_twist(const FramedBraid& braid, std::size_t from, std::size_t to);

/// Applies `moves` seeded pseudo-random conjugations, stabilizations and
/// twist slides. Deterministic in `seed` on every platform.
FramedBraid obfuscate(const FramedBraid& braid, std::uint64_t seed, std::uint64_t moves);

/// Single-component carrier on framing.size() strands: the closure of
/// (sigma_1 ... sigma_{s-1})^(s+1), i.e. a torus knot; for two strands this is
/// the trefoil sigma_1^3.
FramedBraid knot_carrier(std::vector<Framing> framing);

}  // namespace knotlock
