#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace knotlock {

enum class Errc {
  InvalidInput,
  InvalidModulus,
  DifferentComponents,
  NothingToSlide,
  DuplicatePrime,
  NotPrime,
  PrecisionBreach,
  NotAPowerOfAlpha,
  PrimeCollision,
  NoValidPrime,
  BadMagic,
  BadVersion,
  BadField,
  TruncatedDocument,
  Transport,
};

std::string_view to_string(Errc code) noexcept;

/// Library failure carrying a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace knotlock
