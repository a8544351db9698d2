#include "knotlock/error.hpp"

namespace knotlock {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::InvalidModulus: return "InvalidModulus";
    case Errc::DifferentComponents: return "DifferentComponents";
    case Errc::NothingToSlide: return "NothingToSlide";
    case Errc::DuplicatePrime: return "DuplicatePrime";
    case Errc::NotPrime: return "NotPrime";
    case Errc::PrecisionBreach: return "PrecisionBreach";
    case Errc::NotAPowerOfAlpha: return "NotAPowerOfAlpha";
    case Errc::PrimeCollision: return "PrimeCollision";
    case Errc::NoValidPrime: return "NoValidPrime";
    case Errc::BadMagic: return "BadMagic";
    case Errc::BadVersion: return "BadVersion";
    case Errc::BadField: return "BadField";
    case Errc::TruncatedDocument: return "TruncatedDocument";
    case Errc::Transport: return "Transport";
  }
  return "Unknown";
}

}  // namespace knotlock
