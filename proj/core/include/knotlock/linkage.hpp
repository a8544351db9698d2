#pragma once

#include <cstddef>
#include <cstdint>

#include "knotlock/braid.hpp"
#include "knotlock/codec.hpp"

namespace knotlock {

struct LinkedPackage {
  FramedBraid carrier;
  BigNatural n_link;
  std::uint64_t m_link = 0;
  BetaValue beta_link;
};

/// Places b beside a: b's generators shift up by a.strands() and the framing
/// vectors concatenate.
FramedBraid disjoint_union(const FramedBraid& a, const FramedBraid& b);

/// Inserts `pairs` cancelling crossings sigma_i sigma_i^-1 at the boundary
/// i = boundary between the two sides of a union, at seeded positions.
FramedBraid interleave(const FramedBraid& link, std::size_t boundary, std::uint64_t seed,
                       std::size_t pairs);

/// Links package A with payload B on explicit carriers. Throws PrimeCollision
/// when B reuses a prime of A.
LinkedPackage link_encode(const EncodedPackage& a, const FramedBraid& carrier_a,
                          const EncodingPayload& b, const FramedBraid& carrier_b);

/// Same, on the default knot carriers of each side.
LinkedPackage link_encode(const EncodedPackage& a, const EncodingPayload& b);

}  // namespace knotlock
