#pragma once

#include <compare>
#include <cstdint>

namespace lensembed {

// Class {+-k, +-k^{-1}} mod p, represented by its least element.
struct KOrbit {
  std::int64_t modulus = 0;
  std::int64_t representative = 0;

  friend bool operator==(const KOrbit&, const KOrbit&) = default;
  friend auto operator<=>(const KOrbit&, const KOrbit&) = default;
};

KOrbit canonical_k_orbit(std::int64_t p, std::int64_t k);

}  // namespace lensembed
