#pragma once

// Direct construction of the simple module L(lambda) over F_p from divided
// powers of the Chevalley generators. Cost grows with dim nabla(lambda), so
// this is for small weights only; the decomposition solver never calls it.

#include <cstdint>

#include "weylforge/charalg.hpp"

namespace weylforge {

// Weight-form character of L(lambda) in characteristic p (dominant weights).
VirtualCharacter construct_simple_character(const RootSystem& sys, const Weight& lambda, std::int64_t p);

// Binomial coefficient C(n, t) mod p for any integer n and t >= 0.
std::int64_t binomial_mod(std::int64_t n, std::int64_t t, std::int64_t p);

}  // namespace weylforge
