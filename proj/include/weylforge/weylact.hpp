#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "weylforge/rootsys.hpp"

namespace weylforge {

struct StraightenResult {
    int sign = 0;                    // -1, 0, +1
    std::optional<Weight> dominant;  // absent iff sign == 0
    int length = 0;                  // number of simple reflections used
};

inline constexpr std::size_t kDefaultOrbitGuard = 10'000'000;

// s_{alpha, mp} . lambda = lambda - (<lambda + rho, alpha^vee> - mp) alpha
Weight dot_reflect(const RootSystem& sys, const Weight& lambda, const Root& alpha, std::int64_t m, std::int64_t p);

// Dot action of a simple reflection.
Weight simple_dot_reflect(const RootSystem& sys, const Weight& lambda, int i);

StraightenResult straighten(const RootSystem& sys, const Weight& mu);

std::vector<Weight> orbit(const RootSystem& sys, const Weight& lambda, std::size_t guard = kDefaultOrbitGuard);

// Dominant representative of the W-orbit of lambda.
Weight dominant_conjugate(const RootSystem& sys, const Weight& lambda);

Weight minus_w0(const RootSystem& sys, const Weight& lambda);

bool is_linked(const RootSystem& sys, const Weight& lambda, const Weight& mu, std::int64_t p);

}  // namespace weylforge
