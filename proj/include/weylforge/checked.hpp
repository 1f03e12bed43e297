#pragma once

#include <cstdint>

#include "weylforge/error.hpp"

namespace weylforge::checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "64-bit addition");
    return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "64-bit subtraction");
    return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "64-bit multiplication");
    return r;
}

// p^e, throwing on overflow.
inline std::int64_t power(std::int64_t p, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r = mul(r, p);
    return r;
}

}  // namespace weylforge::checked
