#pragma once

#include <cstdint>
#include <string>

#include "soddy/error.hpp"

namespace soddy::checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 overflow in addition");
    return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 overflow in subtraction");
    return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 overflow in multiplication");
    return r;
}

inline std::int64_t neg(std::int64_t a) { return sub(0, a); }

inline std::int64_t narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("value does not fit in int64");
    return static_cast<std::int64_t>(v);
}

/// Non-negative residue of a modulo m (m > 0).
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// Floor of the square root of a non-negative 128-bit integer.
inline __int128 isqrt(__int128 n) {
    if (n < 0) throw DomainError("isqrt of negative value");
    if (n < 2) return n;
    auto x = static_cast<__int128>(__builtin_sqrtl(static_cast<long double>(n)));
    while (x * x > n) --x;
    while ((x + 1) * (x + 1) <= n) ++x;
    return x;
}

}  // namespace soddy::checked
