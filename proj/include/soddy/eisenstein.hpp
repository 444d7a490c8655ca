#pragma once

// Eisenstein integers a + b*w with w = exp(i*pi/3), so w^2 = w - 1 and norm(a + b*w) = a^2 + ab + b^2.

#include <cstdint>
#include <ostream>
#include <string>

namespace soddy {

struct Eisenstein {
    std::int64_t a = 0;
    std::int64_t b = 0;

    constexpr Eisenstein() = default;
    constexpr Eisenstein(std::int64_t re) : a(re) {}  // NOLINT(implicit)
    constexpr Eisenstein(std::int64_t a_, std::int64_t b_) : a(a_), b(b_) {}

    static constexpr Eisenstein omega() { return {0, 1}; }

    bool is_zero() const noexcept { return a == 0 && b == 0; }
    std::int64_t norm() const;
    bool is_unit() const { return norm() == 1; }
    /// 3 divides this element in Z[w], i.e. both coordinates are multiples of 3.
    bool divisible_by_3() const noexcept { return a % 3 == 0 && b % 3 == 0; }

    Eisenstein conj() const;
    Eisenstein operator-() const;

    friend bool operator==(const Eisenstein&, const Eisenstein&) = default;

    std::string str() const;
};

Eisenstein operator+(const Eisenstein& x, const Eisenstein& y);
Eisenstein operator-(const Eisenstein& x, const Eisenstein& y);
Eisenstein operator*(const Eisenstein& x, const Eisenstein& y);

std::ostream& operator<<(std::ostream& os, const Eisenstein& x);

/// w^k for any integer k (w has order 6).
Eisenstein omega_pow(int k);

/// Exponent k in 0..5 with u = w^k; throws DomainError if u is not a unit.
int unit_exponent(const Eisenstein& u);

struct EisDivMod {
    Eisenstein quot;
    Eisenstein rem;  ///< x = quot*y + rem with norm(rem) <= norm(y)/3
};

/// Division with the quotient rounded to a nearest lattice point.
EisDivMod eis_divmod(const Eisenstein& x, const Eisenstein& y);

/// Exact quotient; throws DomainError if y does not divide x.
Eisenstein eis_divexact(const Eisenstein& x, const Eisenstein& y);

/// The associate of x with argument in [0, pi/3); zero stays zero.
Eisenstein normalize_associate(const Eisenstein& x);

/// Normalized greatest common divisor. Throws DomainError when both inputs are zero.
Eisenstein eis_gcd(const Eisenstein& x, const Eisenstein& y);

struct EisXgcd {
    Eisenstein g;  ///< normalized gcd
    Eisenstein s;
    Eisenstein t;  ///< s*x + t*y == g
};

EisXgcd eis_xgcd(const Eisenstein& x, const Eisenstein& y);

}  // namespace soddy
