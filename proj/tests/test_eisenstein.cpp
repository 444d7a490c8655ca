#include <random>

#include "doctest.h"
#include "soddy/eisenstein.hpp"
#include "soddy/error.hpp"

using namespace soddy;

TEST_CASE("ring structure") {
    const Eisenstein w = Eisenstein::omega();
    CHECK(w * w == w - Eisenstein{1});
    CHECK(omega_pow(3) == Eisenstein{-1});
    CHECK(omega_pow(6) == Eisenstein{1});
    CHECK(omega_pow(-1) * w == Eisenstein{1});
    CHECK(Eisenstein(2, 3).norm() == 4 + 6 + 9);
    CHECK(Eisenstein(2, 3).conj() == Eisenstein(5, -3));
    CHECK(Eisenstein(2, 3) * Eisenstein(2, 3).conj() == Eisenstein(19));
    CHECK(Eisenstein(1, 2) * Eisenstein(3, -1) == Eisenstein(3 + 2, -1 + 6 - 2));
    for (int k = 0; k < 6; ++k) {
        CHECK(omega_pow(k).is_unit());
        CHECK(unit_exponent(omega_pow(k)) == k);
    }
    CHECK(Eisenstein(3, -6).divisible_by_3());
    CHECK_FALSE(Eisenstein(3, 1).divisible_by_3());
}

TEST_CASE("printing") {
    CHECK(Eisenstein(0, 0).str() == "0");
    CHECK(Eisenstein(2, 0).str() == "2");
    CHECK(Eisenstein(0, 1).str() == "w");
    CHECK(Eisenstein(-2, -1).str() == "-2-w");
    CHECK(Eisenstein(1, 3).str() == "1+3w");
}

TEST_CASE("division with small remainder") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<std::int64_t> d(-500, 500);
    for (int t = 0; t < 2000; ++t) {
        Eisenstein x{d(rng), d(rng)}, y{d(rng), d(rng)};
        if (y.is_zero()) continue;
        const auto dm = eis_divmod(x, y);
        CHECK(dm.quot * y + dm.rem == x);
        CHECK(3 * dm.rem.norm() <= y.norm());
    }
    CHECK_THROWS_AS(eis_divmod(Eisenstein{1}, Eisenstein{0}), DomainError);
    CHECK(eis_divexact(Eisenstein(2, 3) * Eisenstein(1, -4), Eisenstein(1, -4)) == Eisenstein(2, 3));
}

TEST_CASE("extended gcd") {
    std::mt19937_64 rng(22);
    std::uniform_int_distribution<std::int64_t> d(-300, 300);
    for (int t = 0; t < 2000; ++t) {
        Eisenstein x{d(rng), d(rng)}, y{d(rng), d(rng)};
        if (x.is_zero() && y.is_zero()) continue;
        const auto [g, s, u] = eis_xgcd(x, y);
        CHECK(s * x + u * y == g);
        CHECK(normalize_associate(g) == g);
        if (!x.is_zero()) CHECK(eis_divmod(x, g).rem.is_zero());
        if (!y.is_zero()) CHECK(eis_divmod(y, g).rem.is_zero());
    }
    // 1 - w has norm 1 (a unit); 2 - w has norm 3 and divides 3.
    CHECK(eis_gcd(Eisenstein{3}, Eisenstein(2, -1)).norm() == 3);
    CHECK(eis_gcd(Eisenstein{7}, Eisenstein{5}).is_unit());
    CHECK(eis_gcd(Eisenstein(2, 3) * Eisenstein(4, 1), Eisenstein(2, 3) * Eisenstein(1, 5)).norm() % 19 == 0);
    CHECK_THROWS_AS(eis_xgcd(Eisenstein{}, Eisenstein{}), DomainError);
}

TEST_CASE("associates") {
    for (int k = 0; k < 6; ++k) CHECK(normalize_associate(Eisenstein(3, 2) * omega_pow(k)) == Eisenstein(3, 2));
    CHECK(normalize_associate(Eisenstein{-1}) == Eisenstein{1});
}

TEST_CASE("overflow is detected") {
    CHECK_THROWS_AS(Eisenstein(std::int64_t{1} << 40, 0) * Eisenstein(std::int64_t{1} << 40, 0), OverflowError);
}
