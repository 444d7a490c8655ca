#include <numeric>

#include "doctest.h"
#include "soddy/error.hpp"
#include "soddy/lg.hpp"
#include "soddy/spin.hpp"

using namespace soddy;

namespace {
const Quintuple kRoot{-11, 21, 25, 27, 28};
const std::vector<std::int64_t> kExceptions85{1,  3,  4,  6,  7,  9,  10, 12, 13, 15, 16, 18, 19, 22,
                                              24, 30, 31, 33, 37, 39, 45, 52, 55, 58, 60, 66, 76};
}  // namespace

TEST_CASE("admissibility is the mod-3 class") {
    const auto p = PackingProfile::from_quintuple(kRoot);
    CHECK(is_admissible(p, 22));
    CHECK_FALSE(is_admissible(p, 23));
    CHECK(is_admissible(p, 21));
    CHECK(is_admissible(p, 3));
    CHECK_THROWS_AS(is_admissible(p, 0), DomainError);
}

TEST_CASE("exceptions") {
    const auto r85 = exceptions(kRoot, 85);
    CHECK(r85.exceptions == kExceptions85);
    CHECK(r85.largest() == 76);

    const auto r28 = exceptions(kRoot, 28);
    CHECK(r28.exceptions == std::vector<std::int64_t>{1, 3, 4, 6, 7, 9, 10, 12, 13, 15, 16, 18, 19, 22, 24});
    CHECK(exceptions(kRoot, 20).exceptions == std::vector<std::int64_t>{1, 3, 4, 6, 7, 9, 10, 12, 13, 15, 16, 18, 19});
    CHECK(exceptions(kRoot, 0).exceptions.empty());
    CHECK_FALSE(exceptions(kRoot, 0).largest());
}

TEST_CASE("exceptions shrink as the bound grows") {
    const auto small = exceptions(kRoot, 400);
    const auto big = exceptions(kRoot, 1600);
    for (auto n : big.exceptions)
        if (n <= 400) CHECK(std::binary_search(small.exceptions.begin(), small.exceptions.end(), n));
}

TEST_CASE("stability scan") {
    const auto r = stability_scan(kRoot, 85);
    CHECK(r.largest_exception == 76);
    CHECK(r.upper_half_exceptions == std::vector<std::int64_t>{45, 52, 55, 58, 60, 66, 76});
    CHECK_FALSE(r.stable());
    CHECK_FALSE(r.vacuous);

    const auto low = stability_scan(kRoot, 10);
    CHECK(low.vacuous);
    CHECK_FALSE(low.stable());

    const auto s = stability_scan(kRoot, 4000);
    CHECK(s.upper_half_exceptions.empty());
    CHECK(s.largest_exception == s.largest_exception_at_half);
    CHECK(s.stable());
}

TEST_CASE("representation of a root entry is trivial") {
    const auto res = represent(kRoot, 28);
    REQUIRE(res.witness);
    const auto& w = *res.witness;
    CHECK(w.gamma == Eisenstein{0});
    CHECK(w.delta == Eisenstein{1});
    CHECK(w.base == kRoot);
    CHECK(w.permuted[4] == 28);
    CHECK(w.certificate == w.permuted);
    CHECK(verify_witness(w).ok());
}

TEST_CASE("representation of 118 uses the root with form value 107") {
    const auto res = represent(kRoot, 118);
    REQUIRE(res.witness);
    const auto& w = *res.witness;
    CHECK(w.base == kRoot);
    CHECK(w.pivot() == -11);
    CHECK(form_f(w.permuted).eval(w.gamma, w.delta) == 107);
    CHECK(w.value == 118);
    CHECK(w.certificate[4] == 118);
    CHECK(on_cone(w.certificate));
    CHECK(verify_witness(w).ok());
}

TEST_CASE("exceptions have no witness") {
    for (std::int64_t n : {22, 76}) {
        const auto res = represent(kRoot, n);
        CHECK_FALSE(res.witness);
        CHECK_FALSE(res.budget_exhausted);
        CHECK(res.bases_tried == 101);
    }
}

TEST_CASE("representation errors and budget") {
    CHECK_THROWS_AS(represent(kRoot, 23), NotAdmissible);
    RepresentOptions tiny;
    tiny.effort = 3;
    const auto res = represent(kRoot, 997, tiny);
    CHECK(res.budget_exhausted);
    CHECK_FALSE(res.witness);
    CHECK(res.effort_used <= 4);
    RepresentOptions no_fallback;
    no_fallback.extra_bases = 0;
    // Every root entry shares a factor with 2*3*5*7*11.
    const std::int64_t n = 2 * 3 * 5 * 7 * 11;
    CHECK_THROWS_AS(represent(kRoot, n, no_fallback), NoCoprimePivot);
}

TEST_CASE("two paths agree up to 1000") {
    const auto walk = walk_orbit(kRoot, 3000);
    const auto profile = PackingProfile::from_quintuple(kRoot);
    for (std::int64_t n = 1; n <= 1000; ++n) {
        if (!is_admissible(profile, n)) continue;
        const auto res = represent(kRoot, n);
        CAPTURE(n);
        if (walk.present(n) && std::gcd(n, std::int64_t{11}) == 1) CHECK(res.witness.has_value());
        if (res.witness) {
            CHECK(walk.present(n));
            CHECK(verify_witness(*res.witness).ok());
        }
    }
}

TEST_CASE("verification rejects tampering") {
    const auto good = *represent(kRoot, 118).witness;
    REQUIRE(verify_witness(good).ok());

    Witness w = good;
    w.gamma = w.gamma + Eisenstein{1};
    CHECK_FALSE(verify_witness(w).ok());

    w = good;
    w.n = 121;
    w.value = 121;
    CHECK(verify_witness(w).fault == WitnessFault::pivot_not_coprime);

    w = good;
    w.certificate[2] += 1;
    CHECK(verify_witness(w).fault == WitnessFault::certificate_mismatch);

    w = good;
    w.value += 3;
    CHECK(verify_witness(w).fault == WitnessFault::value_mismatch);

    w = good;
    std::swap(w.perm[1], w.perm[4]);
    CHECK(verify_witness(w).fault == WitnessFault::bad_permutation);

    w = good;
    w.base = {1, 1, 1, 1, 1};
    CHECK(verify_witness(w).fault == WitnessFault::not_in_orbit);

    // A non-primitive pair: gamma = delta = 2 shares the factor 2.
    w = good;
    w.gamma = 2;
    w.delta = 2;
    CHECK(verify_witness(w).fault == WitnessFault::gcd);
    CHECK(to_string(WitnessFault::gcd) == "gcd");
}

TEST_CASE("fallback bases come in breadth-first order") {
    const auto bases = breadth_first_bases(kRoot, 101);
    REQUIRE(bases.size() == 101);
    CHECK(bases[0] == kRoot);
    CHECK(bases[1] == apply_generator(1, kRoot));
    for (const auto& b : bases) CHECK(reduce_to_root(b).root == kRoot);
}
