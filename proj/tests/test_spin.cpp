#include <random>

#include "doctest.h"
#include "soddy/error.hpp"
#include "soddy/spin.hpp"

using namespace soddy;

namespace {

const Quintuple kRoot{-11, 21, 25, 27, 28};

// p + q w with rational p, q; an independent model of Q(w) for the Hermitian oracle.
struct QW {
    Rational p, q;
};
QW operator+(const QW& x, const QW& y) { return {x.p + y.p, x.q + y.q}; }
QW operator*(const QW& x, const QW& y) { return {x.p * y.p - x.q * y.q, x.p * y.q + x.q * y.p + x.q * y.q}; }
QW conj(const QW& x) { return {x.p + x.q, -x.q}; }
QW lift(const Eisenstein& e) { return {e.a, e.b}; }

using H = std::array<std::array<QW, 2>, 2>;

H mul(const H& x, const H& y) {
    H r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
    return r;
}

// (A, B, C, D) -> [[3A, (C - B) + 2B w], [conj, D]], whose determinant is -F.
std::array<Rational, 4> act_hermitian(const SpinElement& g, const std::array<Rational, 4>& v) {
    const auto [A, B, C, D] = v;
    const QW z{C - B, Rational(2) * B};
    H X{{{QW{Rational(3) * A, 0}, z}, {conj(z), QW{D, 0}}}};
    H G{{{lift(g.alpha), lift(g.beta)}, {lift(g.gamma), lift(g.delta)}}};
    H Gd{{{conj(lift(g.alpha)), conj(lift(g.gamma))}, {conj(lift(g.beta)), conj(lift(g.delta))}}};
    const H Y = mul(mul(G, X), Gd);
    const Rational B2 = Y[0][1].q / Rational(2);
    return {Y[0][0].p / Rational(3), B2, Y[0][1].p + B2, Y[1][1].p};
}

SpinElement random_sl2(std::mt19937_64& rng, int length) {
    const std::array<SpinElement, 4> gens{SpinElement{0, -1, 1, 0}, upper_translation(1),
                                          upper_translation(Eisenstein::omega()), spin_generator(1)};
    std::uniform_int_distribution<int> pick(0, 7);
    SpinElement g;
    for (int i = 0; i < length; ++i) {
        const int k = pick(rng);
        g = g * (k % 2 ? gens[k / 2].adjugate() : gens[k / 2]);
    }
    return g;
}

SpinElement random_gamma0(std::mt19937_64& rng, int length) {
    std::uniform_int_distribution<int> pick(0, 5);
    SpinElement g;
    for (int i = 0; i < length; ++i) {
        const int k = pick(rng);
        const SpinElement t = spin_generator(k / 2 + 1);
        g = g * (k % 2 ? t.adjugate() : t);
    }
    return g;
}

}  // namespace

TEST_CASE("generators lie in the level-3 subgroup") {
    for (int j = 1; j <= 3; ++j) {
        CHECK(spin_generator(j).det() == Eisenstein{1});
        CHECK(lambda_membership(spin_generator(j)));
    }
    CHECK_FALSE(lambda_membership(upper_translation(1)));
    CHECK(lambda_membership(lower_translation(1)));
    CHECK_THROWS_AS(spin_generator(4), DomainError);
}

TEST_CASE("rho of the generators is the tabulated conjugate") {
    for (int j = 1; j <= 3; ++j) {
        CAPTURE(j);
        CHECK(rho(spin_generator(j)) == xi_tilde(j));
        CHECK(conjugate_by_J(RationalMatrix5::from(xi_generator(j)), Conjugation::forward) == xi_tilde(j));
        CHECK(conjugate_by_J(xi_tilde(j), Conjugation::backward) == RationalMatrix5::from(xi_generator(j)));
    }
}

TEST_CASE("xi generators are products of reflections") {
    const SoddyMatrix xi1{{{{1, 0, 0, 0, 0}, {2, 0, -1, 2, 2}, {1, 1, -1, 1, 1}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}}}};
    const SoddyMatrix xi3{{{{1, 0, 0, 0, 0}, {2, 0, 2, 2, -1}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {1, 1, 1, 1, -1}}}};
    CHECK(xi_generator(1) == xi1);
    CHECK(xi_generator(3) == xi3);
}

TEST_CASE("J is invertible and maps the cone onto the quadric") {
    const auto& J = change_of_variables_J();
    CHECK(J * J.inverse() == RationalMatrix5::identity());
    CHECK(J.denominator() == 2);
    // (k1, A, B, C, D) = J v; on the cone 3B^2 + C^2 - 3AD = -3 k1^2.
    std::array<Rational, 5> w{};
    for (int i = 0; i < 5; ++i)
        for (int k = 0; k < 5; ++k) w[i] += J(i, k) * Rational(kRoot[k]);
    CHECK(Rational(3) * w[2] * w[2] + w[3] * w[3] - Rational(3) * w[1] * w[4] ==
          Rational(-3 * kRoot[0] * kRoot[0]));
}

TEST_CASE("rho agrees with the Hermitian action and is multiplicative") {
    std::mt19937_64 rng(1234);
    std::uniform_int_distribution<std::int64_t> d(-20, 20);
    for (int t = 0; t < 300; ++t) {
        const SpinElement g = random_sl2(rng, 6);
        const SpinElement h = random_sl2(rng, 6);
        const RationalMatrix5 r = rho(g);
        const std::array<Rational, 4> v{d(rng), d(rng), d(rng), d(rng)};
        const auto expect = act_hermitian(g, v);
        for (int i = 0; i < 4; ++i) {
            Rational s;
            for (int k = 0; k < 4; ++k) s += r(i + 1, k + 1) * v[k];
            CHECK(s == expect[i]);
        }
        CHECK(rho(g * h) == r * rho(h));
        CHECK(rho(-g) == r);
        CHECK(6 % r.denominator() == 0);
    }
    CHECK_THROWS_AS(rho(SpinElement{2, 0, 0, 1}), DomainError);
}

TEST_CASE("completion and xi") {
    CHECK(xi_bottom_row(1, 1) == std::array<std::int64_t, 5>{5, -1, -1, 5, 3});
    CHECK((xi(1, 1) * kRoot)[4] == 118);
    CHECK(xi(0, 1) == SoddyMatrix::identity());

    std::mt19937_64 rng(77);
    std::uniform_int_distribution<std::int64_t> d(-15, 15);
    int tested = 0;
    while (tested < 500) {
        const Eisenstein ga{d(rng), d(rng)}, de{d(rng), d(rng)};
        if (!coprimality_condition(ga, de)) {
            if (!(ga.is_zero() && de.is_zero())) CHECK_THROWS_AS(complete_to_group_element(ga, de), GcdViolation);
            continue;
        }
        ++tested;
        const SpinElement g = complete_to_group_element(ga, de);
        CHECK(g.det() == Eisenstein{1});
        CHECK(g.beta.divisible_by_3());
        CHECK(g.gamma == ga);
        CHECK(g.delta == de);
        const SoddyMatrix m = xi(ga, de);
        CHECK(preserves_soddy_form(m));
        CHECK(m.m[0] == std::array<std::int64_t, 5>{1, 0, 0, 0, 0});
        CHECK(m.m[4] == xi_bottom_row(ga, de));
        // The last entry of xi v is the shifted form value.
        CHECK((m * kRoot)[4] == form_F_eval(form_f(kRoot), ga, de));
    }
    CHECK_FALSE(coprimality_condition(1, 3));
    CHECK_FALSE(coprimality_condition(0, 0));
    CHECK_THROWS_AS(complete_to_group_element(0, 0), GcdViolation);
}

TEST_CASE("decomposition into generators") {
    const auto w = decompose_to_generators(upper_translation(3));
    CHECK(to_string(w) == "t2^-1 t1^-1 t1^-1 t1^-1 t1^-1");
    CHECK(evaluate(w) == upper_translation(3));
    CHECK(evaluate({{3, -1}, {1, -1}}) == lower_translation(1));
    CHECK(decompose_to_generators(SpinElement::identity()).empty());

    std::mt19937_64 rng(8);
    for (int t = 0; t < 300; ++t) {
        const SpinElement g = random_gamma0(rng, 10);
        const SpinElement e = evaluate(decompose_to_generators(g));
        CHECK((e == g || e == -g));
    }
    CHECK_THROWS_AS(decompose_to_generators(upper_translation(1)), DomainError);
}

TEST_CASE("the quaternary form of the reference root") {
    const auto f = form_f(kRoot);
    CHECK(f.coeff == std::array<std::int64_t, 10>{48, 48, 48, 17, 17, 17, 42, 27, 15, 42});
    CHECK(f.shift == -11);
    CHECK(f.discriminant() == 1185921);
    CHECK(f.discriminant() == 33 * 33 * 33 * 33);
    CHECK(f.positive_definite());
    for (auto m : f.leading_minors()) CHECK(m > 0);
    CHECK(f.eval(1, 1) == 107);
    CHECK(form_F_eval(f, 1, 1) == 118);
    CHECK(form_F_eval(f, 0, 1) == 28);
}

TEST_CASE("form values of primitive pairs are 2 mod 3") {
    const auto f = form_f(kRoot);
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::int64_t> d(-40, 40);
    int tested = 0;
    while (tested < 2000) {
        const Eisenstein ga{d(rng), d(rng)}, de{d(rng), d(rng)};
        if (!coprimality_condition(ga, de)) continue;
        ++tested;
        CHECK(f.eval(ga, de) % 3 == 2);
    }
}

TEST_CASE("discriminant is (3 k1)^4 across the orbit") {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> g(1, 5);
    int tested = 0;
    while (tested < 100) {
        std::vector<int> word;
        for (int k = 0; k < 8; ++k) word.push_back(g(rng));
        Quintuple v = apply_word(word, kRoot);
        // Put a same-parity pair in slots 2 and 3.
        bool arranged = false;
        for (int a = 1; a < 5 && !arranged; ++a)
            for (int b = a + 1; b < 5 && !arranged; ++b)
                if ((v[a] - v[b]) % 2 == 0) {
                    Quintuple w{v[0], v[a], v[b], 0, 0};
                    int k = 3;
                    for (int i = 1; i < 5; ++i)
                        if (i != a && i != b) w[k++] = v[i];
                    v = w;
                    arranged = true;
                }
        REQUIRE(arranged);
        ++tested;
        const auto f = form_f(v);
        const std::int64_t t = 3 * v[0];
        CHECK(f.discriminant() == t * t * t * t);
    }
}

TEST_CASE("form preconditions") {
    CHECK_THROWS_AS(form_f({-11, 21, 28, 27, 25}), ParityViolation);
    CHECK_THROWS_AS(form_f({1, 1, 1, 1, 1}), MalformedQuintuple);
}

TEST_CASE("identity self-check") {
    const auto rep = run_spin_identities(change_of_variables_J(), 5, 200);
    CHECK(rep.all_passed());
    CHECK(rep.first_failure() == nullptr);
    CHECK(rep.checks.size() >= 18);

    RationalMatrix5 bad = change_of_variables_J();
    bad(2, 1) = bad(2, 1) + Rational(1);
    const auto broken = run_spin_identities(bad, 5, 50);
    REQUIRE(broken.first_failure() != nullptr);
    CHECK(broken.first_failure()->name.rfind("Jcong", 0) == 0);
}
