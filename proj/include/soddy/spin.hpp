#pragma once

// The spin-cover side of the Soddy group: SL2 over the Eisenstein integers, the explicit
// homomorphism rho into the orthogonal group of F(A,B,C,D) = 3B^2 + C^2 - 3AD, the
// change of variables J from curvature quintuples to (k1, A, B, C, D), and the shifted
// quaternary forms whose primitive values are curvatures.
//
// Everything is exact; rho only ever produces rationals with denominators dividing 6.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "soddy/core.hpp"
#include "soddy/eisenstein.hpp"
#include "soddy/rational.hpp"

namespace soddy {

/// [[alpha, beta], [gamma, delta]] over Z[w].
struct SpinElement {
    Eisenstein alpha{1}, beta{0}, gamma{0}, delta{1};

    static SpinElement identity() { return {}; }

    Eisenstein det() const;
    SpinElement operator-() const;
    /// Adjugate; the inverse when det() == 1.
    SpinElement adjugate() const;

    friend bool operator==(const SpinElement&, const SpinElement&) = default;
};

SpinElement operator*(const SpinElement& x, const SpinElement& y);

std::string to_string(const SpinElement& g);

/// Generators t1 = diag(w^-1, w), t2 = [[w^-2, 3w], [0, w^2]], t3 = [[w, 0], [w^2, w^-1]].
SpinElement spin_generator(int j);

/// [[1, x], [0, 1]] and [[1, 0], [x, 1]].
SpinElement upper_translation(const Eisenstein& x);
SpinElement lower_translation(const Eisenstein& x);

struct RationalMatrix5 {
    std::array<std::array<Rational, 5>, 5> m{};

    static RationalMatrix5 identity();
    static RationalMatrix5 from(const SoddyMatrix& a);

    Rational& operator()(int r, int c) { return m[r][c]; }
    const Rational& operator()(int r, int c) const { return m[r][c]; }

    bool is_integral() const;
    /// Integer matrix if every entry is an integer.
    std::optional<SoddyMatrix> to_integer() const;
    RationalMatrix5 inverse() const;
    /// Lowest common denominator of all entries.
    std::int64_t denominator() const;
    /// Fraction grid, one row per line.
    std::string grid() const;

    friend bool operator==(const RationalMatrix5&, const RationalMatrix5&) = default;
};

RationalMatrix5 operator*(const RationalMatrix5& a, const RationalMatrix5& b);

/// Explicit image in GL5 (first coordinate fixed). Throws DomainError unless det(g) == 1.
RationalMatrix5 rho(const SpinElement& g);

/// Change of variables (k1..k5) -> (k1, A, B, C, D).
const RationalMatrix5& change_of_variables_J();

enum class Conjugation {
    forward,   ///< J * m * J^-1
    backward,  ///< J^-1 * m * J
};

RationalMatrix5 conjugate_by_J(const RationalMatrix5& m, Conjugation dir);
RationalMatrix5 conjugate_by(const RationalMatrix5& J, const RationalMatrix5& m, Conjugation dir);

/// xi_j = M_2 * M_{j+2}, j in 1..3.
SoddyMatrix xi_generator(int j);
/// The matrices xi~_j = J xi_j J^-1 as tabulated constants.
const RationalMatrix5& xi_tilde(int j);

/// Determinant one and beta divisible by 3.
bool lambda_membership(const SpinElement& g);

/// gcd(3*gamma, delta) is a unit.
bool coprimality_condition(const Eisenstein& gamma, const Eisenstein& delta);

/// Some [[alpha, beta], [gamma, delta]] with determinant 1 and 3 | beta.
/// Throws GcdViolation if gcd(3*gamma, delta) is not a unit.
SpinElement complete_to_group_element(const Eisenstein& gamma, const Eisenstein& delta);

/// J^-1 * rho(g) * J for any completion g of (gamma, delta); an integral element of <M_2..M_5>.
SoddyMatrix xi(const Eisenstein& gamma, const Eisenstein& delta);
SoddyMatrix xi_of(const SpinElement& g);

/// Bottom row of xi(gamma, delta) from its closed form in Re(delta*conj(gamma)), |gamma|^2, |delta|^2.
std::array<std::int64_t, 5> xi_bottom_row(const Eisenstein& gamma, const Eisenstein& delta);

struct SpinLetter {
    int gen = 1;  ///< 1..3
    int exp = 1;  ///< +1 or -1

    friend bool operator==(const SpinLetter&, const SpinLetter&) = default;
};
using SpinWord = std::vector<SpinLetter>;

SpinElement evaluate(const SpinWord& w);
std::string to_string(const SpinWord& w);

/// Word in t1, t2, t3 and their inverses whose product is +-g. Requires lambda_membership(g).
/// Throws BudgetExceeded after max_steps Euclidean reduction rounds.
SpinWord decompose_to_generators(const SpinElement& g, std::uint64_t max_steps = 10'000);

// ---------------------------------------------------------------------------
// Quaternary forms

/// Monomials in the variables (g1, g2, d1, d2) where gamma = g1 + g2 w and delta = d1 + d2 w.
enum class Monomial : int { g1g1, g1g2, g2g2, d1d1, d1d2, d2d2, g1d1, g1d2, g2d1, g2d2 };

struct QuaternaryForm {
    Quintuple base{};  ///< (k1..k5) in the order the form was built from
    std::array<std::int64_t, 10> coeff{};
    std::int64_t shift = 0;  ///< k1; the shifted form is f - shift

    std::int64_t operator[](Monomial m) const { return coeff[static_cast<int>(m)]; }

    std::int64_t eval(const Eisenstein& gamma, const Eisenstein& delta) const;
    /// Symmetric matrix with 2x the square coefficients on the diagonal and the
    /// cross coefficients off it, so f(x) = x^T S x / 2.
    std::array<std::array<std::int64_t, 4>, 4> gram() const;
    std::int64_t discriminant() const;
    std::array<std::int64_t, 4> leading_minors() const;
    bool positive_definite() const;
};

/// Requires v on the cone and k2 = k3 (mod 2); throws ParityViolation / MalformedQuintuple.
QuaternaryForm form_f(const Quintuple& v);

/// f(gamma, delta) - k1.
std::int64_t form_F_eval(const QuaternaryForm& form, const Eisenstein& gamma, const Eisenstein& delta);

// ---------------------------------------------------------------------------
// Self-check

struct IdentityCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SpinReport {
    std::uint64_t seed = 0;
    std::vector<IdentityCheck> checks;

    bool all_passed() const;
    const IdentityCheck* first_failure() const;
};

/// Runs every tabulated and randomized identity. J is a parameter so that harnesses can
/// confirm a corrupted constant is caught.
SpinReport run_spin_identities(const RationalMatrix5& J, std::uint64_t seed, int random_trials = 1000);

}  // namespace soddy
