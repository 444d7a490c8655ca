#include "soddy/spin.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "soddy/checked.hpp"
#include "soddy/error.hpp"

namespace soddy {

using checked::add;
using checked::mul;
using checked::sub;

// ---------------------------------------------------------------------------
// SL2(Z[w])

Eisenstein SpinElement::det() const { return alpha * delta - beta * gamma; }

SpinElement SpinElement::operator-() const { return {-alpha, -beta, -gamma, -delta}; }

SpinElement SpinElement::adjugate() const { return {delta, -beta, -gamma, alpha}; }

SpinElement operator*(const SpinElement& x, const SpinElement& y) {
    return {x.alpha * y.alpha + x.beta * y.gamma, x.alpha * y.beta + x.beta * y.delta,
            x.gamma * y.alpha + x.delta * y.gamma, x.gamma * y.beta + x.delta * y.delta};
}

std::string to_string(const SpinElement& g) {
    return "[[" + g.alpha.str() + ", " + g.beta.str() + "], [" + g.gamma.str() + ", " + g.delta.str() + "]]";
}

SpinElement spin_generator(int j) {
    switch (j) {
        case 1: return {omega_pow(-1), 0, 0, omega_pow(1)};
        case 2: return {omega_pow(-2), Eisenstein{0, 3}, 0, omega_pow(2)};
        case 3: return {omega_pow(1), 0, omega_pow(2), omega_pow(-1)};
        default: throw DomainError("spin generator index must be in 1..3");
    }
}

SpinElement upper_translation(const Eisenstein& x) { return {1, x, 0, 1}; }
SpinElement lower_translation(const Eisenstein& x) { return {1, 0, x, 1}; }

// ---------------------------------------------------------------------------
// Rational 5x5

RationalMatrix5 RationalMatrix5::identity() {
    RationalMatrix5 r;
    for (int i = 0; i < 5; ++i) r.m[i][i] = 1;
    return r;
}

RationalMatrix5 RationalMatrix5::from(const SoddyMatrix& a) {
    RationalMatrix5 r;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) r.m[i][j] = a.m[i][j];
    return r;
}

bool RationalMatrix5::is_integral() const {
    for (const auto& row : m)
        for (const auto& x : row)
            if (!x.is_integer()) return false;
    return true;
}

std::optional<SoddyMatrix> RationalMatrix5::to_integer() const {
    if (!is_integral()) return std::nullopt;
    SoddyMatrix a;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) a.m[i][j] = m[i][j].num();
    return a;
}

RationalMatrix5 RationalMatrix5::inverse() const {
    RationalMatrix5 a = *this;
    RationalMatrix5 inv = identity();
    for (int c = 0; c < 5; ++c) {
        int p = c;
        while (p < 5 && a.m[p][c].is_zero()) ++p;
        if (p == 5) throw DomainError("singular rational matrix");
        std::swap(a.m[p], a.m[c]);
        std::swap(inv.m[p], inv.m[c]);
        Rational piv = a.m[c][c];
        for (int j = 0; j < 5; ++j) {
            a.m[c][j] /= piv;
            inv.m[c][j] /= piv;
        }
        for (int r = 0; r < 5; ++r) {
            if (r == c || a.m[r][c].is_zero()) continue;
            Rational f = a.m[r][c];
            for (int j = 0; j < 5; ++j) {
                a.m[r][j] -= f * a.m[c][j];
                inv.m[r][j] -= f * inv.m[c][j];
            }
        }
    }
    return inv;
}

std::int64_t RationalMatrix5::denominator() const {
    std::int64_t d = 1;
    for (const auto& row : m)
        for (const auto& x : row) d = std::lcm(d, x.den());
    return d;
}

std::string RationalMatrix5::grid() const {
    std::ostringstream os;
    for (const auto& row : m) {
        for (int j = 0; j < 5; ++j) os << (j ? " " : "") << row[j].str();
        os << '\n';
    }
    return os.str();
}

RationalMatrix5 operator*(const RationalMatrix5& a, const RationalMatrix5& b) {
    RationalMatrix5 r;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            Rational s;
            for (int k = 0; k < 5; ++k)
                if (!a.m[i][k].is_zero() && !b.m[k][j].is_zero()) s += a.m[i][k] * b.m[k][j];
            r.m[i][j] = s;
        }
    return r;
}

// ---------------------------------------------------------------------------
// rho

namespace {

// For x = a + bw and y = c + dw:
//   Re(x conj y)        = ac + bd + (ad + bc)/2
//   sqrt3 * Im(x conj y) = 3(bc - ad)/2
//   Im(x conj y) / sqrt3 = (bc - ad)/2
Rational re_xy(const Eisenstein& x, const Eisenstein& y) {
    std::int64_t twice = add(add(mul(2, mul(x.a, y.a)), mul(2, mul(x.b, y.b))), add(mul(x.a, y.b), mul(x.b, y.a)));
    return Rational(twice, 2);
}

std::int64_t cross(const Eisenstein& x, const Eisenstein& y) { return sub(mul(x.b, y.a), mul(x.a, y.b)); }

Rational s3im_xy(const Eisenstein& x, const Eisenstein& y) { return Rational(mul(3, cross(x, y)), 2); }
Rational ims3_xy(const Eisenstein& x, const Eisenstein& y) { return Rational(cross(x, y), 2); }

}  // namespace

RationalMatrix5 rho(const SpinElement& g) {
    if (g.det() != Eisenstein{1}) throw DomainError("rho needs a determinant-one element, got " + to_string(g));
    const auto& [al, be, ga, de] = g;
    RationalMatrix5 r;
    r.m[0][0] = 1;

    r.m[1][1] = al.norm();
    r.m[1][2] = Rational(2) * ims3_xy(be, al);
    r.m[1][3] = Rational(2, 3) * re_xy(be, al);
    r.m[1][4] = Rational(be.norm(), 3);

    r.m[2][1] = s3im_xy(al, ga);
    r.m[2][2] = re_xy(de, al) - re_xy(ga, be);
    r.m[2][3] = ims3_xy(be, ga) + ims3_xy(al, de);
    r.m[2][4] = ims3_xy(be, de);

    r.m[3][1] = Rational(3) * re_xy(ga, al);
    r.m[3][2] = s3im_xy(de, al) + s3im_xy(be, ga);
    r.m[3][3] = re_xy(de, al) + re_xy(ga, be);
    r.m[3][4] = re_xy(de, be);

    r.m[4][1] = mul(3, ga.norm());
    r.m[4][2] = Rational(2) * s3im_xy(de, ga);
    r.m[4][3] = Rational(2) * re_xy(de, ga);
    r.m[4][4] = de.norm();
    return r;
}

// ---------------------------------------------------------------------------
// J and the tabulated conjugates

namespace {

RationalMatrix5 make(std::initializer_list<std::initializer_list<Rational>> rows) {
    RationalMatrix5 r;
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (const auto& x : row) r.m[i][j++] = x;
        ++i;
    }
    return r;
}

const Rational h{1, 2};

}  // namespace

const RationalMatrix5& change_of_variables_J() {
    static const RationalMatrix5 J = make({{1, 0, 0, 0, 0},
                                           {1, 0, 0, 1, 0},
                                           {0, -h, h, 0, 0},
                                           {1, -h, -h, 1, 1},
                                           {1, 0, 0, 0, 1}});
    return J;
}

const RationalMatrix5& xi_tilde(int j) {
    static const std::array<RationalMatrix5, 3> table{
        make({{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, -h, -h, 0}, {0, 0, 3 * h, -h, 0}, {0, 0, 0, 0, 1}}),
        make({{1, 0, 0, 0, 0}, {0, 1, 0, -2, 3}, {0, 0, -h, h, -3 * h}, {0, 0, -3 * h, -h, 3 * h}, {0, 0, 0, 0, 1}}),
        make({{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, -3 * h, -h, h, 0}, {0, 3 * h, -3 * h, -h, 0}, {0, 3, 0, -2, 1}}),
    };
    if (j < 1 || j > 3) throw DomainError("xi~ index must be in 1..3");
    return table[static_cast<std::size_t>(j - 1)];
}

SoddyMatrix xi_generator(int j) {
    if (j < 1 || j > 3) throw DomainError("xi index must be in 1..3");
    return generator(2) * generator(j + 2);
}

RationalMatrix5 conjugate_by(const RationalMatrix5& J, const RationalMatrix5& m, Conjugation dir) {
    RationalMatrix5 Jinv = J.inverse();
    return dir == Conjugation::forward ? J * m * Jinv : Jinv * m * J;
}

RationalMatrix5 conjugate_by_J(const RationalMatrix5& m, Conjugation dir) {
    static const RationalMatrix5 Jinv = change_of_variables_J().inverse();
    const auto& J = change_of_variables_J();
    return dir == Conjugation::forward ? J * m * Jinv : Jinv * m * J;
}

// ---------------------------------------------------------------------------
// Gamma_0(3) and the xi parametrization

bool lambda_membership(const SpinElement& g) { return g.det() == Eisenstein{1} && g.beta.divisible_by_3(); }

bool coprimality_condition(const Eisenstein& gamma, const Eisenstein& delta) {
    Eisenstein three_gamma = Eisenstein{3} * gamma;
    if (three_gamma.is_zero() && delta.is_zero()) return false;
    return eis_gcd(three_gamma, delta).is_unit();
}

SpinElement complete_to_group_element(const Eisenstein& gamma, const Eisenstein& delta) {
    Eisenstein three_gamma = Eisenstein{3} * gamma;
    if (three_gamma.is_zero() && delta.is_zero())
        throw GcdViolation("gcd(3*gamma, delta) is not a unit for gamma = delta = 0");
    // s*delta + t*(3 gamma) = g, a unit when the condition holds.
    auto [g, s, t] = eis_xgcd(delta, three_gamma);
    if (!g.is_unit())
        throw GcdViolation("gcd(3*gamma, delta) = " + g.str() + " for gamma = " + gamma.str() +
                           ", delta = " + delta.str());
    Eisenstein ginv = omega_pow(-unit_exponent(g));
    SpinElement out{s * ginv, -(Eisenstein{3} * t * ginv), gamma, delta};
    if (out.det() != Eisenstein{1} || !out.beta.divisible_by_3())
        throw std::logic_error("completion produced an invalid element " + to_string(out));
    return out;
}

SoddyMatrix xi_of(const SpinElement& g) {
    if (!lambda_membership(g)) throw DomainError("element is not in Gamma_0(3): " + to_string(g));
    auto integral = conjugate_by_J(rho(g), Conjugation::backward).to_integer();
    if (!integral) throw std::logic_error("J^-1 rho(g) J is not integral for " + to_string(g));
    return *integral;
}

SoddyMatrix xi(const Eisenstein& gamma, const Eisenstein& delta) {
    return xi_of(complete_to_group_element(gamma, delta));
}

std::array<std::int64_t, 5> xi_bottom_row(const Eisenstein& gamma, const Eisenstein& delta) {
    // R = Re(delta conj gamma), S = sqrt3 Im(delta conj gamma); both are half-integers.
    Rational R = re_xy(delta, gamma);
    Rational S = s3im_xy(delta, gamma);
    Rational ng = gamma.norm();
    Rational nd = delta.norm();
    std::array<Rational, 5> row{Rational(2) * R + Rational(3) * ng + nd - Rational(1), -S - R, S - R,
                                Rational(2) * R + Rational(3) * ng, Rational(2) * R + nd};
    std::array<std::int64_t, 5> out{};
    for (int i = 0; i < 5; ++i) {
        if (!row[i].is_integer()) throw std::logic_error("xi bottom row is not integral");
        out[i] = row[i].num();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Words

SpinElement evaluate(const SpinWord& w) {
    SpinElement out = SpinElement::identity();
    for (const auto& l : w) {
        SpinElement g = spin_generator(l.gen);
        out = out * (l.exp > 0 ? g : g.adjugate());
    }
    return out;
}

std::string to_string(const SpinWord& w) {
    if (w.empty()) return "1";
    std::string s;
    for (const auto& l : w) {
        if (!s.empty()) s += ' ';
        s += "t" + std::to_string(l.gen) + (l.exp > 0 ? "" : "^-1");
    }
    return s;
}

namespace {

void append(SpinWord& out, const SpinWord& w) {
    for (const auto& l : w) {
        if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp)
            out.pop_back();
        else
            out.push_back(l);
    }
}

SpinWord inverse_word(const SpinWord& w) {
    SpinWord out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->exp});
    return out;
}

SpinWord t1_power(int k) {
    SpinWord w;
    for (int i = 0; i < std::abs(k); ++i) w.push_back({1, k > 0 ? 1 : -1});
    return w;
}

void append_power(SpinWord& out, const SpinWord& w, std::int64_t n) {
    if (std::abs(n) > 1'000'000) throw BudgetExceeded("generator word would be too long", 0);
    const SpinWord base = n >= 0 ? w : inverse_word(w);
    for (std::int64_t i = 0; i < std::abs(n); ++i) append(out, base);
}

// [[1,0],[1,1]] = t3^-1 t1^-1 and [[1,3],[0,1]] = t2^-1 t1^-4.
const SpinWord kLower{{3, -1}, {1, -1}};
const SpinWord kUpper{{2, -1}, {1, -1}, {1, -1}, {1, -1}, {1, -1}};

// Conjugation t1^-m X t1^m rotates the off-diagonal entry by w^(-2m) (lower) or w^(2m) (upper).
SpinWord conjugated(const SpinWord& x, int m) {
    SpinWord out = t1_power(-m);
    append(out, x);
    append(out, t1_power(m));
    return out;
}

// Lower translation by x = a + bw = (a + b) + b w^2.
void append_lower(SpinWord& out, const Eisenstein& x) {
    append_power(out, kLower, add(x.a, x.b));
    append_power(out, conjugated(kLower, 2), x.b);
}

// Upper translation by 3x.
void append_upper3(SpinWord& out, const Eisenstein& x) {
    append_power(out, kUpper, add(x.a, x.b));
    append_power(out, conjugated(kUpper, 1), x.b);
}

}  // namespace

SpinWord decompose_to_generators(const SpinElement& g, std::uint64_t max_steps) {
    if (!lambda_membership(g)) throw DomainError("element is not in Gamma_0(3): " + to_string(g));

    // Left-multiply by translations until gamma vanishes, remembering the inverses.
    struct Step {
        bool lower;
        Eisenstein x;  ///< lower: translation x; upper: translation 3x
    };
    std::vector<Step> undo;
    SpinElement h = g;
    std::uint64_t steps = 0;
    while (!h.gamma.is_zero()) {
        if (++steps > max_steps) throw BudgetExceeded("generator decomposition stalled", steps);
        bool moved = false;
        auto q = eis_divmod(h.gamma, h.alpha).quot;
        if (!q.is_zero()) {
            h = lower_translation(-q) * h;
            undo.push_back({true, q});
            moved = true;
        }
        if (h.gamma.is_zero()) break;
        auto k = eis_divmod(h.alpha, Eisenstein{3} * h.gamma).quot;
        if (!k.is_zero()) {
            h = upper_translation(-(Eisenstein{3} * k)) * h;
            undo.push_back({false, k});
            moved = true;
        }
        if (!moved) throw BudgetExceeded("generator decomposition made no progress", steps);
    }

    // h = diag(u, u^-1) * [[1, y], [0, 1]] with u = w^m = t1^-m and 3 | y.
    int m = unit_exponent(h.alpha);
    Eisenstein y = omega_pow(-m) * h.beta;

    SpinWord word;
    for (const auto& s : undo) {
        if (s.lower)
            append_lower(word, s.x);
        else
            append_upper3(word, s.x);
    }
    append(word, t1_power(-m));
    append_upper3(word, Eisenstein{y.a / 3, y.b / 3});

    SpinElement check = evaluate(word);
    if (check != g && check != -g) throw std::logic_error("decomposition does not reproduce " + to_string(g));
    return word;
}

// ---------------------------------------------------------------------------
// Quaternary forms

std::int64_t QuaternaryForm::eval(const Eisenstein& gamma, const Eisenstein& delta) const {
    const std::array<std::int64_t, 4> x{gamma.a, gamma.b, delta.a, delta.b};
    static constexpr std::array<std::array<int, 2>, 10> vars{
        {{0, 0}, {0, 1}, {1, 1}, {2, 2}, {2, 3}, {3, 3}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}};
    std::int64_t s = 0;
    for (int i = 0; i < 10; ++i) s = add(s, mul(coeff[i], mul(x[vars[i][0]], x[vars[i][1]])));
    return s;
}

std::array<std::array<std::int64_t, 4>, 4> QuaternaryForm::gram() const {
    std::array<std::array<std::int64_t, 4>, 4> S{};
    auto c = [&](Monomial m) { return (*this)[m]; };
    S[0][0] = mul(2, c(Monomial::g1g1));
    S[1][1] = mul(2, c(Monomial::g2g2));
    S[2][2] = mul(2, c(Monomial::d1d1));
    S[3][3] = mul(2, c(Monomial::d2d2));
    S[0][1] = S[1][0] = c(Monomial::g1g2);
    S[2][3] = S[3][2] = c(Monomial::d1d2);
    S[0][2] = S[2][0] = c(Monomial::g1d1);
    S[0][3] = S[3][0] = c(Monomial::g1d2);
    S[1][2] = S[2][1] = c(Monomial::g2d1);
    S[1][3] = S[3][1] = c(Monomial::g2d2);
    return S;
}

namespace {

// Bareiss determinant of the leading k x k block.
__int128 leading_det(const std::array<std::array<std::int64_t, 4>, 4>& S, int k) {
    std::array<std::array<__int128, 4>, 4> w{};
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) w[i][j] = S[i][j];
    __int128 prev = 1;
    int sign = 1;
    for (int p = 0; p < k - 1; ++p) {
        if (w[p][p] == 0) {
            int r = p + 1;
            while (r < k && w[r][p] == 0) ++r;
            if (r == k) return 0;
            std::swap(w[p], w[r]);
            sign = -sign;
        }
        for (int i = p + 1; i < k; ++i)
            for (int j = p + 1; j < k; ++j) w[i][j] = (w[i][j] * w[p][p] - w[i][p] * w[p][j]) / prev;
        prev = w[p][p];
    }
    return sign * w[k - 1][k - 1];
}

}  // namespace

std::int64_t QuaternaryForm::discriminant() const { return checked::narrow(leading_det(gram(), 4)); }

std::array<std::int64_t, 4> QuaternaryForm::leading_minors() const {
    auto S = gram();
    std::array<std::int64_t, 4> out{};
    for (int k = 1; k <= 4; ++k) out[k - 1] = checked::narrow(leading_det(S, k));
    return out;
}

bool QuaternaryForm::positive_definite() const {
    for (auto m : leading_minors())
        if (m <= 0) return false;
    return true;
}

QuaternaryForm form_f(const Quintuple& v) {
    if (!on_cone(v)) throw MalformedQuintuple("form base is not on the Soddy cone: " + to_string(v));
    if (checked::mod(v[1], 2) != checked::mod(v[2], 2))
        throw ParityViolation("k2 and k3 must have the same parity: " + to_string(v));
    const auto [k1, k2, k3, k4, k5] = v;
    QuaternaryForm f;
    f.base = v;
    f.shift = k1;
    auto set = [&](Monomial m, std::int64_t c) { f.coeff[static_cast<int>(m)] = c; };
    const std::int64_t g = mul(3, add(k1, k4));
    const std::int64_t d = add(k1, k5);
    const std::int64_t rest = add(k4, k5);
    set(Monomial::g1g1, g);
    set(Monomial::g1g2, g);
    set(Monomial::g2g2, g);
    set(Monomial::d1d1, d);
    set(Monomial::d1d2, d);
    set(Monomial::d2d2, d);
    set(Monomial::g1d2, add(sub(add(k1, k3), mul(2, k2)), rest));
    set(Monomial::g2d1, add(sub(add(k1, k2), mul(2, k3)), rest));
    const std::int64_t diag = sub(mul(2, add(add(k1, k4), k5)), add(k2, k3));
    set(Monomial::g1d1, diag);
    set(Monomial::g2d2, diag);
    return f;
}

std::int64_t form_F_eval(const QuaternaryForm& form, const Eisenstein& gamma, const Eisenstein& delta) {
    return sub(form.eval(gamma, delta), form.shift);
}

// ---------------------------------------------------------------------------
// Self-check

bool SpinReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed; });
}

const IdentityCheck* SpinReport::first_failure() const {
    for (const auto& c : checks)
        if (!c.passed) return &c;
    return nullptr;
}

namespace {

const std::array<SoddyMatrix, 3>& tabulated_xi() {
    static const std::array<SoddyMatrix, 3> table{
        SoddyMatrix{{{{1, 0, 0, 0, 0}, {2, 0, -1, 2, 2}, {1, 1, -1, 1, 1}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}}}},
        SoddyMatrix{{{{1, 0, 0, 0, 0}, {2, 0, 2, -1, 2}, {0, 0, 1, 0, 0}, {1, 1, 1, -1, 1}, {0, 0, 0, 0, 1}}}},
        SoddyMatrix{{{{1, 0, 0, 0, 0}, {2, 0, 2, 2, -1}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {1, 1, 1, 1, -1}}}},
    };
    return table;
}

SpinElement random_sl2(std::mt19937_64& rng, int length) {
    static const std::array<SpinElement, 4> gens{SpinElement{0, -1, 1, 0}, upper_translation(1),
                                                 upper_translation(Eisenstein::omega()), spin_generator(1)};
    std::uniform_int_distribution<int> pick(0, 7);
    SpinElement g = SpinElement::identity();
    for (int i = 0; i < length; ++i) {
        int k = pick(rng);
        const SpinElement& x = gens[static_cast<std::size_t>(k / 2)];
        g = g * (k % 2 ? x.adjugate() : x);
    }
    return g;
}

Rational form_F(const RationalMatrix5& r, const std::array<Rational, 5>& v) {
    std::array<Rational, 5> w{};
    for (int i = 0; i < 5; ++i)
        for (int k = 0; k < 5; ++k) w[i] += r.m[i][k] * v[k];
    // (k1, A, B, C, D) -> 3B^2 + C^2 - 3AD
    return Rational(3) * w[2] * w[2] + w[3] * w[3] - Rational(3) * w[1] * w[4];
}

}  // namespace

SpinReport run_spin_identities(const RationalMatrix5& J, std::uint64_t seed, int random_trials) {
    SpinReport rep;
    rep.seed = seed;
    auto record = [&](std::string name, bool ok, std::string detail = {}) {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
    };
    auto guarded = [&](const std::string& name, auto&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            record(name, false, e.what());
        }
    };

    std::optional<RationalMatrix5> J_inverse;
    try {
        J_inverse = J.inverse();
    } catch (const DomainError&) {
    }
    // Checks that need J^-1 fail (rather than abort the run) when J is singular.
    auto inverse_of_J = [&]() -> const RationalMatrix5& {
        if (!J_inverse) throw DomainError("J is singular");
        return *J_inverse;
    };
    for (int j = 1; j <= 3; ++j) {
        const std::string sj = std::to_string(j);
        guarded("Xidef_" + sj, [&] {
            record("Xidef_" + sj, xi_generator(j) == tabulated_xi()[static_cast<std::size_t>(j - 1)],
                   "M2*M" + std::to_string(j + 2) + " against tabulated xi_" + sj);
        });
        guarded("SpinMats_" + sj, [&] {
            record("SpinMats_" + sj, rho(spin_generator(j)) == xi_tilde(j), "rho(t" + sj + ") == xi~_" + sj);
        });
        guarded("Jcong_" + sj, [&] {
            auto conj = J * RationalMatrix5::from(xi_generator(j)) * inverse_of_J();
            record("Jcong_" + sj, conj == xi_tilde(j), "J xi_" + sj + " J^-1 == xi~_" + sj);
        });
        guarded("xi_from_t_" + sj, [&] {
            auto back = inverse_of_J() * rho(spin_generator(j)) * J;
            record("xi_from_t_" + sj, back == RationalMatrix5::from(xi_generator(j)),
                   "J^-1 rho(t" + sj + ") J == xi_" + sj);
        });
    }

    guarded("ftp", [&] {
        SpinWord up{{2, -1}, {1, -1}, {1, -1}, {1, -1}, {1, -1}};
        SpinWord lo{{3, -1}, {1, -1}};
        bool ok = evaluate(up) == upper_translation(3) && evaluate(lo) == lower_translation(1);
        record("ftp", ok, "t2^-1 t1^-4 == [[1,3],[0,1]] and t3^-1 t1^-1 == [[1,0],[1,1]]");
    });

    guarded("gLinG", [&] {
        // Every word of length <= 6 in t1^+-1, t2^+-1, t3^+-1 lies in Gamma_0(3).
        std::array<SpinElement, 6> letters{};
        for (int j = 1; j <= 3; ++j) {
            letters[static_cast<std::size_t>(2 * j - 2)] = spin_generator(j);
            letters[static_cast<std::size_t>(2 * j - 1)] = spin_generator(j).adjugate();
        }
        std::vector<SpinElement> layer{SpinElement::identity()};
        std::uint64_t checked_words = 0;
        bool ok = true;
        for (int len = 1; len <= 6 && ok; ++len) {
            std::vector<SpinElement> next;
            next.reserve(layer.size() * 6);
            for (const auto& g : layer)
                for (const auto& l : letters) {
                    SpinElement x = g * l;
                    ++checked_words;
                    if (!lambda_membership(x)) ok = false;
                    next.push_back(x);
                }
            layer = std::move(next);
        }
        record("gLinG", ok, std::to_string(checked_words) + " words checked");
    });

    guarded("Gmats", [&] {
        std::vector<SpinElement> mats;
        for (int s : {1, -1}) {
            for (const Eisenstein& u : {Eisenstein{1}, omega_pow(1), omega_pow(-1)}) {
                mats.push_back(upper_translation(Eisenstein{3 * s} * u));
                mats.push_back(lower_translation(Eisenstein{s} * u));
            }
        }
        bool ok = true;
        std::string detail;
        for (const auto& m : mats) {
            SpinWord w = decompose_to_generators(m);
            SpinElement e = evaluate(w);
            if (!lambda_membership(m) || (e != m && e != -m)) {
                ok = false;
                detail = "failed on " + to_string(m);
            }
        }
        record("Gmats", ok, ok ? "12 matrices decomposed" : detail);
    });

    std::mt19937_64 rng(seed);
    guarded("rho_hom", [&] {
        bool ok = true;
        std::string detail;
        for (int t = 0; t < random_trials && ok; ++t) {
            SpinElement g = random_sl2(rng, 6);
            SpinElement k = random_sl2(rng, 6);
            RationalMatrix5 rg = rho(g);
            if (rho(g * k) != rg * rho(k)) {
                ok = false;
                detail = "rho(gh) != rho(g)rho(h) for g = " + to_string(g) + ", h = " + to_string(k);
            } else if (rho(-g) != rg) {
                ok = false;
                detail = "rho(-g) != rho(g) for g = " + to_string(g);
            } else if (6 % rg.denominator() != 0) {
                ok = false;
                detail = "denominator does not divide 6 for g = " + to_string(g);
            }
        }
        record("rho_hom", ok, ok ? std::to_string(random_trials) + " random pairs" : detail);
    });

    guarded("Fis", [&] {
        std::uniform_int_distribution<std::int64_t> small(-50, 50);
        bool ok = true;
        for (int t = 0; t < random_trials && ok; ++t) {
            SpinElement g = random_sl2(rng, 5);
            std::array<Rational, 5> a{small(rng), small(rng), small(rng), small(rng), small(rng)};
            if (form_F(rho(g), a) != form_F(RationalMatrix5::identity(), a)) ok = false;
        }
        record("Fis", ok, "F(A,B,C,D) = 3B^2 + C^2 - 3AD preserved by rho");
    });

    guarded("xi_integral", [&] {
        std::uniform_int_distribution<std::int64_t> small(-12, 12);
        bool ok = true;
        int tested = 0;
        std::string detail;
        while (tested < random_trials && ok) {
            Eisenstein ga{small(rng), small(rng)};
            Eisenstein de{small(rng), small(rng)};
            if (!coprimality_condition(ga, de)) continue;
            ++tested;
            SpinElement g = complete_to_group_element(ga, de);
            auto m = (inverse_of_J() * rho(g) * J).to_integer();
            if (!m || !preserves_soddy_form(*m) || m->m[0] != std::array<std::int64_t, 5>{1, 0, 0, 0, 0} ||
                m->m[4] != xi_bottom_row(ga, de)) {
                ok = false;
                detail = "failed at gamma = " + ga.str() + ", delta = " + de.str();
            }
        }
        record("xi_integral", ok, ok ? std::to_string(tested) + " primitive pairs" : detail);
    });

    return rep;
}

}  // namespace soddy
