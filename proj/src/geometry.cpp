#include "soddy/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "absl/container/flat_hash_set.h"
#include "soddy/checked.hpp"
#include "soddy/error.hpp"

namespace soddy {

// ---------------------------------------------------------------------------
// Q(sqrt3)

namespace {

std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r.sign() < 0) return std::nullopt;
    const auto n = checked::isqrt(r.num());
    const auto d = checked::isqrt(r.den());
    if (n * n != r.num() || d * d != r.den()) return std::nullopt;
    return Rational(checked::narrow(n), checked::narrow(d));
}

}  // namespace

int FieldElem::sign() const {
    const int sx = x_.sign(), sy = y_.sign();
    if (sy == 0) return sx;
    if (sx == 0 || sx == sy) return sy;
    // Opposite signs: the larger of x^2 and 3y^2 wins.
    const Rational lhs = x_ * x_, rhs = Rational(3) * y_ * y_;
    return lhs > rhs ? sx : sy;
}

Rational FieldElem::norm() const { return x_ * x_ - Rational(3) * y_ * y_; }

FieldElem FieldElem::inverse() const {
    if (is_zero()) throw DomainError("division by zero in Q(sqrt3)");
    const Rational n = norm();
    return {x_ / n, -y_ / n};
}

std::optional<FieldElem> FieldElem::sqrt() const {
    if (is_zero()) return FieldElem{};
    if (y_.is_zero()) {
        if (auto r = rational_sqrt(x_)) return FieldElem{*r};
        if (auto r = rational_sqrt(x_ / Rational(3))) return FieldElem{0, *r};
        return std::nullopt;
    }
    // (s + t sqrt3)^2 = s^2 + 3t^2 + 2st sqrt3, so s^2 solves z^2 - x z + 3y^2/4 = 0.
    auto t = rational_sqrt(norm());
    if (!t) return std::nullopt;
    for (const Rational& z : {(x_ + *t) / Rational(2), (x_ - *t) / Rational(2)}) {
        auto s = rational_sqrt(z);
        if (!s || s->is_zero()) continue;
        FieldElem cand{*s, y_ / (Rational(2) * *s)};
        if (cand * cand == *this) return cand.sign() < 0 ? -cand : cand;
    }
    return std::nullopt;
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
    x_ += o.x_;
    y_ += o.y_;
    return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
    x_ -= o.x_;
    y_ -= o.y_;
    return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
    const Rational x = x_ * o.x_ + Rational(3) * y_ * o.y_;
    const Rational y = x_ * o.y_ + y_ * o.x_;
    x_ = x;
    y_ = y;
    return *this;
}

FieldElem& FieldElem::operator/=(const FieldElem& o) { return *this *= o.inverse(); }

Decimal FieldElem::to_decimal() const {
    static const Decimal root3 = boost::multiprecision::sqrt(Decimal(3));
    return Decimal(x_.num()) / x_.den() + Decimal(y_.num()) / y_.den() * root3;
}

std::string FieldElem::str() const {
    if (y_.is_zero()) return x_.str();
    std::string s = x_.is_zero() ? "" : x_.str() + (y_.sign() > 0 ? "+" : "");
    return s + y_.str() + "*sqrt3";
}

// ---------------------------------------------------------------------------
// Rows

FieldElem lorentz_inner(const InversiveSphere& u, const InversiveSphere& v) {
    FieldElem dot;
    for (int i = 0; i < 3; ++i) dot += u.scaled_center[i] * v.scaled_center[i];
    return dot - (u.cobar * v.curv + u.curv * v.cobar) * FieldElem(Rational(1, 2));
}

Decimal lorentz_inner(const ApproxSphere& u, const ApproxSphere& v) {
    Decimal dot = 0;
    for (int i = 0; i < 3; ++i) dot += u.scaled_center[i] * v.scaled_center[i];
    return dot - (u.cobar * v.curv + u.curv * v.cobar) / 2;
}

InversiveSphere make_sphere(const Rational& curvature, const std::array<FieldElem, 3>& center) {
    if (curvature.is_zero()) throw DomainError("make_sphere needs a nonzero curvature");
    InversiveSphere s;
    s.curv = curvature;
    FieldElem zz;
    for (int i = 0; i < 3; ++i) {
        s.scaled_center[i] = center[i] * FieldElem(curvature);
        zz += center[i] * center[i];
    }
    // bbar = b|z|^2 - 1/b, which makes the self product 1.
    s.cobar = FieldElem(curvature) * zz - FieldElem(Rational(1) / curvature);
    return s;
}

namespace {

template <class T>
BasicSphere<T> reflect_row(const BasicConfiguration<T>& w, int j) {
    BasicSphere<T> r{};
    for (int i = 0; i < 5; ++i) {
        if (i == j) continue;
        r.cobar += w.rows[i].cobar;
        r.curv += w.rows[i].curv;
        for (int c = 0; c < 3; ++c) r.scaled_center[c] += w.rows[i].scaled_center[c];
    }
    r.cobar -= w.rows[j].cobar;
    r.curv -= w.rows[j].curv;
    for (int c = 0; c < 3; ++c) r.scaled_center[c] -= w.rows[j].scaled_center[c];
    return r;
}

template <class T>
BasicConfiguration<T> transform_impl(const std::vector<int>& word, BasicConfiguration<T> w) {
    for (int j : word) {
        if (j < 1 || j > 5) throw DomainError("generator index must be in 1..5");
        w.rows[j - 1] = reflect_row(w, j - 1);
    }
    return w;
}

}  // namespace

Configuration transform(const std::vector<int>& word, const Configuration& w) { return transform_impl(word, w); }

ApproxConfiguration transform(const std::vector<int>& word, const ApproxConfiguration& w) {
    return transform_impl(word, w);
}

Quintuple curvature_column(const Configuration& w) {
    Quintuple q{};
    for (int i = 0; i < 5; ++i) {
        const auto& b = w.rows[i].curv;
        if (!b.is_rational() || !b.rational_part().is_integer())
            throw DomainError("curvature " + b.str() + " is not an integer");
        q[i] = b.rational_part().num();
    }
    return q;
}

Quintuple curvature_column(const ApproxConfiguration& w) {
    Quintuple q{};
    for (int i = 0; i < 5; ++i) {
        const Decimal r = boost::multiprecision::round(w.rows[i].curv);
        if (boost::multiprecision::abs(r - w.rows[i].curv) > approximate_tolerance())
            throw DomainError("approximate curvature is not near an integer");
        q[i] = r.convert_to<std::int64_t>();
    }
    return q;
}

bool has_tangency_gram(const Configuration& w) {
    for (int i = 0; i < 5; ++i)
        for (int j = i; j < 5; ++j)
            if (lorentz_inner(w.rows[i], w.rows[j]) != FieldElem(i == j ? 1 : -1)) return false;
    return true;
}

bool has_tangency_gram(const ApproxConfiguration& w, const Decimal& tolerance) {
    for (int i = 0; i < 5; ++i)
        for (int j = i; j < 5; ++j)
            if (boost::multiprecision::abs(lorentz_inner(w.rows[i], w.rows[j]) - (i == j ? 1 : -1)) > tolerance)
                return false;
    return true;
}

const Decimal& approximate_tolerance() {
    static const Decimal tol("1e-30");
    return tol;
}

// ---------------------------------------------------------------------------
// Realization

namespace {

struct ExactOps {
    using T = FieldElem;
    static T from(const Rational& r) { return T(r); }
    static std::optional<T> root(const T& x) { return x.sqrt(); }
    static bool zero(const T& x) { return x.is_zero(); }
    static bool positive(const T& x) { return x.sign() > 0; }

    // (u, v) with u^2 + v^2 = p2: a plain square root, else (a, d sqrt3) with rational a, d.
    static std::vector<std::pair<T, T>> frames(const T& p2) {
        std::vector<std::pair<T, T>> out;
        if (auto r = p2.sqrt()) out.emplace_back(*r, T{});
        if (!p2.is_rational()) return out;
        const Rational& pr = p2.rational_part();
        // X^2 + 3Y^2 = P Q k^2 with a = X/(Qk), d = Y/(Qk).
        const __int128 P = pr.num(), Q = pr.den();
        std::uint64_t work = 0;
        for (__int128 k = 1; k <= 64 && work < 2'000'000; ++k) {
            const __int128 target = P * Q * k * k;
            for (__int128 Y = 1; 3 * Y * Y <= target; ++Y, ++work) {
                const __int128 rest = target - 3 * Y * Y;
                const __int128 X = checked::isqrt(rest);
                if (X * X != rest) continue;
                const auto den = checked::narrow(Q * k);
                out.emplace_back(T(Rational(checked::narrow(X), den)),
                                 T(0, Rational(checked::narrow(Y), den)));
                return out;
            }
        }
        return out;
    }
};

struct ApproxOps {
    using T = Decimal;
    static T from(const Rational& r) { return Decimal(r.num()) / r.den(); }
    static std::optional<T> root(const T& x) {
        if (x < -approximate_tolerance()) return std::nullopt;
        return x <= 0 ? T(0) : boost::multiprecision::sqrt(x);
    }
    static bool zero(const T& x) { return boost::multiprecision::abs(x) <= approximate_tolerance(); }
    static bool positive(const T& x) { return x > approximate_tolerance(); }
    static std::vector<std::pair<T, T>> frames(const T& p2) {
        auto r = root(p2);
        if (!r) return {};
        return {{*r, T(0)}};
    }
};

// Solve the 3x3 system A x = rhs by elimination; nullopt when singular.
template <class Ops, class T = typename Ops::T>
std::optional<std::array<T, 3>> solve3(std::array<std::array<T, 3>, 3> A, std::array<T, 3> rhs) {
    for (int c = 0; c < 3; ++c) {
        int p = -1;
        for (int r = c; r < 3; ++r)
            if (!Ops::zero(A[r][c])) {
                if constexpr (std::is_same_v<T, Decimal>) {
                    if (p < 0 || boost::multiprecision::abs(A[r][c]) > boost::multiprecision::abs(A[p][c])) p = r;
                } else if (p < 0) {
                    p = r;
                }
            }
        if (p < 0) return std::nullopt;
        std::swap(A[p], A[c]);
        std::swap(rhs[p], rhs[c]);
        for (int r = 0; r < 3; ++r) {
            if (r == c || Ops::zero(A[r][c])) continue;
            const T f = A[r][c] / A[c][c];
            for (int k = c; k < 3; ++k) A[r][k] -= f * A[c][k];
            rhs[r] -= f * rhs[c];
        }
    }
    return std::array<T, 3>{rhs[0] / A[0][0], rhs[1] / A[1][1], rhs[2] / A[2][2]};
}

struct RationalSetup {
    std::array<Rational, 5> cobar;
    std::array<std::array<Rational, 5>, 5> gram;  ///< dot products of scaled centers
};

RationalSetup rational_setup(const Quintuple& b, int m) {
    RationalSetup s;
    s.cobar[m] = Rational(-1) / Rational(b[m]);
    for (int i = 0; i < 5; ++i)
        if (i != m) s.cobar[i] = (Rational(2) - s.cobar[m] * Rational(b[i])) / Rational(b[m]);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            const Rational cross = (s.cobar[i] * Rational(b[j]) + Rational(b[i]) * s.cobar[j]) / Rational(2);
            s.gram[i][j] = (i == j ? Rational(1) : Rational(-1)) + cross;
        }
    return s;
}

template <class Ops, class T = typename Ops::T>
std::optional<BasicConfiguration<T>> solve_gauge(const Quintuple& b, const RationalSetup& s, int m, int a,
                                                 int p) {
    auto G = [&](int i, int j) { return Ops::from(s.gram[i][j]); };
    std::array<int, 2> rest{};
    for (int i = 0, k = 0; i < 5; ++i)
        if (i != m && i != a && i != p) rest[k++] = i;
    const int r = rest[0], t = rest[1];

    std::array<std::array<T, 3>, 5> x{};
    auto len = Ops::root(G(a, a));
    if (!len || !Ops::positive(*len)) return std::nullopt;
    x[a] = {T(0), T(0), *len};

    const T q = G(a, p) / *len;
    const T p2 = G(p, p) - q * q;
    if (!Ops::positive(p2)) return std::nullopt;

    for (const auto& [u, v] : Ops::frames(p2)) {
        x[p] = {u, v, q};
        // Third center: component along x_p's shadow plus a perpendicular part.
        const T lam = G(a, r) / *len;
        const T alpha = (G(p, r) - lam * q) / p2;
        const T mu2 = (G(r, r) - lam * lam - alpha * alpha * p2) / p2;
        auto mu = Ops::root(mu2);
        if (!mu) continue;
        x[r] = {alpha * u - *mu * v, alpha * v + *mu * u, lam};

        std::array<std::array<T, 3>, 3> A{x[a], x[p], x[r]};
        auto sol = solve3<Ops>(A, {G(a, t), G(p, t), G(r, t)});
        if (!sol) continue;
        x[t] = *sol;

        BasicConfiguration<T> w;
        for (int i = 0; i < 5; ++i) {
            w.rows[i].cobar = Ops::from(s.cobar[i]);
            w.rows[i].curv = Ops::from(Rational(b[i]));
            w.rows[i].scaled_center = x[i];
        }
        return w;
    }
    return std::nullopt;
}

int bounding_slot(const Quintuple& root) {
    const auto it = std::min_element(root.begin(), root.end());
    if (*it >= 0)
        throw DomainError("realization needs a bounding sphere of negative curvature; " + to_string(root) +
                          " is bounded by planes");
    return static_cast<int>(it - root.begin());
}

Configuration realize_root_exact(const Quintuple& root, int& axis, int& plane) {
    const int m = bounding_slot(root);
    const auto setup = rational_setup(root, m);
    for (int a = 0; a < 5; ++a)
        for (int p = 0; p < 5; ++p) {
            if (a == m || p == m || a == p) continue;
            try {
                if (auto w = solve_gauge<ExactOps>(root, setup, m, a, p); w && has_tangency_gram(*w)) {
                    axis = a;
                    plane = p;
                    return *w;
                }
            } catch (const OverflowError&) {
                // This gauge needs numbers beyond 64-bit rationals; try the next one.
            }
        }
    throw NoExactRealization("no exact realization of " + to_string(root) + " over Q(sqrt3)");
}

ApproxConfiguration realize_root_approx(const Quintuple& root, int& axis, int& plane) {
    const int m = bounding_slot(root);
    const auto setup = rational_setup(root, m);
    for (int a = 0; a < 5; ++a)
        for (int p = 0; p < 5; ++p) {
            if (a == m || p == m || a == p) continue;
            auto w = solve_gauge<ApproxOps>(root, setup, m, a, p);
            if (w && has_tangency_gram(*w, approximate_tolerance())) {
                axis = a;
                plane = p;
                return *w;
            }
        }
    throw DomainError("tangency system for " + to_string(root) + " has no real solution");
}

}  // namespace

Configuration realize_exact(const Quintuple& v) {
    if (!on_cone(v)) throw MalformedQuintuple("quintuple is not on the Soddy cone: " + to_string(v));
    const auto red = reduce_to_root(v);
    int axis = 0, plane = 0;
    return transform(red.word, realize_root_exact(red.root, axis, plane));
}

Realization realize(const Quintuple& v, const RealizeOptions& opts) {
    if (!on_cone(v)) throw MalformedQuintuple("quintuple is not on the Soddy cone: " + to_string(v));
    const auto red = reduce_to_root(v);
    Realization out;
    out.bounding = bounding_slot(red.root);
    if (!opts.force_approximate) {
        try {
            out.exact = transform(red.word, realize_root_exact(red.root, out.axis, out.plane));
            return out;
        } catch (const NoExactRealization&) {
        }
    }
    out.approximate = true;
    out.approx = transform(red.word, realize_root_approx(red.root, out.axis, out.plane));
    return out;
}

// ---------------------------------------------------------------------------
// Census

std::map<std::int64_t, std::uint64_t> SphereCensus::curvature_counts() const {
    std::map<std::int64_t, std::uint64_t> out;
    if (approximate) {
        for (const auto& s : approx_spheres)
            ++out[boost::multiprecision::round(s.curv).convert_to<std::int64_t>()];
    } else {
        for (const auto& s : spheres) ++out[s.curv.rational_part().num()];
    }
    return out;
}

namespace {

// A sphere row over a common denominator: (cobar, curv, bz1, bz2, bz3), each as (rational, sqrt3) numerators.
using IntRow = std::array<std::int64_t, 10>;

struct IntRowHash {
    std::size_t operator()(const IntRow& r) const noexcept {
        std::uint64_t h = 0x84222325cbf29ce4ull;
        for (auto k : r) h = (h ^ static_cast<std::uint64_t>(k)) * 0x100000001b3ull + (h >> 29);
        return static_cast<std::size_t>(h);
    }
};

struct IntConfig {
    std::int64_t den = 1;
    std::array<IntRow, 5> rows{};
};

IntConfig to_int(const Configuration& w) {
    IntConfig c;
    auto parts = [](const InversiveSphere& s) {
        return std::array<const FieldElem*, 5>{&s.cobar, &s.curv, &s.scaled_center[0], &s.scaled_center[1],
                                               &s.scaled_center[2]};
    };
    for (const auto& s : w.rows)
        for (const FieldElem* f : parts(s)) {
            c.den = std::lcm(c.den, f->rational_part().den());
            c.den = std::lcm(c.den, f->sqrt3_part().den());
        }
    for (int i = 0; i < 5; ++i) {
        const auto ps = parts(w.rows[i]);
        for (int k = 0; k < 5; ++k) {
            const Rational& x = ps[k]->rational_part();
            const Rational& y = ps[k]->sqrt3_part();
            c.rows[i][2 * k] = checked::mul(x.num(), c.den / x.den());
            c.rows[i][2 * k + 1] = checked::mul(y.num(), c.den / y.den());
        }
    }
    return c;
}

InversiveSphere from_int(const IntRow& r, std::int64_t den) {
    auto f = [&](int k) { return FieldElem(Rational(r[2 * k], den), Rational(r[2 * k + 1], den)); };
    return {f(0), f(1), {f(2), f(3), f(4)}};
}

IntRow reflect(const std::array<IntRow, 5>& rows, int j) {
    IntRow out{};
    for (int k = 0; k < 10; ++k) {
        std::int64_t s = -rows[j][k];
        for (int i = 0; i < 5; ++i)
            if (i != j) s = checked::add(s, rows[i][k]);
        out[k] = s;
    }
    return out;
}

// Canonical children, as in the orbit walk: slot j grows, and no earlier slot is a descent afterwards.
template <class Sink>
void for_each_canonical_child(const Quintuple& v, std::int64_t bound, Sink&& sink) {
    const std::int64_t s = v[0] + v[1] + v[2] + v[3] + v[4];
    for (int j = 0; j < 5; ++j) {
        if (3 * v[j] >= s) continue;
        const std::int64_t nv = s - 2 * v[j];
        if (nv > bound) continue;
        const std::int64_t sw = 2 * s - 3 * v[j];
        bool canonical = true;
        for (int i = 0; i < j; ++i)
            if (3 * v[i] > sw) canonical = false;
        if (canonical) sink(j, nv);
    }
}

bool sphere_less(const InversiveSphere& a, const InversiveSphere& b) {
    if (a.curv != b.curv) return a.curv < b.curv;
    for (int i = 0; i < 3; ++i)
        if (a.scaled_center[i] != b.scaled_center[i]) return a.scaled_center[i] < b.scaled_center[i];
    return a.cobar < b.cobar;
}

std::string approx_key(const ApproxSphere& s) {
    std::string key;
    for (const Decimal* x : {&s.cobar, &s.curv, &s.scaled_center[0], &s.scaled_center[1], &s.scaled_center[2]}) {
        const Decimal q = boost::multiprecision::round(*x / approximate_tolerance());
        key += (q == 0 ? Decimal(0) : q).str(0, std::ios_base::fixed);
        key += ',';
    }
    return key;
}

SphereCensus exact_census(const Quintuple& root, std::int64_t bound, const Configuration& w) {
    SphereCensus out;
    out.bound = bound;
    const IntConfig start = to_int(w);
    absl::flat_hash_set<IntRow, IntRowHash> seen;
    for (int i = 0; i < 5; ++i)
        if (root[i] <= bound) seen.insert(start.rows[i]);

    const std::int64_t root_max = *std::max_element(root.begin(), root.end());
    if (bound >= root_max) {
        struct Node {
            Quintuple v;
            std::array<IntRow, 5> rows;
        };
        std::vector<Node> stack{{root, start.rows}};
        out.configurations = 1;
        while (!stack.empty()) {
            Node n = std::move(stack.back());
            stack.pop_back();
            for_each_canonical_child(n.v, bound, [&](int j, std::int64_t nv) {
                Node c = n;
                c.v[j] = nv;
                c.rows[j] = reflect(n.rows, j);
                seen.insert(c.rows[j]);
                ++out.configurations;
                stack.push_back(std::move(c));
            });
        }
    }

    out.spheres.reserve(seen.size());
    for (const auto& r : seen) out.spheres.push_back(from_int(r, start.den));
    std::sort(out.spheres.begin(), out.spheres.end(), sphere_less);
    return out;
}

SphereCensus approx_census(const Quintuple& root, std::int64_t bound, const ApproxConfiguration& w) {
    SphereCensus out;
    out.bound = bound;
    out.approximate = true;
    std::map<std::string, ApproxSphere> seen;
    for (int i = 0; i < 5; ++i)
        if (root[i] <= bound) seen.emplace(approx_key(w.rows[i]), w.rows[i]);

    const std::int64_t root_max = *std::max_element(root.begin(), root.end());
    if (bound >= root_max) {
        std::vector<std::pair<Quintuple, ApproxConfiguration>> stack{{root, w}};
        out.configurations = 1;
        while (!stack.empty()) {
            auto [v, cfg] = std::move(stack.back());
            stack.pop_back();
            for_each_canonical_child(v, bound, [&](int j, std::int64_t nv) {
                auto c = std::pair{v, cfg};
                c.first[j] = nv;
                c.second.rows[j] = reflect_row(cfg, j);
                seen.emplace(approx_key(c.second.rows[j]), c.second.rows[j]);
                ++out.configurations;
                stack.push_back(std::move(c));
            });
        }
    }
    for (auto& [k, s] : seen) out.approx_spheres.push_back(s);
    std::stable_sort(out.approx_spheres.begin(), out.approx_spheres.end(),
                     [](const ApproxSphere& a, const ApproxSphere& b) { return a.curv < b.curv; });
    return out;
}

}  // namespace

SphereCensus sphere_census(const Quintuple& root, std::int64_t bound, const RealizeOptions& opts) {
    const auto r = reduce_to_root(root).root;
    const auto real = realize(r, opts);
    return real.approximate ? approx_census(r, bound, *real.approx) : exact_census(r, bound, *real.exact);
}

std::uint64_t distinct_configurations(const Quintuple& root, std::int64_t bound) {
    const auto r = reduce_to_root(root).root;
    const IntConfig start = to_int(realize_exact(r));
    if (*std::max_element(r.begin(), r.end()) > bound) return 0;

    struct Hash {
        std::size_t operator()(const std::array<IntRow, 5>& c) const noexcept {
            std::size_t h = 0;
            for (const auto& row : c) h = h * 0x9e3779b97f4a7c15ull + IntRowHash{}(row);
            return h;
        }
    };
    absl::flat_hash_set<std::array<IntRow, 5>, Hash> seen{start.rows};
    std::vector<std::array<IntRow, 5>> frontier{start.rows};
    // The curvature numerator sits at index 2 of each row.
    const std::int64_t limit = checked::mul(bound, start.den);
    while (!frontier.empty()) {
        std::vector<std::array<IntRow, 5>> next;
        for (const auto& c : frontier)
            for (int j = 0; j < 5; ++j) {
                auto d = c;
                d[j] = reflect(c, j);
                if (d[j][2] > limit) continue;
                if (seen.insert(d).second) next.push_back(d);
            }
        frontier = std::move(next);
    }
    return seen.size();
}

// ---------------------------------------------------------------------------
// Export

namespace {

std::string decimal_string(const Decimal& x, int digits) {
    if (boost::multiprecision::abs(x) < Decimal(1) / boost::multiprecision::pow(Decimal(10), digits + 1))
        return Decimal(0).str(digits, std::ios_base::fixed);
    return x.str(digits, std::ios_base::fixed);
}

nlohmann::json scene_record(const Decimal& curv, const std::array<Decimal, 3>& bz, int digits, bool exact) {
    if (curv == 0) throw DomainError("planes cannot be exported as spheres");
    nlohmann::json rec;
    rec["center"] = nlohmann::json::array();
    for (const auto& c : bz) rec["center"].push_back(decimal_string(c / curv, digits));
    rec["radius"] = decimal_string(1 / boost::multiprecision::abs(curv), digits);
    rec["curvature"] = decimal_string(curv, digits);
    rec["precision"] = digits;
    rec["exact"] = exact;
    return rec;
}

}  // namespace

std::string export_scene(const std::vector<InversiveSphere>& spheres, int digits) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& s : spheres)
        out.push_back(scene_record(s.curv.to_decimal(),
                                   {s.scaled_center[0].to_decimal(), s.scaled_center[1].to_decimal(),
                                    s.scaled_center[2].to_decimal()},
                                   digits, true));
    return out.dump(2);
}

std::string export_scene(const std::vector<ApproxSphere>& spheres, int digits) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& s : spheres) out.push_back(scene_record(s.curv, s.scaled_center, digits, false));
    return out.dump(2);
}

std::string export_scene(const SphereCensus& census, int digits) {
    return census.approximate ? export_scene(census.approx_spheres, digits) : export_scene(census.spheres, digits);
}

}  // namespace soddy
