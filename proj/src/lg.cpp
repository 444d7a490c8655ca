#include "soddy/lg.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "absl/container/flat_hash_set.h"
#include "soddy/checked.hpp"
#include "soddy/error.hpp"
#include "soddy/spin.hpp"

namespace soddy {

bool is_admissible(const PackingProfile& profile, std::int64_t n) {
    if (n < 1) throw DomainError("admissibility is defined for n >= 1, got " + std::to_string(n));
    const auto r = checked::mod(n, 3);
    return r == 0 || r == profile.epsilon;
}

// ---------------------------------------------------------------------------
// Exceptions and the frontier

std::optional<std::int64_t> ExceptionsReport::largest() const {
    if (exceptions.empty()) return std::nullopt;
    return exceptions.back();
}

ExceptionsReport exceptions(const WalkSummary& walk) {
    ExceptionsReport rep;
    rep.bound = walk.bound;
    if (walk.bound < 1) return rep;
    const auto profile = PackingProfile::from_quintuple(walk.root);
    for (std::int64_t n = 1; n <= walk.bound; ++n)
        if (is_admissible(profile, n) && !walk.present(n)) rep.exceptions.push_back(n);
    return rep;
}

ExceptionsReport exceptions(const Quintuple& root, std::int64_t bound, unsigned workers) {
    if (bound < 1) {
        PackingProfile::from_quintuple(root);
        return ExceptionsReport{bound, {}};
    }
    return exceptions(walk_orbit(root, bound, workers));
}

bool FrontierReport::stable() const {
    return !vacuous && upper_half_exceptions.empty() && largest_exception == largest_exception_at_half;
}

FrontierReport stability_scan(const WalkSummary& half, const WalkSummary& full) {
    if (half.root != full.root) throw DomainError("frontier walks belong to different packings");
    if (half.bound != full.bound / 2) throw DomainError("first walk must run to half the bound of the second");
    FrontierReport rep;
    rep.bound = full.bound;
    std::int64_t smallest_positive = 0;
    for (auto k : full.root)
        if (k > 0 && (smallest_positive == 0 || k < smallest_positive)) smallest_positive = k;
    rep.vacuous = full.bound < smallest_positive;

    const auto ex = exceptions(full);
    rep.largest_exception = ex.largest();
    for (auto n : ex.exceptions)
        if (n > full.bound / 2) rep.upper_half_exceptions.push_back(n);
    rep.largest_exception_at_half = exceptions(half).largest();
    return rep;
}

FrontierReport stability_scan(const Quintuple& root, std::int64_t bound, unsigned workers) {
    if (bound < 1) {
        FrontierReport rep;
        rep.bound = bound;
        rep.vacuous = true;
        PackingProfile::from_quintuple(root);
        return rep;
    }
    return stability_scan(walk_orbit(root, bound / 2, workers), walk_orbit(root, bound, workers));
}

// ---------------------------------------------------------------------------
// Representation search

std::vector<Quintuple> breadth_first_bases(const Quintuple& root, int count) {
    std::vector<Quintuple> out;
    if (count <= 0) return out;
    absl::flat_hash_set<Quintuple, QuintupleHash> seen{root};
    std::deque<Quintuple> queue{root};
    while (!queue.empty() && static_cast<int>(out.size()) < count) {
        Quintuple v = queue.front();
        queue.pop_front();
        out.push_back(v);
        for (int j = 1; j <= 5; ++j) {
            Quintuple w = apply_generator(j, v);
            if (seen.insert(w).second) queue.push_back(w);
        }
    }
    return out;
}

namespace {

struct Delta {
    Eisenstein d;
    std::int64_t norm;
};

bool upper_half(const Eisenstein& x) { return x.b > 0 || (x.b == 0 && x.a > 0); }

// Argument order starting at angle 0; x = a + b w sits at (a + b/2, b*sqrt3/2).
bool arg_less(const Eisenstein& x, const Eisenstein& y) {
    const bool ux = upper_half(x), uy = upper_half(y);
    if (ux != uy) return ux;
    const __int128 cross = static_cast<__int128>(2 * x.a + x.b) * y.b - static_cast<__int128>(2 * y.a + y.b) * x.b;
    return cross > 0;
}

// Permutations (pivot, pair, pair, fourth, last) satisfying the pivot, residue and parity rules.
std::vector<std::array<int, 5>> admissible_permutations(const Quintuple& v, std::int64_t n) {
    std::vector<std::array<int, 5>> out;
    const auto nr = checked::mod(n, 3);
    for (int p = 0; p < 5; ++p) {
        if (std::gcd(v[p], n) != 1) continue;
        std::vector<int> lasts;
        for (int l = 0; l < 5; ++l)
            if (l != p && checked::mod(v[l], 3) == nr) lasts.push_back(l);
        // A base entry equal to n is tried first; it yields the trivial witness (0, 1).
        std::stable_partition(lasts.begin(), lasts.end(), [&](int l) { return v[l] == n; });
        for (int l : lasts) {
            std::vector<int> rest;
            for (int i = 0; i < 5; ++i)
                if (i != p && i != l) rest.push_back(i);
            for (int a = 0; a < 3; ++a)
                for (int b = a + 1; b < 3; ++b) {
                    if (checked::mod(v[rest[a]], 2) != checked::mod(v[rest[b]], 2)) continue;
                    const int fourth = rest[3 - a - b];
                    out.push_back({p, rest[a], rest[b], fourth, l});
                }
        }
    }
    return out;
}

// Diagonal of the inverse of the Gram matrix, for coordinate bounds |x_i| <= sqrt(2 n (S^-1)_ii).
std::array<long double, 4> inverse_diagonal(const std::array<std::array<std::int64_t, 4>, 4>& S) {
    std::array<std::array<long double, 8>, 4> a{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) a[i][j] = static_cast<long double>(S[i][j]);
        a[i][4 + i] = 1;
    }
    for (int c = 0; c < 4; ++c) {
        int p = c;
        for (int r = c + 1; r < 4; ++r)
            if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
        std::swap(a[p], a[c]);
        const long double piv = a[c][c];
        for (auto& x : a[c]) x /= piv;
        for (int r = 0; r < 4; ++r) {
            if (r == c) continue;
            const long double f = a[r][c];
            for (int j = 0; j < 8; ++j) a[r][j] -= f * a[c][j];
        }
    }
    return {a[0][4], a[1][5], a[2][6], a[3][7]};
}

std::int64_t coordinate_bound(std::int64_t n1, long double inv_diag) {
    return static_cast<std::int64_t>(std::floor(std::sqrt(2.0L * n1 * std::max(inv_diag, 0.0L)))) + 1;
}

struct SearchState {
    std::uint64_t effort_used = 0;
    std::uint64_t effort_limit = 0;
    bool exhausted = false;
};

// First primitive (gamma, delta) in search order with f(gamma, delta) = n1.
std::optional<std::pair<Eisenstein, Eisenstein>> search_form(const QuaternaryForm& f, std::int64_t n1,
                                                             SearchState& st) {
    if (n1 <= 0) return std::nullopt;
    const auto S = f.gram();
    const auto inv = inverse_diagonal(S);
    const std::int64_t r1 = coordinate_bound(n1, inv[2]);
    const std::int64_t r2 = coordinate_bound(n1, inv[3]);

    std::vector<Delta> deltas;
    for (std::int64_t d1 = -r1; d1 <= r1; ++d1)
        for (std::int64_t d2 = -r2; d2 <= r2; ++d2) {
            Eisenstein d{d1, d2};
            const auto nd = d.norm();
            if (nd == 0 || nd % 3 == 0) continue;
            deltas.push_back({d, nd});
        }
    std::sort(deltas.begin(), deltas.end(), [](const Delta& x, const Delta& y) {
        if (x.norm != y.norm) return x.norm < y.norm;
        return arg_less(x.d, y.d);
    });

    const __int128 G = f[Monomial::g1g1];
    const __int128 D = f[Monomial::d1d1];
    for (const auto& [d, nd] : deltas) {
        // f = G |gamma|^2 + c1 g1 + c2 g2 + D |delta|^2 for fixed delta.
        const __int128 c1 = static_cast<__int128>(f[Monomial::g1d1]) * d.a + static_cast<__int128>(f[Monomial::g1d2]) * d.b;
        const __int128 c2 = static_cast<__int128>(f[Monomial::g2d1]) * d.a + static_cast<__int128>(f[Monomial::g2d2]) * d.b;
        const __int128 e = D * nd - n1;
        // Discriminant in g2 as a function of g1: -3G^2 g1^2 + (2G c2 - 4G c1) g1 + c2^2 - 4G e.
        const __int128 qa = -3 * G * G;
        const __int128 qb = 2 * G * c2 - 4 * G * c1;
        const __int128 qc = c2 * c2 - 4 * G * e;
        const long double disc = static_cast<long double>(qb) * qb - 4.0L * qa * qc;
        ++st.effort_used;
        if (disc < 0) {
            if (st.effort_used >= st.effort_limit) {
                st.exhausted = true;
                return std::nullopt;
            }
            continue;
        }
        const long double sq = std::sqrt(disc);
        const long double lo = (-static_cast<long double>(qb) + sq) / (2.0L * qa);
        const long double hi = (-static_cast<long double>(qb) - sq) / (2.0L * qa);
        const auto g1_lo = static_cast<std::int64_t>(std::floor(std::min(lo, hi))) - 1;
        const auto g1_hi = static_cast<std::int64_t>(std::ceil(std::max(lo, hi))) + 1;
        for (std::int64_t g1 = g1_lo; g1 <= g1_hi; ++g1) {
            if (g1 != g1_lo) ++st.effort_used;
            if (st.effort_used > st.effort_limit) {
                st.exhausted = true;
                return std::nullopt;
            }
            const __int128 dg = qa * g1 * g1 + qb * g1 + qc;
            if (dg < 0) continue;
            const __int128 root = checked::isqrt(dg);
            if (root * root != dg) continue;
            // G g2^2 + (G g1 + c2) g2 + (G g1^2 + c1 g1 + e) = 0
            const __int128 b = G * g1 + c2;
            for (const __int128 num : {-b - root, -b + root}) {
                if (num % (2 * G) != 0) continue;
                const auto g2 = checked::narrow(num / (2 * G));
                Eisenstein gamma{g1, g2};
                if (f.eval(gamma, d) != n1) continue;
                if (!coprimality_condition(gamma, d)) continue;
                return std::pair{gamma, d};
            }
        }
    }
    return std::nullopt;
}

}  // namespace

RepresentResult represent(const Quintuple& root, std::int64_t n, const RepresentOptions& opts) {
    const auto profile = PackingProfile::from_quintuple(root);
    if (!is_admissible(profile, n))
        throw NotAdmissible(std::to_string(n) + " is not admissible: it must be 0 or " +
                            std::to_string(profile.epsilon) + " mod 3");

    RepresentResult res;
    SearchState st;
    st.effort_limit = opts.effort;
    bool any_pivot = false;
    for (const auto& base : breadth_first_bases(profile.root, 1 + std::max(0, opts.extra_bases))) {
        const auto perms = admissible_permutations(base, n);
        ++res.bases_tried;
        for (auto k : base)
            if (std::gcd(k, n) == 1) any_pivot = true;
        for (const auto& perm : perms) {
            ++res.permutations_tried;
            Quintuple permuted{};
            for (int i = 0; i < 5; ++i) permuted[i] = base[perm[i]];
            const auto f = form_f(permuted);
            const auto n1 = checked::add(n, permuted[0]);
            auto hit = search_form(f, n1, st);
            res.effort_used = st.effort_used;
            if (st.exhausted) {
                res.budget_exhausted = true;
                return res;
            }
            if (!hit) continue;

            Witness w;
            w.n = n;
            w.root = profile.root;
            w.base = base;
            w.perm = perm;
            w.permuted = permuted;
            w.gamma = hit->first;
            w.delta = hit->second;
            w.value = form_F_eval(f, w.gamma, w.delta);
            w.certificate = xi(w.gamma, w.delta) * permuted;
            res.witness = w;
            return res;
        }
    }
    if (!any_pivot)
        throw NoCoprimePivot("no entry coprime to " + std::to_string(n) + " among " +
                             std::to_string(res.bases_tried) + " orbit quintuples");
    return res;
}

// ---------------------------------------------------------------------------
// Verification

std::string to_string(WitnessFault f) {
    switch (f) {
        case WitnessFault::none: return "ok";
        case WitnessFault::malformed_root: return "malformed-root";
        case WitnessFault::not_in_orbit: return "not-in-orbit";
        case WitnessFault::bad_permutation: return "bad-permutation";
        case WitnessFault::pivot_not_coprime: return "pivot-not-coprime";
        case WitnessFault::parity: return "parity";
        case WitnessFault::gcd: return "gcd";
        case WitnessFault::not_integral: return "not-integral";
        case WitnessFault::not_form_preserving: return "not-form-preserving";
        case WitnessFault::decomposition_mismatch: return "decomposition-mismatch";
        case WitnessFault::off_cone: return "off-cone";
        case WitnessFault::certificate_mismatch: return "certificate-mismatch";
        case WitnessFault::value_mismatch: return "value-mismatch";
        case WitnessFault::arithmetic_overflow: return "arithmetic-overflow";
    }
    return "unknown";
}

namespace {

SoddyMatrix xi_of_word(const SpinWord& w) {
    SoddyMatrix m = SoddyMatrix::identity();
    for (const auto& l : w) {
        // xi_j^-1 = M_{j+2} M_2 since every M_j is an involution.
        const SoddyMatrix x = l.exp > 0 ? xi_generator(l.gen) : generator(l.gen + 2) * generator(2);
        m = m * x;
    }
    return m;
}

}  // namespace

WitnessCheck verify_witness(const Witness& w) {
    auto fail = [](WitnessFault f, std::string detail) { return WitnessCheck{f, std::move(detail)}; };
    try {
        if (!on_cone(w.root) || !is_primitive(w.root) || !is_root(w.root))
            return fail(WitnessFault::malformed_root, "root " + to_string(w.root) + " is not a primitive root quintuple");
        if (!on_cone(w.base) || reduce_to_root(w.base).root != w.root)
            return fail(WitnessFault::not_in_orbit, "base " + to_string(w.base) + " does not reduce to the root");

        std::array<int, 5> sorted = w.perm;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != std::array<int, 5>{0, 1, 2, 3, 4})
            return fail(WitnessFault::bad_permutation, "perm is not a permutation of 0..4");
        for (int i = 0; i < 5; ++i)
            if (w.permuted[i] != w.base[w.perm[i]])
                return fail(WitnessFault::bad_permutation, "permuted quintuple does not match base and perm");

        if (std::gcd(w.pivot(), w.n) != 1)
            return fail(WitnessFault::pivot_not_coprime,
                        "gcd(" + std::to_string(w.n) + ", " + std::to_string(w.pivot()) + ") != 1");
        if (checked::mod(w.permuted[1], 2) != checked::mod(w.permuted[2], 2))
            return fail(WitnessFault::parity, "second and third entries differ in parity");
        if (!coprimality_condition(w.gamma, w.delta))
            return fail(WitnessFault::gcd, "gcd(3*gamma, delta) is not a unit for gamma = " + w.gamma.str() +
                                               ", delta = " + w.delta.str());

        const SpinElement g = complete_to_group_element(w.gamma, w.delta);
        const auto m = conjugate_by_J(rho(g), Conjugation::backward).to_integer();
        if (!m) return fail(WitnessFault::not_integral, "J^-1 rho(g) J is not integral");
        if (!preserves_soddy_form(*m)) return fail(WitnessFault::not_form_preserving, "xi does not preserve Q");
        if (m->m[4] != xi_bottom_row(w.gamma, w.delta))
            return fail(WitnessFault::not_integral, "xi bottom row disagrees with its closed form");
        if (xi_of_word(decompose_to_generators(g)) != *m)
            return fail(WitnessFault::decomposition_mismatch, "xi is not the product of its generator word");

        const Quintuple cert = *m * w.permuted;
        if (!on_cone(cert)) return fail(WitnessFault::off_cone, "certificate " + to_string(cert) + " is off the cone");
        if (cert != w.certificate)
            return fail(WitnessFault::certificate_mismatch,
                        "recomputed certificate " + to_string(cert) + " differs from " + to_string(w.certificate));

        const auto F = form_F_eval(form_f(w.permuted), w.gamma, w.delta);
        if (F != w.n || w.value != w.n || cert[4] != w.n)
            return fail(WitnessFault::value_mismatch, "form value " + std::to_string(F) + ", stored value " +
                                                          std::to_string(w.value) + ", certificate entry " +
                                                          std::to_string(cert[4]) + ", target " + std::to_string(w.n));
    } catch (const Error& e) {
        return fail(WitnessFault::arithmetic_overflow, e.what());
    }
    return {};
}

}  // namespace soddy
