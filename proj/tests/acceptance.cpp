// End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "soddy/core.hpp"
#include "soddy/geometry.hpp"
#include "soddy/lg.hpp"
#include "soddy/localmod.hpp"
#include "soddy/orbit.hpp"
#include "soddy/spin.hpp"

using namespace soddy;

namespace {

const Quintuple kRoot{-11, 21, 25, 27, 28};

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body, double time_limit = 0) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_limit > 0 && secs > time_limit) {
        o.pass = false;
        o.detail += "; over the " + std::to_string(time_limit) + " s limit";
    }
    if (!o.pass) ++failures;
    std::printf("criterion %2d [%s] %s: %s (%.2f s)\n", id, o.pass ? "PASS" : "FAIL", title, o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string join(const std::vector<std::int64_t>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

}  // namespace

int main() {
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());

    criterion(1, "curvature list to 85", [] {
        const std::vector<std::int64_t> expected{-11, 21, 25, 27, 28, 34, 36, 40, 42, 43, 46, 48, 49, 51, 54, 57,
                                                 61,  63, 64, 67, 69, 70, 72, 73, 75, 78, 79, 81, 82, 84, 85};
        const auto r = enumerate(kRoot, 85);
        return Outcome{r.distinct_curvatures == expected,
                       std::to_string(r.distinct_curvatures.size()) + " distinct curvatures"};
    }, 1.0);

    criterion(2, "group relations", [] {
        const auto f = verify_group_relations();
        return Outcome{f.empty(), f.empty() ? "5 involutions and 20 braid relations hold"
                                            : std::to_string(f.size()) + " failures, first " + f.front().name};
    });

    criterion(3, "mod-9 cone census", [] {
        const auto c = cone_census_mod9();
        const std::set<Quintuple> expected{{0, 0, 1, 1, 1}, {0, 0, 2, 2, 2}};
        const bool ok = c.class_count == 140 && c.reductions_mod3 == expected && c.reductions_fixed;
        return Outcome{ok, std::to_string(c.class_count) + " classes, " + std::to_string(c.reductions_mod3.size()) +
                               " mod-3 reductions, fixed by generators: " + (c.reductions_fixed ? "yes" : "no")};
    }, 10.0);

    criterion(4, "spin identities", [] {
        int ok = 0;
        for (int j = 1; j <= 3; ++j) {
            ok += rho(spin_generator(j)) == xi_tilde(j);
            ok += conjugate_by_J(RationalMatrix5::from(xi_generator(j)), Conjugation::forward) == xi_tilde(j);
        }
        return Outcome{ok == 6, std::to_string(ok) + "/6 exact matrix identities"};
    });

    criterion(5, "form identities for the root", [] {
        const auto f = form_f(kRoot);
        const std::array<std::int64_t, 10> expected{48, 48, 48, 17, 17, 17, 42, 27, 15, 42};
        const auto minors = f.leading_minors();
        const bool ok = f.coeff == expected && f.discriminant() == 1185921 && f.discriminant() == 33LL * 33 * 33 * 33 &&
                        f.positive_definite();
        return Outcome{ok, "discriminant " + std::to_string(f.discriminant()) + ", leading minors " +
                               join({minors[0], minors[1], minors[2], minors[3]})};
    });

    criterion(6, "form values of primitive pairs are 2 mod 3", [] {
        const auto f = form_f(kRoot);
        std::mt19937_64 rng(20240601);
        std::uniform_int_distribution<std::int64_t> d(-1000, 1000);
        int tested = 0, bad = 0;
        while (tested < 10000) {
            const Eisenstein g{d(rng), d(rng)}, h{d(rng), d(rng)};
            if (!coprimality_condition(g, h)) continue;
            ++tested;
            if (f.eval(g, h) % 3 != 2) ++bad;
        }
        return Outcome{bad == 0, std::to_string(tested) + " samples, " + std::to_string(bad) + " violations"};
    });

    criterion(7, "two-path cross-validation", [] {
        const auto bfs = enumerate(kRoot, 3000);
        const std::set<std::int64_t> K(bfs.distinct_curvatures.begin(), bfs.distinct_curvatures.end());
        const auto profile = PackingProfile::from_quintuple(kRoot);
        std::vector<std::int64_t> missing, unsound, rejected;
        int witnesses = 0, targets = 0;
        for (std::int64_t n = 1; n <= 3000; ++n) {
            if (!is_admissible(profile, n)) continue;
            const bool needed = n <= 1000 && K.count(n) && std::gcd(n, std::int64_t{11}) == 1;
            targets += needed;
            RepresentResult res;
            try {
                res = represent(kRoot, n);
            } catch (const NoCoprimePivot&) {
                if (needed) missing.push_back(n);
                continue;
            }
            if (!res.witness) {
                if (needed) missing.push_back(n);
                continue;
            }
            ++witnesses;
            if (!verify_witness(*res.witness).ok()) rejected.push_back(n);
            if (!K.count(res.witness->value)) unsound.push_back(n);
        }
        std::string detail = std::to_string(targets) + " required targets, " + std::to_string(witnesses) +
                             " witnesses up to 3000";
        if (!missing.empty()) detail += "; missing " + join(missing);
        if (!unsound.empty()) detail += "; values outside the orbit " + join(unsound);
        if (!rejected.empty()) detail += "; rejected " + join(rejected);
        return Outcome{missing.empty() && unsound.empty() && rejected.empty(), detail};
    }, 300.0);

    criterion(8, "exceptions at 85", [] {
        const std::vector<std::int64_t> expected{1,  3,  4,  6,  7,  9,  10, 12, 13, 15, 16, 18, 19, 22,
                                                 24, 30, 31, 33, 37, 39, 45, 52, 55, 58, 60, 66, 76};
        const auto r = exceptions(kRoot, 85);
        return Outcome{r.exceptions == expected, std::to_string(r.exceptions.size()) + " exceptions, largest " +
                                                     std::to_string(r.largest().value_or(0))};
    });

    // Criteria 9 and 10 share the walk at 10^5.
    WalkSummary full;
    double growth_slope = 0;
    criterion(9, "counting exponent", [&] {
        full = walk_orbit(kRoot, 100000, workers);
        const auto fit = fit_counting_exponent(full, {1000, 10000, 100000});
        growth_slope = fit.slope;
        std::ostringstream os;
        os.precision(4);
        os << "slope " << fit.slope << " over counts " << fit.counts[0] << ", " << fit.counts[1] << ", "
           << fit.counts[2];
        return Outcome{fit.slope >= 2.22 && fit.slope <= 2.72, os.str()};
    }, 600.0);

    criterion(10, "empirical local-global stability", [&] {
        if (full.bound != 100000) full = walk_orbit(kRoot, 100000, workers);
        const auto half = walk_orbit(kRoot, 50000, workers);
        const auto rep = stability_scan(half, full);
        std::string detail = "largest exception " + std::to_string(rep.largest_exception.value_or(0)) + " at 1e5, " +
                             std::to_string(rep.largest_exception_at_half.value_or(0)) + " at 5e4, " +
                             std::to_string(rep.upper_half_exceptions.size()) + " in (5e4, 1e5]";
        return Outcome{rep.stable(), detail};
    });

    criterion(11, "geometry consistency", [&] {
        const auto r = realize(kRoot);
        if (r.approximate || !r.exact) return Outcome{false, "no exact realization"};
        const auto& w = *r.exact;
        bool ok = has_tangency_gram(w) && curvature_column(w) == kRoot;
        std::mt19937_64 rng(42);
        std::uniform_int_distribution<int> g(1, 5), len(0, 12);
        int matched = 0;
        for (int t = 0; t < 100; ++t) {
            std::vector<int> word(static_cast<std::size_t>(len(rng)));
            for (auto& j : word) j = g(rng);
            matched += curvature_column(transform(word, w)) == apply_word(word, kRoot);
        }
        ok = ok && matched == 100;

        const std::vector<std::int64_t> bounds{500, 1000, 2000, 4000};
        std::vector<std::uint64_t> census, growth;
        for (auto b : bounds) {
            census.push_back(sphere_census(kRoot, b).size());
            growth.push_back(walk_orbit(kRoot, b, workers).spheres_up_to(b));
        }
        const double census_slope = fit_loglog(bounds, census).slope;
        if (growth_slope == 0) growth_slope = fit_counting_exponent(kRoot, {1000, 10000, 100000}, workers).slope;
        ok = ok && std::abs(census_slope - growth_slope) <= 0.05;
        std::ostringstream os;
        os.precision(4);
        os << "exact Gram ok, " << matched << "/100 words match, census slope " << census_slope << " vs "
           << growth_slope << "; distinct spheres at 4000: " << census.back() << " vs growth count "
           << growth.back();
        return Outcome{ok, os.str()};
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "PASSED", failures);
    return failures ? 1 : 0;
}
