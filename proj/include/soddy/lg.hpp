#pragma once

// Admissibility, exceptional sets and representation witnesses.
//
// A witness certifies n as a curvature without enumerating the packing: for a permuted
// orbit quintuple (k1..k5) and a primitive pair (gamma, delta) with f(gamma, delta) = n + k1,
// the integral matrix xi(gamma, delta) lies in <M_2..M_5> and its image of the quintuple has
// n in the last slot.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "soddy/core.hpp"
#include "soddy/eisenstein.hpp"
#include "soddy/orbit.hpp"

namespace soddy {

/// n = 0 or epsilon (mod 3). Throws DomainError for n < 1.
bool is_admissible(const PackingProfile& profile, std::int64_t n);

struct ExceptionsReport {
    std::int64_t bound = 0;
    /// Admissible n in [1, bound] that are not curvatures of an orbit quintuple with max entry <= bound.
    std::vector<std::int64_t> exceptions;

    std::optional<std::int64_t> largest() const;
};

ExceptionsReport exceptions(const Quintuple& root, std::int64_t bound, unsigned workers = 1);
/// Exceptions at walk.bound.
ExceptionsReport exceptions(const WalkSummary& walk);

struct FrontierReport {
    std::int64_t bound = 0;
    std::optional<std::int64_t> largest_exception;
    /// Exceptions in (bound/2, bound].
    std::vector<std::int64_t> upper_half_exceptions;
    /// Largest exception of an independent run at bound/2.
    std::optional<std::int64_t> largest_exception_at_half;
    /// bound is below the smallest positive root curvature; nothing is asserted.
    bool vacuous = false;

    /// No exception in the upper half and the largest exception agrees across both bounds.
    bool stable() const;
};

FrontierReport stability_scan(const Quintuple& root, std::int64_t bound, unsigned workers = 1);
/// Same, from walks already computed at bound/2 and bound.
FrontierReport stability_scan(const WalkSummary& half, const WalkSummary& full);

struct Witness {
    std::int64_t n = 0;
    Quintuple root{};
    Quintuple base{};              ///< orbit quintuple the search ran on
    std::array<int, 5> perm{};     ///< permuted[i] = base[perm[i]]; perm[0] is the pivot slot
    Quintuple permuted{};
    Eisenstein gamma, delta;
    std::int64_t value = 0;        ///< f(gamma, delta) - permuted[0]
    Quintuple certificate{};       ///< xi(gamma, delta) * permuted

    std::int64_t pivot() const { return permuted[0]; }
};

struct RepresentOptions {
    /// Maximum number of (delta, gamma_1) rows examined over the whole search.
    std::uint64_t effort = 10'000'000;
    /// Orbit quintuples (breadth-first after the root) tried when the root has no usable pivot.
    int extra_bases = 100;
};

struct RepresentResult {
    std::optional<Witness> witness;
    std::uint64_t effort_used = 0;
    int bases_tried = 0;
    int permutations_tried = 0;
    /// The search stopped on the effort limit rather than exhausting every ellipsoid.
    bool budget_exhausted = false;
};

/// Throws NotAdmissible for inadmissible n and NoCoprimePivot when no scanned base has an
/// entry coprime to n.
RepresentResult represent(const Quintuple& root, std::int64_t n, const RepresentOptions& opts = {});

/// Root, then orbit quintuples in breadth-first order (generators tried 1..5), `count` in total.
std::vector<Quintuple> breadth_first_bases(const Quintuple& root, int count);

enum class WitnessFault {
    none,
    malformed_root,
    not_in_orbit,
    bad_permutation,
    pivot_not_coprime,
    parity,
    gcd,
    not_integral,
    not_form_preserving,
    decomposition_mismatch,
    off_cone,
    certificate_mismatch,
    value_mismatch,
    arithmetic_overflow,
};

std::string to_string(WitnessFault f);

struct WitnessCheck {
    WitnessFault fault = WitnessFault::none;
    std::string detail;

    bool ok() const { return fault == WitnessFault::none; }
};

/// Recomputes the whole chain from (root, base, perm, gamma, delta) and compares every stored field.
WitnessCheck verify_witness(const Witness& w);

}  // namespace soddy
