#pragma once

// Finite closures of the generator action modulo q.

#include <array>
#include <cstdint>
#include <set>
#include <vector>

#include "soddy/core.hpp"

namespace soddy {

struct ResidueQuintuple {
    std::array<std::int64_t, 5> entries{};
    std::int64_t modulus = 1;

    friend auto operator<=>(const ResidueQuintuple&, const ResidueQuintuple&) = default;
};

struct LocalBudget {
    std::uint64_t max_states = 10'000'000;
    std::int64_t max_modulus = 64;
};

/// Closure of {root mod q} under the five generators mod q, sorted.
std::vector<ResidueQuintuple> orbit_mod(const Quintuple& root, std::int64_t q,
                                        const LocalBudget& budget = {});

/// Union of entries over the mod-q orbit closure.
std::set<std::int64_t> admissible_residues(const Quintuple& root, std::int64_t q,
                                           const LocalBudget& budget = {});

struct LocalReport {
    std::int64_t modulus = 1;
    std::uint64_t orbit_size = 0;
    std::set<std::int64_t> admissible_residues;
    /// admissible_residues is exactly {r : r mod 3 in {0, epsilon}} (all residues when 3 does not divide q).
    bool matches_mod3 = false;
    /// Some residue class mod q is missed.
    bool obstruction = false;
    bool budget_exceeded = false;
};

LocalReport local_report(const Quintuple& root, std::int64_t q, const LocalBudget& budget = {});

/// One report per q in [1, q_max]. Moduli whose closure overruns the state budget come back
/// flagged budget_exceeded rather than aborting the scan.
std::vector<LocalReport> obstruction_scan(const Quintuple& root, std::int64_t q_max,
                                          const LocalBudget& budget = {});

struct ConeCensusMod9 {
    /// Permutation classes of nonzero solutions of Q = 0 in (Z/9)^5.
    std::uint64_t class_count = 0;
    /// Classes with some entry not divisible by 3 (those that can lift to primitive quintuples).
    std::uint64_t primitive_class_count = 0;
    /// Nonzero classes that vanish mod 3.
    std::uint64_t imprimitive_class_count = 0;
    std::vector<Quintuple> classes;  ///< sorted representatives of every nonzero class
    /// Sorted mod-3 reductions of the primitive classes.
    std::set<Quintuple> reductions_mod3;
    /// Every ordering of every reduction is fixed by all five generators mod 3.
    bool reductions_fixed = false;
};

ConeCensusMod9 cone_census_mod9();

}  // namespace soddy
