#pragma once

// Quintuple algebra on the Soddy cone Q(v) = 3*sum(k_i^2) - (sum k_i)^2 = 0.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace soddy {

/// Ordered curvature 5-tuple. Positions matter: generator M_j acts on slot j.
using Quintuple = std::array<std::int64_t, 5>;

/// 5x5 integer matrix acting on column quintuples.
struct SoddyMatrix {
    std::array<std::array<std::int64_t, 5>, 5> m{};

    static SoddyMatrix identity();

    std::int64_t& operator()(int r, int c) { return m[r][c]; }
    std::int64_t operator()(int r, int c) const { return m[r][c]; }

    friend bool operator==(const SoddyMatrix&, const SoddyMatrix&) = default;
};

SoddyMatrix operator*(const SoddyMatrix& a, const SoddyMatrix& b);
Quintuple operator*(const SoddyMatrix& a, const Quintuple& v);

std::int64_t determinant(const SoddyMatrix& a);

/// True iff a^T G a = G for the Gram matrix G of Q.
bool preserves_soddy_form(const SoddyMatrix& a);

/// Generator M_j, j in 1..5: replaces k_j by (sum of the other four) - k_j.
const SoddyMatrix& generator(int j);

/// 3*sum(k_i^2) - (sum k_i)^2, overflow-checked.
std::int64_t soddy_form(const Quintuple& v);

bool on_cone(const Quintuple& v);
bool is_primitive(const Quintuple& v);
std::int64_t entry_sum(const Quintuple& v);

/// Apply M_j (1-based) to v. Only entry j changes.
Quintuple apply_generator(int j, const Quintuple& v);

/// Apply a word left-to-right: word {a, b} yields M_b * M_a * v.
Quintuple apply_word(const std::vector<int>& word, const Quintuple& v);

/// Smallest 1-based j whose generator strictly decreases the entry sum, or 0.
int descent_index(const Quintuple& v);

struct RootReduction {
    Quintuple root{};
    /// Replays the input from the root: apply_word(word, root) == input.
    std::vector<int> word;
};

/// Greedy descent on the entry sum, smallest index first on ties.
RootReduction reduce_to_root(const Quintuple& v, std::uint64_t max_steps = 100'000'000);

bool is_root(const Quintuple& v);

struct RelationFailure {
    std::string name;
};

/// Checks M_j^2 = I (5 cases) and (M_j M_k)^3 = I (20 ordered pairs). Empty means all hold.
std::vector<RelationFailure> verify_group_relations();

/// Common residue of the three entries not divisible by 3; throws MalformedQuintuple
/// unless the mod-3 pattern is a permutation of (0,0,e,e,e).
int epsilon_class(const Quintuple& v);

struct PackingProfile {
    Quintuple root{};
    int epsilon = 1;

    /// Validates cone membership and primitivity, reduces to the root and records epsilon.
    static PackingProfile from_quintuple(const Quintuple& v);
};

/// Entries sorted ascending; used only as a deduplication key for permutation classes.
Quintuple canonical_sorted(Quintuple v);

std::string to_string(const Quintuple& v);
std::ostream& operator<<(std::ostream& os, const Quintuple& v);

struct QuintupleHash {
    std::size_t operator()(const Quintuple& v) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (auto k : v) {
            h ^= static_cast<std::uint64_t>(k) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace soddy
