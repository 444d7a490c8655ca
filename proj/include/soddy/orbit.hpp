#pragma once

// Bounded enumeration of the orbit of a root quintuple under <M_1..M_5>.
//
// Multiplicity convention ("growth"): every orbit quintuple w other than the root is
// charged one sphere, namely the entry in slot descent_index(w), which is the entry
// that exceeded the one it replaced on the canonical path from the root. The root
// contributes its five entries. Curvature alone cannot tell distinct spheres apart,
// so this is a count of (quintuple, changed slot) pairs; geometry::sphere_census is
// the sphere-exact counterpart.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "soddy/core.hpp"
#include "soddy/error.hpp"
#include "soddy/rational.hpp"

namespace soddy {

struct EnumerationOptions {
    std::uint64_t memory_cap_bytes = 8ull << 30;
    unsigned workers = 1;
};

struct EnumerationResult {
    std::int64_t bound = 0;
    /// Every orbit quintuple with max entry <= bound, sorted lexicographically.
    std::vector<Quintuple> quintuples;
    std::map<std::int64_t, std::uint64_t> curvature_counts;
    std::vector<std::int64_t> distinct_curvatures;

    bool contains(const Quintuple& v) const;
    std::uint64_t sphere_count() const;
};

/// Thrown when the seen-set outgrows EnumerationOptions::memory_cap_bytes.
class EnumerationBudgetExceeded : public BudgetExceeded {
public:
    EnumerationBudgetExceeded(std::uint64_t stored, std::uint64_t estimated_bytes)
        : BudgetExceeded("orbit enumeration exceeded its memory cap", stored),
          estimated_bytes_(estimated_bytes) {}
    std::uint64_t estimated_bytes() const noexcept { return estimated_bytes_; }

private:
    std::uint64_t estimated_bytes_;
};

/// Breadth-first closure with an exact seen-set over ordered quintuples.
EnumerationResult enumerate(const Quintuple& root, std::int64_t bound,
                            const EnumerationOptions& opts = {});

const std::map<std::int64_t, std::uint64_t>& curvature_counts(const EnumerationResult& r);

/// Summary of a memory-free traversal of the canonical spanning tree of the bounded
/// orbit (each non-root quintuple hangs off apply_generator(descent_index(w), w)).
/// Visits exactly the quintuples enumerate() would store, without storing them.
struct WalkSummary {
    std::int64_t bound = 0;
    Quintuple root{};
    std::int64_t offset = 0;  ///< curvature c lives at index c - offset
    std::uint64_t quintuple_count = 0;
    std::vector<std::uint64_t> counts;         ///< growth-convention multiplicity per curvature
    std::vector<std::uint64_t> max_histogram;  ///< quintuples whose max entry equals the index

    bool present(std::int64_t c) const;
    std::uint64_t count(std::int64_t c) const;
    std::vector<std::int64_t> distinct_curvatures() const;
    std::map<std::int64_t, std::uint64_t> curvature_map() const;
    /// Quintuples with max entry <= n; equals enumerate(root, n).quintuples.size().
    std::uint64_t quintuples_up_to(std::int64_t n) const;
    /// Growth-convention sphere count at bound n (n >= max root entry).
    std::uint64_t spheres_up_to(std::int64_t n) const;
};

/// The walk reduces `start` to its root first. workers > 1 shards subtrees across threads;
/// the summary is identical for every worker count.
WalkSummary walk_orbit(const Quintuple& start, std::int64_t bound, unsigned workers = 1);

struct CountFit {
    std::vector<std::int64_t> bounds;
    std::vector<std::uint64_t> counts;
    double slope = 0;
    double intercept = 0;
    Rational slope_approx;  ///< best rational approximation with denominator <= 10^4
};

/// Least squares on (log bound, log count). Throws DomainError on zero counts or < 2 samples.
CountFit fit_loglog(std::span<const std::int64_t> bounds, std::span<const std::uint64_t> counts);

/// Needs >= 3 strictly increasing bounds, each >= the largest root entry.
CountFit fit_counting_exponent(const Quintuple& root, std::vector<std::int64_t> bounds,
                               unsigned workers = 1);
CountFit fit_counting_exponent(const WalkSummary& walk, std::vector<std::int64_t> bounds);

Rational approximate_rational(double x, std::int64_t max_den);

/// `curvature,count` rows, ascending, LF endings.
void write_curvature_csv(std::ostream& os, const std::map<std::int64_t, std::uint64_t>& counts);

}  // namespace soddy
