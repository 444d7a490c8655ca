#include "soddy/orbit.hpp"

#include <absl/container/flat_hash_set.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <set>
#include <thread>

#include "soddy/checked.hpp"

namespace soddy {

namespace {

std::int64_t max_entry(const Quintuple& v) { return *std::max_element(v.begin(), v.end()); }
std::int64_t min_entry(const Quintuple& v) { return *std::min_element(v.begin(), v.end()); }

// Two 8-byte tables per curvature value; 2^26 entries keep them near 1 GiB.
constexpr std::size_t kMaxWalkWidth = std::size_t{1} << 26;

void check_walk_bound(std::int64_t bound) {
    // Entry sums stay below 5 * bound, so this keeps every intermediate far from overflow.
    if (bound > (std::int64_t{1} << 58))
        throw OverflowError("orbit bound too large for unchecked traversal");
}

}  // namespace

bool EnumerationResult::contains(const Quintuple& v) const {
    return std::binary_search(quintuples.begin(), quintuples.end(), v);
}

std::uint64_t EnumerationResult::sphere_count() const {
    std::uint64_t total = 0;
    for (const auto& [c, n] : curvature_counts) total += n;
    return total;
}

EnumerationResult enumerate(const Quintuple& root, std::int64_t bound, const EnumerationOptions& opts) {
    if (!on_cone(root)) throw MalformedQuintuple("root is not on the Soddy cone: " + to_string(root));
    if (!is_primitive(root)) throw MalformedQuintuple("root is not primitive: " + to_string(root));
    if (bound < max_entry(root)) throw DomainError("bound is below the largest root entry");
    check_walk_bound(bound);

    absl::flat_hash_set<Quintuple, QuintupleHash> seen;
    seen.insert(root);
    std::vector<Quintuple> frontier{root};
    const unsigned workers = std::max(1u, opts.workers);

    auto estimate_bytes = [&](std::size_t pending) {
        return static_cast<std::uint64_t>(seen.capacity()) * (sizeof(Quintuple) + 1) +
               static_cast<std::uint64_t>(pending) * sizeof(Quintuple);
    };

    while (!frontier.empty()) {
        // Expand the frontier in `workers` contiguous shards, then merge shard outputs in order.
        std::vector<std::vector<Quintuple>> shards(workers);
        auto expand = [&](unsigned w) {
            std::size_t lo = frontier.size() * w / workers;
            std::size_t hi = frontier.size() * (w + 1) / workers;
            auto& out = shards[w];
            for (std::size_t i = lo; i < hi; ++i) {
                const Quintuple& v = frontier[i];
                std::int64_t s = v[0] + v[1] + v[2] + v[3] + v[4];
                for (int j = 0; j < 5; ++j) {
                    std::int64_t nv = s - 2 * v[j];
                    if (nv > bound || nv == v[j]) continue;
                    Quintuple c = v;
                    c[j] = nv;
                    out.push_back(c);
                }
            }
        };
        if (workers == 1) {
            expand(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back(expand, w);
            for (auto& t : pool) t.join();
        }

        std::vector<Quintuple> next;
        for (auto& shard : shards) {
            for (const auto& c : shard)
                if (seen.insert(c).second) next.push_back(c);
            shard.clear();
            shard.shrink_to_fit();
        }
        if (auto bytes = estimate_bytes(next.size()); bytes > opts.memory_cap_bytes)
            throw EnumerationBudgetExceeded(seen.size(), bytes);
        frontier = std::move(next);
    }

    EnumerationResult res;
    res.bound = bound;
    res.quintuples.assign(seen.begin(), seen.end());
    seen = {};
    std::sort(res.quintuples.begin(), res.quintuples.end());

    std::set<std::int64_t> distinct;
    for (const auto& w : res.quintuples) {
        int d = descent_index(w);
        if (d == 0) {
            for (auto k : w) ++res.curvature_counts[k];
        } else {
            ++res.curvature_counts[w[d - 1]];
        }
        distinct.insert(w.begin(), w.end());
    }
    res.distinct_curvatures.assign(distinct.begin(), distinct.end());
    return res;
}

const std::map<std::int64_t, std::uint64_t>& curvature_counts(const EnumerationResult& r) {
    return r.curvature_counts;
}

// ---------------------------------------------------------------------------
// Canonical tree walk

bool WalkSummary::present(std::int64_t c) const { return count(c) > 0; }

std::uint64_t WalkSummary::count(std::int64_t c) const {
    if (c < offset || c - offset >= static_cast<std::int64_t>(counts.size())) return 0;
    return counts[static_cast<std::size_t>(c - offset)];
}

std::vector<std::int64_t> WalkSummary::distinct_curvatures() const {
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < counts.size(); ++i)
        if (counts[i]) out.push_back(static_cast<std::int64_t>(i) + offset);
    return out;
}

std::map<std::int64_t, std::uint64_t> WalkSummary::curvature_map() const {
    std::map<std::int64_t, std::uint64_t> out;
    for (std::size_t i = 0; i < counts.size(); ++i)
        if (counts[i]) out.emplace(static_cast<std::int64_t>(i) + offset, counts[i]);
    return out;
}

std::uint64_t WalkSummary::quintuples_up_to(std::int64_t n) const {
    std::uint64_t total = 0;
    std::int64_t hi = std::min<std::int64_t>(n - offset, static_cast<std::int64_t>(max_histogram.size()) - 1);
    for (std::int64_t i = 0; i <= hi; ++i) total += max_histogram[static_cast<std::size_t>(i)];
    return total;
}

std::uint64_t WalkSummary::spheres_up_to(std::int64_t n) const {
    std::uint64_t q = quintuples_up_to(n);
    return q == 0 ? 0 : q + 4;
}

namespace {

struct Node {
    Quintuple v;
    std::int64_t max;
};

struct WalkAccumulator {
    std::vector<std::uint64_t> counts;
    std::vector<std::uint64_t> max_histogram;
    std::uint64_t nodes = 0;
};

// Pushes the canonical children of `n` whose entries stay <= bound.
template <typename Sink>
inline void for_each_child(const Node& n, std::int64_t bound, Sink&& sink) {
    const Quintuple& v = n.v;
    const std::int64_t s = v[0] + v[1] + v[2] + v[3] + v[4];
    for (int j = 0; j < 5; ++j) {
        const std::int64_t vj = v[j];
        if (3 * vj >= s) continue;  // not a growth move
        const std::int64_t nv = s - 2 * vj;
        if (nv > bound) continue;
        // The child is canonical iff no earlier slot is a descent for it.
        const std::int64_t sw = 2 * s - 3 * vj;
        bool canonical = true;
        for (int i = 0; i < j; ++i)
            if (3 * v[i] > sw) {
                canonical = false;
                break;
            }
        if (!canonical) continue;
        Node c{v, std::max(n.max, nv)};
        c.v[j] = nv;
        sink(c, nv);
    }
}

void walk_subtree(const Node& start, std::int64_t bound, std::int64_t offset, WalkAccumulator& acc) {
    std::vector<Node> stack{start};
    while (!stack.empty()) {
        Node n = stack.back();
        stack.pop_back();
        for_each_child(n, bound, [&](const Node& c, std::int64_t nv) {
            ++acc.nodes;
            ++acc.counts[static_cast<std::size_t>(nv - offset)];
            ++acc.max_histogram[static_cast<std::size_t>(c.max - offset)];
            stack.push_back(c);
        });
    }
}

}  // namespace

WalkSummary walk_orbit(const Quintuple& start, std::int64_t bound, unsigned workers) {
    if (!on_cone(start)) throw MalformedQuintuple("quintuple is not on the Soddy cone: " + to_string(start));
    if (!is_primitive(start)) throw MalformedQuintuple("quintuple is not primitive: " + to_string(start));
    check_walk_bound(bound);

    WalkSummary out;
    out.bound = bound;
    out.root = reduce_to_root(start).root;
    out.offset = min_entry(out.root);
    if (bound < out.offset) return out;
    const auto width = static_cast<std::size_t>(bound - out.offset + 1);
    if (width > kMaxWalkWidth) throw BudgetExceeded("curvature tables for this bound exceed the memory budget", 0);
    out.counts.assign(width, 0);
    out.max_histogram.assign(width, 0);

    // Root spheres are always part of the packing, even below the root's max entry.
    for (auto k : out.root)
        if (k <= bound) ++out.counts[static_cast<std::size_t>(k - out.offset)];
    const std::int64_t root_max = max_entry(out.root);
    if (bound < root_max) return out;
    out.quintuple_count = 1;
    ++out.max_histogram[static_cast<std::size_t>(root_max - out.offset)];

    workers = std::max(1u, workers);
    auto merge = [&](const WalkAccumulator& acc) {
        out.quintuple_count += acc.nodes;
        for (std::size_t i = 0; i < width; ++i) {
            out.counts[i] += acc.counts[i];
            out.max_histogram[i] += acc.max_histogram[i];
        }
    };

    if (workers == 1) {
        WalkAccumulator acc{std::vector<std::uint64_t>(width), std::vector<std::uint64_t>(width), 0};
        walk_subtree(Node{out.root, root_max}, bound, out.offset, acc);
        merge(acc);
        return out;
    }

    // Breadth-first seed layer, then hand whole subtrees to workers.
    WalkAccumulator seed{std::vector<std::uint64_t>(width), std::vector<std::uint64_t>(width), 0};
    std::vector<Node> layer{Node{out.root, root_max}};
    const std::size_t target = static_cast<std::size_t>(workers) * 256;
    while (!layer.empty() && layer.size() < target) {
        std::vector<Node> next;
        for (const auto& n : layer)
            for_each_child(n, bound, [&](const Node& c, std::int64_t nv) {
                ++seed.nodes;
                ++seed.counts[static_cast<std::size_t>(nv - out.offset)];
                ++seed.max_histogram[static_cast<std::size_t>(c.max - out.offset)];
                next.push_back(c);
            });
        if (next.empty()) break;
        layer = std::move(next);
    }
    merge(seed);
    if (layer.size() == 1 && layer.front().v == out.root) return out;

    std::atomic<std::size_t> cursor{0};
    std::vector<WalkAccumulator> accs(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            auto& acc = accs[w];
            acc.counts.assign(width, 0);
            acc.max_histogram.assign(width, 0);
            for (std::size_t i; (i = cursor.fetch_add(1)) < layer.size();)
                walk_subtree(layer[i], bound, out.offset, acc);
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& acc : accs) merge(acc);
    return out;
}

// ---------------------------------------------------------------------------
// Counting exponent

Rational approximate_rational(double x, std::int64_t max_den) {
    // Continued-fraction convergents.
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double r = x;
    for (int iter = 0; iter < 64; ++iter) {
        double a = std::floor(r);
        auto ai = static_cast<std::int64_t>(a);
        std::int64_t p2 = ai * p1 + p0;
        std::int64_t q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double frac = r - a;
        if (frac < 1e-15) break;
        r = 1.0 / frac;
    }
    if (q1 == 0) return Rational(static_cast<std::int64_t>(std::llround(x)));
    return Rational(p1, q1);
}

CountFit fit_loglog(std::span<const std::int64_t> bounds, std::span<const std::uint64_t> counts) {
    if (bounds.size() != counts.size()) throw DomainError("bounds and counts differ in length");
    if (bounds.size() < 2) throw DomainError("log-log fit needs at least two samples");
    const double n = static_cast<double>(bounds.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        if (counts[i] == 0) throw DomainError("degenerate fit: zero count at bound " + std::to_string(bounds[i]));
        if (bounds[i] <= 0) throw DomainError("log-log fit needs positive bounds");
        double x = std::log(static_cast<double>(bounds[i]));
        double y = std::log(static_cast<double>(counts[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0) throw DomainError("degenerate fit: bounds are all equal");
    CountFit fit;
    fit.bounds.assign(bounds.begin(), bounds.end());
    fit.counts.assign(counts.begin(), counts.end());
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.slope_approx = approximate_rational(fit.slope, 10'000);
    return fit;
}

namespace {

void check_fit_bounds(const std::vector<std::int64_t>& bounds, std::int64_t root_max) {
    if (bounds.size() < 3) throw DomainError("counting-exponent fit needs at least three bounds");
    for (std::size_t i = 1; i < bounds.size(); ++i)
        if (bounds[i] <= bounds[i - 1]) throw DomainError("fit bounds must be strictly increasing");
    if (bounds.front() < root_max) throw DomainError("fit bounds must not be below the largest root entry");
}

}  // namespace

CountFit fit_counting_exponent(const WalkSummary& walk, std::vector<std::int64_t> bounds) {
    check_fit_bounds(bounds, max_entry(walk.root));
    if (bounds.back() > walk.bound) throw DomainError("fit bound exceeds the walk bound");
    std::vector<std::uint64_t> counts;
    for (auto b : bounds) counts.push_back(walk.spheres_up_to(b));
    return fit_loglog(bounds, counts);
}

CountFit fit_counting_exponent(const Quintuple& root, std::vector<std::int64_t> bounds, unsigned workers) {
    check_fit_bounds(bounds, max_entry(reduce_to_root(root).root));
    WalkSummary walk = walk_orbit(root, bounds.back(), workers);
    return fit_counting_exponent(walk, std::move(bounds));
}

void write_curvature_csv(std::ostream& os, const std::map<std::int64_t, std::uint64_t>& counts) {
    os << "curvature,count\n";
    for (const auto& [c, n] : counts) os << c << ',' << n << '\n';
}

}  // namespace soddy
