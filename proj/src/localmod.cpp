#include "soddy/localmod.hpp"

#include <absl/container/flat_hash_set.h>

#include <algorithm>

#include "soddy/checked.hpp"
#include "soddy/error.hpp"

namespace soddy {

namespace {

using Code = std::uint64_t;

Code encode(const std::array<std::int64_t, 5>& r, std::int64_t q) {
    Code c = 0;
    for (int i = 4; i >= 0; --i) c = c * static_cast<Code>(q) + static_cast<Code>(r[i]);
    return c;
}

std::array<std::int64_t, 5> decode(Code c, std::int64_t q) {
    std::array<std::int64_t, 5> r{};
    for (int i = 0; i < 5; ++i) {
        r[i] = static_cast<std::int64_t>(c % static_cast<Code>(q));
        c /= static_cast<Code>(q);
    }
    return r;
}

// Visits every state of the closure; `visit` sees each residue tuple once.
template <typename Visit>
std::uint64_t closure(const Quintuple& root, std::int64_t q, const LocalBudget& budget, Visit&& visit) {
    if (q < 1) throw DomainError("modulus must be positive");
    if (q > budget.max_modulus) throw BudgetExceeded("modulus exceeds the configured maximum", 0);

    std::array<std::int64_t, 5> start{};
    for (int i = 0; i < 5; ++i) start[i] = checked::mod(root[i], q);

    // Dense bitmap when q^5 is modest, hash set otherwise.
    const long double space = static_cast<long double>(q) * q * q * q * q;
    const bool dense = space <= static_cast<long double>(1ull << 31);
    std::vector<bool> bitmap;
    absl::flat_hash_set<Code> sparse;
    if (dense) bitmap.assign(static_cast<std::size_t>(space), false);
    auto mark = [&](Code c) {
        if (dense) {
            if (bitmap[c]) return false;
            bitmap[c] = true;
            return true;
        }
        return sparse.insert(c).second;
    };

    std::vector<Code> stack;
    mark(encode(start, q));
    stack.push_back(encode(start, q));
    std::uint64_t states = 1;
    visit(start);
    while (!stack.empty()) {
        auto v = decode(stack.back(), q);
        stack.pop_back();
        std::int64_t s = (v[0] + v[1] + v[2] + v[3] + v[4]) % q;
        for (int j = 0; j < 5; ++j) {
            auto w = v;
            w[j] = checked::mod(s - 2 * v[j], q);
            Code c = encode(w, q);
            if (!mark(c)) continue;
            if (++states > budget.max_states)
                throw BudgetExceeded("mod-" + std::to_string(q) + " orbit closure exceeded the state budget", states);
            visit(w);
            stack.push_back(c);
        }
    }
    return states;
}

std::set<std::int64_t> mod3_pullback(std::int64_t q, int epsilon) {
    std::set<std::int64_t> out;
    for (std::int64_t r = 0; r < q; ++r) {
        if (q % 3 != 0 || r % 3 == 0 || r % 3 == epsilon) out.insert(r);
    }
    return out;
}

}  // namespace

std::vector<ResidueQuintuple> orbit_mod(const Quintuple& root, std::int64_t q, const LocalBudget& budget) {
    std::vector<ResidueQuintuple> out;
    closure(root, q, budget, [&](const std::array<std::int64_t, 5>& r) { out.push_back({r, q}); });
    std::sort(out.begin(), out.end());
    return out;
}

std::set<std::int64_t> admissible_residues(const Quintuple& root, std::int64_t q, const LocalBudget& budget) {
    std::vector<bool> hit(static_cast<std::size_t>(q), false);
    closure(root, q, budget, [&](const std::array<std::int64_t, 5>& r) {
        for (auto x : r) hit[static_cast<std::size_t>(x)] = true;
    });
    std::set<std::int64_t> out;
    for (std::int64_t r = 0; r < q; ++r)
        if (hit[static_cast<std::size_t>(r)]) out.insert(r);
    return out;
}

LocalReport local_report(const Quintuple& root, std::int64_t q, const LocalBudget& budget) {
    LocalReport rep;
    rep.modulus = q;
    std::vector<bool> hit(static_cast<std::size_t>(q), false);
    try {
        rep.orbit_size = closure(root, q, budget, [&](const std::array<std::int64_t, 5>& r) {
            for (auto x : r) hit[static_cast<std::size_t>(x)] = true;
        });
    } catch (const BudgetExceeded& e) {
        rep.budget_exceeded = true;
        rep.orbit_size = e.progress();
        return rep;
    }
    for (std::int64_t r = 0; r < q; ++r)
        if (hit[static_cast<std::size_t>(r)]) rep.admissible_residues.insert(r);
    rep.obstruction = static_cast<std::int64_t>(rep.admissible_residues.size()) < q;
    rep.matches_mod3 = rep.admissible_residues == mod3_pullback(q, epsilon_class(root));
    return rep;
}

std::vector<LocalReport> obstruction_scan(const Quintuple& root, std::int64_t q_max, const LocalBudget& budget) {
    if (q_max > budget.max_modulus)
        throw BudgetExceeded("obstruction scan modulus exceeds the configured maximum", 0);
    std::vector<LocalReport> out;
    for (std::int64_t q = 1; q <= q_max; ++q) out.push_back(local_report(root, q, budget));
    return out;
}

ConeCensusMod9 cone_census_mod9() {
    constexpr std::int64_t q = 9;
    std::set<Quintuple> classes;
    std::array<std::int64_t, 5> v{};
    for (Code c = 0; c < 59049; ++c) {
        v = decode(c, q);
        if (c == 0) continue;  // the origin
        std::int64_t sq = 0, s = 0;
        for (auto x : v) {
            sq += x * x;
            s += x;
        }
        if ((3 * sq - s * s) % q != 0) continue;
        Quintuple w{v[0], v[1], v[2], v[3], v[4]};
        classes.insert(canonical_sorted(w));
    }

    ConeCensusMod9 out;
    out.class_count = classes.size();
    out.classes.assign(classes.begin(), classes.end());
    for (const auto& cls : classes) {
        Quintuple red{};
        for (int i = 0; i < 5; ++i) red[i] = cls[i] % 3;
        if (red == Quintuple{}) {
            ++out.imprimitive_class_count;
            continue;
        }
        ++out.primitive_class_count;
        out.reductions_mod3.insert(canonical_sorted(red));
    }

    out.reductions_fixed = true;
    for (auto red : out.reductions_mod3) {
        std::sort(red.begin(), red.end());
        do {
            std::int64_t s = red[0] + red[1] + red[2] + red[3] + red[4];
            for (int j = 0; j < 5; ++j)
                if (checked::mod(s - 2 * red[j], 3) != red[j]) out.reductions_fixed = false;
        } while (std::next_permutation(red.begin(), red.end()));
    }
    return out;
}

}  // namespace soddy
