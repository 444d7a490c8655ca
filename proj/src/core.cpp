#include "soddy/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "soddy/checked.hpp"
#include "soddy/error.hpp"

namespace soddy {

SoddyMatrix SoddyMatrix::identity() {
    SoddyMatrix id;
    for (int i = 0; i < 5; ++i) id.m[i][i] = 1;
    return id;
}

SoddyMatrix operator*(const SoddyMatrix& a, const SoddyMatrix& b) {
    SoddyMatrix r;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            std::int64_t s = 0;
            for (int k = 0; k < 5; ++k) s = checked::add(s, checked::mul(a.m[i][k], b.m[k][j]));
            r.m[i][j] = s;
        }
    return r;
}

Quintuple operator*(const SoddyMatrix& a, const Quintuple& v) {
    Quintuple r{};
    for (int i = 0; i < 5; ++i) {
        std::int64_t s = 0;
        for (int k = 0; k < 5; ++k) s = checked::add(s, checked::mul(a.m[i][k], v[k]));
        r[i] = s;
    }
    return r;
}

std::int64_t determinant(const SoddyMatrix& a) {
    // Fraction-free Bareiss elimination.
    std::array<std::array<__int128, 5>, 5> w{};
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) w[i][j] = a.m[i][j];
    __int128 prev = 1;
    int sign = 1;
    for (int k = 0; k < 4; ++k) {
        if (w[k][k] == 0) {
            int p = k + 1;
            while (p < 5 && w[p][k] == 0) ++p;
            if (p == 5) return 0;
            std::swap(w[k], w[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < 5; ++i)
            for (int j = k + 1; j < 5; ++j) w[i][j] = (w[i][j] * w[k][k] - w[i][k] * w[k][j]) / prev;
        prev = w[k][k];
    }
    return checked::narrow(sign * w[4][4]);
}

bool preserves_soddy_form(const SoddyMatrix& a) {
    // G = 3I - 11^T; check a^T G a == G entrywise.
    std::int64_t g[5][5];
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) g[i][j] = (i == j ? 3 : 0) - 1;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            __int128 s = 0;
            for (int k = 0; k < 5; ++k)
                for (int l = 0; l < 5; ++l)
                    s += static_cast<__int128>(a.m[k][i]) * g[k][l] * a.m[l][j];
            if (s != g[i][j]) return false;
        }
    return true;
}

namespace {

std::array<SoddyMatrix, 5> make_generators() {
    std::array<SoddyMatrix, 5> gens;
    for (int j = 0; j < 5; ++j) {
        SoddyMatrix g = SoddyMatrix::identity();
        for (int k = 0; k < 5; ++k) g.m[j][k] = 1;
        g.m[j][j] = -1;
        gens[j] = g;
    }
    return gens;
}

}  // namespace

const SoddyMatrix& generator(int j) {
    static const std::array<SoddyMatrix, 5> gens = make_generators();
    if (j < 1 || j > 5) throw DomainError("generator index must be in 1..5");
    return gens[j - 1];
}

std::int64_t entry_sum(const Quintuple& v) {
    std::int64_t s = 0;
    for (auto k : v) s = checked::add(s, k);
    return s;
}

std::int64_t soddy_form(const Quintuple& v) {
    std::int64_t sq = 0;
    for (auto k : v) sq = checked::add(sq, checked::mul(k, k));
    std::int64_t s = entry_sum(v);
    return checked::sub(checked::mul(3, sq), checked::mul(s, s));
}

bool on_cone(const Quintuple& v) { return soddy_form(v) == 0; }

bool is_primitive(const Quintuple& v) {
    std::int64_t g = 0;
    for (auto k : v) g = std::gcd(g, k);
    return g == 1;
}

Quintuple apply_generator(int j, const Quintuple& v) {
    if (j < 1 || j > 5) throw DomainError("generator index must be in 1..5");
    Quintuple w = v;
    std::int64_t s = entry_sum(v);
    w[j - 1] = checked::sub(s, checked::mul(2, v[j - 1]));
    return w;
}

Quintuple apply_word(const std::vector<int>& word, const Quintuple& v) {
    Quintuple w = v;
    for (int j : word) w = apply_generator(j, w);
    return w;
}

int descent_index(const Quintuple& v) {
    std::int64_t s = entry_sum(v);
    for (int i = 0; i < 5; ++i) {
        // M_i lowers slot i iff s - 2k_i < k_i.
        if (checked::mul(3, v[i]) > s) return i + 1;
    }
    return 0;
}

bool is_root(const Quintuple& v) { return descent_index(v) == 0; }

RootReduction reduce_to_root(const Quintuple& v, std::uint64_t max_steps) {
    RootReduction out;
    out.root = v;
    std::uint64_t steps = 0;
    while (int j = descent_index(out.root)) {
        if (entry_sum(out.root) <= 0)
            throw MalformedQuintuple("descent left the positive-sum region: " + to_string(v));
        if (++steps > max_steps) throw BudgetExceeded("root reduction step budget exhausted", steps);
        out.root = apply_generator(j, out.root);
        out.word.push_back(j);
    }
    std::reverse(out.word.begin(), out.word.end());
    return out;
}

std::vector<RelationFailure> verify_group_relations() {
    std::vector<RelationFailure> failures;
    const SoddyMatrix id = SoddyMatrix::identity();
    for (int j = 1; j <= 5; ++j) {
        if (generator(j) * generator(j) != id)
            failures.push_back({"M" + std::to_string(j) + "^2 = I"});
    }
    for (int j = 1; j <= 5; ++j)
        for (int k = 1; k <= 5; ++k) {
            if (j == k) continue;
            SoddyMatrix p = generator(j) * generator(k);
            if (p * p * p != id)
                failures.push_back({"(M" + std::to_string(j) + "M" + std::to_string(k) + ")^3 = I"});
        }
    return failures;
}

int epsilon_class(const Quintuple& v) {
    int zeros = 0;
    int ones = 0;
    int twos = 0;
    for (auto k : v) {
        switch (checked::mod(k, 3)) {
            case 0: ++zeros; break;
            case 1: ++ones; break;
            default: ++twos; break;
        }
    }
    if (zeros == 2 && ones == 3) return 1;
    if (zeros == 2 && twos == 3) return 2;
    throw MalformedQuintuple("mod-3 residue pattern is not (0,0,e,e,e): " + to_string(v));
}

PackingProfile PackingProfile::from_quintuple(const Quintuple& v) {
    if (!on_cone(v)) throw MalformedQuintuple("quintuple is not on the Soddy cone: " + to_string(v));
    if (!is_primitive(v)) throw MalformedQuintuple("quintuple is not primitive: " + to_string(v));
    PackingProfile p;
    p.root = reduce_to_root(v).root;
    p.epsilon = epsilon_class(p.root);
    return p;
}

Quintuple canonical_sorted(Quintuple v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::string to_string(const Quintuple& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Quintuple& v) {
    os << '(';
    for (int i = 0; i < 5; ++i) os << (i ? "," : "") << v[i];
    return os << ')';
}

}  // namespace soddy
