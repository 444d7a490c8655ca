#include "soddy/eisenstein.hpp"

#include <array>
#include <utility>

#include "soddy/checked.hpp"
#include "soddy/error.hpp"

namespace soddy {

using checked::add;
using checked::mul;
using checked::sub;

std::int64_t Eisenstein::norm() const {
    __int128 n = static_cast<__int128>(a) * a + static_cast<__int128>(a) * b + static_cast<__int128>(b) * b;
    return checked::narrow(n);
}

// conj(w) = 1 - w
Eisenstein Eisenstein::conj() const { return {add(a, b), checked::neg(b)}; }

Eisenstein Eisenstein::operator-() const { return {checked::neg(a), checked::neg(b)}; }

std::string Eisenstein::str() const {
    if (b == 0) return std::to_string(a);
    std::string out = a == 0 ? "" : std::to_string(a) + (b > 0 ? "+" : "");
    if (b == 1 || b == -1) return out + (b < 0 ? "-w" : "w");
    return out + std::to_string(b) + "w";
}

Eisenstein operator+(const Eisenstein& x, const Eisenstein& y) { return {add(x.a, y.a), add(x.b, y.b)}; }
Eisenstein operator-(const Eisenstein& x, const Eisenstein& y) { return {sub(x.a, y.a), sub(x.b, y.b)}; }

Eisenstein operator*(const Eisenstein& x, const Eisenstein& y) {
    // (a + bw)(c + dw) = ac - bd + (ad + bc + bd)w
    return {sub(mul(x.a, y.a), mul(x.b, y.b)), add(add(mul(x.a, y.b), mul(x.b, y.a)), mul(x.b, y.b))};
}

std::ostream& operator<<(std::ostream& os, const Eisenstein& x) { return os << x.str(); }

Eisenstein omega_pow(int k) {
    static const std::array<Eisenstein, 6> powers{Eisenstein{1, 0}, Eisenstein{0, 1}, Eisenstein{-1, 1},
                                                   Eisenstein{-1, 0}, Eisenstein{0, -1}, Eisenstein{1, -1}};
    return powers[static_cast<std::size_t>(checked::mod(k, 6))];
}

int unit_exponent(const Eisenstein& u) {
    for (int k = 0; k < 6; ++k)
        if (omega_pow(k) == u) return k;
    throw DomainError("not a unit: " + u.str());
}

namespace {

std::int64_t floor_div(__int128 p, __int128 n) {
    __int128 q = p / n;
    if ((p % n != 0) && ((p < 0) != (n < 0))) --q;
    return checked::narrow(q);
}

}  // namespace

EisDivMod eis_divmod(const Eisenstein& x, const Eisenstein& y) {
    if (y.is_zero()) throw DomainError("Eisenstein division by zero");
    // x/y = x*conj(y)/N(y); the nearest lattice point is a corner of the enclosing cell.
    const Eisenstein p = x * y.conj();
    const std::int64_t n = y.norm();
    const std::int64_t fa = floor_div(p.a, n);
    const std::int64_t fb = floor_div(p.b, n);
    EisDivMod best{};
    std::int64_t best_norm = -1;
    for (std::int64_t da = 0; da <= 1; ++da)
        for (std::int64_t db = 0; db <= 1; ++db) {
            Eisenstein q{fa + da, fb + db};
            Eisenstein r = x - q * y;
            std::int64_t rn = r.norm();
            if (best_norm < 0 || rn < best_norm) {
                best = {q, r};
                best_norm = rn;
            }
        }
    return best;
}

Eisenstein eis_divexact(const Eisenstein& x, const Eisenstein& y) {
    auto dm = eis_divmod(x, y);
    if (!dm.rem.is_zero()) throw DomainError(y.str() + " does not divide " + x.str());
    return dm.quot;
}

Eisenstein normalize_associate(const Eisenstein& x) {
    if (x.is_zero()) return x;
    Eisenstein r = x;
    // Multiplying by w rotates by pi/3; the sector [0, pi/3) is {a > 0, b >= 0}.
    for (int k = 0; k < 6; ++k) {
        if (r.a > 0 && r.b >= 0) return r;
        r = r * Eisenstein::omega();
    }
    throw DomainError("associate normalization failed");  // unreachable
}

EisXgcd eis_xgcd(const Eisenstein& x, const Eisenstein& y) {
    if (x.is_zero() && y.is_zero()) throw DomainError("gcd of two zeros is undefined");
    Eisenstein r0 = x, r1 = y;
    Eisenstein s0{1}, s1{0};
    Eisenstein t0{0}, t1{1};
    while (!r1.is_zero()) {
        auto dm = eis_divmod(r0, r1);
        r0 = std::exchange(r1, dm.rem);
        s0 = std::exchange(s1, s0 - dm.quot * s1);
        t0 = std::exchange(t1, t0 - dm.quot * t1);
    }
    Eisenstein g = normalize_associate(r0);
    // g = u * r0 for some unit u; rescale the Bezout coefficients by the same unit.
    Eisenstein u = eis_divexact(g, r0);
    return {g, u * s0, u * t0};
}

Eisenstein eis_gcd(const Eisenstein& x, const Eisenstein& y) { return eis_xgcd(x, y).g; }

}  // namespace soddy
