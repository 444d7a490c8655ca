#pragma once

// Inversive coordinates for spheres in a Soddy packing.
//
// A sphere with curvature b, co-curvature bbar and center z is the row (bbar, b, b*z).
// The Lorentz form <u, v> = (b z)_u . (b z)_v - (bbar_u b_v + b_u bbar_v) / 2 gives 1 on
// every sphere and -1 on externally tangent pairs, so a configuration of five mutually
// tangent spheres has Gram matrix 2I - J, and M_j acts on the stacked rows exactly as
// it acts on the curvature column.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "soddy/core.hpp"
#include "soddy/rational.hpp"

namespace soddy {

using Decimal = boost::multiprecision::cpp_dec_float_50;

/// x + y*sqrt3 with rational x, y.
class FieldElem {
public:
    FieldElem() = default;
    FieldElem(Rational x) : x_(x) {}  // NOLINT(implicit)
    FieldElem(std::int64_t x) : x_(x) {}  // NOLINT(implicit)
    FieldElem(Rational x, Rational y) : x_(x), y_(y) {}

    static FieldElem sqrt3() { return {0, 1}; }

    const Rational& rational_part() const { return x_; }
    const Rational& sqrt3_part() const { return y_; }

    bool is_zero() const { return x_.is_zero() && y_.is_zero(); }
    bool is_rational() const { return y_.is_zero(); }
    int sign() const;

    FieldElem conj() const { return {x_, -y_}; }
    /// x^2 - 3y^2.
    Rational norm() const;
    FieldElem inverse() const;
    /// Square root inside Q(sqrt3), if there is one.
    std::optional<FieldElem> sqrt() const;

    FieldElem operator-() const { return {-x_, -y_}; }
    FieldElem& operator+=(const FieldElem& o);
    FieldElem& operator-=(const FieldElem& o);
    FieldElem& operator*=(const FieldElem& o);
    FieldElem& operator/=(const FieldElem& o);

    friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
    friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
    friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
    friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }
    friend bool operator==(const FieldElem&, const FieldElem&) = default;
    /// Ordered by real value.
    friend bool operator<(const FieldElem& a, const FieldElem& b) { return (a - b).sign() < 0; }

    Decimal to_decimal() const;
    std::string str() const;

private:
    Rational x_, y_;
};

template <class T>
struct BasicSphere {
    T cobar{}, curv{};
    std::array<T, 3> scaled_center{};

    friend bool operator==(const BasicSphere&, const BasicSphere&) = default;
};

template <class T>
struct BasicConfiguration {
    std::array<BasicSphere<T>, 5> rows{};

    friend bool operator==(const BasicConfiguration&, const BasicConfiguration&) = default;
};

using InversiveSphere = BasicSphere<FieldElem>;
using ApproxSphere = BasicSphere<Decimal>;
using Configuration = BasicConfiguration<FieldElem>;
using ApproxConfiguration = BasicConfiguration<Decimal>;

FieldElem lorentz_inner(const InversiveSphere& u, const InversiveSphere& v);
Decimal lorentz_inner(const ApproxSphere& u, const ApproxSphere& v);

/// Sphere with curvature b != 0 and center z, oriented by the sign of b.
InversiveSphere make_sphere(const Rational& curvature, const std::array<FieldElem, 3>& center);

/// Applies the word left to right, as apply_word does on quintuples.
Configuration transform(const std::vector<int>& word, const Configuration& w);
ApproxConfiguration transform(const std::vector<int>& word, const ApproxConfiguration& w);

/// Curvature column; throws DomainError if some curvature is not an integer.
Quintuple curvature_column(const Configuration& w);
Quintuple curvature_column(const ApproxConfiguration& w);

/// Every self product equals 1 and every pair -1.
bool has_tangency_gram(const Configuration& w);
bool has_tangency_gram(const ApproxConfiguration& w, const Decimal& tolerance);

struct RealizeOptions {
    /// Skip the exact attempt (used to exercise the fallback).
    bool force_approximate = false;
};

struct Realization {
    bool approximate = false;
    std::optional<Configuration> exact;
    std::optional<ApproxConfiguration> approx;
    /// Rows used to fix the gauge: the bounding sphere at the origin, the sphere whose
    /// tangency point with it lies on the positive z axis, and the one rotated into the xz-plane
    /// (up to the sqrt3 twist needed to stay in the field).
    int bounding = 0, axis = 0, plane = 0;
};

/// Tolerance used by every approximate comparison.
const Decimal& approximate_tolerance();

/// Exact realization over Q(sqrt3), else the 50-digit fallback. The packing's root must contain
/// a bounding sphere (negative curvature); a non-root quintuple is realized by realizing its
/// root and replaying the reduction word. Throws DomainError for packings bounded by planes.
Realization realize(const Quintuple& v, const RealizeOptions& opts = {});

/// Exact attempt only; throws NoExactRealization when every gauge choice fails.
Configuration realize_exact(const Quintuple& v);

struct SphereCensus {
    std::int64_t bound = 0;
    bool approximate = false;
    /// Distinct spheres with curvature <= bound, sorted by curvature then center.
    std::vector<InversiveSphere> spheres;
    std::vector<ApproxSphere> approx_spheres;
    /// Orbit quintuples visited.
    std::uint64_t configurations = 0;

    std::size_t size() const { return approximate ? approx_spheres.size() : spheres.size(); }
    std::map<std::int64_t, std::uint64_t> curvature_counts() const;
};

/// Walks every orbit configuration whose curvatures are all <= bound and keeps each sphere once.
SphereCensus sphere_census(const Quintuple& root, std::int64_t bound, const RealizeOptions& opts = {});

/// Number of distinct whole configurations reached by breadth-first search within the bound.
std::uint64_t distinct_configurations(const Quintuple& root, std::int64_t bound);

/// JSON array of {center, radius, curvature, precision, exact}; numbers are decimal strings.
std::string export_scene(const std::vector<InversiveSphere>& spheres, int digits = 30);
std::string export_scene(const std::vector<ApproxSphere>& spheres, int digits = 30);
std::string export_scene(const SphereCensus& census, int digits = 30);

}  // namespace soddy
