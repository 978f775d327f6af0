#pragma once

// Geometric objects built from plane quadrics and the assembly of the code
//   K = C ∪ N ∪ Π_e ∪ Π_i
// of planes of PG(5, q) pairwise meeting in at most a point.
//
//   C    orbit of the circumscribed-bundle plane under PGL(3, q)
//   N    planes of quadrics singular at a rational point
//   Π_e  one plane per unordered pair of rational points
//   Π_i  one plane per conjugate pair of points of PG(2, q^2) \ PG(2, q)

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "quadcode/galois.hpp"
#include "quadcode/groups.hpp"
#include "quadcode/projgeom.hpp"
#include "quadcode/quadrics.hpp"

namespace quadcode {

/// Per-q precomputation shared by the construction and the checks.
struct Context {
    unsigned q = 0;
    FieldPtr field;
    PlaneGeometry plane;
    std::shared_ptr<const Tower> quadratic; // GF(q) inside GF(q^2)
    SingerData singer;

    explicit Context(unsigned q);
    const Field& F() const { return *field; }
};

struct Bundle {
    std::vector<PlaneQuadric> conics;
    /// Rational points of each conic, parallel to `conics`.
    std::vector<std::vector<ProjPoint>> conic_points;
    Subspace plane;
    std::array<ProjPoint, 3> triangle;
};

/// Conics through the Singer triangle.  Throws std::logic_error when the
/// solution space is not 3-dimensional or a member is degenerate.
Bundle circumscribed_bundle(const Context& ctx);

/// Index of the unique bundle conic through two distinct rational points.
std::size_t bundle_conic_through(const Context& ctx, const Bundle& B, const ProjPoint& P1, const ProjPoint& P2);
/// Index of the unique bundle conic through a point of PG(2, q^2) \ PG(2, q).
std::size_t bundle_conic_through(const Context& ctx, const Bundle& B, const ProjPoint& P_ext);

/// Plane of quadrics singular at A.
Subspace net_plane(const Field& F, const ProjPoint& A);
/// Plane of quadrics containing the line l.
Subspace tangent_plane(const Field& F, const ProjLine2& l);

enum class SolidFlavor { Hyperbolic, Elliptic };

struct Solid {
    SolidFlavor flavor;
    /// Two rational points, or P and P^q in PG(2, q^2).
    std::array<ProjPoint, 2> defining;
    ProjLine2 line; // the rational line through the defining points
    Subspace space;
    Subspace tangent_plane;
    std::vector<ProjPoint> quadric3; // sorted
};

Solid hyperbolic_solid(const Context& ctx, const ProjPoint& P1, const ProjPoint& P2);
/// P_ext is a point of PG(2, q^2) \ PG(2, q).
Solid elliptic_solid(const Context& ctx, const ProjPoint& P_ext);

/// Unspecified marks planes read from files without a provenance column.
enum class Provenance { BundleOrbit, NetN, PiE, PiI, Unspecified };
std::string_view to_string(Provenance p);
/// Throws std::invalid_argument on unknown tags.
Provenance provenance_from_string(std::string_view s);

struct CodePlane {
    Subspace space;
    Provenance provenance;
    std::string datum; // defining data, whitespace-free

    auto operator<=>(const CodePlane&) const = default;
};

struct Code {
    unsigned q = 0;
    std::vector<CodePlane> planes;

    std::size_t count(Provenance p) const;
    std::vector<Subspace> spaces() const;
    bool operator==(const Code&) const = default;
};

struct FamilySizes {
    std::uint64_t bundle_orbit, net, pi_e, pi_i;
    std::uint64_t total() const { return bundle_orbit + net + pi_e + pi_i; }
};
/// q^3(q^2-1)(q-1)/3, q^2+q+1, q(q+1)(q^2+q+1)/2, q(q-1)(q^2+q+1)/2
FamilySizes expected_sizes(std::uint64_t q);

/// Bi-lines t_{P1} r, t_{P2} r and (P P1)(P P2) for P on the bundle conic
/// through P1, P2 other than them; r = P1P2.
std::vector<PlaneQuadric> pi_e_generators(const Context& ctx, const Bundle& B, const ProjPoint& P1, const ProjPoint& P2);
CodePlane pi_e(const Context& ctx, const Bundle& B, const ProjPoint& P1, const ProjPoint& P2);
/// Imaginary bi-lines (XP)(XP^q) for X on the bundle conic through P.
std::vector<PlaneQuadric> pi_i_generators(const Context& ctx, const Bundle& B, const ProjPoint& P_ext);
CodePlane pi_i(const Context& ctx, const Bundle& B, const ProjPoint& P_ext);

/// Coordinatewise q-power of a point of PG(2, q^2).
ProjPoint conjugate(const Tower& T, const ProjPoint& P);
/// One representative (the smaller) of each pair {P, P^q} of non-rational points.
std::vector<ProjPoint> conjugate_pair_representatives(const Context& ctx);

/// Assembles the code; planes sorted lexicographically.  Throws
/// std::logic_error on duplicate planes or a size mismatch.
Code build_code(const Context& ctx);
Code build_code(unsigned q);

} // namespace quadcode
