#pragma once

// PGL(3, q), Singer cycles and their normalizer, and the induced action on
// quadric coefficients (the "lift" to PG(5, q)).
//
// Convention: points transform as P -> gP (column vectors) and quadrics as
// (g.Q)(X) = Q(g^{-1} X), so the Veronese map intertwines the two actions.

#include <array>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "quadcode/galois.hpp"
#include "quadcode/projgeom.hpp"
#include "quadcode/quadrics.hpp"

namespace quadcode {

using Mat3 = std::array<Elem, 9>;
using Mat6 = std::array<Elem, 36>;

Mat3 mat3_mul(const Field& F, const Mat3& a, const Mat3& b);
Elem mat3_det(const Field& F, const Mat3& a);
Mat3 mat3_identity();

/// Invertible 3x3 matrix up to scalars; canonical when the first nonzero entry
/// in row-major order is 1.
class GroupElement {
  public:
    /// Throws std::invalid_argument for singular matrices.
    GroupElement(const Field& F, const Mat3& m);
    static GroupElement identity() { return GroupElement(mat3_identity()); }

    const Mat3& matrix() const { return m_; }
    Elem operator()(std::size_t r, std::size_t c) const { return m_[r * 3 + c]; }
    auto operator<=>(const GroupElement&) const = default;

  private:
    explicit GroupElement(const Mat3& m) : m_(m) {}
    Mat3 m_;
};

GroupElement compose(const Field& F, const GroupElement& a, const GroupElement& b);
GroupElement inverse(const Field& F, const GroupElement& g);
GroupElement power(const Field& F, const GroupElement& g, std::uint64_t n);
/// Smallest n >= 1 with g^n = 1 projectively, searched up to `limit`; 0 if none.
std::uint64_t projective_order(const Field& F, const GroupElement& g, std::uint64_t limit);
GroupElement random_element(const Field& F, std::mt19937_64& rng);

ProjPoint act_point(const Field& F, const GroupElement& g, const ProjPoint& P);
/// Action on a point of PG(2, q^m) through the tower embedding.
ProjPoint act_point(const Tower& T, const GroupElement& g, const ProjPoint& P);
PlaneQuadric act_quadric(const Field& F, const GroupElement& g, const PlaneQuadric& Q);

/// Induced 6x6 action on coefficient vectors.
struct LiftedElement {
    Mat6 m{};

    std::array<Elem, 6> apply(const Field& F, std::span<const Elem> v) const;
    Subspace apply(const Field& F, const Subspace& U) const;
};

LiftedElement lift(const Field& F, const GroupElement& g);
LiftedElement compose(const Field& F, const LiftedElement& a, const LiftedElement& b);
bool projectively_equal(const Field& F, const LiftedElement& a, const LiftedElement& b);
std::uint64_t projective_order(const Field& F, const LiftedElement& a, std::uint64_t limit);

struct SingerData {
    std::shared_ptr<const Tower> cubic; // GF(q) inside GF(q^3)
    /// Minimal polynomial of the GF(q^3) generator over GF(q): c0, c1, c2, 1.
    std::array<Elem, 4> min_poly{};
    GroupElement generator = GroupElement::identity();
    GroupElement frob = GroupElement::identity();
    /// Fixed triangle in PG(2, q^3): P, P^sigma, P^sigma^2.
    std::array<ProjPoint, 3> triangle;
};

SingerData singer(const FieldPtr& F);

/// {Singer generator, I + E12, diag(g, 1, 1)} with g the field generator.
std::vector<GroupElement> pgl_generators(const Field& F, const SingerData& sd);

/// Orbit of a subspace under the group generated by `gens` (closed under
/// inverses), in BFS discovery order.  Throws std::length_error past `cap`.
std::vector<Subspace> orbit_subspaces(const Field& F, const Subspace& seed, const std::vector<GroupElement>& gens,
                                      std::size_t cap = 10'000'000);

struct SingerStructureReport {
    unsigned q = 0;
    std::size_t cubic_points = 0;        // |S|
    std::vector<std::size_t> orbit_sizes; // lifted Singer orbits on S
    bool orbits_are_caps = false;
    bool orbits_span = false;
    std::vector<Subspace> invariant_planes;
    bool invariant_planes_disjoint_from_cubic = false;
    bool invariant_planes_single_orbits = false;
    std::uint64_t lifted_order = 0;
};

/// Lifted Singer group structure on the cubic hypersurface; q must be odd.
SingerStructureReport singer_structure_report(const FieldPtr& F, const SingerData& sd);

/// No three of the given points of PG(n, q) collinear.
bool is_cap(const Field& F, const std::vector<ProjPoint>& pts);

} // namespace quadcode
