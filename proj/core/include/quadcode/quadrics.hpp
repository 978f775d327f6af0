#pragma once

// Plane quadrics of PG(2, q) and their coefficient points in PG(5, q).
//
// Coefficient order is (a11, a22, a33, a12, a13, a23) for
//   a11 X1^2 + a22 X2^2 + a33 X3^2 + a12 X1X2 + a13 X1X3 + a23 X2X3,
// so the Veronese image of a quadric is just its normalized coefficient tuple.

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "quadcode/galois.hpp"
#include "quadcode/projgeom.hpp"

namespace quadcode {

using Coeffs = std::array<Elem, 6>;

class PlaneQuadric {
  public:
    /// Normalizes; throws std::invalid_argument on the zero tuple.
    PlaneQuadric(const Field& F, const Coeffs& c);
    static PlaneQuadric from_point(const ProjPoint& P);

    const Coeffs& coeffs() const { return c_; }
    Elem operator[](std::size_t i) const { return c_[i]; }
    auto operator<=>(const PlaneQuadric&) const = default;

  private:
    PlaneQuadric() = default;
    Coeffs c_{};
};

enum class QuadricKind { RepeatedLine, BiLine, ImaginaryBiLine, Conic };
std::string_view to_string(QuadricKind k);

struct QuadricClass {
    QuadricKind kind;
    std::optional<ProjPoint> center;  // bi-lines of either kind: the common point of the lines
    std::optional<ProjPoint> nucleus; // conics, q even
    std::size_t rational_points;
    std::size_t singular_points;
};

/// Points and lines of PG(2, q), precomputed once per field.
struct PlaneGeometry {
    FieldPtr field;
    std::vector<ProjPoint> points;
    std::vector<ProjLine2> lines;

    explicit PlaneGeometry(FieldPtr F);
    const Field& F() const { return *field; }
};

/// The six degree-2 monomials at x, in coefficient order.
Coeffs monomials(const Field& F, std::span<const Elem> x);
Elem evaluate(const Field& F, const Coeffs& c, std::span<const Elem> x);
Elem evaluate(const Field& F, const PlaneQuadric& Q, const ProjPoint& P);
/// Evaluation at a point over an extension field; coefficients are embedded.
Elem evaluate(const Tower& T, const PlaneQuadric& Q, std::span<const Elem> x_ext);

/// B(x, y) = Q(x + y) - Q(x) - Q(y) on the given representatives.
Elem polar_form(const Field& F, const Coeffs& c, std::span<const Elem> x, std::span<const Elem> y);
Elem polar_form(const Field& F, const PlaneQuadric& Q, const ProjPoint& x, const ProjPoint& y);
/// Gram matrix of B: [[2a11, a12, a13], [a12, 2a22, a23], [a13, a23, 2a33]].
Matrix polar_matrix(const Field& F, const Coeffs& c);

/// Degeneracy cubic on PG(5, q).  Even q:
///   X4X5X6 + X1X6^2 + X2X5^2 + X3X4^2,
/// odd q (the determinant of the Gram matrix divided by 2):
///   4X1X2X3 + X4X5X6 - X1X6^2 - X2X5^2 - X3X4^2.
Elem cubic_value(const Field& F, std::span<const Elem> x);

/// Counts rational and singular points; singular means Q(P) = 0 and
/// B(P, e_i) = 0 for all i.
QuadricClass classify(const PlaneGeometry& G, const PlaneQuadric& Q);
QuadricClass classify(const PlaneGeometry& G, std::span<const Elem> coeffs);

ProjPoint veronese(const PlaneQuadric& Q);
PlaneQuadric inverse_veronese(const ProjPoint& P);

/// Coefficients of L * M for linear forms L, M (no normalization).
Coeffs product_coeffs(const Field& F, std::span<const Elem> L, std::span<const Elem> M);
PlaneQuadric product_of_forms(const Field& F, std::span<const Elem> L, std::span<const Elem> M);
/// L * L^q for a linear form over GF(q^2) that is not proportional to a
/// GF(q)-form; the product is scaled to descend to GF(q).  Throws
/// std::invalid_argument if the precondition fails.
PlaneQuadric product_of_conjugate_forms(const Tower& T, std::span<const Elem> L);
/// Checked form of the above: M must equal the coordinatewise conjugate of L.
PlaneQuadric product_of_forms(const Tower& T, std::span<const Elem> L, std::span<const Elem> M);

/// {X : B(P, X) = 0}; P must lie on the quadric.
ProjLine2 tangent_line(const Field& F, const PlaneQuadric& C, const ProjPoint& P);
/// Polar line through the symmetric matrix with entries a_ii, a_ij / 2 (q odd).
ProjLine2 polar_line(const Field& F, const PlaneQuadric& C, const ProjPoint& P);
/// Radical of B for a conic (q even).
ProjPoint nucleus(const Field& F, const PlaneQuadric& C);

/// Rational points of the quadric.
std::vector<ProjPoint> rational_points(const PlaneGeometry& G, const PlaneQuadric& Q);

} // namespace quadcode
