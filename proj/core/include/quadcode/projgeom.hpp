#pragma once

// Projective geometry over finite fields: points and lines of PG(2, .),
// canonical subspaces of PG(n, q) for n <= 5, and the Gaussian-elimination
// primitive everything else is built on.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "quadcode/galois.hpp"

namespace quadcode {

/// Dense row-major matrix over some Field.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Elem> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

    Elem& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    Elem operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::span<const Elem> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
    void append_row(std::span<const Elem> v);
};

/// Reduced row-echelon form in place on a rows x cols block; nonzero rows end
/// up first.  Returns the rank.
std::size_t rref_inplace(const Field& F, Elem* data, std::size_t rows, std::size_t cols);
/// Returns the rank and truncates m to its nonzero echelon rows.
std::size_t rref(const Field& F, Matrix& m);
std::size_t rank(const Field& F, Matrix m);
/// Basis (rows, echelon form) of {x : m x = 0}.
Matrix nullspace(const Field& F, const Matrix& m);
/// Determinant of a square matrix.
Elem determinant(const Field& F, Matrix m);

/// Normalized homogeneous coordinates: the first nonzero entry is 1.
struct ProjPoint {
    std::vector<Elem> coords;

    std::size_t size() const { return coords.size(); }
    Elem operator[](std::size_t i) const { return coords[i]; }
    auto operator<=>(const ProjPoint&) const = default;
    std::string str() const;
};

/// Throws std::invalid_argument on the zero vector.
ProjPoint normalize(const Field& F, std::span<const Elem> v);
std::vector<ProjPoint> enumerate_points(const Field& F, unsigned n);
/// (q^(n+1)-1)/(q-1)
std::uint64_t point_count(std::uint64_t q, unsigned n);
std::uint64_t gaussian_binomial(unsigned n, unsigned k, std::uint64_t q);

/// Line u1 X1 + u2 X2 + u3 X3 = 0 of PG(2, .), stored by normalized dual coordinates.
struct ProjLine2 {
    ProjPoint dual;

    auto operator<=>(const ProjLine2&) const = default;
};

Elem dot(const Field& F, std::span<const Elem> a, std::span<const Elem> b);
std::array<Elem, 3> cross(const Field& F, std::span<const Elem> a, std::span<const Elem> b);
bool on_line(const Field& F, const ProjLine2& l, const ProjPoint& P);
/// Throws std::invalid_argument when P == Q.
ProjLine2 line_through(const Field& F, const ProjPoint& P, const ProjPoint& Q);
std::vector<ProjPoint> points_on(const Field& F, const ProjLine2& l);
bool collinear(const Field& F, const ProjPoint& a, const ProjPoint& b, const ProjPoint& c);

/// Subspace of GF(q)^n, n <= 6, kept in reduced row-echelon form so that
/// equality and ordering are matrix comparisons.
class Subspace {
  public:
    static constexpr std::size_t kMaxAmbient = 6;

    Subspace() = default;
    /// Span of the given rows (flattened, each of length `ambient`).
    static Subspace span(const Field& F, std::size_t ambient, std::span<const Elem> rows);
    static Subspace span(const Field& F, const std::vector<ProjPoint>& points);
    static Subspace span(const Field& F, const Matrix& rows);
    /// Wraps a matrix that is already in reduced echelon form; throws if it is not.
    static Subspace from_echelon(const Field& F, std::size_t ambient, std::span<const Elem> rows);

    std::size_t ambient() const { return ambient_; }
    std::size_t rank() const { return rank_; }
    Elem at(std::size_t r, std::size_t c) const { return e_[r * ambient_ + c]; }
    std::vector<Elem> row(std::size_t r) const;
    /// rank x ambient entries, row-major.
    std::vector<Elem> flat() const;
    Matrix matrix() const;
    std::vector<std::size_t> pivots() const;

    bool contains(const Field& F, std::span<const Elem> v) const;
    bool contains(const Field& F, const Subspace& other) const;
    /// All (q^r - 1)/(q - 1) projective points, already normalized.
    std::vector<ProjPoint> points(const Field& F) const;

    /// Row-major entries packed base q, most significant first; numeric order
    /// equals lexicographic matrix order among subspaces of equal rank.
    std::uint64_t key(std::uint64_t q) const;

    auto operator<=>(const Subspace&) const = default;
    std::string str() const;

  private:
    std::uint8_t ambient_ = 0;
    std::uint8_t rank_ = 0;
    std::array<std::uint16_t, kMaxAmbient * kMaxAmbient> e_{};
};

struct SubspaceHash {
    std::size_t operator()(const Subspace& s) const noexcept;
};

/// rank(U stacked W)
std::size_t stacked_rank(const Field& F, const Subspace& U, const Subspace& W);
Subspace join(const Field& F, const Subspace& U, const Subspace& W);
Subspace meet(const Field& F, const Subspace& U, const Subspace& W);

struct SumMeetDims {
    std::size_t sum;
    std::size_t meet;
};
/// Vector dimensions of U + W and U ∩ W.
SumMeetDims dim_sum_meet(const Field& F, const Subspace& U, const Subspace& W);

/// Streams every rank-k subspace of GF(q)^n (k <= n <= 6) in pivot-set order.
void for_each_subspace(const Field& F, unsigned n, unsigned k, const std::function<void(const Subspace&)>& fn);
/// All planes of PG(5, q), sorted lexicographically.  Throws std::out_of_range
/// when q exceeds `max_q`.
std::vector<Subspace> enumerate_planes5(const Field& F, unsigned max_q = 5);

} // namespace quadcode
