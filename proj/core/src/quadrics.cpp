#include "quadcode/quadrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace quadcode {

PlaneQuadric::PlaneQuadric(const Field& F, const Coeffs& c) {
    const ProjPoint P = normalize(F, c);
    std::copy(P.coords.begin(), P.coords.end(), c_.begin());
}

PlaneQuadric PlaneQuadric::from_point(const ProjPoint& P) {
    if (P.size() != 6) throw std::invalid_argument("quadric coefficient point must have 6 coordinates");
    auto it = std::find_if(P.coords.begin(), P.coords.end(), [](Elem x) { return x != 0; });
    if (it == P.coords.end() || *it != 1) throw std::invalid_argument("coefficient point is not normalized");
    PlaneQuadric Q;
    std::copy(P.coords.begin(), P.coords.end(), Q.c_.begin());
    return Q;
}

std::string_view to_string(QuadricKind k) {
    switch (k) {
    case QuadricKind::RepeatedLine: return "repeated-line";
    case QuadricKind::BiLine: return "bi-line";
    case QuadricKind::ImaginaryBiLine: return "imaginary-bi-line";
    case QuadricKind::Conic: return "conic";
    }
    return "?";
}

PlaneGeometry::PlaneGeometry(FieldPtr F) : field(std::move(F)), points(enumerate_points(*field, 2)) {
    lines.reserve(points.size());
    for (const auto& P : points) lines.push_back(ProjLine2{P});
}

Coeffs monomials(const Field& F, std::span<const Elem> x) {
    return {F.mul(x[0], x[0]), F.mul(x[1], x[1]), F.mul(x[2], x[2]),
            F.mul(x[0], x[1]), F.mul(x[0], x[2]), F.mul(x[1], x[2])};
}

Elem evaluate(const Field& F, const Coeffs& c, std::span<const Elem> x) {
    if (x.size() != 3) throw std::invalid_argument("plane points have 3 coordinates");
    const Coeffs m = monomials(F, x);
    Elem s = 0;
    for (int i = 0; i < 6; ++i) s = F.add(s, F.mul(c[i], m[i]));
    return s;
}

Elem evaluate(const Field& F, const PlaneQuadric& Q, const ProjPoint& P) {
    return evaluate(F, Q.coeffs(), P.coords);
}

Elem evaluate(const Tower& T, const PlaneQuadric& Q, std::span<const Elem> x_ext) {
    Coeffs c{};
    for (int i = 0; i < 6; ++i) c[i] = T.embed(Q[i]);
    return evaluate(T.ext(), c, x_ext);
}

Elem polar_form(const Field& F, const Coeffs& c, std::span<const Elem> x, std::span<const Elem> y) {
    std::array<Elem, 3> s{};
    for (int i = 0; i < 3; ++i) s[i] = F.add(x[i], y[i]);
    return F.sub(F.sub(evaluate(F, c, s), evaluate(F, c, x)), evaluate(F, c, y));
}

Elem polar_form(const Field& F, const PlaneQuadric& Q, const ProjPoint& x, const ProjPoint& y) {
    return polar_form(F, Q.coeffs(), x.coords, y.coords);
}

Matrix polar_matrix(const Field& F, const Coeffs& c) {
    Matrix m(3, 3);
    m(0, 0) = F.add(c[0], c[0]);
    m(1, 1) = F.add(c[1], c[1]);
    m(2, 2) = F.add(c[2], c[2]);
    m(0, 1) = m(1, 0) = c[3];
    m(0, 2) = m(2, 0) = c[4];
    m(1, 2) = m(2, 1) = c[5];
    return m;
}

Elem cubic_value(const Field& F, std::span<const Elem> x) {
    if (x.size() != 6) throw std::invalid_argument("points of PG(5,q) have 6 coordinates");
    const Elem a = x[0], b = x[1], c = x[2], d = x[3], e = x[4], f = x[5];
    const Elem def = F.mul(F.mul(d, e), f);
    const Elem squares = F.add(F.add(F.mul(a, F.mul(f, f)), F.mul(b, F.mul(e, e))), F.mul(c, F.mul(d, d)));
    if (F.characteristic() == 2) return F.add(def, squares);
    const Elem abc4 = F.mul(F.from_int(4), F.mul(F.mul(a, b), c));
    return F.sub(F.add(abc4, def), squares);
}

namespace {

// (B(x, e1), B(x, e2), B(x, e3))
std::array<Elem, 3> gradient(const Field& F, const Coeffs& c, std::span<const Elem> x) {
    const Elem a2 = F.add(c[0], c[0]), b2 = F.add(c[1], c[1]), c2 = F.add(c[2], c[2]);
    return {F.add(F.add(F.mul(a2, x[0]), F.mul(c[3], x[1])), F.mul(c[4], x[2])),
            F.add(F.add(F.mul(c[3], x[0]), F.mul(b2, x[1])), F.mul(c[5], x[2])),
            F.add(F.add(F.mul(c[4], x[0]), F.mul(c[5], x[1])), F.mul(c2, x[2]))};
}

} // namespace

QuadricClass classify(const PlaneGeometry& G, std::span<const Elem> coeffs) {
    const Field& F = G.F();
    Coeffs c{};
    std::copy(coeffs.begin(), coeffs.end(), c.begin());
    std::size_t zeros = 0, singular = 0;
    std::optional<ProjPoint> sing, first_zero;
    for (const auto& P : G.points) {
        if (evaluate(F, c, P.coords) != 0) continue;
        ++zeros;
        if (!first_zero) first_zero = P;
        const auto g = gradient(F, c, P.coords);
        if (g[0] == 0 && g[1] == 0 && g[2] == 0) {
            ++singular;
            if (!sing) sing = P;
        }
    }
    const std::size_t q = F.order();
    QuadricClass out{QuadricKind::Conic, std::nullopt, std::nullopt, zeros, singular};
    if (zeros == q + 1 && singular == q + 1) {
        out.kind = QuadricKind::RepeatedLine;
    } else if (zeros == 2 * q + 1 && singular == 1) {
        out.kind = QuadricKind::BiLine;
        out.center = sing;
    } else if (zeros == 1 && singular == 1) {
        out.kind = QuadricKind::ImaginaryBiLine;
        out.center = sing;
    } else if (zeros == q + 1 && singular == 0) {
        out.kind = QuadricKind::Conic;
        if (F.characteristic() == 2) out.nucleus = nucleus(F, PlaneQuadric(F, c));
    } else {
        throw std::logic_error("quadric with unexpected point counts");
    }
    return out;
}

QuadricClass classify(const PlaneGeometry& G, const PlaneQuadric& Q) {
    return classify(G, Q.coeffs());
}

ProjPoint veronese(const PlaneQuadric& Q) {
    return ProjPoint{std::vector<Elem>(Q.coeffs().begin(), Q.coeffs().end())};
}

PlaneQuadric inverse_veronese(const ProjPoint& P) {
    return PlaneQuadric::from_point(P);
}

Coeffs product_coeffs(const Field& F, std::span<const Elem> L, std::span<const Elem> M) {
    auto cross_term = [&](int i, int j) { return F.add(F.mul(L[i], M[j]), F.mul(L[j], M[i])); };
    return {F.mul(L[0], M[0]), F.mul(L[1], M[1]), F.mul(L[2], M[2]), cross_term(0, 1), cross_term(0, 2),
            cross_term(1, 2)};
}

PlaneQuadric product_of_forms(const Field& F, std::span<const Elem> L, std::span<const Elem> M) {
    if (L.size() != 3 || M.size() != 3) throw std::invalid_argument("linear forms have 3 coefficients");
    return PlaneQuadric(F, product_coeffs(F, L, M));
}

PlaneQuadric product_of_conjugate_forms(const Tower& T, std::span<const Elem> L) {
    if (T.degree() != 2) throw std::invalid_argument("conjugate products need a quadratic extension");
    if (L.size() != 3) throw std::invalid_argument("linear forms have 3 coefficients");
    const Field& E = T.ext();
    const ProjPoint Ln = normalize(E, L);
    if (std::all_of(Ln.coords.begin(), Ln.coords.end(), [&](Elem x) { return T.in_base(x); })) {
        throw std::invalid_argument("linear form is proportional to a rational form");
    }
    std::array<Elem, 3> M{};
    for (int i = 0; i < 3; ++i) M[i] = T.frobenius(L[i]);
    const ProjPoint prod = normalize(E, product_coeffs(E, L, M));
    Coeffs down{};
    for (int i = 0; i < 6; ++i) {
        auto r = T.restrict(prod[i]);
        if (!r) throw std::invalid_argument("conjugate product does not descend to the base field");
        down[i] = *r;
    }
    return PlaneQuadric(T.base(), down);
}

PlaneQuadric product_of_forms(const Tower& T, std::span<const Elem> L, std::span<const Elem> M) {
    if (L.size() != 3 || M.size() != 3) throw std::invalid_argument("linear forms have 3 coefficients");
    for (int i = 0; i < 3; ++i) {
        if (M[i] != T.frobenius(L[i])) throw std::invalid_argument("second form is not the conjugate of the first");
    }
    return product_of_conjugate_forms(T, L);
}

ProjLine2 tangent_line(const Field& F, const PlaneQuadric& C, const ProjPoint& P) {
    if (evaluate(F, C, P) != 0) throw std::invalid_argument("point is not on the quadric");
    const auto g = gradient(F, C.coeffs(), P.coords);
    return ProjLine2{normalize(F, g)};
}

ProjLine2 polar_line(const Field& F, const PlaneQuadric& C, const ProjPoint& P) {
    if (F.characteristic() == 2) throw std::invalid_argument("polar lines need odd q");
    const Elem half = F.inv(F.from_int(2));
    const Coeffs& c = C.coeffs();
    const Elem h3 = F.mul(half, c[3]), h4 = F.mul(half, c[4]), h5 = F.mul(half, c[5]);
    const std::array<Elem, 3> u{F.add(F.add(F.mul(c[0], P[0]), F.mul(h3, P[1])), F.mul(h4, P[2])),
                                F.add(F.add(F.mul(h3, P[0]), F.mul(c[1], P[1])), F.mul(h5, P[2])),
                                F.add(F.add(F.mul(h4, P[0]), F.mul(h5, P[1])), F.mul(c[2], P[2]))};
    return ProjLine2{normalize(F, u)};
}

ProjPoint nucleus(const Field& F, const PlaneQuadric& C) {
    if (F.characteristic() != 2) throw std::invalid_argument("nuclei exist only for even q");
    const Matrix rad = nullspace(F, polar_matrix(F, C.coeffs()));
    if (rad.rows != 1) throw std::invalid_argument("quadric is not a conic");
    const ProjPoint N = normalize(F, rad.row(0));
    if (evaluate(F, C, N) == 0) throw std::invalid_argument("quadric is not a conic");
    return N;
}

std::vector<ProjPoint> rational_points(const PlaneGeometry& G, const PlaneQuadric& Q) {
    std::vector<ProjPoint> out;
    for (const auto& P : G.points) {
        if (evaluate(G.F(), Q, P) == 0) out.push_back(P);
    }
    return out;
}

} // namespace quadcode
