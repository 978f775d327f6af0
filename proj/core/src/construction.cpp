#include "quadcode/construction.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace quadcode {

Context::Context(unsigned q_)
    : q(q_), field(Field::of_order(q_)), plane(field), quadratic(std::make_shared<Tower>(field, 2)),
      singer(quadcode::singer(field)) {}

namespace {

bool rational(const Tower& T, const ProjPoint& P) {
    return std::all_of(P.coords.begin(), P.coords.end(), [&](Elem x) { return T.in_base(x); });
}

ProjPoint embed_point(const Tower& T, const ProjPoint& P) {
    ProjPoint out = P;
    for (auto& x : out.coords) x = T.embed(x);
    return out;
}

ProjPoint restrict_point(const Tower& T, const ProjPoint& P) {
    ProjPoint out = P;
    for (auto& x : out.coords) {
        auto r = T.restrict(x);
        if (!r) throw std::logic_error("point is not rational");
        x = *r;
    }
    return out;
}

// GF(q)-linear conditions on coefficients for Q(P) = 0 with P over an extension.
void append_vanishing_rows(const Tower& T, const ProjPoint& P, Matrix& rows) {
    const Coeffs m = monomials(T.ext(), P.coords);
    std::vector<std::vector<Elem>> comps;
    for (Elem x : m) comps.push_back(T.components(x));
    for (unsigned i = 0; i < T.degree(); ++i) {
        std::vector<Elem> row(6);
        for (int j = 0; j < 6; ++j) row[j] = comps[j][i];
        rows.append_row(row);
    }
}

// Quadric in 4 variables: dense over exponent tuples with each exponent < 4.
using Dense4 = std::array<Elem, 256>;

std::size_t mono_index(const std::array<int, 4>& e) { return e[0] * 64 + e[1] * 16 + e[2] * 4 + e[3]; }

// Splits S ∩ space into the tangent plane and the 3-dimensional quadric by
// dividing the restricted cubic by the plane's linear form.
void decompose(const Context& ctx, Solid& s) {
    const Field& F = ctx.F();
    const std::uint64_t q = ctx.q;
    s.tangent_plane = tangent_plane(F, s.line);
    if (!s.space.contains(F, s.tangent_plane)) throw std::logic_error("tangent plane is not inside the solid");

    std::array<std::array<Elem, 6>, 4> basis{};
    bool have_extra = false;
    for (std::size_t r = 0; r < s.space.rank() && !have_extra; ++r) {
        const auto row = s.space.row(r);
        if (!s.tangent_plane.contains(F, row)) {
            std::copy(row.begin(), row.end(), basis[0].begin());
            have_extra = true;
        }
    }
    if (!have_extra) throw std::logic_error("solid equals its tangent plane");
    for (std::size_t r = 0; r < 3; ++r) {
        const auto row = s.tangent_plane.row(r);
        std::copy(row.begin(), row.end(), basis[r + 1].begin());
    }

    // cubic terms (coefficient, x_a x_b x_c)
    struct Term {
        Elem coef;
        int a, b, c;
    };
    std::vector<Term> terms;
    if (F.characteristic() == 2) {
        terms = {{1, 3, 4, 5}, {1, 0, 5, 5}, {1, 1, 4, 4}, {1, 2, 3, 3}};
    } else {
        const Elem m1 = F.neg(1);
        terms = {{F.from_int(4), 0, 1, 2}, {1, 3, 4, 5}, {m1, 0, 5, 5}, {m1, 1, 4, 4}, {m1, 2, 3, 3}};
    }
    Dense4 cubic{};
    for (const auto& t : terms) {
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k) {
                    const Elem c =
                        F.mul(t.coef, F.mul(basis[i][t.a], F.mul(basis[j][t.b], basis[k][t.c])));
                    if (c == 0) continue;
                    std::array<int, 4> e{};
                    ++e[i];
                    ++e[j];
                    ++e[k];
                    cubic[mono_index(e)] = F.add(cubic[mono_index(e)], c);
                }
    }
    Dense4 quad{};
    for (int e0 = 0; e0 <= 3; ++e0)
        for (int e1 = 0; e1 <= 3 - e0; ++e1)
            for (int e2 = 0; e2 <= 3 - e0 - e1; ++e2) {
                const int e3 = 3 - e0 - e1 - e2;
                const Elem c = cubic[mono_index({e0, e1, e2, e3})];
                if (e0 == 0) {
                    if (c != 0) throw std::logic_error("restricted cubic is not divisible by the tangent plane");
                } else {
                    quad[mono_index({e0 - 1, e1, e2, e3})] = c;
                }
            }

    s.quadric3.clear();
    for (const auto& y : enumerate_points(F, 3)) {
        Elem v = 0;
        for (int e0 = 0; e0 <= 2; ++e0)
            for (int e1 = 0; e1 <= 2 - e0; ++e1)
                for (int e2 = 0; e2 <= 2 - e0 - e1; ++e2) {
                    const int e3 = 2 - e0 - e1 - e2;
                    const Elem c = quad[mono_index({e0, e1, e2, e3})];
                    if (c == 0) continue;
                    v = F.add(v, F.mul(c, F.mul(F.mul(F.pow(y[0], e0), F.pow(y[1], e1)),
                                                F.mul(F.pow(y[2], e2), F.pow(y[3], e3)))));
                }
        if (v != 0) continue;
        std::array<Elem, 6> x{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 6; ++j) x[j] = F.add(x[j], F.mul(y[i], basis[i][j]));
        s.quadric3.push_back(normalize(F, x));
    }
    std::sort(s.quadric3.begin(), s.quadric3.end());

    // S ∩ space must be exactly quadric3 ∪ tangent plane
    std::size_t on_cubic = 0, in_union = 0;
    for (const auto& P : s.space.points(F)) {
        const bool c = cubic_value(F, P.coords) == 0;
        const bool u = s.tangent_plane.contains(F, P.coords) ||
                       std::binary_search(s.quadric3.begin(), s.quadric3.end(), P);
        if (c != u) throw std::logic_error("solid does not split into its quadric and tangent plane");
        on_cubic += c;
        in_union += u;
    }
    const std::size_t expected = s.flavor == SolidFlavor::Hyperbolic ? (q + 1) * (q + 1) : q * q + 1;
    if (s.quadric3.size() != expected) throw std::logic_error("3-dimensional quadric has the wrong size");
}

} // namespace

Bundle circumscribed_bundle(const Context& ctx) {
    const Field& F = ctx.F();
    Matrix rows(0, 6);
    append_vanishing_rows(*ctx.singer.cubic, ctx.singer.triangle[0], rows);
    const Matrix sol = nullspace(F, rows);
    if (sol.rows != 3) throw std::logic_error("circumscribed bundle is not a net");
    Bundle B;
    B.plane = Subspace::span(F, sol);
    B.triangle = ctx.singer.triangle;
    for (const auto& P : B.plane.points(F)) {
        PlaneQuadric Q = PlaneQuadric::from_point(P);
        if (classify(ctx.plane, Q).kind != QuadricKind::Conic) throw std::logic_error("degenerate quadric in the bundle");
        B.conic_points.push_back(rational_points(ctx.plane, Q));
        B.conics.push_back(Q);
    }
    return B;
}

std::size_t bundle_conic_through(const Context& ctx, const Bundle& B, const ProjPoint& P1, const ProjPoint& P2) {
    if (P1 == P2) throw std::invalid_argument("bundle_conic_through needs two distinct points");
    std::size_t found = B.conics.size(), hits = 0;
    for (std::size_t i = 0; i < B.conics.size(); ++i) {
        if (evaluate(ctx.F(), B.conics[i], P1) == 0 && evaluate(ctx.F(), B.conics[i], P2) == 0) {
            found = i;
            ++hits;
        }
    }
    if (hits != 1) throw std::logic_error("expected exactly one bundle conic through two points");
    return found;
}

std::size_t bundle_conic_through(const Context& ctx, const Bundle& B, const ProjPoint& P_ext) {
    const Tower& T = *ctx.quadratic;
    if (rational(T, P_ext)) throw std::invalid_argument("point must not be rational");
    std::size_t found = B.conics.size(), hits = 0;
    for (std::size_t i = 0; i < B.conics.size(); ++i) {
        if (evaluate(T, B.conics[i], P_ext.coords) == 0) {
            found = i;
            ++hits;
        }
    }
    if (hits != 1) throw std::logic_error("expected exactly one bundle conic through a non-rational point");
    return found;
}

Subspace net_plane(const Field& F, const ProjPoint& A) {
    Matrix rows(0, 6);
    rows.append_row(monomials(F, A.coords));
    const Coeffs mA = monomials(F, A.coords);
    for (int i = 0; i < 3; ++i) {
        std::array<Elem, 3> e{}, s = {A[0], A[1], A[2]};
        e[i] = 1;
        s[i] = F.add(s[i], 1);
        const Coeffs ms = monomials(F, s), me = monomials(F, e);
        std::vector<Elem> row(6);
        for (int j = 0; j < 6; ++j) row[j] = F.sub(F.sub(ms[j], mA[j]), me[j]);
        rows.append_row(row);
    }
    const Matrix sol = nullspace(F, rows);
    if (sol.rows != 3) throw std::logic_error("quadrics singular at a point do not form a net");
    return Subspace::span(F, sol);
}

Subspace tangent_plane(const Field& F, const ProjLine2& l) {
    std::vector<Elem> rows;
    for (int i = 0; i < 3; ++i) {
        std::array<Elem, 3> e{};
        e[i] = 1;
        const Coeffs c = product_coeffs(F, l.dual.coords, e);
        rows.insert(rows.end(), c.begin(), c.end());
    }
    return Subspace::span(F, 6, rows);
}

Solid hyperbolic_solid(const Context& ctx, const ProjPoint& P1, const ProjPoint& P2) {
    const Field& F = ctx.F();
    if (P1 == P2) throw std::invalid_argument("hyperbolic solids need two distinct points");
    Matrix rows(0, 6);
    rows.append_row(monomials(F, P1.coords));
    rows.append_row(monomials(F, P2.coords));
    const Matrix sol = nullspace(F, rows);
    if (sol.rows != 4) throw std::logic_error("web through two points is not 4-dimensional");
    Solid s{SolidFlavor::Hyperbolic, {P1, P2}, line_through(F, P1, P2), Subspace::span(F, sol), {}, {}};
    decompose(ctx, s);
    return s;
}

Solid elliptic_solid(const Context& ctx, const ProjPoint& P_ext) {
    const Tower& T = *ctx.quadratic;
    const Field& F = ctx.F();
    if (rational(T, P_ext)) throw std::invalid_argument("elliptic solids need a non-rational point");
    const ProjPoint Pc = conjugate(T, P_ext);
    Matrix rows(0, 6);
    append_vanishing_rows(T, P_ext, rows);
    const Matrix sol = nullspace(F, rows);
    if (sol.rows != 4) throw std::logic_error("web through a conjugate pair is not 4-dimensional");
    const ProjPoint dual = normalize(T.ext(), cross(T.ext(), P_ext.coords, Pc.coords));
    Solid s{SolidFlavor::Elliptic, {P_ext, Pc}, ProjLine2{restrict_point(T, dual)}, Subspace::span(F, sol), {}, {}};
    decompose(ctx, s);
    return s;
}

std::string_view to_string(Provenance p) {
    switch (p) {
    case Provenance::BundleOrbit: return "bundle-orbit";
    case Provenance::NetN: return "net";
    case Provenance::PiE: return "pi-e";
    case Provenance::PiI: return "pi-i";
    case Provenance::Unspecified: return "-";
    }
    return "?";
}

Provenance provenance_from_string(std::string_view s) {
    for (auto p : {Provenance::BundleOrbit, Provenance::NetN, Provenance::PiE, Provenance::PiI, Provenance::Unspecified}) {
        if (to_string(p) == s) return p;
    }
    throw std::invalid_argument("unknown provenance tag: " + std::string(s));
}

std::size_t Code::count(Provenance p) const {
    return static_cast<std::size_t>(
        std::count_if(planes.begin(), planes.end(), [p](const CodePlane& c) { return c.provenance == p; }));
}

std::vector<Subspace> Code::spaces() const {
    std::vector<Subspace> out;
    out.reserve(planes.size());
    for (const auto& p : planes) out.push_back(p.space);
    return out;
}

FamilySizes expected_sizes(std::uint64_t q) {
    const std::uint64_t pts = q * q + q + 1;
    return {q * q * q * (q * q - 1) * (q - 1) / 3, pts, q * (q + 1) * pts / 2, q * (q - 1) * pts / 2};
}

std::vector<PlaneQuadric> pi_e_generators(const Context& ctx, const Bundle& B, const ProjPoint& P1,
                                          const ProjPoint& P2) {
    const Field& F = ctx.F();
    const std::size_t ci = bundle_conic_through(ctx, B, P1, P2);
    const PlaneQuadric& C = B.conics[ci];
    const ProjLine2 r = line_through(F, P1, P2);
    std::vector<PlaneQuadric> gens{product_of_forms(F, tangent_line(F, C, P1).dual.coords, r.dual.coords),
                                   product_of_forms(F, tangent_line(F, C, P2).dual.coords, r.dual.coords)};
    for (const auto& P : B.conic_points[ci]) {
        if (P == P1 || P == P2) continue;
        gens.push_back(
            product_of_forms(F, line_through(F, P, P1).dual.coords, line_through(F, P, P2).dual.coords));
    }
    return gens;
}

namespace {

Subspace span_quadrics(const Field& F, const std::vector<PlaneQuadric>& gens) {
    std::vector<Elem> rows;
    for (const auto& g : gens) rows.insert(rows.end(), g.coeffs().begin(), g.coeffs().end());
    return Subspace::span(F, 6, rows);
}

} // namespace

CodePlane pi_e(const Context& ctx, const Bundle& B, const ProjPoint& P1, const ProjPoint& P2) {
    const Subspace s = span_quadrics(ctx.F(), pi_e_generators(ctx, B, P1, P2));
    if (s.rank() != 3) throw std::logic_error("pi_e generators do not span a plane");
    const auto& [a, b] = std::minmax(P1, P2);
    return {s, Provenance::PiE, a.str() + b.str()};
}

std::vector<PlaneQuadric> pi_i_generators(const Context& ctx, const Bundle& B, const ProjPoint& P_ext) {
    const Tower& T = *ctx.quadratic;
    const std::size_t ci = bundle_conic_through(ctx, B, P_ext);
    std::vector<PlaneQuadric> gens;
    for (const auto& X : B.conic_points[ci]) {
        const auto L = cross(T.ext(), embed_point(T, X).coords, P_ext.coords);
        gens.push_back(product_of_conjugate_forms(T, L));
    }
    return gens;
}

CodePlane pi_i(const Context& ctx, const Bundle& B, const ProjPoint& P_ext) {
    const Subspace s = span_quadrics(ctx.F(), pi_i_generators(ctx, B, P_ext));
    if (s.rank() != 3) throw std::logic_error("pi_i generators do not span a plane");
    const ProjPoint rep = std::min(P_ext, conjugate(*ctx.quadratic, P_ext));
    return {s, Provenance::PiI, rep.str()};
}

ProjPoint conjugate(const Tower& T, const ProjPoint& P) {
    ProjPoint out = P;
    for (auto& x : out.coords) x = T.frobenius(x);
    return normalize(T.ext(), out.coords);
}

std::vector<ProjPoint> conjugate_pair_representatives(const Context& ctx) {
    const Tower& T = *ctx.quadratic;
    std::vector<ProjPoint> out;
    for (const auto& P : enumerate_points(T.ext(), 2)) {
        if (rational(T, P)) continue;
        if (P < conjugate(T, P)) out.push_back(P);
    }
    return out;
}

Code build_code(const Context& ctx) {
    const Field& F = ctx.F();
    Code code;
    code.q = ctx.q;
    const Bundle B = circumscribed_bundle(ctx);

    const auto orbit = orbit_subspaces(F, B.plane, pgl_generators(F, ctx.singer));
    for (std::size_t i = 0; i < orbit.size(); ++i) {
        code.planes.push_back({orbit[i], Provenance::BundleOrbit, "g" + std::to_string(i)});
    }
    const auto& pts = ctx.plane.points;
    for (const auto& A : pts) code.planes.push_back({net_plane(F, A), Provenance::NetN, A.str()});
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) code.planes.push_back(pi_e(ctx, B, pts[i], pts[j]));
    for (const auto& P : conjugate_pair_representatives(ctx)) code.planes.push_back(pi_i(ctx, B, P));

    std::unordered_set<Subspace, SubspaceHash> seen;
    for (const auto& p : code.planes) {
        if (!seen.insert(p.space).second) throw std::logic_error("duplicate plane in the assembled code");
    }
    const FamilySizes want = expected_sizes(ctx.q);
    if (code.count(Provenance::BundleOrbit) != want.bundle_orbit || code.count(Provenance::NetN) != want.net ||
        code.count(Provenance::PiE) != want.pi_e || code.count(Provenance::PiI) != want.pi_i) {
        throw std::logic_error("family sizes do not match the construction");
    }
    std::sort(code.planes.begin(), code.planes.end());
    return code;
}

Code build_code(unsigned q) {
    return build_code(Context(q));
}

} // namespace quadcode
