#include "quadcode/groups.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace quadcode {

namespace {

Mat3 canonical(const Field& F, Mat3 m) {
    auto it = std::find_if(m.begin(), m.end(), [](Elem x) { return x != 0; });
    if (it != m.end() && *it != 1) {
        const Elem s = F.inv(*it);
        for (auto& x : m) x = F.mul(x, s);
    }
    return m;
}

Mat3 mat3_inverse(const Field& F, const Mat3& a) {
    const Elem d = mat3_det(F, a);
    if (d == 0) throw std::invalid_argument("singular matrix");
    auto cof = [&](int r0, int r1, int c0, int c1) {
        return F.sub(F.mul(a[r0 * 3 + c0], a[r1 * 3 + c1]), F.mul(a[r0 * 3 + c1], a[r1 * 3 + c0]));
    };
    // adjugate
    Mat3 adj{cof(1, 2, 1, 2), F.neg(cof(0, 2, 1, 2)), cof(0, 1, 1, 2),
             F.neg(cof(1, 2, 0, 2)), cof(0, 2, 0, 2), F.neg(cof(0, 1, 0, 2)),
             cof(1, 2, 0, 1), F.neg(cof(0, 2, 0, 1)), cof(0, 1, 0, 1)};
    const Elem di = F.inv(d);
    for (auto& x : adj) x = F.mul(x, di);
    return adj;
}

Mat3 mat3_pow(const Field& F, Mat3 base, std::uint64_t n) {
    Mat3 r = mat3_identity();
    while (n > 0) {
        if (n & 1u) r = mat3_mul(F, r, base);
        base = mat3_mul(F, base, base);
        n >>= 1u;
    }
    return r;
}

std::uint64_t point_key(std::span<const Elem> v, std::uint64_t q) {
    std::uint64_t k = 0;
    for (Elem x : v) k = k * q + x;
    return k;
}

} // namespace

Mat3 mat3_identity() { return {1, 0, 0, 0, 1, 0, 0, 0, 1}; }

Mat3 mat3_mul(const Field& F, const Mat3& a, const Mat3& b) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Elem s = 0;
            for (int k = 0; k < 3; ++k) s = F.add(s, F.mul(a[i * 3 + k], b[k * 3 + j]));
            r[i * 3 + j] = s;
        }
    return r;
}

Elem mat3_det(const Field& F, const Mat3& a) {
    const Elem t0 = F.mul(a[0], F.sub(F.mul(a[4], a[8]), F.mul(a[5], a[7])));
    const Elem t1 = F.mul(a[1], F.sub(F.mul(a[3], a[8]), F.mul(a[5], a[6])));
    const Elem t2 = F.mul(a[2], F.sub(F.mul(a[3], a[7]), F.mul(a[4], a[6])));
    return F.add(F.sub(t0, t1), t2);
}

GroupElement::GroupElement(const Field& F, const Mat3& m) : m_(canonical(F, m)) {
    if (mat3_det(F, m) == 0) throw std::invalid_argument("group elements must be invertible");
}

GroupElement compose(const Field& F, const GroupElement& a, const GroupElement& b) {
    return GroupElement(F, mat3_mul(F, a.matrix(), b.matrix()));
}

GroupElement inverse(const Field& F, const GroupElement& g) {
    return GroupElement(F, mat3_inverse(F, g.matrix()));
}

GroupElement power(const Field& F, const GroupElement& g, std::uint64_t n) {
    return GroupElement(F, mat3_pow(F, g.matrix(), n));
}

std::uint64_t projective_order(const Field& F, const GroupElement& g, std::uint64_t limit) {
    const GroupElement id = GroupElement::identity();
    GroupElement cur = g;
    for (std::uint64_t n = 1; n <= limit; ++n) {
        if (cur == id) return n;
        cur = compose(F, cur, g);
    }
    return 0;
}

GroupElement random_element(const Field& F, std::mt19937_64& rng) {
    std::uniform_int_distribution<Elem> dist(0, F.order() - 1);
    while (true) {
        Mat3 m{};
        for (auto& x : m) x = dist(rng);
        if (mat3_det(F, m) != 0) return GroupElement(F, m);
    }
}

ProjPoint act_point(const Field& F, const GroupElement& g, const ProjPoint& P) {
    std::array<Elem, 3> v{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) v[i] = F.add(v[i], F.mul(g(i, k), P[k]));
    return normalize(F, v);
}

ProjPoint act_point(const Tower& T, const GroupElement& g, const ProjPoint& P) {
    const Field& E = T.ext();
    std::array<Elem, 3> v{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) v[i] = E.add(v[i], E.mul(T.embed(g(i, k)), P[k]));
    return normalize(E, v);
}

PlaneQuadric act_quadric(const Field& F, const GroupElement& g, const PlaneQuadric& Q) {
    return PlaneQuadric(F, lift(F, g).apply(F, Q.coeffs()));
}

std::array<Elem, 6> LiftedElement::apply(const Field& F, std::span<const Elem> v) const {
    std::array<Elem, 6> r{};
    for (int i = 0; i < 6; ++i) {
        Elem s = 0;
        for (int k = 0; k < 6; ++k) {
            if (v[k] != 0) s = F.add(s, F.mul(m[i * 6 + k], v[k]));
        }
        r[i] = s;
    }
    return r;
}

Subspace LiftedElement::apply(const Field& F, const Subspace& U) const {
    if (U.ambient() != 6) throw std::invalid_argument("lifted elements act on subspaces of GF(q)^6");
    std::array<Elem, 36> rows{};
    for (std::size_t r = 0; r < U.rank(); ++r) {
        std::array<Elem, 6> v{};
        for (int c = 0; c < 6; ++c) v[c] = U.at(r, c);
        const auto w = apply(F, v);
        std::copy(w.begin(), w.end(), rows.begin() + r * 6);
    }
    return Subspace::span(F, 6, std::span<const Elem>(rows.data(), U.rank() * 6));
}

LiftedElement lift(const Field& F, const GroupElement& g) {
    const Mat3 h = mat3_inverse(F, g.matrix());
    static constexpr std::array<std::array<int, 2>, 6> kMonomial{{{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}}};
    LiftedElement out;
    for (int j = 0; j < 6; ++j) {
        const auto [a, b] = kMonomial[j];
        const std::span<const Elem> ra(h.data() + a * 3, 3), rb(h.data() + b * 3, 3);
        const Coeffs col = product_coeffs(F, ra, rb);
        for (int i = 0; i < 6; ++i) out.m[i * 6 + j] = col[i];
    }
    return out;
}

LiftedElement compose(const Field& F, const LiftedElement& a, const LiftedElement& b) {
    LiftedElement r;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            Elem s = 0;
            for (int k = 0; k < 6; ++k) s = F.add(s, F.mul(a.m[i * 6 + k], b.m[k * 6 + j]));
            r.m[i * 6 + j] = s;
        }
    return r;
}

bool projectively_equal(const Field& F, const LiftedElement& a, const LiftedElement& b) {
    return normalize(F, a.m) == normalize(F, b.m);
}

std::uint64_t projective_order(const Field& F, const LiftedElement& a, std::uint64_t limit) {
    LiftedElement id;
    for (int i = 0; i < 6; ++i) id.m[i * 7] = 1;
    LiftedElement cur = a;
    for (std::uint64_t n = 1; n <= limit; ++n) {
        if (projectively_equal(F, cur, id)) return n;
        cur = compose(F, cur, a);
    }
    return 0;
}

SingerData singer(const FieldPtr& Fp) {
    const Field& F = *Fp;
    SingerData sd;
    sd.cubic = std::make_shared<Tower>(Fp, 3);
    const Tower& T = *sd.cubic;
    const Field& E = T.ext();

    // (x - w)(x - w^q)(x - w^q^2) = x^3 - s1 x^2 + s2 x - s3
    const Elem w0 = E.generator(), w1 = T.frobenius(w0, 1), w2 = T.frobenius(w0, 2);
    const Elem s1 = E.add(E.add(w0, w1), w2);
    const Elem s2 = E.add(E.add(E.mul(w0, w1), E.mul(w0, w2)), E.mul(w1, w2));
    const Elem s3 = E.mul(E.mul(w0, w1), w2);
    auto down = [&](Elem x) {
        auto r = T.restrict(x);
        if (!r) throw std::logic_error("minimal polynomial coefficient outside GF(q)");
        return *r;
    };
    const Elem c0 = down(E.neg(s3)), c1 = down(s2), c2 = down(E.neg(s1));
    sd.min_poly = {c0, c1, c2, 1};

    // multiplication by w on the basis 1, w, w^2 (column convention)
    const Mat3 companion{0, 0, F.neg(c0), 1, 0, F.neg(c1), 0, 1, F.neg(c2)};
    sd.generator = GroupElement(F, companion);

    // x -> x^q sends w^i to w^(iq); its coordinates are C^(iq) e1.
    Mat3 frob{};
    for (int i = 0; i < 3; ++i) {
        const Mat3 p = mat3_pow(F, companion, static_cast<std::uint64_t>(i) * F.order());
        for (int r = 0; r < 3; ++r) frob[r * 3 + i] = p[r * 3];
    }
    sd.frob = GroupElement(F, frob);

    // eigenvector of C for the eigenvalue w over GF(q^3)
    Matrix shifted(3, 3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            Elem x = T.embed(companion[r * 3 + c]);
            if (r == c) x = E.sub(x, w0);
            shifted(r, c) = x;
        }
    const Matrix ev = nullspace(E, shifted);
    if (ev.rows != 1) throw std::logic_error("Singer eigenspace is not one-dimensional");
    ProjPoint P = normalize(E, ev.row(0));
    for (int i = 0; i < 3; ++i) {
        std::array<Elem, 3> v{};
        for (int c = 0; c < 3; ++c) v[c] = T.frobenius(P[c], i);
        sd.triangle[i] = normalize(E, v);
    }
    return sd;
}

std::vector<GroupElement> pgl_generators(const Field& F, const SingerData& sd) {
    const Mat3 transvection{1, 1, 0, 0, 1, 0, 0, 0, 1};
    const Mat3 diagonal{F.generator(), 0, 0, 0, 1, 0, 0, 0, 1};
    return {sd.generator, GroupElement(F, transvection), GroupElement(F, diagonal)};
}

std::vector<Subspace> orbit_subspaces(const Field& F, const Subspace& seed, const std::vector<GroupElement>& gens,
                                      std::size_t cap) {
    std::vector<LiftedElement> lifted;
    for (const auto& g : gens) {
        lifted.push_back(lift(F, g));
        lifted.push_back(lift(F, inverse(F, g)));
    }
    std::vector<Subspace> order{seed};
    std::unordered_set<Subspace, SubspaceHash> seen{seed};
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (const auto& A : lifted) {
            Subspace img = A.apply(F, order[head]);
            if (seen.insert(img).second) {
                if (order.size() >= cap) throw std::length_error("orbit exceeds the configured size cap");
                order.push_back(std::move(img));
            }
        }
    }
    return order;
}

bool is_cap(const Field& F, const std::vector<ProjPoint>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            for (std::size_t k = j + 1; k < pts.size(); ++k) {
                Matrix m;
                m.append_row(pts[i].coords);
                m.append_row(pts[j].coords);
                m.append_row(pts[k].coords);
                if (rank(F, m) < 3) return false;
            }
    return true;
}

SingerStructureReport singer_structure_report(const FieldPtr& Fp, const SingerData& sd) {
    const Field& F = *Fp;
    if (F.characteristic() == 2) throw std::invalid_argument("the lifted Singer structure check needs odd q");
    const std::uint64_t q = F.order();
    SingerStructureReport rep;
    rep.q = static_cast<unsigned>(q);
    const LiftedElement A = lift(F, sd.generator);
    rep.lifted_order = projective_order(F, A, q * q * q);

    std::vector<ProjPoint> cubic;
    for (auto& P : enumerate_points(F, 5)) {
        if (cubic_value(F, P.coords) == 0) cubic.push_back(std::move(P));
    }
    rep.cubic_points = cubic.size();

    std::unordered_set<std::uint64_t> visited;
    rep.orbits_are_caps = true;
    rep.orbits_span = true;
    for (const auto& P : cubic) {
        if (visited.count(point_key(P.coords, q))) continue;
        std::vector<ProjPoint> orbit;
        ProjPoint cur = P;
        do {
            visited.insert(point_key(cur.coords, q));
            orbit.push_back(cur);
            cur = normalize(F, A.apply(F, cur.coords));
        } while (cur != P);
        rep.orbit_sizes.push_back(orbit.size());
        if (!is_cap(F, orbit)) rep.orbits_are_caps = false;
        if (Subspace::span(F, orbit).rank() != 6) rep.orbits_span = false;
    }

    for_each_subspace(F, 6, 3, [&](const Subspace& U) {
        if (A.apply(F, U) == U) rep.invariant_planes.push_back(U);
    });
    rep.invariant_planes_disjoint_from_cubic = true;
    rep.invariant_planes_single_orbits = true;
    for (const auto& U : rep.invariant_planes) {
        const auto pts = U.points(F);
        for (const auto& P : pts) {
            if (cubic_value(F, P.coords) == 0) rep.invariant_planes_disjoint_from_cubic = false;
        }
        std::size_t len = 0;
        ProjPoint cur = pts.front();
        do {
            ++len;
            cur = normalize(F, A.apply(F, cur.coords));
        } while (cur != pts.front());
        if (len != pts.size()) rep.invariant_planes_single_orbits = false;
    }
    return rep;
}

} // namespace quadcode
