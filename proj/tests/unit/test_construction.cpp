#include <map>
#include <memory>
#include <set>

#include "doctest.h"
#include "quadcode/construction.hpp"
#include "quadcode/groups.hpp"

using namespace quadcode;

namespace {

// One context and bundle per q, shared by the cases below.
struct Fixture {
    Context ctx;
    Bundle B;
    explicit Fixture(unsigned q) : ctx(q), B(circumscribed_bundle(ctx)) {}
};

const Fixture& fixture(unsigned q) {
    static std::map<unsigned, std::unique_ptr<Fixture>> cache;
    auto& f = cache[q];
    if (!f) f = std::make_unique<Fixture>(q);
    return *f;
}

std::set<ProjPoint> points_of_kind(const Context& ctx, const Subspace& U, QuadricKind k) {
    std::set<ProjPoint> out;
    for (const auto& P : U.points(ctx.F()))
        if (classify(ctx.plane, P.coords).kind == k) out.insert(P);
    return out;
}

ProjPoint square(const Field& F, const std::vector<Elem>& L) { return veronese(product_of_forms(F, L, L)); }

bool rational_pt(const Tower& T, const ProjPoint& P) {
    return std::all_of(P.coords.begin(), P.coords.end(), [&](Elem x) { return T.in_base(x); });
}

} // namespace

TEST_CASE("circumscribed bundle") {
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        CAPTURE(q);
        const auto& [ctx, B] = fixture(q);
        const auto& F = ctx.F();
        REQUIRE(B.conics.size() == q * q + q + 1);
        CHECK(B.plane.rank() == 3);
        std::set<PlaneQuadric> members(B.conics.begin(), B.conics.end());
        CHECK(members.size() == B.conics.size());
        for (std::size_t i = 0; i < B.conics.size(); ++i) {
            CHECK(classify(ctx.plane, B.conics[i]).kind == QuadricKind::Conic);
            CHECK(B.plane.contains(F, veronese(B.conics[i]).coords));
            CHECK(members.count(act_quadric(F, ctx.singer.generator, B.conics[i])) == 1);
            CHECK(members.count(act_quadric(F, ctx.singer.frob, B.conics[i])) == 1);
            for (const auto& V : B.triangle) CHECK(evaluate(*ctx.singer.cubic, B.conics[i], V.coords) == 0);
            for (std::size_t j = i + 1; j < B.conics.size(); ++j) {
                std::size_t common = 0;
                for (const auto& P : B.conic_points[i])
                    common += std::count(B.conic_points[j].begin(), B.conic_points[j].end(), P);
                REQUIRE(common == 1);
            }
        }
        for (const auto& P : B.plane.points(F)) CHECK(cubic_value(F, P.coords) != 0);
    }

    // The Singer generator permutes the seven conics of q = 2 in one cycle.
    const auto& [ctx, B] = fixture(2);
    PlaneQuadric C = B.conics.front();
    std::size_t len = 0;
    do {
        C = act_quadric(ctx.F(), ctx.singer.generator, C);
        ++len;
    } while (!(C == B.conics.front()));
    CHECK(len == 7);
}

TEST_CASE("bundle conic lookup agrees with brute force") {
    for (unsigned q : {2u, 3u}) {
        CAPTURE(q);
        const auto& [ctx, B] = fixture(q);
        const auto& pts = ctx.plane.points;
        for (std::size_t a = 0; a < pts.size(); ++a)
            for (std::size_t b = a + 1; b < pts.size(); ++b) {
                std::vector<std::size_t> hits;
                for (std::size_t i = 0; i < B.conics.size(); ++i)
                    if (evaluate(ctx.F(), B.conics[i], pts[a]) == 0 && evaluate(ctx.F(), B.conics[i], pts[b]) == 0)
                        hits.push_back(i);
                REQUIRE(hits.size() == 1);
                CHECK(bundle_conic_through(ctx, B, pts[a], pts[b]) == hits[0]);
                CHECK(bundle_conic_through(ctx, B, pts[b], pts[a]) == hits[0]);
            }
        const Tower& T = *ctx.quadratic;
        for (const auto& P : conjugate_pair_representatives(ctx)) {
            std::vector<std::size_t> hits;
            for (std::size_t i = 0; i < B.conics.size(); ++i)
                if (evaluate(T, B.conics[i], P.coords) == 0) hits.push_back(i);
            REQUIRE(hits.size() == 1);
            const auto i = bundle_conic_through(ctx, B, P);
            CHECK(i == hits[0]);
            CHECK(evaluate(T, B.conics[i], conjugate(T, P).coords) == 0);
        }
    }
}

TEST_CASE("nets of quadrics singular at a point") {
    const auto& F3 = fixture(3).ctx.F();
    const auto N = net_plane(F3, ProjPoint{{1, 0, 0}});
    const std::vector<ProjPoint> expect = {square(F3, {0, 1, 0}), square(F3, {0, 0, 1}),
                                           veronese(product_of_forms(F3, std::vector<Elem>{0, 1, 0},
                                                                     std::vector<Elem>{0, 0, 1}))};
    CHECK(N == Subspace::span(F3, expect));

    for (unsigned q : {2u, 3u, 4u, 5u}) {
        CAPTURE(q);
        const auto& ctx = fixture(q).ctx;
        const auto& F = ctx.F();
        const auto& pts = ctx.plane.points;
        for (std::size_t a = 0; a < pts.size(); ++a) {
            const auto Na = net_plane(F, pts[a]);
            REQUIRE(Na.rank() == 3);
            for (const auto& P : Na.points(F)) REQUIRE(cubic_value(F, P.coords) == 0);
            const auto o1 = points_of_kind(ctx, Na, QuadricKind::RepeatedLine);
            REQUIRE(o1.size() == q + 1);
            const std::vector<ProjPoint> v(o1.begin(), o1.end());
            if (q % 2 == 0) {
                CHECK(Subspace::span(F, v).rank() == 2);
            } else {
                CHECK(Subspace::span(F, v).rank() == 3);
                CHECK(is_cap(F, v));
            }
            if (q > 3) continue;
            for (std::size_t b = a + 1; b < pts.size(); ++b) {
                const auto m = meet(F, Na, net_plane(F, pts[b]));
                REQUIRE(m.rank() == 1);
                CHECK(m.points(F).front() == square(F, line_through(F, pts[a], pts[b]).dual.coords));
            }
        }
    }
}

TEST_CASE("tangent planes of lines") {
    const auto& F3 = fixture(3).ctx.F();
    const auto T = tangent_plane(F3, ProjLine2{ProjPoint{{0, 0, 1}}});
    CHECK(T.pivots() == std::vector<std::size_t>{2, 4, 5});

    for (unsigned q : {2u, 3u}) {
        CAPTURE(q);
        const auto& ctx = fixture(q).ctx;
        const auto& F = ctx.F();
        std::vector<Subspace> planes;
        for (const auto& L : ctx.plane.points) {
            const ProjLine2 l{L};
            const auto P = tangent_plane(F, l);
            REQUIRE(P.rank() == 3);
            const auto o1 = points_of_kind(ctx, P, QuadricKind::RepeatedLine);
            REQUIRE(o1.size() == 1);
            CHECK(*o1.begin() == square(F, L.coords));
            planes.push_back(P);
        }
        CHECK(std::set<Subspace>(planes.begin(), planes.end()).size() == q * q + q + 1);
        for (std::size_t i = 0; i < planes.size(); ++i)
            for (std::size_t j = i + 1; j < planes.size(); ++j) {
                const auto m = meet(F, planes[i], planes[j]);
                REQUIRE(m.rank() == 1);
                CHECK(classify(ctx.plane, m.points(F).front().coords).kind == QuadricKind::BiLine);
            }
    }
}

TEST_CASE("hyperbolic and elliptic solids") {
    const auto& ctx3 = fixture(3).ctx;
    const auto S = hyperbolic_solid(ctx3, ProjPoint{{1, 0, 0}}, ProjPoint{{0, 1, 0}});
    CHECK(S.space.pivots() == std::vector<std::size_t>{2, 3, 4, 5});

    for (unsigned q : {2u, 3u}) {
        CAPTURE(q);
        const auto& ctx = fixture(q).ctx;
        const auto& F = ctx.F();
        const auto& pts = ctx.plane.points;
        auto check_solid = [&](const Solid& s, std::size_t q3, std::size_t shared) {
            REQUIRE(s.space.rank() == 4);
            CHECK(s.quadric3.size() == q3);
            CHECK(s.space.contains(F, s.tangent_plane));
            const std::set<ProjPoint> quad(s.quadric3.begin(), s.quadric3.end());
            std::size_t in_both = 0;
            for (const auto& P : s.space.points(F)) {
                const bool on_s = cubic_value(F, P.coords) == 0;
                const bool in_t = s.tangent_plane.contains(F, P.coords);
                REQUIRE(on_s == (quad.count(P) || in_t));
                in_both += in_t && quad.count(P);
            }
            CHECK(in_both == shared);
        };
        std::size_t h = 0, e = 0;
        for (std::size_t a = 0; a < pts.size(); ++a)
            for (std::size_t b = a + 1; b < pts.size(); ++b, ++h) {
                const auto s = hyperbolic_solid(ctx, pts[a], pts[b]);
                CHECK(s.flavor == SolidFlavor::Hyperbolic);
                check_solid(s, (q + 1) * (q + 1), 2 * q + 1);
            }
        for (const auto& P : conjugate_pair_representatives(ctx)) {
            ++e;
            const auto s = elliptic_solid(ctx, P);
            CHECK(s.flavor == SolidFlavor::Elliptic);
            check_solid(s, q * q + 1, 1);
        }
        CHECK(h == q * (q + 1) * (q * q + q + 1) / 2);
        CHECK(e == q * (q - 1) * (q * q + q + 1) / 2);
    }
}

TEST_CASE("planes through pairs of rational points") {
    for (unsigned q : {2u, 3u}) {
        CAPTURE(q);
        const auto& [ctx, B] = fixture(q);
        const auto& F = ctx.F();
        const auto& pts = ctx.plane.points;
        std::set<Subspace> seen;
        for (std::size_t a = 0; a < pts.size(); ++a)
            for (std::size_t b = a + 1; b < pts.size(); ++b) {
                const auto cp = pi_e(ctx, B, pts[a], pts[b]);
                CHECK(cp.provenance == Provenance::PiE);
                REQUIRE(cp.space.rank() == 3);
                seen.insert(cp.space);
                CHECK(hyperbolic_solid(ctx, pts[a], pts[b]).space.contains(F, cp.space));
                const auto gens = pi_e_generators(ctx, B, pts[a], pts[b]);
                CHECK(gens.size() == q + 1);
                const auto o2 = points_of_kind(ctx, cp.space, QuadricKind::BiLine);
                CHECK(o2.size() == 2 * q);
                for (const auto& g : gens) {
                    CHECK(classify(ctx.plane, g).kind == QuadricKind::BiLine);
                    CHECK(o2.count(veronese(g)) == 1);
                }
            }
        CHECK(seen.size() == q * (q + 1) * (q * q + q + 1) / 2);
    }
}

TEST_CASE("planes through conjugate pairs") {
    for (unsigned q : {2u, 3u}) {
        CAPTURE(q);
        const auto& [ctx, B] = fixture(q);
        const auto& F = ctx.F();
        const Tower& T = *ctx.quadratic;
        std::set<Subspace> seen;
        const auto reps = conjugate_pair_representatives(ctx);
        CHECK(reps.size() == q * (q - 1) * (q * q + q + 1) / 2);
        for (const auto& P : reps) {
            CHECK_FALSE(rational_pt(T, P));
            CHECK(P < conjugate(T, P));
            const auto cp = pi_i(ctx, B, P);
            CHECK(cp.provenance == Provenance::PiI);
            REQUIRE(cp.space.rank() == 3);
            seen.insert(cp.space);
            CHECK(elliptic_solid(ctx, P).space.contains(F, cp.space));

            const auto& conic_pts = B.conic_points[bundle_conic_through(ctx, B, P)];
            const auto gens = pi_i_generators(ctx, B, P);
            CHECK(gens.size() == q + 1);
            std::set<ProjPoint> centres;
            for (const auto& g : gens) {
                const auto cls = classify(ctx.plane, g);
                REQUIRE(cls.kind == QuadricKind::ImaginaryBiLine);
                centres.insert(*cls.center);
            }
            CHECK(centres == std::set<ProjPoint>(conic_pts.begin(), conic_pts.end()));

            const auto o2 = points_of_kind(ctx, cp.space, QuadricKind::BiLine);
            CHECK(o2.size() == q + 1);
            CHECK(Subspace::span(F, std::vector<ProjPoint>(o2.begin(), o2.end())).rank() == 2);
            CHECK(points_of_kind(ctx, cp.space, QuadricKind::ImaginaryBiLine).size() == q + 1);

            // The rational line through P and its conjugate misses the conic.
            const auto l = cross(T.ext(), P.coords, conjugate(T, P).coords);
            const auto ln = normalize(T.ext(), l);
            std::vector<Elem> down;
            for (Elem x : ln.coords) down.push_back(*T.restrict(x));
            for (const auto& X : conic_pts) CHECK_FALSE(on_line(F, ProjLine2{ProjPoint{down}}, X));
        }
        CHECK(seen.size() == reps.size());
    }
}

TEST_CASE("assembled code") {
    const std::size_t want[] = {0, 0, 43, 274, 1317, 4806};
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        CAPTURE(q);
        const auto& ctx = fixture(q).ctx;
        const auto code = build_code(ctx);
        const auto sizes = expected_sizes(q);
        CHECK(code.q == q);
        CHECK(code.planes.size() == want[q]);
        CHECK(sizes.total() == want[q]);
        CHECK(code.count(Provenance::BundleOrbit) == sizes.bundle_orbit);
        CHECK(code.count(Provenance::NetN) == sizes.net);
        CHECK(code.count(Provenance::PiE) == sizes.pi_e);
        CHECK(code.count(Provenance::PiI) == sizes.pi_i);
        CHECK(std::is_sorted(code.planes.begin(), code.planes.end()));
        const auto spaces = code.spaces();
        CHECK(std::set<Subspace>(spaces.begin(), spaces.end()).size() == spaces.size());
        for (const auto& cp : code.planes) {
            CHECK(cp.space.rank() == 3);
            CHECK(cp.datum.find(' ') == std::string::npos);
        }
    }
    CHECK(expected_sizes(2).bundle_orbit == 8);
    CHECK(expected_sizes(3).bundle_orbit == 144);
    CHECK(expected_sizes(4).bundle_orbit == 960);
    CHECK(expected_sizes(5).bundle_orbit == 4000);
    CHECK(build_code(2) == build_code(fixture(2).ctx));
}

TEST_CASE("provenance tags") {
    for (auto p : {Provenance::BundleOrbit, Provenance::NetN, Provenance::PiE, Provenance::PiI, Provenance::Unspecified})
        CHECK(provenance_from_string(to_string(p)) == p);
    CHECK_THROWS_AS(provenance_from_string("orbit"), std::invalid_argument);
}
