#include "quadcode/inspect.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace quadcode {

namespace {

std::uint64_t key_of(std::uint64_t q, std::span<const Elem> v) {
    std::uint64_t k = 0;
    for (Elem x : v) k = k * q + x;
    return k;
}

// Kind of every point of PG(5, q), indexed by packed coordinates.
class KindTable {
  public:
    explicit KindTable(const PlaneGeometry& G) : q_(G.F().order()) {
        std::uint64_t size = 1;
        for (int i = 0; i < 6; ++i) size *= q_;
        kind_.assign(size, -1);
        for (const auto& P : enumerate_points(G.F(), 5))
            kind_[key_of(q_, P.coords)] = static_cast<std::int8_t>(classify(G, P.coords).kind);
    }
    QuadricKind at(std::span<const Elem> normalized) const {
        return static_cast<QuadricKind>(kind_[key_of(q_, normalized)]);
    }

  private:
    std::uint64_t q_;
    std::vector<std::int8_t> kind_;
};

ProjPoint coeff_point(const Field& F, const Coeffs& c) {
    return normalize(F, c);
}

ProjPoint square_of_line(const Field& F, const ProjLine2& l) {
    return coeff_point(F, product_coeffs(F, l.dual.coords, l.dual.coords));
}

CheckResult check(std::string name, bool passed, std::string detail = {}) {
    return {std::move(name), passed, std::move(detail), false};
}

CheckResult info(std::string name, std::string detail) {
    return {std::move(name), true, std::move(detail), true};
}

std::string counts(std::uint64_t got, std::uint64_t want) {
    return std::to_string(got) + " (expected " + std::to_string(want) + ")";
}

std::size_t common_count(std::vector<ProjPoint> a, std::vector<ProjPoint> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<ProjPoint> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out.size();
}

bool is_rational(const Tower& T, const ProjPoint& P) {
    return std::all_of(P.coords.begin(), P.coords.end(), [&](Elem x) { return T.in_base(x); });
}

ProjPoint restrict_point(const Tower& T, const ProjPoint& P) {
    ProjPoint out = P;
    for (auto& x : out.coords) x = *T.restrict(x);
    return out;
}

// ---------------------------------------------------------------------------
// solids

struct SolidSets {
    std::vector<Solid> hyperbolic, elliptic;
};

SolidSets all_solids(const Context& ctx) {
    SolidSets s;
    const auto& pts = ctx.plane.points;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) s.hyperbolic.push_back(hyperbolic_solid(ctx, pts[i], pts[j]));
    for (const auto& P : conjugate_pair_representatives(ctx)) s.elliptic.push_back(elliptic_solid(ctx, P));
    return s;
}

SolidPairCensus census_of(const Context& ctx, const SolidSets& s) {
    const Field& F = ctx.F();
    const std::size_t q = ctx.q;
    SolidPairCensus c;
    auto signature = [&](const Solid& a, const Solid& b) {
        const std::size_t meet = dim_sum_meet(F, a.space, b.space).meet;
        const bool same_pi = a.tangent_plane == b.tangent_plane;
        const std::size_t pi_meet = dim_sum_meet(F, a.tangent_plane, b.tangent_plane).meet;
        std::vector<ProjPoint> common;
        std::set_intersection(a.quadric3.begin(), a.quadric3.end(), b.quadric3.begin(), b.quadric3.end(),
                              std::back_inserter(common));
        return std::make_tuple(meet, same_pi, pi_meet, common.size());
    };
    for (std::size_t i = 0; i < s.hyperbolic.size(); ++i)
        for (std::size_t j = i + 1; j < s.hyperbolic.size(); ++j) {
            const auto [meet, same_pi, pi_meet, qq] = signature(s.hyperbolic[i], s.hyperbolic[j]);
            if (meet == 3 && same_pi && qq == q + 1) ++c.hyperbolic[0];
            else if (meet == 3 && same_pi && qq == 1) ++c.hyperbolic[1];
            else if (meet == 3 && !same_pi && pi_meet == 1 && qq == q + 2) ++c.hyperbolic[2];
            else if (meet == 2 && !same_pi && pi_meet == 1 && qq == 2) ++c.hyperbolic[3];
            else ++c.hyperbolic_unmatched;
        }
    for (std::size_t i = 0; i < s.elliptic.size(); ++i)
        for (std::size_t j = i + 1; j < s.elliptic.size(); ++j) {
            const auto [meet, same_pi, pi_meet, qq] = signature(s.elliptic[i], s.elliptic[j]);
            if (meet == 3 && same_pi && qq == 1) ++c.elliptic[0];
            else if (meet == 2 && !same_pi && pi_meet == 1 && qq == 2) ++c.elliptic[1];
            else ++c.elliptic_unmatched;
        }
    return c;
}

// ---------------------------------------------------------------------------
// Singer orbits of degenerate quadrics

struct Member {
    PlaneQuadric Q;
    ProjPoint center;
};

std::vector<std::vector<std::size_t>> singer_orbits(const Context& ctx, const std::vector<Member>& members) {
    std::map<PlaneQuadric, std::size_t> index;
    for (std::size_t i = 0; i < members.size(); ++i) index.emplace(members[i].Q, i);
    std::vector<char> seen(members.size(), 0);
    std::vector<std::vector<std::size_t>> orbits;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (seen[i]) continue;
        std::vector<std::size_t> orbit;
        std::size_t cur = i;
        while (!seen[cur]) {
            seen[cur] = 1;
            orbit.push_back(cur);
            const auto it = index.find(act_quadric(ctx.F(), ctx.singer.generator, members[cur].Q));
            if (it == index.end()) throw std::logic_error("Singer image left the quadric class");
            cur = it->second;
        }
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

bool forms_projective_plane(const std::vector<std::vector<std::size_t>>& conics_of_member,
                            const std::vector<std::vector<std::size_t>>& members_of_conic, std::size_t q) {
    auto meets_once = [](const std::vector<std::vector<std::size_t>>& sets, std::size_t size) {
        for (const auto& s : sets) {
            if (s.size() != size) return false;
        }
        for (std::size_t i = 0; i < sets.size(); ++i)
            for (std::size_t j = i + 1; j < sets.size(); ++j) {
                std::vector<std::size_t> common;
                std::set_intersection(sets[i].begin(), sets[i].end(), sets[j].begin(), sets[j].end(),
                                      std::back_inserter(common));
                if (common.size() != 1) return false;
            }
        return true;
    };
    return conics_of_member.size() == members_of_conic.size() && meets_once(members_of_conic, q + 1) &&
           meets_once(conics_of_member, q + 1);
}

// `line_of` returns the line a conic's centred members determine, or nothing
// when the pattern is wrong.
OrbitPlaneReport orbit_report(const Context& ctx, const Bundle& B, const std::vector<Member>& members,
                              std::size_t expected_lines,
                              const std::function<std::optional<ProjLine2>(std::size_t, const std::vector<PlaneQuadric>&)>&
                                  line_of) {
    const Field& F = ctx.F();
    const std::size_t q = ctx.q;
    const std::size_t n = q * q + q + 1;
    OrbitPlaneReport rep;
    const auto orbits = singer_orbits(ctx, members);
    rep.orbits = orbits.size();
    rep.line_correspondence = true;
    rep.matches_generators = true;
    std::vector<std::set<ProjLine2>> lines_for_conic(B.conics.size());
    for (const auto& orbit : orbits) {
        if (orbit.size() != n) ++rep.orbit_size_violations;
        std::vector<std::vector<std::size_t>> conics_of_member(orbit.size()), members_of_conic(B.conics.size());
        for (std::size_t m = 0; m < orbit.size(); ++m)
            for (std::size_t c = 0; c < B.conics.size(); ++c) {
                if (evaluate(F, B.conics[c], members[orbit[m]].center) == 0) {
                    conics_of_member[m].push_back(c);
                    members_of_conic[c].push_back(m);
                }
            }
        if (forms_projective_plane(conics_of_member, members_of_conic, q)) ++rep.projective_planes;
        for (std::size_t c = 0; c < B.conics.size(); ++c) {
            std::vector<PlaneQuadric> on;
            for (auto m : members_of_conic[c]) on.push_back(members[orbit[m]].Q);
            std::sort(on.begin(), on.end());
            const auto l = line_of(c, on);
            if (!l) {
                rep.matches_generators = false;
                rep.line_correspondence = false;
                continue;
            }
            if (!lines_for_conic[c].insert(*l).second) rep.line_correspondence = false;
        }
    }
    for (const auto& s : lines_for_conic) {
        if (s.size() != expected_lines) rep.line_correspondence = false;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// suites

std::vector<CheckResult> census_suite(const Context& ctx) {
    const Field& F = ctx.F();
    const std::uint64_t q = ctx.q;
    std::vector<CheckResult> out;
    const QuadricCensus got = quadric_census(ctx.plane), want = expected_census(q);
    std::ostringstream d;
    d << "repeated " << got.repeated << ", bi-lines " << got.bilines << ", imaginary " << got.imaginary
      << ", conics " << got.conics;
    out.push_back(check("quadric class counts", got.repeated == want.repeated && got.bilines == want.bilines &&
                                                    got.imaginary == want.imaginary && got.conics == want.conics,
                        d.str()));
    out.push_back(check("cubic vanishes exactly on degenerate quadrics", got.cubic_mismatches == 0,
                        std::to_string(got.cubic_mismatches) + " mismatches"));

    std::vector<ProjPoint> o1;
    for (const auto& l : ctx.plane.lines) o1.push_back(square_of_line(F, l));
    std::sort(o1.begin(), o1.end());
    const std::size_t o1_rank = Subspace::span(F, o1).rank();
    if (F.characteristic() == 2) {
        out.push_back(check("repeated lines span a plane", o1_rank == 3, "rank " + std::to_string(o1_rank)));
    } else {
        const bool cap = is_cap(F, o1);
        out.push_back(check("repeated lines form a cap spanning PG(5,q)", cap && o1_rank == 6,
                            std::string("cap: ") + (cap ? "yes" : "no") + ", rank " + std::to_string(o1_rank)));
    }
    if (q > 5) {
        out.push_back(info("net and tangent plane checks", "skipped for q > 5"));
        return out;
    }
    auto in_o1 = [&](const ProjPoint& P) { return std::binary_search(o1.begin(), o1.end(), P); };

    const auto& pts = ctx.plane.points;
    std::vector<Subspace> nets;
    bool on_cubic = true, o1_shape = true, pair_meet = true;
    for (const auto& A : pts) {
        nets.push_back(net_plane(F, A));
        std::vector<ProjPoint> hit;
        for (const auto& P : nets.back().points(F)) {
            if (cubic_value(F, P.coords) != 0) on_cubic = false;
            if (in_o1(P)) hit.push_back(P);
        }
        if (hit.size() != q + 1) o1_shape = false;
        else if (F.characteristic() == 2 ? Subspace::span(F, hit).rank() != 2 : !is_cap(F, hit)) o1_shape = false;
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const Subspace m = meet(F, nets[i], nets[j]);
            const auto expected = square_of_line(F, line_through(F, pts[i], pts[j]));
            if (m.rank() != 1 || m.points(F).front() != expected) pair_meet = false;
        }
    out.push_back(check("net planes lie on the cubic hypersurface", on_cubic));
    out.push_back(check(F.characteristic() == 2 ? "net planes meet the repeated lines in q+1 collinear points"
                                                : "net planes meet the repeated lines in q+1 points, no three collinear",
                        o1_shape));
    out.push_back(check("two net planes meet in the square of the joining line", pair_meet));

    const KindTable kinds(ctx.plane);
    std::vector<Subspace> tangents;
    bool touch = true, tpair = true;
    for (const auto& l : ctx.plane.lines) {
        tangents.push_back(tangent_plane(F, l));
        std::vector<ProjPoint> hit;
        for (const auto& P : tangents.back().points(F)) {
            if (in_o1(P)) hit.push_back(P);
        }
        if (hit.size() != 1 || hit.front() != square_of_line(F, l)) touch = false;
    }
    for (std::size_t i = 0; i < tangents.size(); ++i)
        for (std::size_t j = i + 1; j < tangents.size(); ++j) {
            const Subspace m = meet(F, tangents[i], tangents[j]);
            if (m.rank() != 1 || kinds.at(m.points(F).front().coords) != QuadricKind::BiLine) tpair = false;
        }
    out.push_back(check("tangent planes meet the repeated lines only in the square of their line", touch));
    out.push_back(check("two tangent planes meet in a bi-line", tpair));
    return out;
}

std::vector<CheckResult> solids_suite(const Context& ctx) {
    const Field& F = ctx.F();
    const std::uint64_t q = ctx.q;
    std::vector<CheckResult> out;
    const SolidSets s = all_solids(ctx);
    const FamilySizes want = expected_sizes(q);
    out.push_back(check("hyperbolic solids", s.hyperbolic.size() == want.pi_e, counts(s.hyperbolic.size(), want.pi_e)));
    out.push_back(check("elliptic solids", s.elliptic.size() == want.pi_i, counts(s.elliptic.size(), want.pi_i)));

    {
        const Solid c = hyperbolic_solid(ctx, ProjPoint{{1, 0, 0}}, ProjPoint{{0, 1, 0}});
        std::vector<Elem> rows(24, 0);
        for (int i = 0; i < 4; ++i) rows[i * 6 + i + 2] = 1;
        out.push_back(check("solid through (1,0,0), (0,1,0) is X1 = X2 = 0", c.space == Subspace::span(F, 6, rows)));
    }

    bool hyp_touch = true, ell_touch = true, ell_cap = true;
    auto touching = [&](const Solid& so) {
        return static_cast<std::size_t>(std::count_if(so.quadric3.begin(), so.quadric3.end(), [&](const ProjPoint& P) {
            return so.tangent_plane.contains(F, P.coords);
        }));
    };
    for (const auto& so : s.hyperbolic) hyp_touch = hyp_touch && touching(so) == 2 * q + 1;
    for (const auto& so : s.elliptic) {
        ell_touch = ell_touch && touching(so) == 1;
        ell_cap = ell_cap && is_cap(F, so.quadric3);
    }
    out.push_back(check("tangent plane meets the hyperbolic quadric in 2q+1 points", hyp_touch));
    out.push_back(check("tangent plane meets the elliptic quadric in one point", ell_touch));
    out.push_back(check("elliptic quadrics have no three collinear points", ell_cap));

    const SolidPairCensus c = census_of(ctx, s);
    std::ostringstream hd, ed;
    hd << "cases " << c.hyperbolic[0] << " / " << c.hyperbolic[1] << " / " << c.hyperbolic[2] << " / "
       << c.hyperbolic[3] << ", unmatched " << c.hyperbolic_unmatched;
    ed << "cases " << c.elliptic[0] << " / " << c.elliptic[1] << ", unmatched " << c.elliptic_unmatched;
    out.push_back(check("hyperbolic solid pairs fall in the four intersection cases", c.hyperbolic_unmatched == 0, hd.str()));
    out.push_back(check("elliptic solid pairs fall in the two intersection cases", c.elliptic_unmatched == 0, ed.str()));

    const KindTable kinds(ctx.plane);
    auto kind_points = [&](const Subspace& U, QuadricKind k) {
        std::vector<ProjPoint> v;
        for (const auto& P : U.points(F)) {
            if (kinds.at(P.coords) == k) v.push_back(P);
        }
        return v;
    };
    const Bundle B = circumscribed_bundle(ctx);
    bool e_in = true, e_o2 = true;
    for (const auto& so : s.hyperbolic) {
        const CodePlane p = pi_e(ctx, B, so.defining[0], so.defining[1]);
        e_in = e_in && so.space.contains(F, p.space);
        e_o2 = e_o2 && kind_points(p.space, QuadricKind::BiLine).size() == 2 * q;
    }
    bool i_in = true, i_o2 = true, i_o3 = true;
    for (const auto& so : s.elliptic) {
        const CodePlane p = pi_i(ctx, B, so.defining[0]);
        i_in = i_in && so.space.contains(F, p.space);
        const auto o2 = kind_points(p.space, QuadricKind::BiLine);
        i_o2 = i_o2 && o2.size() == q + 1 && Subspace::span(F, o2).rank() == 2;
        i_o3 = i_o3 && kind_points(p.space, QuadricKind::ImaginaryBiLine).size() == q + 1;
    }
    out.push_back(check("pi-e planes lie in their hyperbolic solids", e_in));
    out.push_back(check("pi-e planes contain 2q bi-lines", e_o2));
    out.push_back(check("pi-i planes lie in their elliptic solids", i_in));
    out.push_back(check("pi-i planes meet the bi-lines in a line", i_o2));
    out.push_back(check("pi-i planes contain q+1 imaginary bi-lines", i_o3));
    return out;
}

std::vector<CheckResult> pp_suite(const Context& ctx) {
    const std::uint64_t q = ctx.q;
    std::vector<CheckResult> out;
    const Bundle B = circumscribed_bundle(ctx);
    auto add = [&](const char* what, const OrbitPlaneReport& r, std::uint64_t expected, const char* lines,
                   const char* generators) {
        std::ostringstream d;
        d << r.orbits << " orbits, " << r.orbit_size_violations << " of the wrong size";
        out.push_back(check(std::string("Singer orbits on ") + what, r.orbits == expected && r.orbit_size_violations == 0,
                            d.str()));
        out.push_back(check(std::string(what) + " orbits with the bundle form projective planes",
                            r.projective_planes == r.orbits,
                            std::to_string(r.projective_planes) + " of " + std::to_string(r.orbits)));
        out.push_back(check(std::string(what) + " orbits correspond to " + lines, r.line_correspondence));
        out.push_back(check(std::string(what) + " centred on a conic are the " + generators + " generators",
                            r.matches_generators));
    };
    add("bi-lines", biline_orbits(ctx, B), q * (q + 1) / 2, "secant lines of each conic", "pi-e");
    add("imaginary bi-lines", imaginary_biline_orbits(ctx, B), q * (q - 1) / 2, "external lines of each conic",
        "pi-i");
    return out;
}

std::vector<CheckResult> singer_suite(const Context& ctx) {
    const std::uint64_t q = ctx.q;
    const std::uint64_t n = q * q + q + 1;
    const auto r = singer_structure_report(ctx.field, ctx.singer);
    std::vector<CheckResult> out;
    const bool sizes = r.orbit_sizes.size() == q * q + 1 &&
                       std::all_of(r.orbit_sizes.begin(), r.orbit_sizes.end(), [&](std::size_t s) { return s == n; });
    std::ostringstream summary;
    summary << r.orbit_sizes.size() << " orbits x " << (r.orbit_sizes.empty() ? 0 : r.orbit_sizes.front())
            << ", caps: " << (r.orbits_are_caps ? "yes" : "no") << ", invariant planes: " << r.invariant_planes.size();
    out.push_back(info("summary", summary.str()));
    out.push_back(check("cubic hypersurface size", r.cubic_points == (q * q + 1) * n, counts(r.cubic_points, (q * q + 1) * n)));
    out.push_back(check("lifted Singer order", r.lifted_order == n, counts(r.lifted_order, n)));
    out.push_back(check("cubic splits into q^2+1 orbits of size q^2+q+1", sizes));
    out.push_back(check("orbits are caps", r.orbits_are_caps));
    out.push_back(check("orbits span PG(5,q)", r.orbits_span));
    out.push_back(check("exactly two invariant planes", r.invariant_planes.size() == 2,
                        std::to_string(r.invariant_planes.size())));
    out.push_back(check("invariant planes are disjoint from the cubic", r.invariant_planes_disjoint_from_cubic));
    out.push_back(check("invariant planes are single orbits", r.invariant_planes_single_orbits));
    return out;
}

std::vector<CheckResult> arcs_suite(const Context& ctx) {
    const std::uint64_t q = ctx.q;
    const Tower& T = *ctx.singer.cubic;
    std::vector<CheckResult> out;
    const auto& tri = ctx.singer.triangle;
    const bool shape = !collinear(T.ext(), tri[0], tri[1], tri[2]) &&
                       std::none_of(tri.begin(), tri.end(), [&](const ProjPoint& P) { return is_rational(T, P); });
    out.push_back(check("triangle vertices are non-rational and not collinear", shape));
    bool cyclic = true;
    for (std::size_t i = 0; i < 3; ++i) {
        const ProjPoint img = act_point(T, ctx.singer.frob, tri[i]);
        if (img == tri[i] || std::find(tri.begin(), tri.end(), img) == tri.end()) cyclic = false;
    }
    out.push_back(check("Frobenius map permutes the triangle cyclically", cyclic));
    const ArcReport r = triangle_arcs(ctx);
    const std::uint64_t want = q * q * q * (q * q - 1) * (q - 1) / 3;
    out.push_back(check("triangle orbit size", r.orbit_size == want, counts(r.orbit_size, want)));
    out.push_back(check("every pair of triangles contains a 5-arc", r.pairs_with_5arc == r.pairs,
                        std::to_string(r.pairs_with_5arc) + " of " + std::to_string(r.pairs) + " pairs"));
    return out;
}

std::vector<CheckResult> bundles_suite(const Context& ctx) {
    const Field& F = ctx.F();
    const std::uint64_t q = ctx.q;
    const std::uint64_t n = q * q + q + 1;
    std::vector<CheckResult> out;
    const Bundle B = circumscribed_bundle(ctx);
    out.push_back(check("bundle size", B.conics.size() == n, counts(B.conics.size(), n)));

    bool one_point = true;
    for (std::size_t i = 0; i < B.conics.size(); ++i)
        for (std::size_t j = i + 1; j < B.conics.size(); ++j)
            one_point = one_point && common_count(B.conic_points[i], B.conic_points[j]) == 1;
    out.push_back(check("bundle conics pairwise meet in exactly one point", one_point));

    const auto pts = B.plane.points(F);
    out.push_back(check("bundle plane is disjoint from the cubic",
                        std::none_of(pts.begin(), pts.end(),
                                     [&](const ProjPoint& P) { return cubic_value(F, P.coords) == 0; })));

    const std::set<PlaneQuadric> conics(B.conics.begin(), B.conics.end());
    std::size_t cycle = 0;
    bool closed = true;
    PlaneQuadric cur = B.conics.front();
    do {
        cur = act_quadric(F, ctx.singer.generator, cur);
        closed = closed && conics.count(cur);
        ++cycle;
    } while (cur != B.conics.front() && cycle <= n);
    out.push_back(check("Singer generator permutes the bundle in one cycle", closed && cycle == n,
                        "cycle length " + std::to_string(cycle)));
    out.push_back(check("Frobenius map fixes the bundle", std::all_of(B.conics.begin(), B.conics.end(), [&](const PlaneQuadric& Q) {
                            return conics.count(act_quadric(F, ctx.singer.frob, Q)) > 0;
                        })));

    const auto& s = ctx.singer.generator;
    const auto& fr = ctx.singer.frob;
    const std::uint64_t ord = projective_order(F, s, n + 1);
    const std::uint64_t ford = projective_order(F, fr, 4);
    const bool normalizes = compose(F, compose(F, fr, s), inverse(F, fr)) == power(F, s, q);
    out.push_back(check("Singer generator has order q^2+q+1", ord == n, counts(ord, n)));
    out.push_back(check("Frobenius map has order 3 and normalizes the Singer group", ford == 3 && normalizes));

    if (q <= 3) {
        const std::size_t shared = max_shared_conics(ctx, B);
        out.push_back(check("distinct bundles of the orbit share at most one conic", shared <= 1,
                            "max shared " + std::to_string(shared)));
    } else {
        out.push_back(info("distinct bundles of the orbit share at most one conic", "skipped for q > 3"));
    }
    return out;
}

std::vector<CheckResult> polar_suite(const Context& ctx) {
    const Bundle B = circumscribed_bundle(ctx);
    const PolarityReport r = bundle_polarity(ctx, B);
    const char* name = ctx.F().characteristic() == 2 ? "bundle conics have distinct nuclei"
                                                     : "bundle conics give distinct polar lines of every point";
    return {check(name, r.violations == 0,
                  std::to_string(r.violations) + " violations in " + std::to_string(r.checks) + " comparisons")};
}

std::vector<CheckResult> r3_suite(const Context& ctx) {
    const Field& F = ctx.F();
    const KindTable kinds(ctx.plane);
    const Bundle B = circumscribed_bundle(ctx);
    const auto& pts = ctx.plane.points;
    std::map<std::size_t, std::size_t> histogram;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const auto gens = pi_e_generators(ctx, B, pts[i], pts[j]);
            // the Singer orbit of the first generator is the orbit b
            std::set<ProjPoint> orbit;
            PlaneQuadric cur = gens.front();
            do {
                orbit.insert(coeff_point(F, cur.coeffs()));
                cur = act_quadric(F, ctx.singer.generator, cur);
            } while (cur != gens.front());
            const CodePlane plane = pi_e(ctx, B, pts[i], pts[j]);
            const auto plane_pts = plane.space.points(F);
            for (std::size_t g = 2; g < gens.size(); ++g) {
                const ProjPoint R3 = coeff_point(F, gens[g].coeffs());
                std::set<Subspace> lines;
                for (const auto& X : plane_pts) {
                    if (X != R3) lines.insert(Subspace::span(F, std::vector<ProjPoint>{R3, X}));
                }
                std::size_t good = 0;
                for (const auto& l : lines) {
                    std::size_t o2 = 0, inb = 0;
                    for (const auto& P : l.points(F)) {
                        o2 += kinds.at(P.coords) == QuadricKind::BiLine;
                        inb += orbit.count(P);
                    }
                    good += o2 == 3 && inb == 2;
                }
                ++histogram[good];
            }
        }
    std::ostringstream d;
    d << "lines with 3 bi-lines, 2 of them in the orbit (expected q-2 = " << ctx.q - 2 << "):";
    for (const auto& [k, v] : histogram) d << ' ' << k << " lines x" << v;
    const bool exact = histogram.size() == 1 && histogram.begin()->first == ctx.q - 2;
    return {check("lines through R3", exact, d.str())};
}

} // namespace

bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.informational || r.passed; });
}

QuadricCensus quadric_census(const PlaneGeometry& G) {
    const Field& F = G.F();
    QuadricCensus c;
    for (const auto& P : enumerate_points(F, 5)) {
        const QuadricKind k = classify(G, P.coords).kind;
        switch (k) {
        case QuadricKind::RepeatedLine: ++c.repeated; break;
        case QuadricKind::BiLine: ++c.bilines; break;
        case QuadricKind::ImaginaryBiLine: ++c.imaginary; break;
        case QuadricKind::Conic: ++c.conics; break;
        }
        if ((cubic_value(F, P.coords) == 0) != (k != QuadricKind::Conic)) ++c.cubic_mismatches;
    }
    return c;
}

QuadricCensus expected_census(std::uint64_t q) {
    const std::uint64_t n = q * q + q + 1;
    return {n, n * (q + 1) * q / 2, n * (q - 1) * q / 2, q * q * q * q * q - q * q, 0};
}

SolidPairCensus solid_pair_census(const Context& ctx) {
    return census_of(ctx, all_solids(ctx));
}

OrbitPlaneReport biline_orbits(const Context& ctx, const Bundle& B) {
    const Field& F = ctx.F();
    const auto& lines = ctx.plane.lines;
    std::vector<Member> members;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j)
            members.push_back({product_of_forms(F, lines[i].dual.coords, lines[j].dual.coords),
                               normalize(F, cross(F, lines[i].dual.coords, lines[j].dual.coords))});
    const std::size_t q = ctx.q;
    return orbit_report(ctx, B, members, q * (q + 1) / 2,
                        [&](std::size_t c, const std::vector<PlaneQuadric>& on) -> std::optional<ProjLine2> {
                            std::vector<ProjPoint> zeros;
                            for (const auto& P : B.conic_points[c]) {
                                if (std::all_of(on.begin(), on.end(),
                                                [&](const PlaneQuadric& Q) { return evaluate(F, Q, P) == 0; }))
                                    zeros.push_back(P);
                            }
                            if (zeros.size() != 2) return std::nullopt;
                            auto gens = pi_e_generators(ctx, B, zeros[0], zeros[1]);
                            std::sort(gens.begin(), gens.end());
                            if (gens != on) return std::nullopt;
                            return line_through(F, zeros[0], zeros[1]);
                        });
}

OrbitPlaneReport imaginary_biline_orbits(const Context& ctx, const Bundle& B) {
    const Field& F = ctx.F();
    const Tower& T = *ctx.quadratic;
    std::set<PlaneQuadric> seen;
    std::vector<Member> members;
    const auto ext_points = enumerate_points(T.ext(), 2);
    for (const auto& L : ext_points) {
        if (is_rational(T, L)) continue;
        const PlaneQuadric Q = product_of_conjugate_forms(T, L.coords);
        if (!seen.insert(Q).second) continue;
        const auto cls = classify(ctx.plane, Q);
        if (cls.kind != QuadricKind::ImaginaryBiLine) throw std::logic_error("conjugate product is not an imaginary bi-line");
        members.push_back({Q, *cls.center});
    }
    const std::size_t q = ctx.q;
    std::vector<ProjPoint> nonrational;
    for (const auto& P : ext_points) {
        if (!is_rational(T, P)) nonrational.push_back(P);
    }
    return orbit_report(
        ctx, B, members, q * (q - 1) / 2, [&](std::size_t c, const std::vector<PlaneQuadric>& on) -> std::optional<ProjLine2> {
            std::vector<ProjPoint> zeros;
            for (const auto& P : nonrational) {
                if (std::all_of(on.begin(), on.end(),
                                [&](const PlaneQuadric& Q) { return evaluate(T, Q, P.coords) == 0; }))
                    zeros.push_back(P);
            }
            if (zeros.size() != 2 || zeros[1] != conjugate(T, zeros[0])) return std::nullopt;
            auto gens = pi_i_generators(ctx, B, zeros[0]);
            std::sort(gens.begin(), gens.end());
            if (gens != on) return std::nullopt;
            const ProjPoint dual = normalize(T.ext(), cross(T.ext(), zeros[0].coords, zeros[1].coords));
            if (!is_rational(T, dual)) return std::nullopt;
            const ProjLine2 l{restrict_point(T, dual)};
            for (const auto& P : B.conic_points[c]) {
                if (on_line(F, l, P)) return std::nullopt; // not external
            }
            return l;
        });
}

ArcReport triangle_arcs(const Context& ctx) {
    const Field& F = ctx.F();
    const Tower& T = *ctx.singer.cubic;
    using Tri = std::array<ProjPoint, 3>;
    auto canon = [](Tri t) {
        std::sort(t.begin(), t.end());
        return t;
    };
    std::vector<GroupElement> gens = pgl_generators(F, ctx.singer);
    const std::size_t base = gens.size();
    for (std::size_t i = 0; i < base; ++i) gens.push_back(inverse(F, gens[i]));

    std::set<Tri> seen{canon(ctx.singer.triangle)};
    std::vector<Tri> orbit{*seen.begin()};
    for (std::size_t i = 0; i < orbit.size(); ++i) {
        for (const auto& g : gens) {
            Tri img;
            for (int v = 0; v < 3; ++v) img[v] = act_point(T, g, orbit[i][v]);
            img = canon(img);
            if (seen.insert(img).second) orbit.push_back(img);
        }
    }
    ArcReport r;
    r.orbit_size = orbit.size();
    const Field& E = T.ext();
    for (std::size_t i = 0; i < orbit.size(); ++i)
        for (std::size_t j = i + 1; j < orbit.size(); ++j) {
            ++r.pairs;
            std::vector<ProjPoint> six(orbit[i].begin(), orbit[i].end());
            six.insert(six.end(), orbit[j].begin(), orbit[j].end());
            std::sort(six.begin(), six.end());
            if (std::adjacent_find(six.begin(), six.end()) != six.end()) continue; // shared vertex
            bool found = false;
            for (std::size_t drop = 0; drop < 6 && !found; ++drop) {
                std::vector<ProjPoint> five;
                for (std::size_t k = 0; k < 6; ++k) {
                    if (k != drop) five.push_back(six[k]);
                }
                bool arc = true;
                for (std::size_t a = 0; a < 5 && arc; ++a)
                    for (std::size_t b = a + 1; b < 5 && arc; ++b)
                        for (std::size_t c = b + 1; c < 5 && arc; ++c) arc = !collinear(E, five[a], five[b], five[c]);
                found = arc;
            }
            r.pairs_with_5arc += found;
        }
    return r;
}

std::size_t max_shared_conics(const Context& ctx, const Bundle& B) {
    const Field& F = ctx.F();
    const auto orbit = orbit_subspaces(F, B.plane, pgl_generators(F, ctx.singer));
    std::vector<std::vector<ProjPoint>> sets;
    for (const auto& U : orbit) {
        auto pts = U.points(F);
        std::sort(pts.begin(), pts.end());
        sets.push_back(std::move(pts));
    }
    std::size_t best = 0;
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            std::vector<ProjPoint> common;
            std::set_intersection(sets[i].begin(), sets[i].end(), sets[j].begin(), sets[j].end(),
                                  std::back_inserter(common));
            best = std::max(best, common.size());
        }
    return best;
}

PolarityReport bundle_polarity(const Context& ctx, const Bundle& B) {
    const Field& F = ctx.F();
    PolarityReport r;
    const bool even = F.characteristic() == 2;
    for (std::size_t i = 0; i < B.conics.size(); ++i)
        for (std::size_t j = i + 1; j < B.conics.size(); ++j) {
            if (even) {
                ++r.checks;
                r.violations += nucleus(F, B.conics[i]) == nucleus(F, B.conics[j]);
                continue;
            }
            for (const auto& P : ctx.plane.points) {
                ++r.checks;
                r.violations += polar_line(F, B.conics[i], P) == polar_line(F, B.conics[j], P);
            }
        }
    return r;
}

std::string_view to_string(Suite s) {
    switch (s) {
    case Suite::Census: return "census";
    case Suite::Solids: return "solids";
    case Suite::ProjectivePlanes: return "pp";
    case Suite::Singer: return "singer";
    case Suite::Arcs: return "arcs";
    case Suite::Bundles: return "bundles";
    case Suite::Polar: return "polar";
    case Suite::R3Lines: return "r3lines";
    }
    return "?";
}

std::optional<Suite> suite_from_string(std::string_view s) {
    for (Suite x : all_suites()) {
        if (to_string(x) == s) return x;
    }
    return std::nullopt;
}

const std::vector<Suite>& all_suites() {
    static const std::vector<Suite> v{Suite::Census, Suite::Solids, Suite::ProjectivePlanes, Suite::Singer,
                                      Suite::Arcs,   Suite::Bundles, Suite::Polar,           Suite::R3Lines};
    return v;
}

bool suite_supports(Suite s, unsigned q) {
    switch (s) {
    case Suite::Census: return q <= 9;
    case Suite::Solids: return q <= 4;
    case Suite::ProjectivePlanes: return q <= 5;
    case Suite::Singer: return (q == 3 || q == 5);
    case Suite::Arcs: return q <= 3;
    case Suite::Bundles: return q <= 5;
    case Suite::Polar: return q <= 9;
    case Suite::R3Lines: return q <= 5;
    }
    return false;
}

std::string_view suite_bounds(Suite s) {
    switch (s) {
    case Suite::Census: return "q <= 9";
    case Suite::Solids: return "q <= 4";
    case Suite::ProjectivePlanes: return "q <= 5";
    case Suite::Singer: return "q in {3, 5}";
    case Suite::Arcs: return "q <= 3";
    case Suite::Bundles: return "q <= 5";
    case Suite::Polar: return "q <= 9";
    case Suite::R3Lines: return "q <= 5";
    }
    return "";
}

std::vector<CheckResult> run_suite(const Context& ctx, Suite s) {
    if (!suite_supports(s, ctx.q))
        throw std::out_of_range("check '" + std::string(to_string(s)) + "' needs " + std::string(suite_bounds(s)));
    try {
        switch (s) {
        case Suite::Census: return census_suite(ctx);
        case Suite::Solids: return solids_suite(ctx);
        case Suite::ProjectivePlanes: return pp_suite(ctx);
        case Suite::Singer: return singer_suite(ctx);
        case Suite::Arcs: return arcs_suite(ctx);
        case Suite::Bundles: return bundles_suite(ctx);
        case Suite::Polar: return polar_suite(ctx);
        case Suite::R3Lines: return r3_suite(ctx);
        }
    } catch (const std::logic_error& e) {
        return {check(std::string(to_string(s)) + " suite", false, e.what())};
    }
    return {};
}

} // namespace quadcode
