#include <cstdlib>
#include <random>
#include <set>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "quadcode/verify.hpp"

using namespace quadcode;

namespace {

Subspace from_rows(const Field& F, std::initializer_list<std::vector<Elem>> rows) {
    std::vector<Elem> flat;
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return Subspace::span(F, rows.begin()->size(), flat);
}

Subspace random_plane(const Field& F, std::mt19937_64& rng) {
    std::uniform_int_distribution<Elem> d(0, F.order() - 1);
    while (true) {
        std::vector<Elem> rows(18);
        for (auto& x : rows) x = d(rng);
        auto U = Subspace::span(F, 6, rows);
        if (U.rank() == 3) return U;
    }
}

/// A plane sharing exactly a line with U.
Subspace through_line_of(const Field& F, const Subspace& U, std::mt19937_64& rng) {
    std::uniform_int_distribution<Elem> d(0, F.order() - 1);
    while (true) {
        auto rows = U.flat();
        for (std::size_t j = 12; j < 18; ++j) rows[j] = d(rng);
        auto W = Subspace::span(F, 6, rows);
        if (W.rank() == 3 && W != U) return W;
    }
}

std::vector<oracle::Vec> rows_of(const Subspace& U) {
    std::vector<oracle::Vec> out;
    for (std::size_t r = 0; r < U.rank(); ++r) {
        const auto row = U.row(r);
        out.emplace_back(row.begin(), row.end());
    }
    return out;
}

void check_agreement(const Field& F, const std::vector<Subspace>& planes) {
    const auto a = verify_naive(F, planes, 2);
    const auto b = verify_line_index(F, planes);
    CHECK(a.method == VerifyMethod::Naive);
    CHECK(b.method == VerifyMethod::LineIndex);
    CHECK(a.M == planes.size());
    CHECK(b.M == planes.size());
    REQUIRE(a.min_distance == b.min_distance);
    CHECK(a.worst_pair == b.worst_pair);
    CHECK(a.ok() == b.ok());
}

} // namespace

TEST_CASE("subspace distance examples") {
    const auto F = Field::of_order(2);
    const auto U = from_rows(*F, {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}});
    const auto P = from_rows(*F, {{1, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 0}});
    const auto D = from_rows(*F, {{0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}});
    const auto L = from_rows(*F, {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 1}});
    CHECK(subspace_distance(*F, U, U) == 0);
    CHECK(subspace_distance(*F, U, P) == 4);
    CHECK(subspace_distance(*F, U, D) == 6);
    CHECK(subspace_distance(*F, U, L) == 2);
    CHECK_THROWS_AS(subspace_distance(*F, U, from_rows(*F, {{1, 0, 0}})), std::invalid_argument);
}

TEST_CASE("subspace distance is a metric and agrees with counting") {
    for (unsigned q : {2u, 3u}) {
        CAPTURE(q);
        const auto F = Field::of_order(q);
        const oracle::PolyGF O(q, 1);
        std::mt19937_64 rng(5 + q);
        for (int t = 0; t < 10000; ++t) {
            const auto A = random_plane(*F, rng);
            const auto B = t % 3 == 0 ? through_line_of(*F, A, rng) : random_plane(*F, rng);
            const auto C = random_plane(*F, rng);
            const unsigned ab = subspace_distance(*F, A, B);
            REQUIRE(ab == subspace_distance(*F, B, A));
            REQUIRE(ab <= subspace_distance(*F, A, C) + subspace_distance(*F, C, B));
            CHECK((ab == 0) == (A == B));
            if (t % 20 == 0) REQUIRE(ab == oracle::distance_by_counting(O, rows_of(A), rows_of(B), 6));
        }
    }
}

TEST_CASE("verification of the constructed codes") {
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        CAPTURE(q);
        const Context ctx(q);
        const auto planes = build_code(ctx).spaces();
        const auto r = verify_line_index(ctx.F(), planes);
        CHECK(r.q == q);
        CHECK(r.min_distance == 4u);
        CHECK_FALSE(r.worst_pair);
        if (q <= 3) check_agreement(ctx.F(), planes);
    }
}

TEST_CASE("injected violations are found by both methods") {
    const Context ctx(2);
    const auto& F = ctx.F();
    const auto base = build_code(ctx).spaces();

    auto dup = base;
    dup[10] = dup[3];
    const auto r0 = verify_naive(F, dup);
    CHECK(r0.min_distance == 0u);
    CHECK(r0.worst_pair == std::pair<std::size_t, std::size_t>{3, 10});
    CHECK_FALSE(r0.ok());
    check_agreement(F, dup);

    std::mt19937_64 rng(3);
    auto shared = base;
    shared[20] = through_line_of(F, shared[7], rng);
    const auto r2 = verify_line_index(F, shared);
    CHECK(r2.min_distance == 2u);
    REQUIRE(r2.worst_pair);
    CHECK(subspace_distance(F, shared[r2.worst_pair->first], shared[r2.worst_pair->second]) == 2);
    check_agreement(F, shared);
}

TEST_CASE("naive and line-index verification agree on seeded mutations") {
    std::mt19937_64 rng(2024);
    int zero = 0, two = 0;
    for (unsigned q : {2u, 3u}) {
        const Context ctx(q);
        const auto& F = ctx.F();
        const auto base = build_code(ctx).spaces();
        std::uniform_int_distribution<std::size_t> pick(0, base.size() - 1);
        for (int t = 0; t < 50; ++t) {
            CAPTURE(q);
            CAPTURE(t);
            auto code = base;
            const std::size_t i = pick(rng), j = pick(rng);
            switch (t % 3) {
            case 0: code[i] = random_plane(F, rng); break;
            case 1: code[i] = code[j]; break;
            default: code[i] = through_line_of(F, code[j], rng); break;
            }
            if (t % 5 == 4) code[pick(rng)] = random_plane(F, rng);
            check_agreement(F, code);
            const auto r = verify_naive(F, code, 1);
            zero += r.min_distance == 0u;
            two += r.min_distance == 2u;
        }
    }
    CHECK(zero > 0);
    CHECK(two > 0);
}

TEST_CASE("naive verification does not depend on the worker count") {
    const Context ctx(3);
    auto planes = build_code(ctx).spaces();
    std::mt19937_64 rng(9);
    planes[100] = through_line_of(ctx.F(), planes[40], rng);
    const auto a = verify_naive(ctx.F(), planes, 1);
    const auto b = verify_naive(ctx.F(), planes, 3);
    CHECK(a.min_distance == b.min_distance);
    CHECK(a.worst_pair == b.worst_pair);
}

TEST_CASE("degenerate inputs") {
    const auto F = Field::of_order(2);
    const auto r = verify_line_index(*F, {});
    CHECK_FALSE(r.min_distance);
    CHECK(r.ok());
    CHECK_FALSE(verify_naive(*F, {from_rows(*F, {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}})})
                    .min_distance);
    CHECK_THROWS_AS(verify_line_index(*F, {from_rows(*F, {{1, 0, 0, 0, 0, 0}})}), std::invalid_argument);
}

TEST_CASE("line keys") {
    const auto F = Field::of_order(3);
    std::mt19937_64 rng(1);
    const auto U = random_plane(*F, rng);
    const auto keys = line_keys(*F, U);
    CHECK(keys.size() == 13);
    CHECK(std::set<std::uint64_t>(keys.begin(), keys.end()).size() == 13);
    const auto W = through_line_of(*F, U, rng);
    const auto wk = line_keys(*F, W);
    std::size_t common = 0;
    for (auto k : wk) common += std::count(keys.begin(), keys.end(), k);
    CHECK(common == 1);
}

TEST_CASE("completeness search") {
    {
        const Context ctx(2);
        const auto& F = ctx.F();
        const auto code = build_code(ctx).spaces();
        const auto r = completeness_check(F, code, 2);
        CHECK(r.q == 2);
        CHECK(r.candidates == 1395);
        // Brute-force list of addable planes.
        const std::set<Subspace> in_code(code.begin(), code.end());
        std::vector<Subspace> want;
        for (const auto& U : enumerate_planes5(F)) {
            if (in_code.count(U)) continue;
            if (std::all_of(code.begin(), code.end(),
                            [&](const Subspace& W) { return subspace_distance(F, U, W) >= 4; }))
                want.push_back(U);
        }
        CHECK(r.addable == want);
        CHECK(r.addable.size() == 7);
        CHECK(r.greedy_added.size() == 7);
    }
    {
        const Context ctx(3);
        const auto& F = ctx.F();
        const auto code = build_code(ctx).spaces();
        const auto r = completeness_check(F, code);
        CHECK(r.candidates == 33880);
        CHECK_FALSE(r.addable.empty());
        CHECK_FALSE(r.greedy_added.empty());
        CHECK(std::is_sorted(r.addable.begin(), r.addable.end()));
        for (const auto& U : r.addable)
            for (const auto& W : code) REQUIRE(subspace_distance(F, U, W) >= 4);
        for (std::size_t i = 0; i < r.greedy_added.size(); ++i) {
            CHECK(std::binary_search(r.addable.begin(), r.addable.end(), r.greedy_added[i]));
            for (std::size_t j = i + 1; j < r.greedy_added.size(); ++j)
                REQUIRE(subspace_distance(F, r.greedy_added[i], r.greedy_added[j]) >= 4);
        }
        // Greedy is maximal: every other addable plane clashes with a chosen one.
        for (const auto& U : r.addable) {
            if (std::binary_search(r.greedy_added.begin(), r.greedy_added.end(), U)) continue;
            CHECK(std::any_of(r.greedy_added.begin(), r.greedy_added.end(),
                              [&](const Subspace& W) { return subspace_distance(F, U, W) < 4; }));
        }
        // The threaded scan is deterministic.
        const auto r1 = completeness_check(F, code, 1);
        CHECK(r1.addable == r.addable);
        CHECK(r1.greedy_added == r.greedy_added);
    }
    CHECK_THROWS_AS(completeness_check(*Field::of_order(7), {}), std::out_of_range);
}

TEST_CASE("the code is fixed by the lifted normalizer generators") {
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        CAPTURE(q);
        const Context ctx(q);
        const auto& F = ctx.F();
        const auto planes = build_code(ctx).spaces();
        CHECK(setwise_invariant(F, planes, lift(F, ctx.singer.generator)));
        CHECK(setwise_invariant(F, planes, lift(F, ctx.singer.frob)));
        CHECK_FALSE(setwise_invariant(F, planes, lift(F, GroupElement(F, Mat3{1, 1, 0, 0, 1, 0, 0, 0, 1}))));
    }
}

TEST_CASE("parameter report") {
    const Context ctx(3);
    const auto code = build_code(ctx);
    const auto v = verify_line_index(ctx.F(), code.spaces());
    const auto r = parameter_report(ctx, code, v);
    CHECK(r.sizes_match());
    CHECK(r.M == 274);
    CHECK(r.min_distance == 4u);
    CHECK(r.singer_invariant);
    CHECK(r.frob_invariant);
    const auto text = to_text(r);
    CHECK(text.find("parameters: (6, 274, 4; 3)_3") != std::string::npos);
    CHECK(text.find("bundle-orbit: 144 (expected 144)") != std::string::npos);
    CHECK(text.find("pi-i: 39 (expected 39)") != std::string::npos);
    const auto j = nlohmann::json::parse(to_json(r));
    CHECK(j["M"] == 274);
    CHECK(j["families"]["net"] == 13);
    CHECK(j["min_distance"] == 4);
    CHECK(j["singer_invariant"] == true);
}

TEST_CASE("thread count resolution") {
    CHECK(resolve_threads(5) == 5);
    setenv("QUADCODE_THREADS", "3", 1);
    CHECK(resolve_threads() == 3);
    setenv("QUADCODE_THREADS", "junk", 1);
    CHECK(resolve_threads() >= 1);
    unsetenv("QUADCODE_THREADS");
    CHECK(resolve_threads() >= 1);
}
