#include <benchmark/benchmark.h>

#include <map>
#include <memory>

#include "quadcode/construction.hpp"
#include "quadcode/inspect.hpp"
#include "quadcode/verify.hpp"

using namespace quadcode;

namespace {

const std::vector<Subspace>& code_of(unsigned q) {
    static std::map<unsigned, std::vector<Subspace>> cache;
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, build_code(q).spaces()).first;
    return it->second;
}

const Field& field_of(unsigned q) {
    static std::map<unsigned, FieldPtr> cache;
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, Field::of_order(q)).first;
    return *it->second;
}

void BM_FieldMul(benchmark::State& state) {
    const auto& F = field_of(static_cast<unsigned>(state.range(0)));
    const Elem n = static_cast<Elem>(F.order());
    Elem acc = 1;
    for (auto _ : state) {
        for (Elem a = 1; a < n; ++a) acc = F.add(F.mul(acc, a), 1);
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * (n - 1));
}
BENCHMARK(BM_FieldMul)->Arg(4)->Arg(5)->Arg(9)->Arg(81);

void BM_BuildCode(benchmark::State& state) {
    const Context ctx(static_cast<unsigned>(state.range(0)));
    for (auto _ : state) {
        auto code = build_code(ctx);
        benchmark::DoNotOptimize(code.planes.data());
    }
}
BENCHMARK(BM_BuildCode)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_VerifyNaive(benchmark::State& state) {
    const unsigned q = static_cast<unsigned>(state.range(0));
    const auto& planes = code_of(q);
    for (auto _ : state) benchmark::DoNotOptimize(verify_naive(field_of(q), planes, 1).min_distance);
}
BENCHMARK(BM_VerifyNaive)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_VerifyLineIndex(benchmark::State& state) {
    const unsigned q = static_cast<unsigned>(state.range(0));
    const auto& planes = code_of(q);
    for (auto _ : state) benchmark::DoNotOptimize(verify_line_index(field_of(q), planes).min_distance);
}
BENCHMARK(BM_VerifyLineIndex)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_Completeness(benchmark::State& state) {
    const unsigned q = static_cast<unsigned>(state.range(0));
    const auto& planes = code_of(q);
    for (auto _ : state) benchmark::DoNotOptimize(completeness_check(field_of(q), planes, 1).addable.size());
}
BENCHMARK(BM_Completeness)->DenseRange(3, 4)->Unit(benchmark::kMillisecond);

void BM_QuadricCensus(benchmark::State& state) {
    const PlaneGeometry G(Field::of_order(static_cast<unsigned>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(quadric_census(G).conics);
}
BENCHMARK(BM_QuadricCensus)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
