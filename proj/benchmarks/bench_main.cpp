#include <benchmark/benchmark.h>

#include "hhcalc/bar.hpp"
#include "hhcalc/parse.hpp"

using namespace hhcalc;

namespace {

DgKRing nakayama2() {
    const char* text =
        "[field] q\n[quiver]\nvertices 2\narrow a 1 2 0\narrow b 2 1 0\ntruncate 3\n";
    return DgKRing::normalize(parse_algebra_text(text, "bench").ring);
}

void BM_BarConstruction(benchmark::State& state) {
    DgKRing a = nakayama2();
    int cap = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto b = BarConstruction::build(a, cap);
        benchmark::DoNotOptimize(b.wspace.back());
    }
}
BENCHMARK(BM_BarConstruction)->Arg(4)->Arg(6)->Arg(8);

void BM_TwoSidedBarVerify(benchmark::State& state) {
    DgKRing a = nakayama2();
    int cap = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto r = two_sided_bar(a, cap);
        benchmark::DoNotOptimize(r.verify().ok());
    }
}
BENCHMARK(BM_TwoSidedBarVerify)->Arg(3)->Arg(4);

void BM_SparseRank(benchmark::State& state) {
    DgKRing a = nakayama2();
    auto b = BarConstruction::build(a, static_cast<int>(state.range(0)));
    auto r = one_sided_bar_right(a, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto m = r.d.degree_matrix(2);
        benchmark::DoNotOptimize(m.rank());
    }
    (void)b;
}
BENCHMARK(BM_SparseRank)->Arg(5)->Arg(7);

}  // namespace

BENCHMARK_MAIN();
