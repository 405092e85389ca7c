#include <benchmark/benchmark.h>

#include "hexatlas/contextuality.hpp"
#include "hexatlas/hexagon.hpp"
#include "hexatlas/polar.hpp"

using namespace hexatlas;

namespace {

const SymplecticSpace& w3() {
    static const SymplecticSpace w = SymplecticSpace::build(3);
    return w;
}

void BM_BuildSpace(benchmark::State& state) {
    for (auto _ : state) {
        auto w = SymplecticSpace::build(static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(w.num_lines());
    }
}
BENCHMARK(BM_BuildSpace)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ClassicalHexagonOrbit(benchmark::State& state) {
    const auto& w = w3();
    const auto seed = build_classical_hexagon(w);
    for (auto _ : state) {
        auto orbit = symplectic_orbit(w, seed.lines, 200);
        benchmark::DoNotOptimize(orbit.size());
    }
}
BENCHMARK(BM_ClassicalHexagonOrbit)->Unit(benchmark::kMillisecond);

void BM_SkewHexagonOrbit(benchmark::State& state) {
    const auto& w = w3();
    const auto seed = build_skew_hexagon(w);
    for (auto _ : state) {
        auto orbit = symplectic_orbit(w, seed.lines, 8000);
        benchmark::DoNotOptimize(orbit.size());
    }
}
BENCHMARK(BM_SkewHexagonOrbit)->Unit(benchmark::kMillisecond);

void BM_QuadraticDoilies(benchmark::State& state) {
    const auto& w = w3();
    for (auto _ : state) {
        auto doilies = enumerate_quadratic_doilies(w);
        benchmark::DoNotOptimize(doilies.size());
    }
}
BENCHMARK(BM_QuadraticDoilies)->Unit(benchmark::kMillisecond);

void BM_DegreeExactElliptic(benchmark::State& state) {
    const auto& w = w3();
    const Quadric q = quadric_from_index(w, Observable::parse("YYY"));
    const auto config = config_from_lines(w, q.lines, "elliptic");
    for (auto _ : state) {
        auto cert = degree_exact(config);
        benchmark::DoNotOptimize(cert.upper);
    }
}
BENCHMARK(BM_DegreeExactElliptic)->Unit(benchmark::kMillisecond);

void BM_DegreeExactHyperbolic(benchmark::State& state) {
    const auto& w = w3();
    const Quadric q = quadric_from_index(w, Observable::identity(3));
    const auto config = config_from_lines(w, q.lines, "hyperbolic");
    for (auto _ : state) {
        auto cert = degree_exact(config);
        benchmark::DoNotOptimize(cert.upper);
    }
}
BENCHMARK(BM_DegreeExactHyperbolic)->Unit(benchmark::kMillisecond);

void BM_UpperSearchComplement(benchmark::State& state) {
    const auto& w = w3();
    const auto hex = build_skew_hexagon(w);
    LineSet comp;
    for (LineId li = 0; li < w.num_lines(); ++li)
        if (!hex.contains(li)) comp.push_back(li);
    const auto config = config_from_lines(w, comp, "hexcomp");
    for (auto _ : state) {
        auto cert = degree_upper_search(config, 1, state.range(0));
        benchmark::DoNotOptimize(cert.upper);
    }
}
BENCHMARK(BM_UpperSearchComplement)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
