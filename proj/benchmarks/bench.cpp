#include "equivapprox/pipeline.hpp"

#include <benchmark/benchmark.h>

using namespace eqa;

namespace {

const std::filesystem::path kFixtures = EQUIVAPPROX_FIXTURE_DIR;

void BM_FourierMotzkin(benchmark::State& state) {
    // Cube [-1,1]^n cut by the simplex sum x_i <= 1/2.
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<LinearConstraint<Scalar>> cs;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Scalar> a(n);
        a[i] = 1;
        cs.push_back({a, 1, Rel::Ge});
        a[i] = -1;
        cs.push_back({a, 1, Rel::Ge});
    }
    cs.push_back({std::vector<Scalar>(n, Scalar(-1)), frac(1, 2), Rel::Gt});
    for (auto _ : state) benchmark::DoNotOptimize(find_feasible_point(cs, n));
}
BENCHMARK(BM_FourierMotzkin)->DenseRange(2, 5);

void BM_GroupGeneration(benchmark::State& state) {
    // S_{n} acting on R^n by adjacent transpositions.
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<AffineFunctional> gens;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::vector<Scalar> g(n);
        g[i] = 1;
        g[i + 1] = -1;
        gens.emplace_back(0, g);
    }
    for (auto _ : state) benchmark::DoNotOptimize(generate_group(gens).order());
}
BENCHMARK(BM_GroupGeneration)->DenseRange(3, 5);

void BM_TriangulateDisk(benchmark::State& state) {
    auto fx = load_fixture(kFixtures / "disk");
    for (auto _ : state) benchmark::DoNotOptimize(triangulate_respecting(fx.complex->decomposition));
}
BENCHMARK(BM_TriangulateDisk)->Unit(benchmark::kMillisecond);

void BM_BarycentricSubdivision(benchmark::State& state) {
    auto fx = load_fixture(kFixtures / "disk");
    auto T = triangulate_respecting(fx.complex->decomposition);
    for (auto _ : state) benchmark::DoNotOptimize(barycentric_subdivision(T.complex));
}
BENCHMARK(BM_BarycentricSubdivision)->Unit(benchmark::kMillisecond);

void BM_BettiNumbers(benchmark::State& state) {
    auto fx = load_fixture(kFixtures / "disk");
    auto sd = barycentric_subdivision(triangulate_respecting(fx.complex->decomposition).complex);
    for (auto _ : state) benchmark::DoNotOptimize(betti_numbers(sd.complex.simplex_set()));
}
BENCHMARK(BM_BettiNumbers)->Unit(benchmark::kMillisecond);

void BM_SSide(benchmark::State& state) {
    auto fx = load_fixture(kFixtures / "square_boundary");
    for (auto _ : state) benchmark::DoNotOptimize(build_s_side(fx));
}
BENCHMARK(BM_SSide)->Unit(benchmark::kMillisecond);

void BM_TSide(benchmark::State& state) {
    auto fx = load_fixture(kFixtures / "diamond_interior");
    for (auto _ : state) benchmark::DoNotOptimize(build_t_side(fx, *fx.params));
}
BENCHMARK(BM_TSide)->Unit(benchmark::kMillisecond);

void BM_NerveOfV(benchmark::State& state) {
    auto fx = load_fixture(kFixtures / "diamond_boundary");
    auto s = build_s_side(fx);
    auto t = build_t_side(fx, *fx.params);
    auto marking = separability_marking(s.complex, s.in_S, delta_family(fx.formula->formula.polys, t.signs.tuples));
    VConstruction V(std::move(marking), *fx.params, s.sd);
    for (auto _ : state) benchmark::DoNotOptimize(V.nerve_of_V(fx.params->m));
}
BENCHMARK(BM_NerveOfV)->Unit(benchmark::kMillisecond);

void BM_CellDecomposition(benchmark::State& state) {
    auto fx = load_fixture(kFixtures / "reflection_1d");
    auto s = build_s_side(fx);
    auto t = build_t_side(fx, *fx.params);
    auto marking = separability_marking(s.complex, s.in_S, delta_family(fx.formula->formula.polys, t.signs.tuples));
    VConstruction V(std::move(marking), *fx.params, s.sd);
    const auto thr = fx.params->thresholds();
    for (auto _ : state) benchmark::DoNotOptimize(V.cw_cells(thr, fx.params->eps.front()));
}
BENCHMARK(BM_CellDecomposition)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
