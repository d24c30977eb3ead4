#include <benchmark/benchmark.h>

#include <cmath>

#include "inspde/forms.hpp"
#include "inspde/solver.hpp"

using namespace inspde;

namespace {

std::vector<double> uniform_grid(double T, double dt) {
    const int n = static_cast<int>(std::round(T / dt));
    std::vector<double> g(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) g[static_cast<std::size_t>(i)] = i * dt;
    g.back() = T;
    return g;
}

ModelSpec nonlinear_spec(int dim) {
    const auto space = SpectralModel::laplacian(dim);
    ModelSpec spec;
    spec.space = space;
    spec.delay_r = 0.1;
    spec.p = 2.0;
    spec.T = 1.0;
    spec.coeffs.alpha = 0.75;
    spec.initial_path = [dim](double) {
        HVector v(static_cast<std::size_t>(dim));
        for (int k = 0; k < dim; ++k) v[static_cast<std::size_t>(k)] = 1.0 / (k + 1);
        return v;
    };
    FormSpec a{"bounded-nonlinear", 0.5, 0.1, {}};
    FormSpec b{"bounded-nonlinear", 0.5, 0.1, {}};
    FormSpec f{"bounded-nonlinear", 0.2, 0.0, {}};
    spec.coeffs.a_map = make_drift_form(a, dim);
    spec.coeffs.b_map = make_diffusion_form(b, dim, dim);
    spec.coeffs.f_map = make_neutral_form(f, space, spec.coeffs.alpha);
    spec.coeffs.C4 = 0.2;
    return spec;
}

void bm_semigroup_apply(benchmark::State& state) {
    const auto m = SpectralModel::laplacian(static_cast<int>(state.range(0)));
    HVector v(static_cast<std::size_t>(m.dim()), 1.0);
    double t = 0.0;
    for (auto _ : state) {
        t += 1e-6;
        benchmark::DoNotOptimize(semigroup_apply(m, t, v));
    }
}
BENCHMARK(bm_semigroup_apply)->Arg(8)->Arg(64)->Arg(512);

void bm_sample_increments(benchmark::State& state) {
    NoiseSpec spec;
    spec.seed = 1;
    for (int j = 1; j <= state.range(0); ++j) spec.q_eigs.push_back(1.0 / (j * j));
    const auto grid = uniform_grid(1.0, 2.5e-3);
    std::uint64_t path = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_increments(spec, grid, path++));
    }
}
BENCHMARK(bm_sample_increments)->Arg(8)->Arg(64);

void bm_solve_mild_path(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const ModelSpec spec = nonlinear_spec(dim);
    NoiseSpec noise;
    noise.seed = 7;
    for (int j = 1; j <= dim; ++j) noise.q_eigs.push_back(1.0 / (j * j));
    const SolverConfig cfg{2.5e-3, 1e-10, 50};
    const auto grid = uniform_grid(1.0, cfg.dt);
    std::uint64_t path = 0;
    for (auto _ : state) {
        const WienerIncrements w = sample_increments(noise, grid, path++);
        benchmark::DoNotOptimize(solve_mild(spec, spec.space, w, cfg));
    }
}
BENCHMARK(bm_solve_mild_path)->Arg(8)->Arg(32);

void bm_solve_deterministic(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const ModelSpec spec = nonlinear_spec(dim);
    const SolverConfig cfg{2.5e-3, 1e-10, 50};
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_deterministic(spec, spec.space, cfg));
    }
}
BENCHMARK(bm_solve_deterministic)->Arg(8)->Arg(32);

} // namespace

BENCHMARK_MAIN();
