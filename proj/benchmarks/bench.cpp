#include "matcomp/completion.hpp"
#include "matcomp/projections.hpp"
#include "matcomp/solver.hpp"
#include "matcomp/svd.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace matcomp;

namespace {

Matrix random_matrix(std::mt19937_64& rng, Index m, Index n, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Matrix x(m, n);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j) x(i, j) = u(rng);
    return x;
}

ObservationSet random_mask(std::mt19937_64& rng, Index m, Index n, double p) {
    std::bernoulli_distribution keep(p);
    ObservationSet omega(m, n);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j)
            if (keep(rng)) omega.insert(i, j);
    if (omega.count() == 0) omega.insert(0, 0);
    return omega;
}

void BM_SvdThin(benchmark::State& state) {
    const auto n = static_cast<Index>(state.range(0));
    std::mt19937_64 rng(1);
    const Matrix x = random_matrix(rng, n, n);
    for (auto _ : state) benchmark::DoNotOptimize(svd(x));
}
BENCHMARK(BM_SvdThin)->Arg(32)->Arg(64)->Arg(128)->Arg(256);

void BM_ProjectSpectral(benchmark::State& state) {
    const auto n = static_cast<Index>(state.range(0));
    std::mt19937_64 rng(2);
    const Matrix x = random_matrix(rng, n, n);
    const double lambda = 0.25 * spectral_norm(x);
    for (auto _ : state) benchmark::DoNotOptimize(project_spectral_ball(x, lambda));
}
BENCHMARK(BM_ProjectSpectral)->Arg(32)->Arg(64)->Arg(128)->Arg(256);

void BM_ProjectNuclear(benchmark::State& state) {
    const auto n = static_cast<Index>(state.range(0));
    std::mt19937_64 rng(3);
    const Matrix x = random_matrix(rng, n, n);
    const double lambda = 0.25 * nuclear_norm(x);
    for (auto _ : state) benchmark::DoNotOptimize(project_nuclear_ball(x, lambda));
}
BENCHMARK(BM_ProjectNuclear)->Arg(32)->Arg(64)->Arg(128)->Arg(256);

void BM_ProjectKyFan(benchmark::State& state) {
    const auto n = static_cast<Index>(state.range(0));
    std::mt19937_64 rng(4);
    const Matrix x = random_matrix(rng, n, n);
    const Index k = n / 4;
    const double lambda = 0.5 * ky_fan_norm(x, k);
    for (auto _ : state) benchmark::DoNotOptimize(project_ky_fan_ball(x, k, lambda));
}
BENCHMARK(BM_ProjectKyFan)->Arg(32)->Arg(64)->Arg(128)->Arg(256);

void BM_ProjectRank(benchmark::State& state) {
    const auto n = static_cast<Index>(state.range(0));
    std::mt19937_64 rng(5);
    const Matrix x = random_matrix(rng, n, n);
    for (auto _ : state) benchmark::DoNotOptimize(project_rank(x, n / 4));
}
BENCHMARK(BM_ProjectRank)->Arg(32)->Arg(64)->Arg(128)->Arg(256);

void BM_GradientStep(benchmark::State& state) {
    const auto n = static_cast<Index>(state.range(0));
    std::mt19937_64 rng(6);
    const Matrix m = random_matrix(rng, n, n);
    const ObservationSet omega = random_mask(rng, n, n, 0.8);
    const Constraint c = Constraint::nuclear_ball(0.5 * nuclear_norm(m));
    const Matrix x = project(apply_mask(m, omega), c).x;
    for (auto _ : state)
        benchmark::DoNotOptimize(fixed_step_iterate(x, m, omega, c, 1.0));
}
BENCHMARK(BM_GradientStep)->Arg(32)->Arg(64)->Arg(128)->Arg(256);

void BM_SolveFiftyIterations(benchmark::State& state) {
    const auto n = static_cast<Index>(state.range(0));
    std::mt19937_64 rng(7);
    const Matrix m = random_matrix(rng, n, n);
    const ObservationSet omega = random_mask(rng, n, n, 0.8);
    const Constraint c = Constraint::nuclear_ball(0.5 * nuclear_norm(m));
    SolverConfig cfg;
    cfg.tol = 0.0;
    cfg.rel_tol = 1e-300; // run the full budget for a stable measurement
    cfg.max_iters = 50;
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_approximation(m, omega, c, cfg));
}
BENCHMARK(BM_SolveFiftyIterations)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_CompleteRank2(benchmark::State& state) {
    const auto n = static_cast<Index>(state.range(0));
    std::mt19937_64 rng(8);
    const Matrix m = random_matrix(rng, n, 2) * random_matrix(rng, 2, n);
    const ObservationSet omega = random_mask(rng, n, n, 0.8);
    CompletionConfig cfg;
    cfg.lambda_tol = 1e-4;
    for (auto _ : state) benchmark::DoNotOptimize(complete(m, omega, cfg));
}
BENCHMARK(BM_CompleteRank2)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
