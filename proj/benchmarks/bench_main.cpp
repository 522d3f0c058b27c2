#include <benchmark/benchmark.h>

#include <numbers>
#include <random>
#include <vector>

#include "ddorbit/action.hpp"
#include "ddorbit/kepler_bounds.hpp"
#include "ddorbit/minimizer.hpp"
#include "ddorbit/test_paths.hpp"
#include "ddorbit/zgeometry.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

ddorbit::DiscretePath candidate(int n) {
    ddorbit::Problem p;
    p.theta = 0.05 * kPi;
    p.n = n;
    return ddorbit::initial_path(p);
}

void BM_SegmentLogIntegral(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> coef;
    for (int i = 0; i < 4096; ++i) coef.push_back(u(rng) + (i % 2 ? 2.5 : 0.0));
    size_t i = 0;
    for (auto _ : state) {
        double v = ddorbit::segment_log_integral(coef[i % 4096] + 3.0, coef[(i + 1) % 4096],
                                                 coef[(i + 2) % 4096], coef[(i + 3) % 4096]);
        benchmark::DoNotOptimize(v);
        i += 4;
    }
}
BENCHMARK(BM_SegmentLogIntegral);

void BM_SegmentPotentialGradient(benchmark::State& state) {
    ddorbit::Vec2 p0{1.2, -0.4}, p1{0.3, 0.9};
    for (auto _ : state) {
        auto g = ddorbit::segment_potential_gradient(p0, p1, 0.0);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(BM_SegmentPotentialGradient);

void BM_PathAction(benchmark::State& state) {
    ddorbit::DiscretePath path = candidate(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto a = ddorbit::path_action(path);
        benchmark::DoNotOptimize(a.total);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PathAction)->Arg(40)->Arg(160)->Arg(640)->Complexity(benchmark::oN);

void BM_ObjectiveGradient(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    double theta = 0.05 * kPi;
    std::vector<double> v = ddorbit::encode_path(candidate(n), theta);
    std::vector<double> grad(v.size());
    for (auto _ : state) {
        double f = ddorbit::objective_gradient(v, n, theta, 0.0, grad);
        benchmark::DoNotOptimize(f);
        benchmark::DoNotOptimize(grad.data());
    }
}
BENCHMARK(BM_ObjectiveGradient)->Arg(40)->Arg(160);

void BM_PotentialFold(benchmark::State& state) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.2, 3.0);
    ddorbit::ZState z{{-u(rng), u(rng)}, {u(rng), u(rng)}};
    for (auto _ : state) {
        auto f = ddorbit::reflect_quadrants(z);
        benchmark::DoNotOptimize(ddorbit::potential_direct(f));
    }
}
BENCHMARK(BM_PotentialFold);

void BM_LowerBoundCurve(benchmark::State& state) {
    for (auto _ : state) {
        double g = ddorbit::g1(0.1 * kPi);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(BM_LowerBoundCurve);

void BM_Certify(benchmark::State& state) {
    for (auto _ : state) {
        auto rep = ddorbit::certify(static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(rep.min_margin);
    }
}
BENCHMARK(BM_Certify)->Arg(16)->Arg(256);

void BM_MinimizeCoarse(benchmark::State& state) {
    ddorbit::Problem p;
    p.theta = 0.05 * kPi;
    p.n = 20;
    for (auto _ : state) {
        auto sol = ddorbit::minimize(p);
        benchmark::DoNotOptimize(sol.action.total);
    }
}
BENCHMARK(BM_MinimizeCoarse)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
