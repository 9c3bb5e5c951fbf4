#include <benchmark/benchmark.h>

#include <random>

#include "manifoldtv/manifoldtv.hpp"

using namespace mtv;

namespace {

std::mt19937_64 rng(12345);

ManifoldImage phantom_with_noise(int n) {
    return tangent_gaussian_noise(synth_pos3_image(n, n), 0.25, RngSeed{1});
}

void BM_S2ExpLog(benchmark::State& state) {
    const double a[3] = {0, 0, 1};
    double v[3] = {0.3, 0.4, 0.0}, b[3], back[3];
    s2_exp(a, v, b);
    for (auto _ : state) {
        s2_log(a, b, back);
        s2_exp(a, back, b);
        benchmark::DoNotOptimize(b);
    }
}
BENCHMARK(BM_S2ExpLog);

void BM_So3ExpLog(benchmark::State& state) {
    double p[9], q[9], w[9];
    Mat3::identity().store(p);
    so3_exp(p, skew_from_axis(0.4, -0.2, 0.7).a.data(), q);
    for (auto _ : state) {
        so3_log(p, q, w);
        so3_exp(p, w, q);
        benchmark::DoNotOptimize(q);
    }
}
BENCHMARK(BM_So3ExpLog);

void BM_Pos3ExpLog(benchmark::State& state) {
    double d[9], e[9], w[9];
    Mat3 base = Mat3::zero();
    base(0, 0) = 2.0;
    base(1, 1) = 1.0;
    base(2, 2) = 0.5;
    base(0, 1) = base(1, 0) = 0.3;
    base.store(d);
    pos3_exp(d, skew_part(base).a.data(), e);  // zero tangent, e = d
    pos3_exp(d, symmetrize(0.3 * Mat3::identity()).a.data(), e);
    for (auto _ : state) {
        pos3_log(d, e, w);
        pos3_exp(d, w, e);
        benchmark::DoNotOptimize(e);
    }
}
BENCHMARK(BM_Pos3ExpLog);

void BM_CalcTReg(benchmark::State& state) {
    const auto huber = RegularizerKind::huber(std::sqrt(2.0), 1.0);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(calc_t_reg(u(rng), huber, u(rng)));
    }
}
BENCHMARK(BM_CalcTReg);

void BM_KarcherMean5_S2(benchmark::State& state) {
    const auto s2 = ManifoldDescriptor::s2();
    std::vector<double> pts;
    const double center[3] = {0, 0, 1};
    std::normal_distribution<double> g(0.0, 0.2);
    for (int k = 0; k < 5; ++k) {
        double v[3] = {g(rng), g(rng), 0.0}, out[3];
        s2_exp(center, v, out);
        pts.insert(pts.end(), out, out + 3);
    }
    std::vector<double> mean(3);
    for (auto _ : state) {
        karcher_mean(s2, pts.data(), 5, mean);
        benchmark::DoNotOptimize(mean);
    }
}
BENCHMARK(BM_KarcherMean5_S2);

void BM_ApproxMean5_S2(benchmark::State& state) {
    const auto s2 = ManifoldDescriptor::s2();
    std::vector<double> pts;
    const double center[3] = {0, 0, 1};
    std::normal_distribution<double> g(0.0, 0.2);
    for (int k = 0; k < 5; ++k) {
        double v[3] = {g(rng), g(rng), 0.0}, out[3];
        s2_exp(center, v, out);
        pts.insert(pts.end(), out, out + 3);
    }
    std::vector<double> mean(3);
    for (auto _ : state) {
        approx_mean5(s2, pts.data(), mean);
        benchmark::DoNotOptimize(mean);
    }
}
BENCHMARK(BM_ApproxMean5_S2);

void BM_CyclicIteration_Pos3(benchmark::State& state) {
    const auto f = phantom_with_noise(static_cast<int>(state.range(0)));
    DenoiseParams params;
    params.alpha = 0.5;
    params.iterations = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cyclic_ppa(f, params).output);
    }
    state.SetItemsProcessed(state.iterations() * f.pixel_count());
}
BENCHMARK(BM_CyclicIteration_Pos3)->Arg(8)->Arg(16);

void BM_ParallelFastIteration_Pos3(benchmark::State& state) {
    const auto f = phantom_with_noise(static_cast<int>(state.range(0)));
    DenoiseParams params;
    params.alpha = 0.5;
    params.iterations = 1;
    params.algorithm = SolverAlgorithm::ParallelFast;
    for (auto _ : state) {
        benchmark::DoNotOptimize(parallel_ppa(f, params).output);
    }
    state.SetItemsProcessed(state.iterations() * f.pixel_count());
}
BENCHMARK(BM_ParallelFastIteration_Pos3)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
