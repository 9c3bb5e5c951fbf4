#include "manifoldtv/solvers.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace mtv {

double lambda_at(const LambdaSchedule& s, int r) {
    if (r < 1) throw std::invalid_argument("lambda_at: iteration index starts at 1");
    return s.c * std::pow(static_cast<double>(r), -s.omega);
}

namespace {

void check_params(const DenoiseParams& p) {
    if (p.alpha < 0) throw std::invalid_argument("denoise: alpha must be >= 0");
    if (p.iterations < 1) throw std::invalid_argument("denoise: iterations must be >= 1");
    if (p.schedule.c < 0) throw std::invalid_argument("denoise: schedule c must be >= 0");
    if (!(p.schedule.omega > 0.5 && p.schedule.omega <= 1.0))
        throw std::invalid_argument("denoise: schedule omega must lie in (0.5, 1]");
    if (p.threads < 1) throw std::invalid_argument("denoise: threads must be >= 1");
}

int trace_stride(int iterations) { return std::max(1, iterations / 100); }

double reg_energy(double d, const RegularizerKind& kind) {
    switch (kind.type) {
        case RegularizerKind::Type::TV:
            return d;
        case RegularizerKind::Type::TV2:
            return d * d / 2.0;
        case RegularizerKind::Type::Huber:
            return huber(d, kind.tau, kind.omega);
    }
    return 0;
}

double data_energy(double d, const DataTermKind& kind) {
    switch (kind.type) {
        case DataTermKind::Type::L1:
            return d;
        case DataTermKind::Type::L2:
            return d * d / 2.0;
        case DataTermKind::Type::Huber:
            return huber(d, kind.tau, kind.omega);
    }
    return 0;
}

}  // namespace

double functional_value(const ManifoldImage& x, const ManifoldImage& f,
                        const DenoiseParams& params) {
    if (!x.same_shape(f))
        throw std::invalid_argument("functional_value: x and f differ in manifold or shape");
    const auto& m = x.descriptor();

    double data = 0;
    for (int p = 0; p < x.pixel_count(); ++p)
        data += data_energy(dist(m, x.pixel(p), f.pixel(p)), params.data_term);

    double reg = 0;
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j + 1 < x.cols(); ++j)
            reg += reg_energy(dist(m, x.pixel(i, j), x.pixel(i, j + 1)), params.regularizer);
    for (int i = 0; i + 1 < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j)
            reg += reg_energy(dist(m, x.pixel(i, j), x.pixel(i + 1, j)), params.regularizer);

    return data + params.alpha * reg;
}

// ---- cyclic ---------------------------------------------------------------

namespace {

// In-place contraction of the pair (ai,aj)-(bi,bj) by the coupling prox.
void contract_pair(ManifoldImage& x, int ai, int aj, int bi, int bj, double lambda_alpha,
                   const RegularizerKind& kind, const char* stage) {
    const auto& m = x.descriptor();
    const auto a = x.pixel(ai, aj);
    const auto b = x.pixel(bi, bj);
    const double d = dist(m, a, b);
    if (d == 0.0) return;
    const double t = calc_t_reg(lambda_alpha, kind, d);
    if (t == 0.0) return;

    constexpr int kInlineLen = 32;
    double buf_a[kInlineLen], buf_b[kInlineLen];
    std::vector<double> heap;
    std::span<double> na, nb;
    const int len = m.element_len();
    if (len <= kInlineLen) {
        na = {buf_a, static_cast<size_t>(len)};
        nb = {buf_b, static_cast<size_t>(len)};
    } else {
        heap.resize(2 * static_cast<size_t>(len));
        na = {heap.data(), static_cast<size_t>(len)};
        nb = {heap.data() + len, static_cast<size_t>(len)};
    }
    try {
        geodesic_point(m, a, b, t, na);
        geodesic_point(m, b, a, t, nb);
    } catch (const CutLocusError& e) {
        throw CutLocusError(std::string(e.what()) + " during " + stage + " sweep",
                            PixelIndex{ai, aj});
    }
    std::copy(na.begin(), na.end(), a.begin());
    std::copy(nb.begin(), nb.end(), b.begin());
}

}  // namespace

SolveReport cyclic_ppa(const ManifoldImage& f, const DenoiseParams& params) {
    return cyclic_ppa(f, params, f);
}

SolveReport cyclic_ppa(const ManifoldImage& f, const DenoiseParams& params,
                       const ManifoldImage& x0) {
    check_params(params);
    if (!f.same_shape(x0))
        throw std::invalid_argument("cyclic_ppa: f and x0 differ in manifold or shape");
    const auto& m = f.descriptor();

    SolveReport report{x0, {}, 0, 0};
    ManifoldImage& x = report.output;
    const int stride = trace_stride(params.iterations);

    for (int r = 1; r <= params.iterations; ++r) {
        const double lambda = lambda_at(params.schedule, r);
        const double lambda_alpha = lambda * params.alpha;

        // data term
        for (int i = 0; i < x.rows(); ++i)
            for (int j = 0; j < x.cols(); ++j) {
                const auto xs = x.pixel(i, j);
                const auto fs = f.pixel(i, j);
                const double d = dist(m, xs, fs);
                if (d == 0.0) continue;
                const double t = calc_t_data(lambda, params.data_term, d);
                if (t == 0.0) continue;
                try {
                    geodesic_point(m, xs, fs, t, xs);
                } catch (const CutLocusError& e) {
                    throw CutLocusError(std::string(e.what()) + " during data sweep",
                                        PixelIndex{i, j});
                }
            }

        // horizontal pairs, ascending j; adjacent pairs share pixels, so the
        // updates are sequential by construction
        for (int i = 0; i < x.rows(); ++i)
            for (int j = 0; j + 1 < x.cols(); ++j)
                contract_pair(x, i, j, i, j + 1, lambda_alpha, params.regularizer,
                              "horizontal");

        // vertical pairs, ascending i
        for (int i = 0; i + 1 < x.rows(); ++i)
            for (int j = 0; j < x.cols(); ++j)
                contract_pair(x, i, j, i + 1, j, lambda_alpha, params.regularizer,
                              "vertical");

        report.iterations_run = r;
        if (r % stride == 0 || r == params.iterations)
            report.functional_trace.emplace_back(r, functional_value(x, f, params));
    }
    return report;
}

// ---- parallel ---------------------------------------------------------------

namespace {

struct ParallelWorkspace {
    std::vector<double> z;  // 5 prox points, element_len scalars each
};

// One pixel of one parallel iteration: build z1..z5 from the previous
// iterate and average them into next(i,j).
void parallel_pixel(const ManifoldImage& prev, const ManifoldImage& f, ManifoldImage& next,
                    int i, int j, double lambda, double lambda_alpha,
                    const DenoiseParams& params, ParallelWorkspace& ws,
                    std::atomic<long>& fallbacks) {
    const auto& m = prev.descriptor();
    const int len = m.element_len();
    const auto x = prev.pixel(i, j);

    auto z_at = [&](int k) {
        return std::span<double>(ws.z.data() + static_cast<size_t>(k) * len,
                                 static_cast<size_t>(len));
    };

    auto toward = [&](std::span<const double> target, bool data_term, std::span<double> out) {
        const double d = dist(m, x, target);
        const double t = data_term ? calc_t_data(lambda, params.data_term, d)
                                   : calc_t_reg(lambda_alpha, params.regularizer, d);
        try {
            geodesic_point(m, x, target, t, out);
        } catch (const CutLocusError& e) {
            throw e.with_pixel(i, j);
        }
    };

    // z1: data prox; z2..z5: right, left, down, up; absent neighbors keep the
    // pixel in place (their coupling term is not in the sum)
    toward(f.pixel(i, j), true, z_at(0));
    if (j + 1 < prev.cols())
        toward(prev.pixel(i, j + 1), false, z_at(1));
    else
        std::copy(x.begin(), x.end(), z_at(1).begin());
    if (j - 1 >= 0)
        toward(prev.pixel(i, j - 1), false, z_at(2));
    else
        std::copy(x.begin(), x.end(), z_at(2).begin());
    if (i + 1 < prev.rows())
        toward(prev.pixel(i + 1, j), false, z_at(3));
    else
        std::copy(x.begin(), x.end(), z_at(3).begin());
    if (i - 1 >= 0)
        toward(prev.pixel(i - 1, j), false, z_at(4));
    else
        std::copy(x.begin(), x.end(), z_at(4).begin());

    const auto out = next.pixel(i, j);
    if (params.algorithm == SolverAlgorithm::ParallelFast) {
        approx_mean5(m, ws.z.data(), out);
        return;
    }
    try {
        karcher_mean(m, ws.z.data(), 5, out, params.mean_cfg);
    } catch (const NonConvergedError&) {
        // keep long runs alive; the report counts the deviation
        approx_mean5(m, ws.z.data(), out);
        fallbacks.fetch_add(1, std::memory_order_relaxed);
    } catch (const CutLocusError& e) {
        throw e.with_pixel(i, j);
    }
}

}  // namespace

SolveReport parallel_ppa(const ManifoldImage& f, const DenoiseParams& params) {
    return parallel_ppa(f, params, f);
}

SolveReport parallel_ppa(const ManifoldImage& f, const DenoiseParams& params,
                         const ManifoldImage& x0) {
    check_params(params);
    if (params.algorithm == SolverAlgorithm::Cyclic)
        throw std::invalid_argument("parallel_ppa: params.algorithm selects the cyclic solver");
    if (!f.same_shape(x0))
        throw std::invalid_argument("parallel_ppa: f and x0 differ in manifold or shape");

    const auto& m = f.descriptor();
    const int len = m.element_len();
    const int n_pixels = f.pixel_count();

    SolveReport report{x0, {}, 0, 0};
    ManifoldImage& x = report.output;
    ManifoldImage next = x;
    const int stride = trace_stride(params.iterations);

    const int workers = std::max(1, std::min(params.threads, n_pixels));
    std::atomic<long> fallbacks{0};

    for (int r = 1; r <= params.iterations; ++r) {
        const double lambda = lambda_at(params.schedule, r);
        const double lambda_alpha = lambda * params.alpha;

        auto run_range = [&](int begin, int end, ParallelWorkspace& ws) {
            for (int p = begin; p < end; ++p)
                parallel_pixel(x, f, next, p / f.cols(), p % f.cols(), lambda,
                               lambda_alpha, params, ws, fallbacks);
        };

        if (workers == 1) {
            ParallelWorkspace ws{std::vector<double>(5 * static_cast<size_t>(len))};
            run_range(0, n_pixels, ws);
        } else {
            std::vector<std::thread> pool;
            std::exception_ptr first_error;
            std::mutex error_mutex;
            const int chunk = (n_pixels + workers - 1) / workers;
            for (int w = 0; w < workers; ++w) {
                const int begin = w * chunk;
                const int end = std::min(n_pixels, begin + chunk);
                if (begin >= end) break;
                pool.emplace_back([&, begin, end] {
                    ParallelWorkspace ws{
                        std::vector<double>(5 * static_cast<size_t>(len))};
                    try {
                        run_range(begin, end, ws);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!first_error) first_error = std::current_exception();
                    }
                });
            }
            for (auto& t : pool) t.join();
            if (first_error) std::rethrow_exception(first_error);
        }

        std::swap(x.data(), next.data());
        report.iterations_run = r;
        if (r % stride == 0 || r == params.iterations)
            report.functional_trace.emplace_back(r, functional_value(x, f, params));
    }
    report.mean_fallbacks = fallbacks.load();
    return report;
}

}  // namespace mtv
