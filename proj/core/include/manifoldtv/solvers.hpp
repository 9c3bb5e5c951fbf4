#pragma once

#include <vector>

#include "manifoldtv/averaging.hpp"
#include "manifoldtv/image.hpp"
#include "manifoldtv/prox.hpp"

namespace mtv {

// Proximal parameter sequence lambda_r = c r^-omega, square-summable but not
// summable for omega in (0.5, 1]. Defaults c = 3, omega = 0.95.
struct LambdaSchedule {
    double c = 3.0;
    double omega = 0.95;
};

double lambda_at(const LambdaSchedule& s, int r);

enum class SolverAlgorithm { Cyclic, Parallel, ParallelFast };

struct DenoiseParams {
    DataTermKind data_term = DataTermKind::l2();
    RegularizerKind regularizer = RegularizerKind::tv();
    double alpha = 0.0;
    LambdaSchedule schedule{};
    int iterations = 1;
    SolverAlgorithm algorithm = SolverAlgorithm::Cyclic;
    MeanConfig mean_cfg{};  // exact-mean parallel mode
    int threads = 1;        // parallel worker count; never changes the result
};

struct SolveReport {
    ManifoldImage output;
    // (iteration, functional value) checkpoints, every max(1, iterations/100)
    // iterations plus the final one.
    std::vector<std::pair<int, double>> functional_trace;
    int iterations_run = 0;
    // parallel exact-mean pixels that fell back to approx_mean5
    long mean_fallbacks = 0;
};

// Value of the l^p-TV^q functional
//   (1/p) sum d^p(x,f) + alpha (1/q) sum d^q over horizontal pairs
//                      + alpha (1/q) sum d^q over vertical pairs,
// with Huber kinds replacing d^p/p (resp. d^q/q) by h(d).
double functional_value(const ManifoldImage& x, const ManifoldImage& f,
                        const DenoiseParams& params);

// Cyclic proximal point algorithm: per iteration r, the data prox over all
// pixels, then sequential in-place pair contractions over all horizontal
// pairs (ascending j) and all vertical pairs (ascending i), with path
// lengths from calc_t_data(lambda_r) and calc_t_reg(lambda_r alpha).
// x0 overrides the starting iterate (defaults to f).
SolveReport cyclic_ppa(const ManifoldImage& f, const DenoiseParams& params);
SolveReport cyclic_ppa(const ManifoldImage& f, const DenoiseParams& params,
                       const ManifoldImage& x0);

// Parallel proximal point algorithm: per iteration every pixel computes the
// five prox points z1 = toward the datum, z2..z5 = toward the four
// neighbors (a missing neighbor contributes the pixel itself), and replaces
// itself by their intrinsic mean (Parallel) or by approx_mean5
// (ParallelFast). All reads reference the previous iterate, so pixels may be
// processed concurrently; the result is independent of the worker count.
SolveReport parallel_ppa(const ManifoldImage& f, const DenoiseParams& params);
SolveReport parallel_ppa(const ManifoldImage& f, const DenoiseParams& params,
                         const ManifoldImage& x0);

}  // namespace mtv
