#pragma once

#include <span>
#include <vector>

#include "manifoldtv/manifold.hpp"

namespace mtv {

struct MeanConfig {
    double tol = 1e-10;  // stop once the mean tangent update has norm <= tol
    int max_iter = 100;
};

// Intrinsic (Karcher) mean by gradient descent,
//   x <- exp_x( (1/N) sum_i log_x(p_i) ),
// initialized at points[0]. Throws NonConvergedError (carrying the residual)
// when max_iter is exhausted, CutLocusError when an iterate loses sight of a
// point. 5-10 iterations suffice for five clustered points.
ManifoldPoint karcher_mean(std::span<const ManifoldPoint> points,
                           const MeanConfig& cfg = {});

// Span-level form used by the solvers: points are n consecutive pixels in a
// flat buffer, the result is written to out.
void karcher_mean(const ManifoldDescriptor& m, const double* points, int n,
                  std::span<double> out, const MeanConfig& cfg = {});

// Geodesic-analogue substitute for the 5-point mean:
//   [[[z1,z2]_{d1/2}, [z3,z4]_{d2/2}]_{d3/2}, z5]_{d4/5}
// with each d_k the distance of that bracket's endpoints. Exactly four
// geodesic evaluations; coincides with the arithmetic mean in a vector space.
ManifoldPoint approx_mean5(const ManifoldPoint& z1, const ManifoldPoint& z2,
                           const ManifoldPoint& z3, const ManifoldPoint& z4,
                           const ManifoldPoint& z5);

void approx_mean5(const ManifoldDescriptor& m, const double* z, std::span<double> out);

}  // namespace mtv
