#include "manifoldtv/averaging.hpp"

#include <cmath>
#include <stdexcept>

namespace mtv {

void karcher_mean(const ManifoldDescriptor& m, const double* points, int n,
                  std::span<double> out, const MeanConfig& cfg) {
    if (n < 1) throw std::invalid_argument("karcher_mean: needs at least one point");
    if (cfg.tol <= 0) throw std::invalid_argument("karcher_mean: tol must be > 0");
    const int len = m.element_len();

    std::vector<double> x(points, points + len);  // start at the first point
    std::vector<double> grad(len), lg(len);

    double residual = 0;
    for (int iter = 0; iter <= cfg.max_iter; ++iter) {
        std::fill(grad.begin(), grad.end(), 0.0);
        for (int p = 0; p < n; ++p) {
            log_map(m, x, {points + static_cast<size_t>(p) * len,
                           static_cast<size_t>(len)},
                    lg);
            for (int k = 0; k < len; ++k) grad[k] += lg[k] / n;
        }
        residual = norm_at(m, x, grad);
        if (residual <= cfg.tol) {
            std::copy(x.begin(), x.end(), out.begin());
            return;
        }
        if (iter == cfg.max_iter) break;
        exp_map(m, x, grad, lg);
        x.assign(lg.begin(), lg.end());
    }
    throw NonConvergedError("karcher_mean: residual " + std::to_string(residual) +
                                " after " + std::to_string(cfg.max_iter) + " iterations",
                            residual);
}

ManifoldPoint karcher_mean(std::span<const ManifoldPoint> points, const MeanConfig& cfg) {
    if (points.empty())
        throw std::invalid_argument("karcher_mean: needs at least one point");
    const auto& m = points[0].descriptor();
    const int len = m.element_len();
    std::vector<double> flat;
    flat.reserve(static_cast<size_t>(points.size()) * len);
    for (const auto& p : points) {
        if (p.descriptor() != m)
            throw std::invalid_argument("karcher_mean: points on different manifolds");
        flat.insert(flat.end(), p.coords().begin(), p.coords().end());
    }
    std::vector<double> out(len);
    karcher_mean(m, flat.data(), static_cast<int>(points.size()), out, cfg);
    return ManifoldPoint(m, std::move(out));
}

void approx_mean5(const ManifoldDescriptor& m, const double* z, std::span<double> out) {
    const int len = m.element_len();
    auto at = [&](int k) {
        return std::span<const double>(z + static_cast<size_t>(k) * len,
                                       static_cast<size_t>(len));
    };
    std::vector<double> m1(len), m2(len), m3(len);
    geodesic_point(m, at(0), at(1), 0.5 * dist(m, at(0), at(1)), m1);
    geodesic_point(m, at(2), at(3), 0.5 * dist(m, at(2), at(3)), m2);
    geodesic_point(m, m1, m2, 0.5 * dist(m, m1, m2), m3);
    geodesic_point(m, m3, at(4), 0.2 * dist(m, m3, at(4)), out);
}

ManifoldPoint approx_mean5(const ManifoldPoint& z1, const ManifoldPoint& z2,
                           const ManifoldPoint& z3, const ManifoldPoint& z4,
                           const ManifoldPoint& z5) {
    const auto& m = z1.descriptor();
    for (const auto* p : {&z2, &z3, &z4, &z5})
        if (p->descriptor() != m)
            throw std::invalid_argument("approx_mean5: points on different manifolds");
    const int len = m.element_len();
    std::vector<double> flat;
    flat.reserve(5 * static_cast<size_t>(len));
    for (const auto* p : {&z1, &z2, &z3, &z4, &z5})
        flat.insert(flat.end(), p->coords().begin(), p->coords().end());
    std::vector<double> out(len);
    approx_mean5(m, flat.data(), out);
    return ManifoldPoint(m, std::move(out));
}

}  // namespace mtv
