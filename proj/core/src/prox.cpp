#include "manifoldtv/prox.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mtv {

DataTermKind DataTermKind::huber(double tau, double omega) {
    if (tau <= 0 || omega <= 0)
        throw std::invalid_argument("huber data term: tau and omega must be > 0");
    return {Type::Huber, tau, omega};
}

RegularizerKind RegularizerKind::huber(double tau, double omega) {
    if (tau <= 0 || omega <= 0)
        throw std::invalid_argument("huber regularizer: tau and omega must be > 0");
    return {Type::Huber, tau, omega};
}

double huber(double s, double tau, double omega) {
    const double knee = omega / (std::sqrt(2.0) * tau);
    if (s < knee) return tau * tau * s * s;
    return std::sqrt(2.0) * omega * tau * s - omega * omega / 2.0;
}

double calc_t_data(double lambda, const DataTermKind& kind, double d) {
    double t = 0;
    switch (kind.type) {
        case DataTermKind::Type::L1:
            t = std::min(lambda, d);
            break;
        case DataTermKind::Type::L2:
            t = lambda / (1.0 + lambda) * d;
            break;
        case DataTermKind::Type::Huber: {
            const double lt2 = 2.0 * lambda * kind.tau * kind.tau;
            // tie at the threshold takes the saturated branch
            if (d < kind.omega * (1.0 + lt2) / (std::sqrt(2.0) * kind.tau))
                t = lt2 / (1.0 + lt2) * d;
            else
                t = std::min(d, std::sqrt(2.0) * lambda * kind.omega * kind.tau);
            break;
        }
    }
    return std::clamp(t, 0.0, d);
}

double calc_t_reg(double lambda, const RegularizerKind& kind, double d) {
    double t = 0;
    switch (kind.type) {
        case RegularizerKind::Type::TV:
            t = std::min(lambda, d / 2.0);
            break;
        case RegularizerKind::Type::TV2:
            t = lambda / (1.0 + 2.0 * lambda) * d;
            break;
        case RegularizerKind::Type::Huber: {
            const double lt4 = 4.0 * lambda * kind.tau * kind.tau;
            if (d < kind.omega * (1.0 + lt4) / (std::sqrt(2.0) * kind.tau))
                t = (lt4 / 2.0) / (1.0 + lt4) * d;
            else
                t = std::min(d / 2.0, std::sqrt(2.0) * lambda * kind.omega * kind.tau);
            break;
        }
    }
    return std::clamp(t, 0.0, d / 2.0);
}

ManifoldImage prox_data(const ManifoldImage& x, const ManifoldImage& f, double lambda,
                        const DataTermKind& kind) {
    if (!x.same_shape(f))
        throw std::invalid_argument("prox_data: x and f differ in manifold or shape");
    ManifoldImage out = x;
    const auto& m = x.descriptor();
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) {
            const auto xs = x.pixel(i, j);
            const auto fs = f.pixel(i, j);
            const double d = dist(m, xs, fs);
            if (d == 0.0) continue;
            const double t = calc_t_data(lambda, kind, d);
            try {
                geodesic_point(m, xs, fs, t, out.pixel(i, j));
            } catch (const CutLocusError& e) {
                throw e.with_pixel(i, j);
            }
        }
    return out;
}

std::pair<ManifoldPoint, ManifoldPoint> prox_pair(const ManifoldPoint& a,
                                                  const ManifoldPoint& b, double t) {
    const double d = dist(a, b);
    if (t > d / 2.0 + 1e-12 * std::max(1.0, d))
        throw std::invalid_argument("prox_pair: t exceeds half the pair distance");
    return {geodesic_point(a, b, t), geodesic_point(b, a, t)};
}

ManifoldImage prox_coupling(const ManifoldImage& x, double lambda_alpha,
                            const RegularizerKind& kind, Axis axis, Parity parity) {
    if (lambda_alpha < 0)
        throw std::invalid_argument("prox_coupling: lambda must be >= 0");
    ManifoldImage out = x;
    const auto& m = x.descriptor();
    const int start = (parity == Parity::Even) ? 0 : 1;

    auto contract = [&](int ai, int aj, int bi, int bj) {
        const auto a = x.pixel(ai, aj);
        const auto b = x.pixel(bi, bj);
        const double d = dist(m, a, b);
        if (d == 0.0) return;
        const double t = calc_t_reg(lambda_alpha, kind, d);
        try {
            geodesic_point(m, a, b, t, out.pixel(ai, aj));
            geodesic_point(m, b, a, t, out.pixel(bi, bj));
        } catch (const CutLocusError& e) {
            throw e.with_pixel(ai, aj);
        }
    };

    if (axis == Axis::Horizontal) {
        for (int i = 0; i < x.rows(); ++i)
            for (int j = start; j + 1 < x.cols(); j += 2) contract(i, j, i, j + 1);
    } else {
        for (int i = start; i + 1 < x.rows(); i += 2)
            for (int j = 0; j < x.cols(); ++j) contract(i, j, i + 1, j);
    }
    return out;
}

}  // namespace mtv
