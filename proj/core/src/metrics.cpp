#include "manifoldtv/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace mtv {

std::string MetricReport::to_text() const {
    if (infinite) return "inf dB";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f dB", value);
    return buf;
}

MetricReport delta_snr(const ManifoldImage& g, const ManifoldImage& f,
                       const ManifoldImage& x) {
    if (!g.same_shape(f) || !g.same_shape(x))
        throw std::invalid_argument("delta_snr: images differ in manifold or shape");
    const auto& m = g.descriptor();

    double noisy = 0, restored = 0;
    for (int p = 0; p < g.pixel_count(); ++p) {
        const double dn = dist(m, g.pixel(p), f.pixel(p));
        const double dr = dist(m, g.pixel(p), x.pixel(p));
        noisy += dn * dn;
        restored += dr * dr;
    }
    if (noisy == 0.0)
        throw std::invalid_argument("delta_snr: ground truth equals the noisy data");

    MetricReport report{"dsnr", 0.0, false, g.pixel_count()};
    if (restored == 0.0) {
        report.infinite = true;
        return report;
    }
    report.value = 10.0 * std::log10(noisy / restored);
    return report;
}

MetricReport psnr_rgb(const ManifoldImage& g, const ManifoldImage& x) {
    if (!g.same_shape(x))
        throw std::invalid_argument("psnr_rgb: images differ in manifold or shape");
    if (g.descriptor() != ManifoldDescriptor::euclidean(3))
        throw std::invalid_argument("psnr_rgb: expects euclidean:3 (RGB) images");

    double peak = 0, err = 0;
    for (int p = 0; p < g.pixel_count(); ++p) {
        const auto gp = g.pixel(p);
        const auto xp = x.pixel(p);
        for (int c = 0; c < 3; ++c) {
            peak = std::max(peak, std::abs(gp[c]));
            const double d = gp[c] - xp[c];
            err += d * d;
        }
    }

    MetricReport report{"psnr", 0.0, false, g.pixel_count()};
    if (err == 0.0) {
        report.infinite = true;
        return report;
    }
    report.value = 10.0 * std::log10(3.0 * g.pixel_count() * peak * peak / err);
    return report;
}

}  // namespace mtv
