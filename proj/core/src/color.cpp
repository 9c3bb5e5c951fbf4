#include "manifoldtv/color.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "manifoldtv/manifolds.hpp"

namespace mtv {

namespace {

// sRGB linear -> XYZ under the D65 2-degree observer. The white point is
// taken as the row sums of this matrix and the inverse is computed from it,
// so white maps exactly to Lab (100, 0, 0) and the round trip closes to
// machine precision instead of the ~1e-7 errors of the published rounded
// inverse.
constexpr double kRgbToXyz[9] = {0.4124564, 0.3575761, 0.1804375,
                                 0.2126729, 0.7151522, 0.0721750,
                                 0.0193339, 0.1191920, 0.9503041};

constexpr double kWhiteX = kRgbToXyz[0] + kRgbToXyz[1] + kRgbToXyz[2];
constexpr double kWhiteY = kRgbToXyz[3] + kRgbToXyz[4] + kRgbToXyz[5];
constexpr double kWhiteZ = kRgbToXyz[6] + kRgbToXyz[7] + kRgbToXyz[8];

std::array<double, 9> invert3(const double (&m)[9]) {
    const double det = m[0] * (m[4] * m[8] - m[5] * m[7]) -
                       m[1] * (m[3] * m[8] - m[5] * m[6]) +
                       m[2] * (m[3] * m[7] - m[4] * m[6]);
    std::array<double, 9> inv;
    inv[0] = (m[4] * m[8] - m[5] * m[7]) / det;
    inv[1] = (m[2] * m[7] - m[1] * m[8]) / det;
    inv[2] = (m[1] * m[5] - m[2] * m[4]) / det;
    inv[3] = (m[5] * m[6] - m[3] * m[8]) / det;
    inv[4] = (m[0] * m[8] - m[2] * m[6]) / det;
    inv[5] = (m[2] * m[3] - m[0] * m[5]) / det;
    inv[6] = (m[3] * m[7] - m[4] * m[6]) / det;
    inv[7] = (m[1] * m[6] - m[0] * m[7]) / det;
    inv[8] = (m[0] * m[4] - m[1] * m[3]) / det;
    return inv;
}

const std::array<double, 9> kXyzToRgb = invert3(kRgbToXyz);

double srgb_to_linear(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double linear_to_srgb(double c) {
    return c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

constexpr double kLabDelta = 6.0 / 29.0;

double lab_f(double t) {
    return t > kLabDelta * kLabDelta * kLabDelta
               ? std::cbrt(t)
               : t / (3.0 * kLabDelta * kLabDelta) + 4.0 / 29.0;
}

double lab_f_inv(double t) {
    return t > kLabDelta ? t * t * t : 3.0 * kLabDelta * kLabDelta * (t - 4.0 / 29.0);
}

}  // namespace

LCh rgb_to_lch(const std::array<double, 3>& rgb) {
    for (double c : rgb)
        if (c < -1e-12 || c > 1.0 + 1e-12)
            throw std::invalid_argument("rgb_to_lch: components must lie in [0,1]");

    const double lin[3] = {srgb_to_linear(std::clamp(rgb[0], 0.0, 1.0)),
                           srgb_to_linear(std::clamp(rgb[1], 0.0, 1.0)),
                           srgb_to_linear(std::clamp(rgb[2], 0.0, 1.0))};
    double xyz[3] = {0, 0, 0};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) xyz[r] += kRgbToXyz[3 * r + c] * lin[c];

    const double fx = lab_f(xyz[0] / kWhiteX);
    const double fy = lab_f(xyz[1] / kWhiteY);
    const double fz = lab_f(xyz[2] / kWhiteZ);
    const double L = 116.0 * fy - 16.0;
    const double a = 500.0 * (fx - fy);
    const double b = 200.0 * (fy - fz);

    LCh out;
    out.L = L;
    out.C = std::sqrt(a * a + b * b);
    out.h = out.C < 1e-8 ? 0.0 : std::atan2(b, a);  // gray axis is hue-free
    return out;
}

std::array<double, 3> lch_to_rgb(const LCh& lch, long* clamped) {
    const double a = lch.C * std::cos(lch.h);
    const double b = lch.C * std::sin(lch.h);

    const double fy = (lch.L + 16.0) / 116.0;
    const double fx = fy + a / 500.0;
    const double fz = fy - b / 200.0;
    const double xyz[3] = {kWhiteX * lab_f_inv(fx), kWhiteY * lab_f_inv(fy),
                           kWhiteZ * lab_f_inv(fz)};

    double lin[3] = {0, 0, 0};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) lin[r] += kXyzToRgb[3 * r + c] * xyz[c];

    std::array<double, 3> rgb;
    for (int c = 0; c < 3; ++c) {
        const double v = linear_to_srgb(lin[c]);
        if ((v < -1e-12 || v > 1.0 + 1e-12) && clamped) ++*clamped;
        rgb[c] = std::clamp(v, 0.0, 1.0);
    }
    return rgb;
}

ManifoldImage rgb_image_to_lch(const ManifoldImage& rgb) {
    if (rgb.descriptor() != ManifoldDescriptor::euclidean(3))
        throw std::invalid_argument("rgb_image_to_lch: expects a euclidean:3 image");
    ManifoldImage out(ManifoldDescriptor::lch(), rgb.rows(), rgb.cols());
    for (int p = 0; p < rgb.pixel_count(); ++p) {
        const auto px = rgb.pixel(p);
        const LCh lch = rgb_to_lch({px[0], px[1], px[2]});
        auto dst = out.pixel(p);
        dst[0] = lch.L;
        dst[1] = lch.C;
        dst[2] = wrap_angle(lch.h);
    }
    return out;
}

ManifoldImage lch_image_to_rgb(const ManifoldImage& lch, long* clamped) {
    if (lch.descriptor() != ManifoldDescriptor::lch())
        throw std::invalid_argument("lch_image_to_rgb: expects an lch image");
    ManifoldImage out(ManifoldDescriptor::euclidean(3), lch.rows(), lch.cols());
    for (int p = 0; p < lch.pixel_count(); ++p) {
        const auto px = lch.pixel(p);
        const auto rgb = lch_to_rgb({px[0], px[1], px[2]}, clamped);
        std::copy(rgb.begin(), rgb.end(), out.pixel(p).begin());
    }
    return out;
}

}  // namespace mtv
