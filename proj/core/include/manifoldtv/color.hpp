#pragma once

#include <array>

#include "manifoldtv/image.hpp"

namespace mtv {

// LCh color coordinates: luminance L, chroma C, hue angle h in (-pi, pi].
// As a manifold element this is the cylinder R^2 x S^1 in the order (L,C,h).
struct LCh {
    double L = 0;
    double C = 0;
    double h = 0;
};

// sRGB <-> LCh through the standard chain sRGB (piecewise gamma, threshold
// 0.04045, exponent 2.4) <-> linear RGB <-> XYZ (D65, 2 degree observer)
// <-> Lab (f with delta = 6/29) <-> LCh. The hue of near-gray colors
// (C < 1e-8) is fixed to 0 so every pixel carries a valid S^1 coordinate.
LCh rgb_to_lch(const std::array<double, 3>& rgb);

// Inverse chain; out-of-gamut components are clamped to [0,1] and counted in
// *clamped when given.
std::array<double, 3> lch_to_rgb(const LCh& lch, long* clamped = nullptr);

// Image-level conversion between euclidean:3 (RGB in [0,1]) and lch images.
ManifoldImage rgb_image_to_lch(const ManifoldImage& rgb);
ManifoldImage lch_image_to_rgb(const ManifoldImage& lch, long* clamped = nullptr);

}  // namespace mtv
