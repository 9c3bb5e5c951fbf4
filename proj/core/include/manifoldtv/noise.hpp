#pragma once

#include <array>
#include <vector>

#include "manifoldtv/image.hpp"
#include "manifoldtv/rng.hpp"

namespace mtv {

// Acquisition protocol for synthetic diffusion-weighted imaging: gradient
// directions (unit vectors, at least 6 so the tensor fit has full rank) and
// the Stejskal-Tanner constants b, A0.
struct DwiProtocol {
    std::vector<std::array<double, 3>> directions;
    double b = 800.0;
    double a0 = 1000.0;

    // Deterministic Fibonacci-sphere direction set; well conditioned for the
    // least-squares tensor fit.
    static DwiProtocol fibonacci(int n_dirs = 15, double b = 800.0, double a0 = 1000.0);

    void validate() const;  // throws std::invalid_argument
};

// Diffusion-weighted images D_v(p) = A0 exp(-b v^T S(p) v), one scalar image
// (euclidean:1) per direction.
std::vector<ManifoldImage> stejskal_tanner_forward(const ManifoldImage& tensors,
                                                   const DwiProtocol& proto);

// Magnitude-MR noise: D' = sqrt((X + D)^2 + Y^2) with X, Y ~ N(0, sigma^2).
// stream_salt separates the substreams of multiple images corrupted under
// one seed.
ManifoldImage rician_corrupt(const ManifoldImage& img, double sigma, RngSeed seed,
                             uint64_t stream_salt = 0);

// Per-pixel least-squares fit of -(1/b) log(D'/A0) = v^T S v in the six
// unique tensor entries, DWI values floored at 1e-3 A0 before the log, and
// the result projected to SPD by eigenvalue flooring at 1e-6 x the largest
// eigenvalue (absolute 1e-9 when no eigenvalue is positive).
ManifoldImage dti_ls_fit(const std::vector<ManifoldImage>& dwis, const DwiProtocol& proto);

// One draw from the von Mises-Fisher distribution on S^2 with mean direction
// mu and concentration kappa, by the rejection sampler of Wood's simulation
// algorithm (envelope parameter b = (-2k + sqrt(4k^2 + 4))/2 for dimension 3,
// uniform azimuth, rotated to mu).
std::array<double, 3> vmf_sample(const std::array<double, 3>& mu, double kappa,
                                 RngStream& stream);
std::array<double, 3> vmf_sample(const std::array<double, 3>& mu, double kappa,
                                 RngSeed seed);

// Every pixel of an S^2 image replaced by a vMF draw centered at its value.
ManifoldImage vmf_corrupt(const ManifoldImage& img, double kappa, RngSeed seed);

// x' = exp_x(W) with W an isotropic Gaussian tangent sample of
// per-coordinate standard deviation sigma (skew basis on SO(3), symmetric
// basis on Pos(3)); tangent norms are clamped to pi/2 on S^1/S^2/SO(3) to
// stay injectivity-safe.
ManifoldImage tangent_gaussian_noise(const ManifoldImage& img, double sigma, RngSeed seed);

// Wrapped Gaussian on S^1: wrap(theta + sigma g), no clamping.
ManifoldImage wrapped_gaussian_noise(const ManifoldImage& img, double sigma, RngSeed seed);

// ---- phantoms -------------------------------------------------------------
//
// Deterministic piecewise-smooth fields with a sharp discontinuity; the
// generators below take no RNG and satisfy the manifold invariants exactly.

// Diffusion tensors with smoothly rotating principal axes and a block whose
// orientation and anisotropy jump.
ManifoldImage synth_pos3_image(int rows, int cols);

// Unit vectors in latitude bands (sharp row-wise jumps) with smoothly
// drifting azimuth.
ManifoldImage synth_s2_image(int rows, int cols);

// n x 1 rotation series, smooth except for a single large jump; for n > 50
// the jump sits between samples 49 and 50 so the largest step
// d(x[k-1], x[k]) is at k = 50.
ManifoldImage synth_so3_series(int n);

}  // namespace mtv
