#pragma once

#include "manifoldtv/errors.hpp"
#include "manifoldtv/mat3.hpp"

namespace mtv {

// Closed-form exponential / logarithm / distance kernels for the supported
// data spaces, operating on raw coordinate arrays:
//
//   S^1    angle in (-pi, pi], 1 scalar
//   S^2    unit vector in R^3, 3 scalars
//   SO(3)  rotation matrix, 9 scalars row-major
//   Pos(3) symmetric positive definite matrix, 9 scalars row-major
//   R^k    plain vectors
//
// Conventions shared by all kernels: exp_x(log_x(y)) = y, the distance is
// the metric norm of the connecting tangent vector, and geodesics are unit
// speed. Logarithms throw CutLocusError near the conjugate point (antipodal
// on spheres, rotation angle pi on SO(3)); distances stay defined there.

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Numerical cut-locus guards (see the conditioning of arccos/sin near the
// singularity): spheres trip at inner product <= -1 + 1e-12, SO(3) at
// |theta - pi| < 1e-6.
inline constexpr double kSphereCutTol = 1e-12;
inline constexpr double kSo3CutTol = 1e-6;

// ---- S^1 -------------------------------------------------------------

// Maps any angle into the canonical range (-pi, pi].
double wrap_angle(double a);

double s1_exp(double a, double v);
double s1_log(double a, double b);  // throws CutLocusError when antipodal
double s1_dist(double a, double b); // defined for all pairs, antipodal -> pi

// ---- S^2 -------------------------------------------------------------

void s2_exp(const double* a, const double* v, double* out);
void s2_log(const double* a, const double* b, double* out);
double s2_dist(const double* a, const double* b);

// ---- SO(3) -----------------------------------------------------------

// Matrix exponential of a skew-symmetric W by the Rodrigues formula with
// rotation angle theta = ||W||_F / sqrt(2).
Mat3 so3_rodrigues(const Mat3& w);

// Principal logarithm of a rotation matrix: (theta / (2 sin theta))(R - R^T),
// theta = arccos((trace R - 1)/2). Throws CutLocusError for theta near pi.
Mat3 so3_principal_log(const Mat3& r);

double so3_rotation_angle(const Mat3& r);

void so3_exp(const double* p, const double* w, double* out);
void so3_log(const double* p, const double* q, double* out);
double so3_dist(const double* p, const double* q);

// Row-wise Gram-Schmidt with a cross-product third row; arrests orthogonality
// drift after exp/log chains while keeping det = +1.
Mat3 so3_reorthonormalize(const Mat3& r);

// ---- Pos(3) ----------------------------------------------------------

// Metric g_D(W,V) = trace(D^-1/2 W D^-1 V D^-1/2). Eigendecompositions use
// the cyclic Jacobi solver in mat3.hpp. Inputs with an eigenvalue <= 1e-14
// are rejected (std::domain_error); no silent flooring in core math.
inline constexpr double kPos3MinEigenvalue = 1e-14;

Mat3 pos3_sqrt(const Mat3& d);
Mat3 pos3_inv_sqrt(const Mat3& d);

void pos3_exp(const double* d, const double* w, double* out);
void pos3_log(const double* d, const double* e, double* out);
double pos3_dist(const double* d, const double* e);
double pos3_norm_at(const double* d, const double* w);

// ---- R^k -------------------------------------------------------------

void euclidean_exp(int k, const double* a, const double* v, double* out);
void euclidean_log(int k, const double* a, const double* b, double* out);
double euclidean_dist(int k, const double* a, const double* b);

}  // namespace mtv
