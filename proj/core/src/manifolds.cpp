#include "manifoldtv/manifolds.hpp"

#include <algorithm>
#include <cmath>

namespace mtv {

// ---- S^1 -------------------------------------------------------------

double wrap_angle(double a) {
    double w = std::remainder(a, kTwoPi);  // lands in [-pi, pi]
    if (w <= -kPi) w += kTwoPi;
    return w;
}

double s1_exp(double a, double v) { return wrap_angle(a + v); }

double s1_log(double a, double b) {
    const double gap = wrap_angle(b - a);
    if (std::abs(std::abs(gap) - kPi) < 1.5e-6)
        throw CutLocusError("s1_log: antipodal pair");
    return gap;
}

double s1_dist(double a, double b) { return std::abs(wrap_angle(b - a)); }

// ---- S^2 -------------------------------------------------------------

namespace {

double dot3(const double* x, const double* y) {
    return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

double norm3(const double* x) { return std::sqrt(dot3(x, x)); }

}  // namespace

void s2_exp(const double* a, const double* v, double* out) {
    const double n = norm3(v);
    if (n == 0.0) {
        std::copy(a, a + 3, out);
        return;
    }
    const double c = std::cos(n);
    const double s = std::sin(n) / n;
    for (int k = 0; k < 3; ++k) out[k] = c * a[k] + s * v[k];
    // renormalize to hold the unit-norm invariant through long chains
    const double r = norm3(out);
    for (int k = 0; k < 3; ++k) out[k] /= r;
}

void s2_log(const double* a, const double* b, double* out) {
    const double c = std::clamp(dot3(a, b), -1.0, 1.0);
    if (c <= -1.0 + kSphereCutTol)
        throw CutLocusError("s2_log: antipodal pair");
    double w[3];
    for (int k = 0; k < 3; ++k) w[k] = b[k] - c * a[k];
    const double wn = norm3(w);
    if (wn < 1e-14) {
        std::fill(out, out + 3, 0.0);
        return;
    }
    const double theta = std::atan2(wn, c);  // = arccos(c), conditioned near 0
    for (int k = 0; k < 3; ++k) out[k] = theta * w[k] / wn;
}

double s2_dist(const double* a, const double* b) {
    const double c = std::clamp(dot3(a, b), -1.0, 1.0);
    double w[3];
    for (int k = 0; k < 3; ++k) w[k] = b[k] - c * a[k];
    return std::atan2(norm3(w), c);
}

// ---- SO(3) -----------------------------------------------------------

Mat3 so3_rodrigues(const Mat3& w) {
    const double theta = frobenius_norm(w) / std::sqrt(2.0);
    double c1, c2;  // sin(t)/t and (1-cos t)/t^2
    if (theta < 1e-4) {
        const double t2 = theta * theta;
        c1 = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
        c2 = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
    } else {
        c1 = std::sin(theta) / theta;
        c2 = (1.0 - std::cos(theta)) / (theta * theta);
    }
    return Mat3::identity() + c1 * w + c2 * (w * w);
}

// theta = atan2(|sin|, cos) with |sin| read off the skew part; conditioned
// at theta -> 0 where arccos of the trace loses half the digits.
double so3_rotation_angle(const Mat3& r) {
    const double s = frobenius_norm(skew_part(r)) / std::sqrt(2.0);
    const double c = (trace(r) - 1.0) / 2.0;
    return std::atan2(s, c);
}

Mat3 so3_principal_log(const Mat3& r) {
    const Mat3 sk = skew_part(r);  // = sin(theta) K, K the unit-axis skew
    const double s = frobenius_norm(sk) / std::sqrt(2.0);
    const double c = (trace(r) - 1.0) / 2.0;
    const double theta = std::atan2(s, c);
    if (std::abs(theta - kPi) < kSo3CutTol)
        throw CutLocusError("so3_log: rotation angle at pi");
    if (s < 1e-12) return sk;  // theta/sin(theta) -> 1
    return (theta / s) * sk;
}

void so3_exp(const double* p, const double* w, double* out) {
    const Mat3 r = so3_rodrigues(Mat3::from(w)) * Mat3::from(p);
    so3_reorthonormalize(r).store(out);
}

void so3_log(const double* p, const double* q, double* out) {
    const Mat3 rel = Mat3::from(q) * transpose(Mat3::from(p));
    so3_principal_log(rel).store(out);
}

double so3_dist(const double* p, const double* q) {
    const Mat3 rel = Mat3::from(q) * transpose(Mat3::from(p));
    return std::sqrt(2.0) * so3_rotation_angle(rel);
}

Mat3 so3_reorthonormalize(const Mat3& m) {
    double r0[3] = {m(0, 0), m(0, 1), m(0, 2)};
    double r1[3] = {m(1, 0), m(1, 1), m(1, 2)};
    const double n0 = norm3(r0);
    for (double& x : r0) x /= n0;
    const double d = dot3(r1, r0);
    for (int k = 0; k < 3; ++k) r1[k] -= d * r0[k];
    const double n1 = norm3(r1);
    for (double& x : r1) x /= n1;
    const double r2[3] = {r0[1] * r1[2] - r0[2] * r1[1],
                          r0[2] * r1[0] - r0[0] * r1[2],
                          r0[0] * r1[1] - r0[1] * r1[0]};
    Mat3 out;
    for (int k = 0; k < 3; ++k) {
        out(0, k) = r0[k];
        out(1, k) = r1[k];
        out(2, k) = r2[k];
    }
    return out;
}

// ---- Pos(3) ----------------------------------------------------------

namespace {

SymEigen3 spd_eigen_checked(const Mat3& d, const char* who) {
    const SymEigen3 e = sym_eigen3(d);
    if (e.eigenvalues[0] <= kPos3MinEigenvalue)
        throw std::domain_error(std::string(who) + ": matrix is not positive definite");
    return e;
}

}  // namespace

Mat3 pos3_sqrt(const Mat3& d) {
    return sym_apply(spd_eigen_checked(d, "pos3_sqrt"),
                     [](double x) { return std::sqrt(x); });
}

Mat3 pos3_inv_sqrt(const Mat3& d) {
    return sym_apply(spd_eigen_checked(d, "pos3_inv_sqrt"),
                     [](double x) { return 1.0 / std::sqrt(x); });
}

// exp_D(W) = D^1/2 exp(D^-1/2 W D^-1/2) D^1/2
void pos3_exp(const double* d, const double* w, double* out) {
    const Mat3 dm = Mat3::from(d);
    const Mat3 s = pos3_sqrt(dm);
    const Mat3 si = pos3_inv_sqrt(dm);
    const Mat3 inner = symmetrize(si * Mat3::from(w) * si);
    const Mat3 expm = sym_apply(sym_eigen3(inner), [](double x) { return std::exp(x); });
    symmetrize(s * expm * s).store(out);
}

// log_D(E) = D^1/2 log(D^-1/2 E D^-1/2) D^1/2
void pos3_log(const double* d, const double* e, double* out) {
    const Mat3 dm = Mat3::from(d);
    const Mat3 s = pos3_sqrt(dm);
    const Mat3 si = pos3_inv_sqrt(dm);
    const Mat3 inner = symmetrize(si * Mat3::from(e) * si);
    const Mat3 logm = sym_apply(spd_eigen_checked(inner, "pos3_log"),
                                [](double x) { return std::log(x); });
    symmetrize(s * logm * s).store(out);
}

// d^2(D,E) = sum_l log(kappa_l)^2, kappa_l eigenvalues of D^-1/2 E D^-1/2
double pos3_dist(const double* d, const double* e) {
    const Mat3 si = pos3_inv_sqrt(Mat3::from(d));
    const Mat3 inner = symmetrize(si * Mat3::from(e) * si);
    const SymEigen3 eig = spd_eigen_checked(inner, "pos3_dist");
    double s = 0;
    for (double k : eig.eigenvalues) {
        const double l = std::log(k);
        s += l * l;
    }
    return std::sqrt(s);
}

// ||W||_D = ||D^-1/2 W D^-1/2||_F
double pos3_norm_at(const double* d, const double* w) {
    const Mat3 si = pos3_inv_sqrt(Mat3::from(d));
    return frobenius_norm(symmetrize(si * Mat3::from(w) * si));
}

// ---- R^k -------------------------------------------------------------

void euclidean_exp(int k, const double* a, const double* v, double* out) {
    for (int i = 0; i < k; ++i) out[i] = a[i] + v[i];
}

void euclidean_log(int k, const double* a, const double* b, double* out) {
    for (int i = 0; i < k; ++i) out[i] = b[i] - a[i];
}

double euclidean_dist(int k, const double* a, const double* b) {
    double s = 0;
    for (int i = 0; i < k; ++i) {
        const double d = b[i] - a[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace mtv
