#pragma once

#include <array>
#include <cmath>

namespace mtv {

// Row-major 3x3 matrix on top of std::array, sized for the SO(3)/Pos(3)
// closed forms. Deliberately minimal: no general linear algebra lives here.
struct Mat3 {
    std::array<double, 9> a{};

    double& operator()(int r, int c) { return a[3 * r + c]; }
    double operator()(int r, int c) const { return a[3 * r + c]; }

    static Mat3 identity() {
        Mat3 m;
        m.a = {1, 0, 0, 0, 1, 0, 0, 0, 1};
        return m;
    }
    static Mat3 zero() { return Mat3{}; }

    static Mat3 from(const double* p) {
        Mat3 m;
        for (int k = 0; k < 9; ++k) m.a[k] = p[k];
        return m;
    }
    void store(double* p) const {
        for (int k = 0; k < 9; ++k) p[k] = a[k];
    }
};

inline Mat3 operator*(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (int k = 0; k < 3; ++k) s += x(i, k) * y(k, j);
            r(i, j) = s;
        }
    return r;
}

inline Mat3 operator+(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (int k = 0; k < 9; ++k) r.a[k] = x.a[k] + y.a[k];
    return r;
}

inline Mat3 operator-(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (int k = 0; k < 9; ++k) r.a[k] = x.a[k] - y.a[k];
    return r;
}

inline Mat3 operator*(double s, const Mat3& x) {
    Mat3 r;
    for (int k = 0; k < 9; ++k) r.a[k] = s * x.a[k];
    return r;
}

inline Mat3 transpose(const Mat3& x) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = x(j, i);
    return r;
}

inline double trace(const Mat3& x) { return x(0, 0) + x(1, 1) + x(2, 2); }

inline double frobenius_norm(const Mat3& x) {
    double s = 0;
    for (double v : x.a) s += v * v;
    return std::sqrt(s);
}

inline double det(const Mat3& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

inline Mat3 symmetrize(const Mat3& x) { return 0.5 * (x + transpose(x)); }
inline Mat3 skew_part(const Mat3& x) { return 0.5 * (x - transpose(x)); }

// skew(v) w = v x w
inline Mat3 skew_from_axis(double x, double y, double z) {
    Mat3 m = Mat3::zero();
    m(0, 1) = -z;
    m(1, 0) = z;
    m(0, 2) = y;
    m(2, 0) = -y;
    m(1, 2) = -x;
    m(2, 1) = x;
    return m;
}

inline double max_abs_asymmetry(const Mat3& x) {
    double m = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) m = std::max(m, std::abs(x(i, j) - x(j, i)));
    return m;
}

// Eigendecomposition of a symmetric 3x3 matrix: A = V diag(w) V^T with V
// orthogonal, eigenvalues ascending. Cyclic Jacobi rotations, iterated until
// the off-diagonal norm drops below 1e-13 relative to ||A||_F.
struct SymEigen3 {
    std::array<double, 3> eigenvalues{};  // ascending
    Mat3 eigenvectors;                    // columns
};

SymEigen3 sym_eigen3(const Mat3& a);

// f applied to the spectrum: V diag(f(w)) V^T.
template <typename F>
Mat3 sym_apply(const SymEigen3& e, F&& f) {
    Mat3 r = Mat3::zero();
    for (int k = 0; k < 3; ++k) {
        const double fv = f(e.eigenvalues[k]);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r(i, j) += fv * e.eigenvectors(i, k) * e.eigenvectors(j, k);
    }
    return symmetrize(r);
}

}  // namespace mtv
