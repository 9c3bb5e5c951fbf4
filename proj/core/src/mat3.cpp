#include "manifoldtv/mat3.hpp"

#include <algorithm>

namespace mtv {

namespace {

double off_diagonal_norm(const Mat3& a) {
    return std::sqrt(2.0 * (a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2)));
}

// One Jacobi rotation zeroing a(p,q), accumulated into v.
void jacobi_rotate(Mat3& a, Mat3& v, int p, int q) {
    if (a(p, q) == 0.0) return;
    const double tau = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
    const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    Mat3 rot = Mat3::identity();
    rot(p, p) = c;
    rot(q, q) = c;
    rot(p, q) = s;
    rot(q, p) = -s;

    a = transpose(rot) * a * rot;
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    v = v * rot;
}

}  // namespace

SymEigen3 sym_eigen3(const Mat3& input) {
    Mat3 a = symmetrize(input);
    Mat3 v = Mat3::identity();

    const double scale = frobenius_norm(a);
    const double tol = 1e-13 * std::max(scale, 1e-300);

    for (int sweep = 0; sweep < 64 && off_diagonal_norm(a) > tol; ++sweep) {
        jacobi_rotate(a, v, 0, 1);
        jacobi_rotate(a, v, 0, 2);
        jacobi_rotate(a, v, 1, 2);
    }

    // Sort eigenvalues ascending, permuting eigenvector columns along.
    std::array<int, 3> order = {0, 1, 2};
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return a(x, x) < a(y, y); });

    SymEigen3 out;
    for (int k = 0; k < 3; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]);
        for (int i = 0; i < 3; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }
    return out;
}

}  // namespace mtv
