#include "manifoldtv/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "manifoldtv/manifolds.hpp"

namespace mtv {

double RngStream::next_gaussian() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double u1 = next_unit_open();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    cached_ = r * std::sin(kTwoPi * u2);
    has_cached_ = true;
    return r * std::cos(kTwoPi * u2);
}

// ---- DWI protocol -----------------------------------------------------------

DwiProtocol DwiProtocol::fibonacci(int n_dirs, double b, double a0) {
    if (n_dirs < 6) throw std::invalid_argument("DwiProtocol: needs at least 6 directions");
    DwiProtocol p;
    p.b = b;
    p.a0 = a0;
    const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
    p.directions.reserve(n_dirs);
    for (int k = 0; k < n_dirs; ++k) {
        const double z = 1.0 - 2.0 * (k + 0.5) / n_dirs;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden_angle * k;
        p.directions.push_back({r * std::cos(phi), r * std::sin(phi), z});
    }
    p.validate();
    return p;
}

void DwiProtocol::validate() const {
    if (directions.size() < 6)
        throw std::invalid_argument("DwiProtocol: needs at least 6 directions");
    if (!(b > 0) || !(a0 > 0))
        throw std::invalid_argument("DwiProtocol: b and A0 must be > 0");
    for (const auto& v : directions) {
        const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        if (std::abs(n - 1.0) > 1e-12)
            throw std::invalid_argument("DwiProtocol: directions must be unit vectors");
    }
}

// ---- Stejskal-Tanner forward model -----------------------------------------

std::vector<ManifoldImage> stejskal_tanner_forward(const ManifoldImage& tensors,
                                                   const DwiProtocol& proto) {
    if (tensors.descriptor().kind() != ManifoldKind::Pos3)
        throw std::invalid_argument("stejskal_tanner_forward: input must be a pos3 image");
    proto.validate();

    std::vector<ManifoldImage> dwis;
    dwis.reserve(proto.directions.size());
    const auto scalar = ManifoldDescriptor::euclidean(1);
    for (const auto& v : proto.directions) {
        ManifoldImage img(scalar, tensors.rows(), tensors.cols());
        for (int p = 0; p < tensors.pixel_count(); ++p) {
            const auto s = tensors.pixel(p);
            double q = 0;  // v^T S v
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) q += v[r] * s[3 * r + c] * v[c];
            img.pixel(p)[0] = proto.a0 * std::exp(-proto.b * q);
        }
        dwis.push_back(std::move(img));
    }
    return dwis;
}

ManifoldImage rician_corrupt(const ManifoldImage& img, double sigma, RngSeed seed,
                             uint64_t stream_salt) {
    if (sigma < 0) throw std::invalid_argument("rician_corrupt: sigma must be >= 0");
    if (img.descriptor() != ManifoldDescriptor::euclidean(1))
        throw std::invalid_argument("rician_corrupt: expects a scalar (euclidean:1) image");
    ManifoldImage out = img;
    for (int p = 0; p < img.pixel_count(); ++p) {
        RngStream stream(seed.seed, stream_salt + static_cast<uint64_t>(p));
        const double x = sigma * stream.next_gaussian();
        const double y = sigma * stream.next_gaussian();
        const double d = img.pixel(p)[0];
        out.pixel(p)[0] = std::hypot(x + d, y);
    }
    return out;
}

// ---- least-squares tensor fit ------------------------------------------------

namespace {

// Gauss-Jordan inverse of a 6x6 SPD-ish normal matrix; pivots below 1e-10
// signal a rank-deficient direction design.
std::array<double, 36> invert6(std::array<double, 36> a) {
    std::array<double, 36> inv{};
    for (int i = 0; i < 6; ++i) inv[7 * i] = 1.0;
    for (int col = 0; col < 6; ++col) {
        int piv = col;
        for (int r = col + 1; r < 6; ++r)
            if (std::abs(a[6 * r + col]) > std::abs(a[6 * piv + col])) piv = r;
        if (std::abs(a[6 * piv + col]) < 1e-10)
            throw std::invalid_argument(
                "dti_ls_fit: direction design matrix is rank deficient");
        if (piv != col)
            for (int c = 0; c < 6; ++c) {
                std::swap(a[6 * piv + c], a[6 * col + c]);
                std::swap(inv[6 * piv + c], inv[6 * col + c]);
            }
        const double s = 1.0 / a[6 * col + col];
        for (int c = 0; c < 6; ++c) {
            a[6 * col + c] *= s;
            inv[6 * col + c] *= s;
        }
        for (int r = 0; r < 6; ++r) {
            if (r == col) continue;
            const double f = a[6 * r + col];
            if (f == 0.0) continue;
            for (int c = 0; c < 6; ++c) {
                a[6 * r + c] -= f * a[6 * col + c];
                inv[6 * r + c] -= f * inv[6 * col + c];
            }
        }
    }
    return inv;
}

}  // namespace

ManifoldImage dti_ls_fit(const std::vector<ManifoldImage>& dwis, const DwiProtocol& proto) {
    proto.validate();
    const int n_dirs = static_cast<int>(proto.directions.size());
    if (static_cast<int>(dwis.size()) != n_dirs)
        throw std::invalid_argument("dti_ls_fit: one DWI per protocol direction required");
    for (const auto& d : dwis)
        if (!d.same_shape(dwis[0]) || d.descriptor().element_len() != 1)
            throw std::invalid_argument("dti_ls_fit: DWIs must be equally shaped scalar images");

    // design rows [vx^2, vy^2, vz^2, 2 vx vy, 2 vx vz, 2 vy vz]
    std::vector<std::array<double, 6>> design(n_dirs);
    for (int k = 0; k < n_dirs; ++k) {
        const auto& v = proto.directions[k];
        design[k] = {v[0] * v[0], v[1] * v[1], v[2] * v[2],
                     2 * v[0] * v[1], 2 * v[0] * v[2], 2 * v[1] * v[2]};
    }
    std::array<double, 36> normal{};
    for (int k = 0; k < n_dirs; ++k)
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c) normal[6 * r + c] += design[k][r] * design[k][c];
    const std::array<double, 36> normal_inv = invert6(normal);

    const double floor_dwi = 1e-3 * proto.a0;
    ManifoldImage out(ManifoldDescriptor::pos3(), dwis[0].rows(), dwis[0].cols());
    std::array<double, 6> rhs{}, sol{};
    for (int p = 0; p < out.pixel_count(); ++p) {
        rhs.fill(0.0);
        for (int k = 0; k < n_dirs; ++k) {
            const double value = std::max(dwis[k].pixel(p)[0], floor_dwi);
            const double y = -std::log(value / proto.a0) / proto.b;
            for (int r = 0; r < 6; ++r) rhs[r] += design[k][r] * y;
        }
        for (int r = 0; r < 6; ++r) {
            sol[r] = 0;
            for (int c = 0; c < 6; ++c) sol[r] += normal_inv[6 * r + c] * rhs[c];
        }
        Mat3 s;
        s(0, 0) = sol[0];
        s(1, 1) = sol[1];
        s(2, 2) = sol[2];
        s(0, 1) = s(1, 0) = sol[3];
        s(0, 2) = s(2, 0) = sol[4];
        s(1, 2) = s(2, 1) = sol[5];

        const SymEigen3 e = sym_eigen3(s);
        const double lam_max = e.eigenvalues[2];
        const double floor_eig = lam_max > 0 ? 1e-6 * lam_max : 1e-9;
        const Mat3 spd = sym_apply(e, [&](double l) { return std::max(l, floor_eig); });
        spd.store(out.pixel(p).data());
    }
    return out;
}

// ---- von Mises-Fisher --------------------------------------------------------

namespace {

// Deterministic orthonormal tangent frame at a unit vector.
void tangent_frame(const double* mu, double* t1, double* t2) {
    int least = 0;
    for (int k = 1; k < 3; ++k)
        if (std::abs(mu[k]) < std::abs(mu[least])) least = k;
    double e[3] = {0, 0, 0};
    e[least] = 1.0;
    const double d = e[0] * mu[0] + e[1] * mu[1] + e[2] * mu[2];
    double n = 0;
    for (int k = 0; k < 3; ++k) {
        t1[k] = e[k] - d * mu[k];
        n += t1[k] * t1[k];
    }
    n = std::sqrt(n);
    for (int k = 0; k < 3; ++k) t1[k] /= n;
    t2[0] = mu[1] * t1[2] - mu[2] * t1[1];
    t2[1] = mu[2] * t1[0] - mu[0] * t1[2];
    t2[2] = mu[0] * t1[1] - mu[1] * t1[0];
}

}  // namespace

std::array<double, 3> vmf_sample(const std::array<double, 3>& mu, double kappa,
                                 RngStream& stream) {
    if (!(kappa > 0)) throw std::invalid_argument("vmf_sample: kappa must be > 0");

    // Wood's envelope for dimension 3: Beta(1,1) mixing variable, cosine
    // W = (1 - (1+b)Z) / (1 - (1-b)Z).
    const double b = (-2.0 * kappa + std::sqrt(4.0 * kappa * kappa + 4.0)) / 2.0;
    const double x0 = (1.0 - b) / (1.0 + b);
    const double c = kappa * x0 + 2.0 * std::log(1.0 - x0 * x0);

    double w = 0;
    for (;;) {
        const double z = stream.next_unit();
        const double u = stream.next_unit_open();
        w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z);
        if (kappa * w + 2.0 * std::log(1.0 - x0 * w) - c >= std::log(u)) break;
    }

    const double phi = kTwoPi * stream.next_unit();
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - w * w));
    double t1[3], t2[3];
    tangent_frame(mu.data(), t1, t2);
    std::array<double, 3> out;
    double n = 0;
    for (int k = 0; k < 3; ++k) {
        out[k] = w * mu[k] + sin_theta * (std::cos(phi) * t1[k] + std::sin(phi) * t2[k]);
        n += out[k] * out[k];
    }
    n = std::sqrt(n);
    for (double& x : out) x /= n;
    return out;
}

std::array<double, 3> vmf_sample(const std::array<double, 3>& mu, double kappa,
                                 RngSeed seed) {
    RngStream stream(seed.seed, 0);
    return vmf_sample(mu, kappa, stream);
}

ManifoldImage vmf_corrupt(const ManifoldImage& img, double kappa, RngSeed seed) {
    if (img.descriptor().kind() != ManifoldKind::S2)
        throw std::invalid_argument("vmf_corrupt: expects an s2 image");
    ManifoldImage out = img;
    for (int p = 0; p < img.pixel_count(); ++p) {
        RngStream stream(seed.seed, static_cast<uint64_t>(p));
        const auto mu = img.pixel(p);
        const auto s = vmf_sample({mu[0], mu[1], mu[2]}, kappa, stream);
        std::copy(s.begin(), s.end(), out.pixel(p).begin());
    }
    return out;
}

// ---- tangent-space Gaussian ----------------------------------------------------

namespace {

// Gaussian tangent draw with per-coordinate std sigma, written into v; the
// basis respects the tangent space structure: axis coordinates of the skew
// basis for SO(3), an orthonormal in-plane frame for S^2, and for Pos(3) the
// metric-adapted symmetric basis D^1/2 E_kl D^1/2 (an ambient-basis draw
// would blow past the injectivity scale for small-eigenvalue tensors).
void draw_tangent(const ManifoldDescriptor& m, std::span<const double> base, double sigma,
                  RngStream& stream, std::span<double> v) {
    switch (m.kind()) {
        case ManifoldKind::S1:
            v[0] = sigma * stream.next_gaussian();
            return;
        case ManifoldKind::S2: {
            double t1[3], t2[3];
            tangent_frame(base.data(), t1, t2);
            const double g1 = sigma * stream.next_gaussian();
            const double g2 = sigma * stream.next_gaussian();
            for (int k = 0; k < 3; ++k) v[k] = g1 * t1[k] + g2 * t2[k];
            return;
        }
        case ManifoldKind::SO3: {
            const double gx = sigma * stream.next_gaussian();
            const double gy = sigma * stream.next_gaussian();
            const double gz = sigma * stream.next_gaussian();
            skew_from_axis(gx, gy, gz).store(v.data());
            return;
        }
        case ManifoldKind::Pos3: {
            Mat3 g;
            for (int r = 0; r < 3; ++r) g(r, r) = sigma * stream.next_gaussian();
            for (int r = 0; r < 3; ++r)
                for (int c = r + 1; c < 3; ++c)
                    g(r, c) = g(c, r) = sigma * stream.next_gaussian();
            const Mat3 s = pos3_sqrt(Mat3::from(base.data()));
            symmetrize(s * g * s).store(v.data());
            return;
        }
        case ManifoldKind::Euclidean:
            for (auto& x : v) x = sigma * stream.next_gaussian();
            return;
        case ManifoldKind::Product: {
            size_t off = 0;
            for (const auto& comp : m.components()) {
                const size_t n = comp.element_len();
                draw_tangent(comp, base.subspan(off, n), sigma, stream, v.subspan(off, n));
                off += n;
            }
            return;
        }
    }
}

// Clamp the metric norm of the tangent draws on compact factors to pi/2 so
// the exponential stays injectivity-safe.
void clamp_tangent(const ManifoldDescriptor& m, std::span<const double> base,
                   std::span<double> v) {
    switch (m.kind()) {
        case ManifoldKind::S1:
        case ManifoldKind::S2:
        case ManifoldKind::SO3: {
            const double n = norm_at(m, base, v);
            if (n > kPi / 2.0)
                for (auto& x : v) x *= (kPi / 2.0) / n;
            return;
        }
        case ManifoldKind::Product: {
            size_t off = 0;
            for (const auto& comp : m.components()) {
                const size_t n = comp.element_len();
                clamp_tangent(comp, base.subspan(off, n), v.subspan(off, n));
                off += n;
            }
            return;
        }
        default:
            return;
    }
}

}  // namespace

ManifoldImage tangent_gaussian_noise(const ManifoldImage& img, double sigma, RngSeed seed) {
    if (sigma < 0)
        throw std::invalid_argument("tangent_gaussian_noise: sigma must be >= 0");
    ManifoldImage out = img;
    if (sigma == 0) return out;
    const auto& m = img.descriptor();
    std::vector<double> v(m.element_len());
    for (int p = 0; p < img.pixel_count(); ++p) {
        RngStream stream(seed.seed, static_cast<uint64_t>(p));
        const auto base = img.pixel(p);
        draw_tangent(m, base, sigma, stream, v);
        clamp_tangent(m, base, v);
        exp_map(m, base, v, out.pixel(p));
    }
    return out;
}

ManifoldImage wrapped_gaussian_noise(const ManifoldImage& img, double sigma, RngSeed seed) {
    if (img.descriptor().kind() != ManifoldKind::S1)
        throw std::invalid_argument("wrapped_gaussian_noise: expects an s1 image");
    if (sigma < 0)
        throw std::invalid_argument("wrapped_gaussian_noise: sigma must be >= 0");
    ManifoldImage out = img;
    for (int p = 0; p < img.pixel_count(); ++p) {
        RngStream stream(seed.seed, static_cast<uint64_t>(p));
        out.pixel(p)[0] = wrap_angle(img.pixel(p)[0] + sigma * stream.next_gaussian());
    }
    return out;
}

// ---- phantoms ---------------------------------------------------------------

namespace {

Mat3 rotation_z(double angle) {
    Mat3 r = Mat3::identity();
    r(0, 0) = std::cos(angle);
    r(0, 1) = -std::sin(angle);
    r(1, 0) = std::sin(angle);
    r(1, 1) = std::cos(angle);
    return r;
}

}  // namespace

ManifoldImage synth_pos3_image(int rows, int cols) {
    if (rows < 2 || cols < 2)
        throw std::invalid_argument("synth_pos3_image: shape must be at least 2x2");
    ManifoldImage out(ManifoldDescriptor::pos3(), rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const double u = static_cast<double>(i) / (rows - 1);
            const double v = static_cast<double>(j) / (cols - 1);
            const bool block = (i >= rows / 2 && j >= cols / 2);

            // smoothly rotating principal axis, diffusivities in mm^2/s scale
            double angle = 0.25 * kPi * (u + v);
            double lam0 = 2.2e-3, lam1 = 1.0e-3, lam2 = 0.6e-3;
            if (block) {
                angle += 0.4 * kPi;
                lam0 = 0.7e-3;
                lam1 = 2.0e-3;
                lam2 = 1.1e-3;
            }
            const Mat3 r = rotation_z(angle);
            Mat3 d = Mat3::zero();
            d(0, 0) = lam0;
            d(1, 1) = lam1;
            d(2, 2) = lam2;
            symmetrize(r * d * transpose(r)).store(out.pixel(i, j).data());
        }
    return out;
}

ManifoldImage synth_s2_image(int rows, int cols) {
    if (rows < 2 || cols < 2)
        throw std::invalid_argument("synth_s2_image: shape must be at least 2x2");
    ManifoldImage out(ManifoldDescriptor::s2(), rows, cols);
    const double band_theta[4] = {0.35, 0.95, 1.55, 2.15};
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const int band = std::min(3, 4 * i / rows);
            const double theta = band_theta[band];
            const double phi = 1.5 * static_cast<double>(j) / (cols - 1) +
                               0.5 * static_cast<double>(i) / (rows - 1);
            const auto p = out.pixel(i, j);
            p[0] = std::sin(theta) * std::cos(phi);
            p[1] = std::sin(theta) * std::sin(phi);
            p[2] = std::cos(theta);
        }
    return out;
}

ManifoldImage synth_so3_series(int n) {
    if (n < 2) throw std::invalid_argument("synth_so3_series: needs at least 2 samples");
    ManifoldImage out(ManifoldDescriptor::so3(), n, 1);

    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    const Mat3 jump = so3_rodrigues(skew_from_axis(1.2 * inv_sqrt3, 1.2 * inv_sqrt3,
                                                   1.2 * inv_sqrt3));
    const int jump_index = n > 50 ? 50 : n / 2;
    for (int k = 0; k < n; ++k) {
        const double s = static_cast<double>(k) / (n - 1);
        const Mat3 smooth = so3_rodrigues(skew_from_axis(0.0, 0.0, 1.1 * std::sin(kPi * s))) *
                            so3_rodrigues(skew_from_axis(0.7 * s, 0.0, 0.0));
        const Mat3 r = (k >= jump_index) ? jump * smooth : smooth;
        so3_reorthonormalize(r).store(out.pixel(k, 0).data());
    }
    return out;
}

}  // namespace mtv
