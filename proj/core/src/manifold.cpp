#include "manifoldtv/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "manifoldtv/manifolds.hpp"

namespace mtv {

// ---- descriptor ---------------------------------------------------------

ManifoldDescriptor ManifoldDescriptor::s1() {
    ManifoldDescriptor d;
    d.kind_ = ManifoldKind::S1;
    d.element_len_ = 1;
    return d;
}

ManifoldDescriptor ManifoldDescriptor::s2() {
    ManifoldDescriptor d;
    d.kind_ = ManifoldKind::S2;
    d.element_len_ = 3;
    return d;
}

ManifoldDescriptor ManifoldDescriptor::so3() {
    ManifoldDescriptor d;
    d.kind_ = ManifoldKind::SO3;
    d.element_len_ = 9;
    return d;
}

ManifoldDescriptor ManifoldDescriptor::pos3() {
    ManifoldDescriptor d;
    d.kind_ = ManifoldKind::Pos3;
    d.element_len_ = 9;
    return d;
}

ManifoldDescriptor ManifoldDescriptor::euclidean(int k) {
    if (k < 1) throw std::invalid_argument("euclidean: dimension must be >= 1");
    ManifoldDescriptor d;
    d.kind_ = ManifoldKind::Euclidean;
    d.euclidean_dim_ = k;
    d.element_len_ = k;
    return d;
}

ManifoldDescriptor ManifoldDescriptor::product(std::vector<ManifoldDescriptor> components) {
    if (components.empty())
        throw std::invalid_argument("product: needs at least one component");
    ManifoldDescriptor d;
    d.kind_ = ManifoldKind::Product;
    d.element_len_ = 0;
    for (const auto& c : components) d.element_len_ += c.element_len();
    d.components_ =
        std::make_shared<const std::vector<ManifoldDescriptor>>(std::move(components));
    return d;
}

ManifoldDescriptor ManifoldDescriptor::lch() {
    return product({euclidean(2), s1()});
}

const std::vector<ManifoldDescriptor>& ManifoldDescriptor::components() const {
    if (kind_ != ManifoldKind::Product)
        throw std::invalid_argument("components: not a product manifold");
    return *components_;
}

bool ManifoldDescriptor::operator==(const ManifoldDescriptor& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case ManifoldKind::Euclidean:
            return euclidean_dim_ == other.euclidean_dim_;
        case ManifoldKind::Product: {
            const auto& a = *components_;
            const auto& b = *other.components_;
            if (a.size() != b.size()) return false;
            for (size_t i = 0; i < a.size(); ++i)
                if (a[i] != b[i]) return false;
            return true;
        }
        default:
            return true;
    }
}

std::string ManifoldDescriptor::tag() const {
    switch (kind_) {
        case ManifoldKind::S1:
            return "s1";
        case ManifoldKind::S2:
            return "s2";
        case ManifoldKind::SO3:
            return "so3";
        case ManifoldKind::Pos3:
            return "pos3";
        case ManifoldKind::Euclidean:
            return "euclidean:" + std::to_string(euclidean_dim_);
        case ManifoldKind::Product:
            if (*this == lch()) return "lch";
            throw std::invalid_argument("tag: product manifold has no serialization tag");
    }
    throw std::logic_error("tag: unreachable");
}

ManifoldDescriptor ManifoldDescriptor::from_tag(const std::string& tag) {
    if (tag == "s1") return s1();
    if (tag == "s2") return s2();
    if (tag == "so3") return so3();
    if (tag == "pos3") return pos3();
    if (tag == "lch") return lch();
    if (tag.rfind("euclidean:", 0) == 0) {
        const std::string dim = tag.substr(10);
        size_t used = 0;
        int k = 0;
        try {
            k = std::stoi(dim, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("from_tag: bad euclidean dimension in '" + tag + "'");
        }
        if (used != dim.size() || k < 1)
            throw std::invalid_argument("from_tag: bad euclidean dimension in '" + tag + "'");
        return euclidean(k);
    }
    throw std::invalid_argument("from_tag: unknown manifold tag '" + tag + "'");
}

// ---- invariant checks ----------------------------------------------------

namespace {

void check_len(const ManifoldDescriptor& m, std::span<const double> s, const char* who) {
    if (static_cast<int>(s.size()) != m.element_len())
        throw std::invalid_argument(std::string(who) + ": coordinate length " +
                                    std::to_string(s.size()) + " does not match manifold (" +
                                    std::to_string(m.element_len()) + ")");
}

}  // namespace

std::optional<std::string> ManifoldDescriptor::validate_point(
    std::span<const double> c) const {
    if (static_cast<int>(c.size()) != element_len_) return "coordinate length mismatch";
    for (double x : c)
        if (!std::isfinite(x)) return "non-finite coordinate";

    switch (kind_) {
        case ManifoldKind::S1:
            if (!(c[0] > -kPi && c[0] <= kPi)) return "angle outside (-pi, pi]";
            return std::nullopt;
        case ManifoldKind::S2: {
            const double n = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
            if (std::abs(n - 1.0) > 1e-12) return "not a unit vector";
            return std::nullopt;
        }
        case ManifoldKind::SO3: {
            const Mat3 q = Mat3::from(c.data());
            const Mat3 g = transpose(q) * q - Mat3::identity();
            if (frobenius_norm(g) > 1e-10) return "not orthogonal";
            if (std::abs(det(q) - 1.0) > 1e-10) return "determinant is not +1";
            return std::nullopt;
        }
        case ManifoldKind::Pos3: {
            const Mat3 d = Mat3::from(c.data());
            if (max_abs_asymmetry(d) > 1e-10) return "not symmetric";
            const SymEigen3 e = sym_eigen3(d);
            if (e.eigenvalues[0] <= kPos3MinEigenvalue) return "not positive definite";
            return std::nullopt;
        }
        case ManifoldKind::Euclidean:
            return std::nullopt;
        case ManifoldKind::Product: {
            size_t off = 0;
            for (const auto& comp : *components_) {
                if (auto err = comp.validate_point(c.subspan(off, comp.element_len())))
                    return err;
                off += comp.element_len();
            }
            return std::nullopt;
        }
    }
    return "unreachable";
}

std::optional<std::string> ManifoldDescriptor::validate_tangent(
    std::span<const double> base, std::span<const double> c) const {
    if (static_cast<int>(c.size()) != element_len_) return "coordinate length mismatch";
    for (double x : c)
        if (!std::isfinite(x)) return "non-finite coordinate";

    switch (kind_) {
        case ManifoldKind::S1:
        case ManifoldKind::Euclidean:
            return std::nullopt;
        case ManifoldKind::S2: {
            const double dot = base[0] * c[0] + base[1] * c[1] + base[2] * c[2];
            if (std::abs(dot) > 1e-10) return "tangent not orthogonal to base";
            return std::nullopt;
        }
        case ManifoldKind::SO3: {
            const Mat3 w = Mat3::from(c.data());
            if (frobenius_norm(w + transpose(w)) > 1e-10) return "tangent not skew-symmetric";
            return std::nullopt;
        }
        case ManifoldKind::Pos3: {
            if (max_abs_asymmetry(Mat3::from(c.data())) > 1e-10)
                return "tangent not symmetric";
            return std::nullopt;
        }
        case ManifoldKind::Product: {
            size_t off = 0;
            for (const auto& comp : *components_) {
                if (auto err = comp.validate_tangent(base.subspan(off, comp.element_len()),
                                                     c.subspan(off, comp.element_len())))
                    return err;
                off += comp.element_len();
            }
            return std::nullopt;
        }
    }
    return "unreachable";
}

// ---- span-level dispatch --------------------------------------------------

void exp_map(const ManifoldDescriptor& m, std::span<const double> base,
             std::span<const double> v, std::span<double> out) {
    check_len(m, base, "exp_map");
    check_len(m, v, "exp_map");
    check_len(m, {out.data(), out.size()}, "exp_map");
    if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) {
        std::copy(base.begin(), base.end(), out.begin());  // exp of 0 is the base
        return;
    }
    switch (m.kind()) {
        case ManifoldKind::S1:
            out[0] = s1_exp(base[0], v[0]);
            return;
        case ManifoldKind::S2:
            s2_exp(base.data(), v.data(), out.data());
            return;
        case ManifoldKind::SO3:
            so3_exp(base.data(), v.data(), out.data());
            return;
        case ManifoldKind::Pos3:
            pos3_exp(base.data(), v.data(), out.data());
            return;
        case ManifoldKind::Euclidean:
            euclidean_exp(m.element_len(), base.data(), v.data(), out.data());
            return;
        case ManifoldKind::Product: {
            size_t off = 0;
            for (const auto& comp : m.components()) {
                const size_t n = comp.element_len();
                exp_map(comp, base.subspan(off, n), v.subspan(off, n), out.subspan(off, n));
                off += n;
            }
            return;
        }
    }
}

void log_map(const ManifoldDescriptor& m, std::span<const double> base,
             std::span<const double> target, std::span<double> out) {
    check_len(m, base, "log_map");
    check_len(m, target, "log_map");
    check_len(m, {out.data(), out.size()}, "log_map");
    if (std::equal(base.begin(), base.end(), target.begin())) {
        std::fill(out.begin(), out.end(), 0.0);  // log of the point itself
        return;
    }
    switch (m.kind()) {
        case ManifoldKind::S1:
            out[0] = s1_log(base[0], target[0]);
            return;
        case ManifoldKind::S2:
            s2_log(base.data(), target.data(), out.data());
            return;
        case ManifoldKind::SO3:
            so3_log(base.data(), target.data(), out.data());
            return;
        case ManifoldKind::Pos3:
            pos3_log(base.data(), target.data(), out.data());
            return;
        case ManifoldKind::Euclidean:
            euclidean_log(m.element_len(), base.data(), target.data(), out.data());
            return;
        case ManifoldKind::Product: {
            size_t off = 0;
            for (const auto& comp : m.components()) {
                const size_t n = comp.element_len();
                log_map(comp, base.subspan(off, n), target.subspan(off, n),
                        out.subspan(off, n));
                off += n;
            }
            return;
        }
    }
}

double norm_at(const ManifoldDescriptor& m, std::span<const double> base,
               std::span<const double> v) {
    check_len(m, base, "norm_at");
    check_len(m, v, "norm_at");
    switch (m.kind()) {
        case ManifoldKind::Pos3:
            return pos3_norm_at(base.data(), v.data());
        case ManifoldKind::Product: {
            double s = 0;
            size_t off = 0;
            for (const auto& comp : m.components()) {
                const size_t n = comp.element_len();
                const double c = norm_at(comp, base.subspan(off, n), v.subspan(off, n));
                s += c * c;
                off += n;
            }
            return std::sqrt(s);
        }
        default: {
            // S1/S2/Euclidean use the ambient euclidean norm, SO(3) the
            // Frobenius norm; coordinate-wise they are the same sum.
            double s = 0;
            for (double x : v) s += x * x;
            return std::sqrt(s);
        }
    }
}

double dist(const ManifoldDescriptor& m, std::span<const double> a,
            std::span<const double> b) {
    check_len(m, a, "dist");
    check_len(m, b, "dist");
    if (std::equal(a.begin(), a.end(), b.begin())) return 0.0;
    switch (m.kind()) {
        case ManifoldKind::S1:
            return s1_dist(a[0], b[0]);
        case ManifoldKind::S2:
            return s2_dist(a.data(), b.data());
        case ManifoldKind::SO3:
            return so3_dist(a.data(), b.data());
        case ManifoldKind::Pos3:
            return pos3_dist(a.data(), b.data());
        case ManifoldKind::Euclidean:
            return euclidean_dist(m.element_len(), a.data(), b.data());
        case ManifoldKind::Product: {
            double s = 0;
            size_t off = 0;
            for (const auto& comp : m.components()) {
                const size_t n = comp.element_len();
                const double c = dist(comp, a.subspan(off, n), b.subspan(off, n));
                s += c * c;
                off += n;
            }
            return std::sqrt(s);
        }
    }
    throw std::logic_error("dist: unreachable");
}

void geodesic_point(const ManifoldDescriptor& m, std::span<const double> a,
                    std::span<const double> b, double t, std::span<double> out) {
    check_len(m, a, "geodesic_point");
    check_len(m, b, "geodesic_point");
    const double d = dist(m, a, b);
    if (t < -1e-12 || t > d + 1e-12 * std::max(1.0, d))
        throw std::invalid_argument("geodesic_point: arc length t=" + std::to_string(t) +
                                    " outside [0, " + std::to_string(d) + "]");
    if (t <= 0.0 || d == 0.0) {
        std::copy(a.begin(), a.end(), out.begin());
        return;
    }
    constexpr int kInlineLen = 32;
    double stack[kInlineLen];
    std::vector<double> heap;
    std::span<double> v;
    if (m.element_len() <= kInlineLen) {
        v = {stack, static_cast<size_t>(m.element_len())};
    } else {
        heap.resize(m.element_len());
        v = heap;
    }
    log_map(m, a, b, v);
    const double scale = std::min(t / d, 1.0);
    for (double& x : v) x *= scale;
    exp_map(m, a, v, out);
}

// ---- value types -----------------------------------------------------------

ManifoldPoint::ManifoldPoint(ManifoldDescriptor descriptor, std::vector<double> coords)
    : desc_(std::move(descriptor)), coords_(std::move(coords)) {
    if (auto err = desc_.validate_point(coords_))
        throw std::invalid_argument("ManifoldPoint: " + *err);
}

TangentVector::TangentVector(ManifoldPoint base, std::vector<double> coords)
    : base_(std::move(base)), coords_(std::move(coords)) {
    if (auto err = base_.descriptor().validate_tangent(base_.coords(), coords_))
        throw std::invalid_argument("TangentVector: " + *err);
}

ManifoldPoint exp_map(const ManifoldPoint& base, const TangentVector& v) {
    if (!(v.base() == base))
        throw std::invalid_argument("exp_map: tangent vector anchored at a different point");
    std::vector<double> out(base.descriptor().element_len());
    exp_map(base.descriptor(), base.coords(), v.coords(), out);
    return ManifoldPoint(base.descriptor(), std::move(out));
}

TangentVector log_map(const ManifoldPoint& base, const ManifoldPoint& target) {
    if (base.descriptor() != target.descriptor())
        throw std::invalid_argument("log_map: points on different manifolds");
    std::vector<double> out(base.descriptor().element_len());
    log_map(base.descriptor(), base.coords(), target.coords(), out);
    return TangentVector(base, std::move(out));
}

double norm_at(const TangentVector& v) {
    return norm_at(v.base().descriptor(), v.base().coords(), v.coords());
}

double dist(const ManifoldPoint& a, const ManifoldPoint& b) {
    if (a.descriptor() != b.descriptor())
        throw std::invalid_argument("dist: points on different manifolds");
    return dist(a.descriptor(), a.coords(), b.coords());
}

ManifoldPoint geodesic_point(const ManifoldPoint& a, const ManifoldPoint& b, double t) {
    if (a.descriptor() != b.descriptor())
        throw std::invalid_argument("geodesic_point: points on different manifolds");
    std::vector<double> out(a.descriptor().element_len());
    geodesic_point(a.descriptor(), a.coords(), b.coords(), t, out);
    return ManifoldPoint(a.descriptor(), std::move(out));
}

}  // namespace mtv
