#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "manifoldtv/errors.hpp"

namespace mtv {

enum class ManifoldKind { S1, S2, SO3, Pos3, Euclidean, Product };

// Runtime description of one of the supported data spaces. Images read from
// disk carry their manifold as data, so dispatch is dynamic.
//
// Scalars per point: S1 -> 1 (angle), S2 -> 3, SO3/Pos3 -> 9 (row-major),
// Euclidean(k) -> k, Product -> sum of the components.
class ManifoldDescriptor {
  public:
    static ManifoldDescriptor s1();
    static ManifoldDescriptor s2();
    static ManifoldDescriptor so3();
    static ManifoldDescriptor pos3();
    static ManifoldDescriptor euclidean(int k);
    static ManifoldDescriptor product(std::vector<ManifoldDescriptor> components);
    // The LCh cylinder R^2 x S^1 with component order (L, C, h).
    static ManifoldDescriptor lch();

    ManifoldKind kind() const { return kind_; }
    int element_len() const { return element_len_; }
    int euclidean_dim() const { return euclidean_dim_; }
    const std::vector<ManifoldDescriptor>& components() const;

    bool operator==(const ManifoldDescriptor& other) const;
    bool operator!=(const ManifoldDescriptor& other) const { return !(*this == other); }

    // Serialization tag: "s1", "s2", "so3", "pos3", "euclidean:<k>", "lch".
    // Throws std::invalid_argument for products without a tag of their own.
    std::string tag() const;
    static ManifoldDescriptor from_tag(const std::string& tag);

    // Human-readable invariant check; nullopt when coords is a valid point.
    std::optional<std::string> validate_point(std::span<const double> coords) const;
    std::optional<std::string> validate_tangent(std::span<const double> base,
                                                std::span<const double> coords) const;

  private:
    ManifoldDescriptor() = default;

    ManifoldKind kind_ = ManifoldKind::Euclidean;
    int euclidean_dim_ = 0;
    int element_len_ = 0;
    std::shared_ptr<const std::vector<ManifoldDescriptor>> components_;
};

// ---- span-level operations --------------------------------------------
//
// These kernels are what the image-level code (prox sweeps, solvers, noise)
// runs on; they avoid per-pixel allocation. The value types below wrap them.
// All of them check span lengths against the descriptor.

void exp_map(const ManifoldDescriptor& m, std::span<const double> base,
             std::span<const double> v, std::span<double> out);

void log_map(const ManifoldDescriptor& m, std::span<const double> base,
             std::span<const double> target, std::span<double> out);

double norm_at(const ManifoldDescriptor& m, std::span<const double> base,
               std::span<const double> v);

double dist(const ManifoldDescriptor& m, std::span<const double> a,
            std::span<const double> b);

// Point at arc length t on the unit-speed geodesic from a toward b:
// exp_a((t/d) log_a(b)), with a returned unchanged when t = 0 or d = 0.
// t outside [0, d] raises std::invalid_argument.
void geodesic_point(const ManifoldDescriptor& m, std::span<const double> a,
                    std::span<const double> b, double t, std::span<double> out);

// ---- value types -------------------------------------------------------

class TangentVector;

// Immutable point value; construction validates the manifold invariants.
class ManifoldPoint {
  public:
    ManifoldPoint(ManifoldDescriptor descriptor, std::vector<double> coords);

    const ManifoldDescriptor& descriptor() const { return desc_; }
    std::span<const double> coords() const { return coords_; }

    bool operator==(const ManifoldPoint& other) const {
        return desc_ == other.desc_ && coords_ == other.coords_;
    }

  private:
    ManifoldDescriptor desc_;
    std::vector<double> coords_;
};

// Tangent vector anchored at a base point, same ambient layout as the point.
class TangentVector {
  public:
    TangentVector(ManifoldPoint base, std::vector<double> coords);

    const ManifoldPoint& base() const { return base_; }
    std::span<const double> coords() const { return coords_; }

  private:
    ManifoldPoint base_;
    std::vector<double> coords_;
};

ManifoldPoint exp_map(const ManifoldPoint& base, const TangentVector& v);
TangentVector log_map(const ManifoldPoint& base, const ManifoldPoint& target);
double norm_at(const TangentVector& v);
double dist(const ManifoldPoint& a, const ManifoldPoint& b);
ManifoldPoint geodesic_point(const ManifoldPoint& a, const ManifoldPoint& b, double t);

}  // namespace mtv
