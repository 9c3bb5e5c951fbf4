#pragma once

#include <span>
#include <vector>

#include "manifoldtv/manifold.hpp"

namespace mtv {

// A rows x cols grid of manifold points over one manifold, stored as one
// flat row-major buffer with element_len scalars per pixel. 1D signals are
// n x 1 images.
class ManifoldImage {
  public:
    ManifoldImage(ManifoldDescriptor desc, int rows, int cols);
    ManifoldImage(ManifoldDescriptor desc, int rows, int cols, std::vector<double> data);

    const ManifoldDescriptor& descriptor() const { return desc_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int pixel_count() const { return rows_ * cols_; }
    int element_len() const { return desc_.element_len(); }

    std::span<double> pixel(int i, int j) {
        return {data_.data() + offset(i, j), static_cast<size_t>(element_len())};
    }
    std::span<const double> pixel(int i, int j) const {
        return {data_.data() + offset(i, j), static_cast<size_t>(element_len())};
    }
    std::span<double> pixel(int flat) {
        return {data_.data() + static_cast<size_t>(flat) * element_len(),
                static_cast<size_t>(element_len())};
    }
    std::span<const double> pixel(int flat) const {
        return {data_.data() + static_cast<size_t>(flat) * element_len(),
                static_cast<size_t>(element_len())};
    }

    ManifoldPoint point_at(int i, int j) const;
    void set_point(int i, int j, const ManifoldPoint& p);

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool same_shape(const ManifoldImage& other) const {
        return desc_ == other.desc_ && rows_ == other.rows_ && cols_ == other.cols_;
    }

    // First pixel violating the manifold invariants, or nullopt.
    struct InvariantViolation {
        int i, j;
        std::string reason;
    };
    std::optional<InvariantViolation> validate() const;

    // Largest pairwise distance between pixels (O(n^2), test/report use).
    double diameter() const;

    ManifoldImage transposed() const;

  private:
    size_t offset(int i, int j) const {
        return (static_cast<size_t>(i) * cols_ + j) * element_len();
    }

    ManifoldDescriptor desc_;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

}  // namespace mtv
