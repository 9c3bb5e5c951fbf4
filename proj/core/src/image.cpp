#include "manifoldtv/image.hpp"

#include <algorithm>
#include <stdexcept>

namespace mtv {

ManifoldImage::ManifoldImage(ManifoldDescriptor desc, int rows, int cols)
    : desc_(std::move(desc)), rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("ManifoldImage: shape must be at least 1x1");
    data_.assign(static_cast<size_t>(rows) * cols * desc_.element_len(), 0.0);
}

ManifoldImage::ManifoldImage(ManifoldDescriptor desc, int rows, int cols,
                             std::vector<double> data)
    : desc_(std::move(desc)), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("ManifoldImage: shape must be at least 1x1");
    const size_t expected = static_cast<size_t>(rows) * cols * desc_.element_len();
    if (data_.size() != expected)
        throw std::invalid_argument("ManifoldImage: buffer has " +
                                    std::to_string(data_.size()) + " scalars, expected " +
                                    std::to_string(expected));
}

ManifoldPoint ManifoldImage::point_at(int i, int j) const {
    const auto p = pixel(i, j);
    return ManifoldPoint(desc_, std::vector<double>(p.begin(), p.end()));
}

void ManifoldImage::set_point(int i, int j, const ManifoldPoint& p) {
    if (p.descriptor() != desc_)
        throw std::invalid_argument("set_point: point on a different manifold");
    std::copy(p.coords().begin(), p.coords().end(), pixel(i, j).begin());
}

std::optional<ManifoldImage::InvariantViolation> ManifoldImage::validate() const {
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (auto err = desc_.validate_point(pixel(i, j)))
                return InvariantViolation{i, j, *err};
    return std::nullopt;
}

double ManifoldImage::diameter() const {
    double m = 0;
    const int n = pixel_count();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) m = std::max(m, dist(desc_, pixel(a), pixel(b)));
    return m;
}

ManifoldImage ManifoldImage::transposed() const {
    ManifoldImage out(desc_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            const auto src = pixel(i, j);
            std::copy(src.begin(), src.end(), out.pixel(j, i).begin());
        }
    return out;
}

}  // namespace mtv
