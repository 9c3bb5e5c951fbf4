#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace mtv {

// Pixel coordinate attached to errors raised while sweeping an image.
struct PixelIndex {
    int i = -1;
    int j = -1;
};

// Thrown when the inverse exponential map is requested for a pair at (or
// numerically too close to) the cut locus: antipodal points on S^1/S^2,
// rotation angle pi on SO(3).
class CutLocusError : public std::runtime_error {
  public:
    explicit CutLocusError(const std::string& what, std::optional<PixelIndex> pixel = {})
        : std::runtime_error(what), pixel_(pixel) {}

    const std::optional<PixelIndex>& pixel() const { return pixel_; }

    CutLocusError with_pixel(int i, int j) const {
        CutLocusError e(std::string(what()) + " at pixel (" + std::to_string(i) + "," +
                            std::to_string(j) + ")",
                        PixelIndex{i, j});
        return e;
    }

  private:
    std::optional<PixelIndex> pixel_;
};

// Thrown by iterative procedures (Karcher mean) that hit their iteration cap
// before reaching the requested residual.
class NonConvergedError : public std::runtime_error {
  public:
    NonConvergedError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const { return residual_; }

  private:
    double residual_ = 0.0;
};

}  // namespace mtv
