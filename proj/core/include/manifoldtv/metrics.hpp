#pragma once

#include <string>

#include "manifoldtv/image.hpp"

namespace mtv {

// Quality score in dB. Perfect reconstruction is reported through the
// `infinite` tag, never as a float infinity, so serialized reports stay
// stable text.
struct MetricReport {
    std::string name;
    double value = 0.0;
    bool infinite = false;
    int pixel_count = 0;

    std::string to_text() const;  // e.g. "6.021 dB" / "inf dB"
};

// Signal-to-noise ratio improvement
//   10 log10( sum d(g,f)^2 / sum d(g,x)^2 )
// for ground truth g, noisy data f and restoration x. g = f everywhere is
// undefined (std::invalid_argument); x = g yields the infinite report.
MetricReport delta_snr(const ManifoldImage& ground_truth, const ManifoldImage& noisy,
                       const ManifoldImage& restored);

// Peak signal-to-noise ratio for RGB images in [0,1]^3, stored as
// euclidean:3 images:
//   10 log10( 3 m n (max |g|)^2 / sum |g - x|^2 )
// with the maximum over all channels of g.
MetricReport psnr_rgb(const ManifoldImage& ground_truth, const ManifoldImage& restored);

}  // namespace mtv
