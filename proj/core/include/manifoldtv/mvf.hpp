#pragma once

#include <string>

#include "manifoldtv/image.hpp"

namespace mtv {

// MVF manifold-image container:
//
//   bytes 0..3   magic "MVF1"
//   bytes 4..7   header length, 32-bit little-endian unsigned
//   header       UTF-8 JSON {"manifold": tag, "shape": [n] or [n,m],
//                "element_len": int, "dtype": "f64"}
//   payload      row-major pixels, element_len little-endian f64 per pixel
//
// Manifold tags: "s1", "s2", "so3", "pos3", "euclidean:<k>", "lch". 1D
// signals are written with shape [n] and read back as n x 1 images. Readers
// validate the magic, the header consistency, the payload length, and every
// pixel's manifold invariants (reporting the first offending pixel).
//
// Malformed files raise MvfFormatError.

class MvfFormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

void write_mvf(const ManifoldImage& img, const std::string& path);
ManifoldImage read_mvf(const std::string& path);

}  // namespace mtv
