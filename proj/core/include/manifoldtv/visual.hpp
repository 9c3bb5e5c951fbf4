#pragma once

#include <string>

#include "manifoldtv/image.hpp"

namespace mtv {

enum class VisualMode { HueRaster, Csv, GlyphJson };

// Visualization / interchange exports:
//
//   HueRaster  binary PPM (P6, 8-bit) mapping the angle of an S^1 image to
//              the hue of a fully saturated HSV color. S^1 images only.
//   Csv        one pixel per line in row-major order, the element scalars
//              comma separated in shortest round-trip notation, preceded by
//              the header line
//                # mvf-csv/1 manifold=<tag> shape=<n>[,<m>] element_len=<k>
//   GlyphJson  per-pixel decompositions for external plotting, schema
//              "glyph/1": eigenvalues/axes for pos3, axis/angle for so3.
//
// A mode incompatible with the image's manifold raises std::invalid_argument.
void export_visual(const ManifoldImage& img, const std::string& path, VisualMode mode);

// Reads the Csv form back into an image (inverse of export_visual/Csv).
ManifoldImage read_csv_image(const std::string& path);

// RGB raster bridges for euclidean:3 images with values in [0,1]:
// write clamps to [0,1] and quantizes to 8 bits, read maps bytes to [0,1].
void write_rgb_ppm(const ManifoldImage& rgb, const std::string& path);
ManifoldImage read_rgb_ppm(const std::string& path);

}  // namespace mtv
