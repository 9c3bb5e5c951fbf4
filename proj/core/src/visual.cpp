#include "manifoldtv/visual.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "manifoldtv/manifolds.hpp"

namespace mtv {

namespace {

// shortest representation that parses back to the same double
std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::array<unsigned char, 3> hsv_to_rgb_bytes(double hue01) {
    const double h = hue01 * 6.0;
    const int sector = std::min(5, static_cast<int>(h));
    const double f = h - sector;
    const double q = 1.0 - f;
    double r = 0, g = 0, b = 0;
    switch (sector) {
        case 0: r = 1; g = f; b = 0; break;
        case 1: r = q; g = 1; b = 0; break;
        case 2: r = 0; g = 1; b = f; break;
        case 3: r = 0; g = q; b = 1; break;
        case 4: r = f; g = 0; b = 1; break;
        default: r = 1; g = 0; b = q; break;
    }
    auto to_byte = [](double x) {
        return static_cast<unsigned char>(std::lround(255.0 * std::clamp(x, 0.0, 1.0)));
    };
    return {to_byte(r), to_byte(g), to_byte(b)};
}

void write_ppm_bytes(const std::string& path, int rows, int cols,
                     const std::vector<unsigned char>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write ppm: cannot open '" + path + "'");
    out << "P6\n" << cols << " " << rows << "\n255\n";
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write ppm: short write to '" + path + "'");
}

void export_hue_raster(const ManifoldImage& img, const std::string& path) {
    if (img.descriptor().kind() != ManifoldKind::S1)
        throw std::invalid_argument("export_visual: hue_raster is defined for s1 images only");
    std::vector<unsigned char> bytes;
    bytes.reserve(static_cast<size_t>(img.pixel_count()) * 3);
    for (int p = 0; p < img.pixel_count(); ++p) {
        double angle = img.pixel(p)[0];
        if (angle < 0) angle += kTwoPi;  // (-pi, pi] -> [0, 2 pi)
        const auto rgb = hsv_to_rgb_bytes(angle / kTwoPi);
        bytes.insert(bytes.end(), rgb.begin(), rgb.end());
    }
    write_ppm_bytes(path, img.rows(), img.cols(), bytes);
}

void export_csv(const ManifoldImage& img, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("export_visual: cannot open '" + path + "'");
    out << "# mvf-csv/1 manifold=" << img.descriptor().tag() << " shape=" << img.rows();
    if (img.cols() != 1) out << "," << img.cols();
    out << " element_len=" << img.element_len() << "\n";
    for (int p = 0; p < img.pixel_count(); ++p) {
        const auto px = img.pixel(p);
        for (int k = 0; k < img.element_len(); ++k) {
            if (k) out << ",";
            out << format_double(px[k]);
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("export_visual: short write to '" + path + "'");
}

void export_glyph_json(const ManifoldImage& img, const std::string& path) {
    const auto kind = img.descriptor().kind();
    if (kind != ManifoldKind::Pos3 && kind != ManifoldKind::SO3)
        throw std::invalid_argument(
            "export_visual: glyph_json is defined for pos3 and so3 images only");

    nlohmann::json doc;
    doc["schema"] = "glyph/1";
    doc["manifold"] = img.descriptor().tag();
    if (img.cols() == 1)
        doc["shape"] = {img.rows()};
    else
        doc["shape"] = {img.rows(), img.cols()};
    auto glyphs = nlohmann::json::array();

    for (int i = 0; i < img.rows(); ++i)
        for (int j = 0; j < img.cols(); ++j) {
            nlohmann::json g;
            g["i"] = i;
            g["j"] = j;
            if (kind == ManifoldKind::Pos3) {
                const SymEigen3 e = sym_eigen3(Mat3::from(img.pixel(i, j).data()));
                g["eigenvalues"] = {e.eigenvalues[0], e.eigenvalues[1], e.eigenvalues[2]};
                auto axes = nlohmann::json::array();
                for (int k = 0; k < 3; ++k)
                    axes.push_back({e.eigenvectors(0, k), e.eigenvectors(1, k),
                                    e.eigenvectors(2, k)});
                g["axes"] = axes;
            } else {
                const Mat3 r = Mat3::from(img.pixel(i, j).data());
                const double theta = so3_rotation_angle(r);
                double axis[3] = {0, 0, 1};
                if (theta > 1e-12 && theta < kPi - 1e-9) {
                    const Mat3 s = skew_part(r);
                    // R - R^T = 2 sin(theta) [axis]_x
                    const double scale = 1.0 / std::sin(theta);
                    axis[0] = s(2, 1) * scale;
                    axis[1] = s(0, 2) * scale;
                    axis[2] = s(1, 0) * scale;
                }
                g["angle"] = theta;
                g["axis"] = {axis[0], axis[1], axis[2]};
            }
            glyphs.push_back(std::move(g));
        }
    doc["glyphs"] = std::move(glyphs);

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("export_visual: cannot open '" + path + "'");
    out << doc.dump(2) << "\n";
}

}  // namespace

void export_visual(const ManifoldImage& img, const std::string& path, VisualMode mode) {
    switch (mode) {
        case VisualMode::HueRaster:
            export_hue_raster(img, path);
            return;
        case VisualMode::Csv:
            export_csv(img, path);
            return;
        case VisualMode::GlyphJson:
            export_glyph_json(img, path);
            return;
    }
}

ManifoldImage read_csv_image(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_csv_image: cannot open '" + path + "'");

    std::string header;
    if (!std::getline(in, header) || header.rfind("# mvf-csv/1", 0) != 0)
        throw std::runtime_error("read_csv_image: missing '# mvf-csv/1' header in '" + path +
                                 "'");

    std::string tag, shape;
    {
        std::istringstream hs(header);
        std::string word;
        while (hs >> word) {
            if (word.rfind("manifold=", 0) == 0) tag = word.substr(9);
            if (word.rfind("shape=", 0) == 0) shape = word.substr(6);
        }
    }
    if (tag.empty() || shape.empty())
        throw std::runtime_error("read_csv_image: header lacks manifold= or shape=");
    const ManifoldDescriptor desc = ManifoldDescriptor::from_tag(tag);
    int rows = 0, cols = 1;
    if (const auto comma = shape.find(','); comma != std::string::npos) {
        rows = std::stoi(shape.substr(0, comma));
        cols = std::stoi(shape.substr(comma + 1));
    } else {
        rows = std::stoi(shape);
    }

    std::vector<double> data;
    data.reserve(static_cast<size_t>(rows) * cols * desc.element_len());
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) data.push_back(std::stod(cell));
    }

    ManifoldImage img(desc, rows, cols, std::move(data));
    if (auto bad = img.validate())
        throw std::runtime_error("read_csv_image: pixel (" + std::to_string(bad->i) + "," +
                                 std::to_string(bad->j) + ") violates the " + desc.tag() +
                                 " invariants: " + bad->reason);
    return img;
}

void write_rgb_ppm(const ManifoldImage& rgb, const std::string& path) {
    if (rgb.descriptor() != ManifoldDescriptor::euclidean(3))
        throw std::invalid_argument("write_rgb_ppm: expects a euclidean:3 image");
    std::vector<unsigned char> bytes;
    bytes.reserve(static_cast<size_t>(rgb.pixel_count()) * 3);
    for (int p = 0; p < rgb.pixel_count(); ++p)
        for (int c = 0; c < 3; ++c)
            bytes.push_back(static_cast<unsigned char>(
                std::lround(255.0 * std::clamp(rgb.pixel(p)[c], 0.0, 1.0))));
    write_ppm_bytes(path, rgb.rows(), rgb.cols(), bytes);
}

ManifoldImage read_rgb_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_rgb_ppm: cannot open '" + path + "'");
    std::string magic;
    in >> magic;
    if (magic != "P6") throw std::runtime_error("read_rgb_ppm: not a P6 PPM file");
    int cols = 0, rows = 0, maxval = 0;
    in >> cols >> rows >> maxval;
    if (!in || cols < 1 || rows < 1 || maxval != 255)
        throw std::runtime_error("read_rgb_ppm: unsupported PPM header");
    in.get();  // single whitespace after the header
    std::vector<unsigned char> bytes(static_cast<size_t>(rows) * cols * 3);
    in.read(reinterpret_cast<char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    if (!in) throw std::runtime_error("read_rgb_ppm: truncated pixel data");

    ManifoldImage img(ManifoldDescriptor::euclidean(3), rows, cols);
    for (size_t k = 0; k < bytes.size(); ++k)
        img.data()[k] = static_cast<double>(bytes[k]) / 255.0;
    return img;
}

}  // namespace mtv
