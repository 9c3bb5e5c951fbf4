#include "manifoldtv/mvf.hpp"

#include <cstring>
#include <fstream>

#include <json.hpp>

namespace mtv {

namespace {

void put_u32_le(std::string& out, uint32_t v) {
    for (int k = 0; k < 4; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
}

void put_f64_le(std::string& out, double d) {
    uint64_t bits;
    std::memcpy(&bits, &d, 8);
    for (int k = 0; k < 8; ++k) out.push_back(static_cast<char>((bits >> (8 * k)) & 0xff));
}

uint32_t get_u32_le(const unsigned char* p) {
    return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
           (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

double get_f64_le(const unsigned char* p) {
    uint64_t bits = 0;
    for (int k = 0; k < 8; ++k) bits |= static_cast<uint64_t>(p[k]) << (8 * k);
    double d;
    std::memcpy(&d, &bits, 8);
    return d;
}

}  // namespace

void write_mvf(const ManifoldImage& img, const std::string& path) {
    nlohmann::json header;
    header["manifold"] = img.descriptor().tag();
    if (img.cols() == 1)
        header["shape"] = {img.rows()};
    else
        header["shape"] = {img.rows(), img.cols()};
    header["element_len"] = img.element_len();
    header["dtype"] = "f64";
    const std::string header_text = header.dump();

    std::string blob;
    blob.reserve(8 + header_text.size() + 8 * img.data().size());
    blob += "MVF1";
    put_u32_le(blob, static_cast<uint32_t>(header_text.size()));
    blob += header_text;
    for (double d : img.data()) put_f64_le(blob, d);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw MvfFormatError("write_mvf: cannot open '" + path + "' for writing");
    out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
    if (!out) throw MvfFormatError("write_mvf: short write to '" + path + "'");
}

ManifoldImage read_mvf(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MvfFormatError("read_mvf: cannot open '" + path + "'");
    std::string blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (blob.size() < 8 || blob.compare(0, 4, "MVF1") != 0)
        throw MvfFormatError("read_mvf: bad magic, not an MVF1 file: '" + path + "'");
    const auto* bytes = reinterpret_cast<const unsigned char*>(blob.data());
    const uint32_t header_len = get_u32_le(bytes + 4);
    if (blob.size() < 8 + static_cast<size_t>(header_len))
        throw MvfFormatError("read_mvf: truncated header in '" + path + "'");

    nlohmann::json header;
    try {
        header = nlohmann::json::parse(blob.substr(8, header_len));
    } catch (const nlohmann::json::parse_error& e) {
        throw MvfFormatError(std::string("read_mvf: malformed JSON header: ") + e.what());
    }

    ManifoldDescriptor desc = ManifoldDescriptor::euclidean(1);
    int rows = 0, cols = 1;
    try {
        desc = ManifoldDescriptor::from_tag(header.at("manifold").get<std::string>());
        const auto shape = header.at("shape");
        if (!shape.is_array() || shape.empty() || shape.size() > 2)
            throw MvfFormatError("read_mvf: shape must be [n] or [n,m]");
        rows = shape[0].get<int>();
        cols = shape.size() == 2 ? shape[1].get<int>() : 1;
        if (header.at("element_len").get<int>() != desc.element_len())
            throw MvfFormatError("read_mvf: element_len disagrees with the manifold tag");
        if (header.at("dtype").get<std::string>() != "f64")
            throw MvfFormatError("read_mvf: unsupported dtype");
    } catch (const nlohmann::json::exception& e) {
        throw MvfFormatError(std::string("read_mvf: bad header field: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw MvfFormatError(std::string("read_mvf: ") + e.what());
    }
    if (rows < 1 || cols < 1) throw MvfFormatError("read_mvf: non-positive shape");

    const size_t n_scalars =
        static_cast<size_t>(rows) * cols * static_cast<size_t>(desc.element_len());
    if (blob.size() != 8 + header_len + 8 * n_scalars)
        throw MvfFormatError("read_mvf: payload has " +
                             std::to_string(blob.size() - 8 - header_len) +
                             " bytes, expected " + std::to_string(8 * n_scalars));

    std::vector<double> data(n_scalars);
    const unsigned char* payload = bytes + 8 + header_len;
    for (size_t k = 0; k < n_scalars; ++k) data[k] = get_f64_le(payload + 8 * k);

    ManifoldImage img(desc, rows, cols, std::move(data));
    if (auto bad = img.validate())
        throw MvfFormatError("read_mvf: pixel (" + std::to_string(bad->i) + "," +
                             std::to_string(bad->j) + ") violates the " + desc.tag() +
                             " invariants: " + bad->reason);
    return img;
}

}  // namespace mtv
