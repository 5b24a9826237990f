#include "dwt97/pgm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <limits>

namespace dwt97 {

namespace {

class HeaderReader {
public:
    HeaderReader(std::span<const std::uint8_t> b, std::size_t start) : b_(b), pos_(start) {}

    std::size_t pos() const { return pos_; }

    void skip_space_and_comments() {
        while (pos_ < b_.size()) {
            if (b_[pos_] == '#') {
                while (pos_ < b_.size() && b_[pos_] != '\n' && b_[pos_] != '\r') ++pos_;
            } else if (std::isspace(b_[pos_])) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::size_t number(const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        std::size_t v = 0;
        while (pos_ < b_.size() && std::isdigit(b_[pos_])) {
            v = v * 10 + (b_[pos_] - '0');
            if (v > std::numeric_limits<std::uint32_t>::max()) throw ParseError(std::string(what) + " too large", start);
            ++pos_;
        }
        if (pos_ == start) throw ParseError(std::string("expected ") + what, start);
        return v;
    }

    void single_whitespace() {
        if (pos_ >= b_.size() || !std::isspace(b_[pos_])) throw ParseError("expected whitespace after maxval", pos_);
        ++pos_;
    }

private:
    std::span<const std::uint8_t> b_;
    std::size_t pos_;
};

}  // namespace

PgmImage parse_pgm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') throw ParseError("not a binary PGM (magic P5)", 0);
    HeaderReader r(bytes, 2);
    if (r.pos() >= bytes.size() || !(std::isspace(bytes[2]) || bytes[2] == '#'))
        throw ParseError("expected whitespace after magic", 2);
    const std::size_t width = r.number("width");
    const std::size_t height = r.number("height");
    const std::size_t maxval_at = r.pos();
    const std::size_t maxval = r.number("maxval");
    if (width == 0 || height == 0) throw ParseError("zero image dimension", maxval_at);
    if (maxval == 0) throw ParseError("maxval must be positive", maxval_at);
    if (maxval > 255)
        throw ParseError("unsupported depth: maxval " + std::to_string(maxval) + " needs 16-bit samples", maxval_at);
    r.single_whitespace();

    const std::size_t start = r.pos();
    const std::size_t need = width * height;
    const std::size_t have = bytes.size() - start;
    if (have < need)
        throw ParseError("truncated payload: missing " + std::to_string(need - have) + " of " + std::to_string(need) +
                             " bytes",
                         bytes.size());
    PgmImage img{ImagePlane(width, height), static_cast<int>(maxval)};
    for (std::size_t i = 0; i < need; ++i) {
        const int v = bytes[start + i];
        if (v > static_cast<int>(maxval))
            throw ParseError("sample " + std::to_string(v) + " exceeds maxval " + std::to_string(maxval), start + i);
        img.plane.pixels[i] = v - 128;
    }
    return img;
}

std::vector<std::uint8_t> encode_pgm(const ImagePlane& plane, int maxval) {
    if (maxval < 1 || maxval > 255) throw RangeError("maxval must be 1..255");
    if (plane.pixels.size() != plane.width * plane.height || plane.pixels.empty())
        throw ShapeError("cannot encode an empty or inconsistent plane");
    const std::string header =
        "P5\n" + std::to_string(plane.width) + " " + std::to_string(plane.height) + "\n" + std::to_string(maxval) + "\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(header.size() + plane.pixels.size());
    for (std::size_t i = 0; i < plane.pixels.size(); ++i) {
        const int v = plane.pixels[i] + 128;
        if (v < 0 || v > maxval)
            throw RangeError("pixel " + std::to_string(i) + " = " + std::to_string(v) + " outside 0.." +
                             std::to_string(maxval));
        out.push_back(static_cast<std::uint8_t>(v));
    }
    return out;
}

PgmImage read_pgm_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return parse_pgm(bytes);
}

ImagePlane read_pgm(const std::string& path) { return read_pgm_file(path).plane; }

void write_pgm(const std::string& path, const ImagePlane& plane, int maxval) {
    const auto bytes = encode_pgm(plane, maxval);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw std::runtime_error("failed writing " + path);
}

}  // namespace dwt97
