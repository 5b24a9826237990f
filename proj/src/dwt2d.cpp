#include "dwt97/dwt2d.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

namespace dwt97 {

namespace {

std::string dims(std::size_t w, std::size_t h) { return std::to_string(w) + "x" + std::to_string(h); }

template <class T>
void check_plane(const Plane<T>& p) {
    if (p.pixels.size() != p.width * p.height) throw ShapeError("plane " + dims(p.width, p.height) + " has wrong pixel count");
}

// Active region of an octave (1-based): the image for octave 1, the previous
// LL afterwards.
std::pair<std::size_t, std::size_t> active_region(std::size_t w, std::size_t h, int octave) {
    return {w >> (octave - 1), h >> (octave - 1)};
}

template <class T>
void forward_pass(Plane<T>& buf, std::size_t aw, std::size_t ah, Pass pass, const ForwardKernel<T>& kernel) {
    const bool rows = pass == Pass::Rows;
    const std::size_t lines = rows ? ah : aw;
    const std::size_t len = rows ? aw : ah;
    std::vector<T> line(len);
    for (std::size_t l = 0; l < lines; ++l) {
        auto cell = [&](std::size_t i) -> T& { return rows ? buf.at(i, l) : buf.at(l, i); };
        for (std::size_t i = 0; i < len; ++i) line[i] = cell(i);
        const auto bands = kernel(std::span<const T>(line));
        if (bands.low.size() != len / 2 || bands.high.size() != len / 2)
            throw ShapeError("1D kernel returned bands of the wrong length");
        for (std::size_t i = 0; i < len / 2; ++i) {
            cell(i) = bands.low[i];
            cell(len / 2 + i) = bands.high[i];
        }
    }
}

template <class T>
void inverse_pass(Plane<T>& buf, std::size_t aw, std::size_t ah, Pass pass, const InverseKernel<T>& kernel) {
    const bool rows = pass == Pass::Rows;
    const std::size_t lines = rows ? ah : aw;
    const std::size_t len = rows ? aw : ah;
    BandPair<T> bands{std::vector<T>(len / 2), std::vector<T>(len / 2)};
    for (std::size_t l = 0; l < lines; ++l) {
        auto cell = [&](std::size_t i) -> T& { return rows ? buf.at(i, l) : buf.at(l, i); };
        for (std::size_t i = 0; i < len / 2; ++i) {
            bands.low[i] = cell(i);
            bands.high[i] = cell(len / 2 + i);
        }
        const auto line = kernel(bands);
        if (line.size() != len) throw ShapeError("1D inverse kernel returned a line of the wrong length");
        for (std::size_t i = 0; i < len; ++i) cell(i) = line[i];
    }
}

long long round_half_away(double v) { return std::llround(v); }

void put_u32(std::ostream& os, std::uint32_t v) {
    const std::array<char, 4> b = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                                   static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    os.write(b.data(), 4);
}

constexpr std::array<char, 4> kDumpMagic = {'D', '9', '7', 'C'};
constexpr std::size_t kDumpHeaderBytes = 16;

}  // namespace

void require_octave_shape(std::size_t width, std::size_t height, int octaves) {
    if (octaves < 1) throw ShapeError("octave count must be at least 1, got " + std::to_string(octaves));
    if (octaves > 30) throw ShapeError("octave count " + std::to_string(octaves) + " is too large");
    const std::size_t m = std::size_t{1} << octaves;
    if (width == 0 || height == 0 || width % m != 0 || height % m != 0)
        throw ShapeError("image " + dims(width, height) + " is not divisible by 2^" + std::to_string(octaves));
}

int default_octaves(std::size_t width, std::size_t height) {
    int d = 0;
    while (d < 5 && width > 0 && height > 0 && width % (std::size_t{2} << d) == 0 && height % (std::size_t{2} << d) == 0)
        ++d;
    return d;
}

template <class T>
Plane<T> SubbandImage<T>::band(int octave, Band b) const {
    if (octave < 1 || octave > octaves)
        throw RangeError("octave " + std::to_string(octave) + " outside 1.." + std::to_string(octaves));
    if (b == Band::LL && octave != octaves) throw RangeError("LL is only kept for the deepest octave");
    const std::size_t qw = data.width >> octave, qh = data.height >> octave;
    const std::size_t x0 = (b == Band::HL || b == Band::HH) ? qw : 0;
    const std::size_t y0 = (b == Band::LH || b == Band::HH) ? qh : 0;
    Plane<T> out(qw, qh);
    for (std::size_t y = 0; y < qh; ++y)
        for (std::size_t x = 0; x < qw; ++x) out.at(x, y) = data.at(x0 + x, y0 + y);
    return out;
}

template <class T>
SubbandImage<T> forward_multi_with(const Plane<T>& img, int octaves, const ForwardKernel<T>& kernel) {
    check_plane(img);
    require_octave_shape(img.width, img.height, octaves);
    SubbandImage<T> out{img, octaves};
    for (int o = 1; o <= octaves; ++o) {
        const auto [aw, ah] = active_region(img.width, img.height, o);
        forward_pass(out.data, aw, ah, Pass::Rows, kernel);
        forward_pass(out.data, aw, ah, Pass::Columns, kernel);
    }
    return out;
}

template <class T>
Plane<T> inverse_multi_with(const SubbandImage<T>& coeffs, const InverseKernel<T>& kernel) {
    check_plane(coeffs.data);
    require_octave_shape(coeffs.width(), coeffs.height(), coeffs.octaves);
    Plane<T> buf = coeffs.data;
    for (int o = coeffs.octaves; o >= 1; --o) {
        const auto [aw, ah] = active_region(buf.width, buf.height, o);
        inverse_pass(buf, aw, ah, Pass::Columns, kernel);
        inverse_pass(buf, aw, ah, Pass::Rows, kernel);
    }
    return buf;
}

template struct SubbandImage<double>;
template struct SubbandImage<std::int32_t>;
template SubbandImage<double> forward_multi_with(const Plane<double>&, int, const ForwardKernel<double>&);
template SubbandImage<std::int32_t> forward_multi_with(const Plane<std::int32_t>&, int,
                                                       const ForwardKernel<std::int32_t>&);
template Plane<double> inverse_multi_with(const SubbandImage<double>&, const InverseKernel<double>&);
template Plane<std::int32_t> inverse_multi_with(const SubbandImage<std::int32_t>&,
                                                const InverseKernel<std::int32_t>&);

SubbandImage<double> forward_multi_float(const Plane<double>& img, int octaves) {
    return forward_multi_with<double>(img, octaves, [](std::span<const double> s) { return lifting_forward(s); });
}

Plane<double> inverse_multi_float(const SubbandImage<double>& coeffs) {
    return inverse_multi_with<double>(coeffs, [](const BandPair<double>& b) { return lifting_inverse(b); });
}

SubbandImage<std::int32_t> forward_multi_fixed(const ImagePlane& img, int octaves, const CoeffSet& coeffs) {
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        if (img.pixels[i] < -128 || img.pixels[i] > 127)
            throw RangeError("pixel " + std::to_string(i) + " outside signed 8-bit range");
    return forward_multi_with<std::int32_t>(
        img, octaves, [&](std::span<const std::int32_t> s) { return lifting_forward_integer(s, coeffs); });
}

ImagePlane inverse_multi_fixed(const SubbandImage<std::int32_t>& coeffs, const CoeffSet& coeffs_set) {
    return inverse_multi_with<std::int32_t>(
        coeffs, [&](const BandPair<std::int32_t>& b) { return lifting_inverse_fixed(b, coeffs_set); });
}

SubbandImage<double> forward_multi(const ImagePlane& img, int octaves, Mode mode, const CoeffSet& coeffs) {
    if (mode == Mode::Float) return forward_multi_float(convert<double>(img), octaves);
    const auto fixed = forward_multi_fixed(img, octaves, coeffs);
    return {convert<double>(fixed.data), fixed.octaves};
}

Plane<double> inverse_multi(const SubbandImage<double>& coeffs, Mode mode, const CoeffSet& coeffs_set) {
    if (mode == Mode::Float) return inverse_multi_float(coeffs);
    SubbandImage<std::int32_t> fixed{Plane<std::int32_t>(coeffs.width(), coeffs.height()), coeffs.octaves};
    for (std::size_t i = 0; i < coeffs.data.pixels.size(); ++i) {
        const double v = coeffs.data.pixels[i];
        if (v != std::trunc(v) || std::abs(v) > std::numeric_limits<std::int32_t>::max())
            throw RangeError("fixed-mode inverse needs integer coefficients");
        fixed.data.pixels[i] = static_cast<std::int32_t>(v);
    }
    return convert<double>(inverse_multi_fixed(fixed, coeffs_set));
}

Octave<double> forward_octave(const ImagePlane& img, Mode mode, const CoeffSet& coeffs) {
    const auto s = forward_multi(img, 1, mode, coeffs);
    return {s.band(1, Band::LL), s.band(1, Band::HL), s.band(1, Band::LH), s.band(1, Band::HH)};
}

Plane<double> inverse_octave(const Octave<double>& planes, Mode mode, const CoeffSet& coeffs) {
    const std::size_t qw = planes.ll.width, qh = planes.ll.height;
    for (const auto* p : {&planes.hl, &planes.lh, &planes.hh})
        if (p->width != qw || p->height != qh)
            throw ShapeError("sub-band planes differ in size: " + dims(qw, qh) + " vs " + dims(p->width, p->height));
    for (const auto* p : {&planes.ll, &planes.hl, &planes.lh, &planes.hh}) check_plane(*p);
    SubbandImage<double> s{Plane<double>(2 * qw, 2 * qh), 1};
    for (std::size_t y = 0; y < qh; ++y)
        for (std::size_t x = 0; x < qw; ++x) {
            s.data.at(x, y) = planes.ll.at(x, y);
            s.data.at(qw + x, y) = planes.hl.at(x, y);
            s.data.at(x, qh + y) = planes.lh.at(x, y);
            s.data.at(qw + x, qh + y) = planes.hh.at(x, y);
        }
    return inverse_multi(s, mode, coeffs);
}

ImagePlane to_image(const Plane<double>& p) {
    ImagePlane out(p.width, p.height);
    for (std::size_t i = 0; i < p.pixels.size(); ++i) {
        const double v = std::clamp(p.pixels[i], -1e9, 1e9);
        out.pixels[i] = static_cast<std::int32_t>(std::clamp<long long>(round_half_away(v), -128, 127));
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<LineTransfer> address_schedule(std::size_t width, std::size_t height, int octave, Pass pass) {
    require_octave_shape(width, height, octave);
    const auto [aw, ah] = active_region(width, height, octave);
    const bool rows = pass == Pass::Rows;
    const std::size_t lines = rows ? ah : aw;
    const std::size_t len = rows ? aw : ah;
    std::vector<LineTransfer> out(lines);
    for (std::size_t l = 0; l < lines; ++l) {
        auto addr = [&](std::size_t i) { return rows ? l * width + i : i * width + l; };
        auto& t = out[l];
        t.reads.reserve(len);
        t.writes.reserve(len);
        for (std::size_t i = 0; i < len; ++i) t.reads.push_back(addr(i));
        for (std::size_t i = 0; i < len / 2; ++i) {
            t.writes.push_back(addr(i));
            t.writes.push_back(addr(len / 2 + i));
        }
    }
    return out;
}

MemoryModel::MemoryModel(std::size_t width, std::size_t height)
    : width_(width), cells_(width * height, 0), written_(width * height, false) {
    if (cells_.empty()) throw ShapeError("memory of zero size");
}

void MemoryModel::check(std::size_t address) const {
    if (address >= cells_.size())
        throw RangeError("address " + std::to_string(address) + " outside memory of " + std::to_string(cells_.size()) +
                         " words");
}

std::int32_t MemoryModel::read(std::size_t address) {
    check(address);
    if (written_[address]) ++hazards_;
    log_.push_back({cycle_++, Access::Read, address});
    return cells_[address];
}

void MemoryModel::write(std::size_t address, std::int32_t value) {
    check(address);
    written_[address] = true;
    log_.push_back({cycle_++, Access::Write, address});
    cells_[address] = value;
}

void MemoryModel::begin_pass() { std::fill(written_.begin(), written_.end(), false); }

void MemoryModel::load(const ImagePlane& img) {
    if (img.width != width_ || img.pixels.size() != cells_.size())
        throw ShapeError("image " + dims(img.width, img.height) + " does not match the memory");
    cells_ = img.pixels;
}

ReplayResult replay_forward(MemoryModel& memory, std::size_t width, std::size_t height, int octaves,
                            const CoeffSet& coeffs) {
    require_octave_shape(width, height, octaves);
    if (memory.size() != width * height) throw ShapeError("memory size does not match the image");
    ReplayResult r;
    r.line_buffer_words = std::max(width, height);
    std::vector<std::int32_t> line(r.line_buffer_words);
    const std::size_t hazards_before = memory.hazards();
    for (int o = 1; o <= octaves; ++o)
        for (const Pass pass : {Pass::Rows, Pass::Columns}) {
            memory.begin_pass();
            ++r.passes;
            for (const auto& t : address_schedule(width, height, o, pass)) {
                const std::size_t len = t.reads.size();
                for (std::size_t i = 0; i < len; ++i) line[i] = memory.read(t.reads[i]);
                r.reads += len;
                const auto bands = lifting_forward_integer(std::span<const std::int32_t>(line.data(), len), coeffs);
                for (std::size_t i = 0; i < len / 2; ++i) {
                    memory.write(t.writes[2 * i], bands.low[i]);
                    memory.write(t.writes[2 * i + 1], bands.high[i]);
                }
                r.writes += len;
            }
        }
    r.hazards = memory.hazards() - hazards_before;
    return r;
}

// ---------------------------------------------------------------------------

void write_coefficient_dump(std::ostream& os, const SubbandImage<double>& coeffs, Mode mode) {
    check_plane(coeffs.data);
    require_octave_shape(coeffs.width(), coeffs.height(), coeffs.octaves);
    if (coeffs.width() > std::numeric_limits<std::uint32_t>::max() || coeffs.height() > std::numeric_limits<std::uint32_t>::max())
        throw RangeError("image too large for the dump header");
    os.write(kDumpMagic.data(), 4);
    put_u32(os, static_cast<std::uint32_t>(coeffs.width()));
    put_u32(os, static_cast<std::uint32_t>(coeffs.height()));
    const std::array<char, 4> tail = {static_cast<char>(coeffs.octaves), static_cast<char>(mode == Mode::Fixed ? 1 : 0), 0,
                                      0};
    os.write(tail.data(), 4);
    std::vector<char> payload;
    payload.reserve(coeffs.data.pixels.size() * 2);
    for (std::size_t i = 0; i < coeffs.data.pixels.size(); ++i) {
        const long long v = round_half_away(std::clamp(coeffs.data.pixels[i], -1e18, 1e18));
        if (v < std::numeric_limits<std::int16_t>::min() || v > std::numeric_limits<std::int16_t>::max())
            throw RangeError("coefficient " + std::to_string(i) + " = " + std::to_string(v) + " does not fit 16 bits");
        const auto u = static_cast<std::uint16_t>(static_cast<std::int16_t>(v));
        payload.push_back(static_cast<char>(u & 0xff));
        payload.push_back(static_cast<char>(u >> 8));
    }
    os.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!os) throw std::runtime_error("failed writing coefficient dump");
}

CoefficientDump read_coefficient_dump(std::istream& is) {
    std::array<unsigned char, kDumpHeaderBytes> h{};
    is.read(reinterpret_cast<char*>(h.data()), kDumpHeaderBytes);
    const auto got = static_cast<std::size_t>(is.gcount());
    if (got < kDumpHeaderBytes) throw ParseError("truncated header", got);
    if (!std::equal(kDumpMagic.begin(), kDumpMagic.end(), h.begin())) throw ParseError("bad magic", 0);
    auto u32 = [&](std::size_t o) {
        return std::uint32_t{h[o]} | std::uint32_t{h[o + 1]} << 8 | std::uint32_t{h[o + 2]} << 16 |
               std::uint32_t{h[o + 3]} << 24;
    };
    const std::size_t w = u32(4), hh = u32(8);
    const int octaves = h[12];
    if (h[13] > 1) throw ParseError("unknown mode " + std::to_string(h[13]), 13);
    if (h[14] != 0 || h[15] != 0) throw ParseError("reserved bytes not zero", 14);
    try {
        require_octave_shape(w, hh, octaves);
    } catch (const ShapeError& e) {
        throw ParseError(e.what(), 4);
    }
    CoefficientDump d{{Plane<std::int32_t>(w, hh), octaves}, h[13] == 1 ? Mode::Fixed : Mode::Float};
    std::vector<unsigned char> payload(w * hh * 2);
    is.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
    const auto n = static_cast<std::size_t>(is.gcount());
    if (n < payload.size())
        throw ParseError("truncated payload: missing " + std::to_string(payload.size() - n) + " bytes",
                         kDumpHeaderBytes + n);
    for (std::size_t i = 0; i < w * hh; ++i)
        d.coefficients.data.pixels[i] =
            static_cast<std::int16_t>(static_cast<std::uint16_t>(payload[2 * i] | payload[2 * i + 1] << 8));
    return d;
}

}  // namespace dwt97
