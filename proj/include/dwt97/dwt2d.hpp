#pragma once

// Separable multi-octave 2D transform, the image memory it runs in, and the
// coefficient dump format.
//
// Layout: every octave transforms rows, then columns, of its active region
// (the previous octave's LL) in place. Results are de-interleaved into
// quadrants: LL top-left, HL top-right, LH bottom-left, HH bottom-right.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dwt97/errors.hpp"
#include "dwt97/fixpoint.hpp"
#include "dwt97/lifting.hpp"

namespace dwt97 {

template <class T>
struct Plane {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<T> pixels;  ///< row-major

    Plane() = default;
    Plane(std::size_t w, std::size_t h, T fill = T{}) : width(w), height(h), pixels(w * h, fill) {}
    Plane(std::size_t w, std::size_t h, std::vector<T> px) : width(w), height(h), pixels(std::move(px)) {
        if (pixels.size() != w * h)
            throw ShapeError("plane " + std::to_string(w) + "x" + std::to_string(h) + " given " +
                             std::to_string(pixels.size()) + " pixels");
    }

    T& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
    const T& at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }

    friend bool operator==(const Plane&, const Plane&) = default;
};

/// 8-bit image after the -128 level shift.
using ImagePlane = Plane<std::int32_t>;

template <class To, class From>
Plane<To> convert(const Plane<From>& p) {
    Plane<To> out(p.width, p.height);
    for (std::size_t i = 0; i < p.pixels.size(); ++i) out.pixels[i] = static_cast<To>(p.pixels[i]);
    return out;
}

/// First letter: horizontal band, second: vertical band.
enum class Band { LL, HL, LH, HH };

template <class T>
struct Octave {
    Plane<T> ll, hl, lh, hh;
};

/// Coefficients of a multi-octave transform in an image-sized buffer.
template <class T>
struct SubbandImage {
    Plane<T> data;
    int octaves = 0;

    std::size_t width() const { return data.width; }
    std::size_t height() const { return data.height; }
    /// Copy of one sub-band; octave is 1-based. LL exists only for the
    /// deepest octave. Throws RangeError otherwise.
    Plane<T> band(int octave, Band b) const;

    friend bool operator==(const SubbandImage&, const SubbandImage&) = default;
};

/// 1D analysis / synthesis kernels the 2D transform is built from.
template <class T>
using ForwardKernel = std::function<BandPair<T>(std::span<const T>)>;
template <class T>
using InverseKernel = std::function<std::vector<T>(const BandPair<T>&)>;

/// Throws ShapeError unless both dimensions are divisible by 2^octaves and
/// octaves >= 1.
void require_octave_shape(std::size_t width, std::size_t height, int octaves);

/// Largest d with both dimensions divisible by 2^d, capped at 5.
int default_octaves(std::size_t width, std::size_t height);

template <class T>
SubbandImage<T> forward_multi_with(const Plane<T>& img, int octaves, const ForwardKernel<T>& kernel);
template <class T>
Plane<T> inverse_multi_with(const SubbandImage<T>& coeffs, const InverseKernel<T>& kernel);

// Typed transforms.
SubbandImage<double> forward_multi_float(const Plane<double>& img, int octaves);
Plane<double> inverse_multi_float(const SubbandImage<double>& coeffs);
/// Integer datapath per line. Row inputs of the first octave must be signed
/// 8-bit; later passes carry wider values.
SubbandImage<std::int32_t> forward_multi_fixed(const ImagePlane& img, int octaves,
                                               const CoeffSet& coeffs = canonical_coeffs());
ImagePlane inverse_multi_fixed(const SubbandImage<std::int32_t>& coeffs, const CoeffSet& coeffs_set = canonical_coeffs());

// Mode-dispatched transforms on real-valued coefficients. Fixed mode values
// are integers held exactly in doubles.
SubbandImage<double> forward_multi(const ImagePlane& img, int octaves, Mode mode,
                                   const CoeffSet& coeffs = canonical_coeffs());
/// Fixed mode requires integer coefficients; throws RangeError otherwise.
Plane<double> inverse_multi(const SubbandImage<double>& coeffs, Mode mode, const CoeffSet& coeffs_set = canonical_coeffs());

Octave<double> forward_octave(const ImagePlane& img, Mode mode, const CoeffSet& coeffs = canonical_coeffs());
/// Throws ShapeError if the four planes differ in size.
Plane<double> inverse_octave(const Octave<double>& planes, Mode mode, const CoeffSet& coeffs = canonical_coeffs());

/// Rounds half away from zero and clamps to [-128, 127].
ImagePlane to_image(const Plane<double>& p);

// ---------------------------------------------------------------------------
// Memory and memory control

enum class Pass { Rows, Columns };

/// One line handed to the 1D unit: its reads in stream order, then the
/// writes of its low and high outputs in emission order (low 0, high 0, ...).
struct LineTransfer {
    std::vector<std::size_t> reads;
    std::vector<std::size_t> writes;
};

/// Address sequence for one pass of one octave (1-based) over a w x h image.
std::vector<LineTransfer> address_schedule(std::size_t width, std::size_t height, int octave, Pass pass);

enum class Access { Read, Write };

struct AccessEvent {
    std::uint64_t cycle = 0;
    Access kind = Access::Read;
    std::size_t address = 0;
};

/// Image-sized word memory with an access log. Each access takes one cycle.
/// Reading a cell already written in the current pass counts as a hazard.
class MemoryModel {
public:
    MemoryModel(std::size_t width, std::size_t height);

    std::size_t size() const { return cells_.size(); }
    std::int32_t read(std::size_t address);
    void write(std::size_t address, std::int32_t value);
    void begin_pass();

    const std::vector<AccessEvent>& access_log() const { return log_; }
    std::size_t hazards() const { return hazards_; }
    const std::vector<std::int32_t>& cells() const { return cells_; }
    void load(const ImagePlane& img);

private:
    void check(std::size_t address) const;

    std::size_t width_;
    std::vector<std::int32_t> cells_;
    std::vector<bool> written_;
    std::vector<AccessEvent> log_;
    std::uint64_t cycle_ = 0;
    std::size_t hazards_ = 0;
};

struct ReplayResult {
    std::size_t passes = 0;
    std::size_t reads = 0;
    std::size_t writes = 0;
    std::size_t hazards = 0;
    std::size_t line_buffer_words = 0;
};

/// Runs the fixed-mode forward transform inside `memory` following
/// address_schedule, one line at a time through a line buffer. Afterwards the
/// memory holds forward_multi_fixed's coefficients.
ReplayResult replay_forward(MemoryModel& memory, std::size_t width, std::size_t height, int octaves,
                            const CoeffSet& coeffs = canonical_coeffs());

// ---------------------------------------------------------------------------
// Coefficient dump
//
// Header (16 bytes, little-endian): "D97C", u32 width, u32 height, u8 octaves,
// u8 mode (0 float, 1 fixed), u16 reserved = 0. Then width*height int16 words,
// row-major, quadrant layout.

struct CoefficientDump {
    SubbandImage<std::int32_t> coefficients;
    Mode mode = Mode::Fixed;
};

/// Float coefficients are rounded half away from zero. Throws RangeError if a
/// value does not fit 16 bits.
void write_coefficient_dump(std::ostream& os, const SubbandImage<double>& coeffs, Mode mode);
/// Throws ParseError on a malformed stream.
CoefficientDump read_coefficient_dump(std::istream& is);

}  // namespace dwt97
