#pragma once

// Binary PGM (P5) with at most 8 bits per sample.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dwt97/dwt2d.hpp"

namespace dwt97 {

struct PgmImage {
    ImagePlane plane;  ///< samples minus 128
    int maxval = 255;
};

/// Throws ParseError with the byte offset of the problem.
PgmImage parse_pgm(std::span<const std::uint8_t> bytes);
/// Canonical header "P5\n<w> <h>\n<maxval>\n" then raw samples. Throws
/// RangeError if a sample leaves [0, maxval] after the +128 shift.
std::vector<std::uint8_t> encode_pgm(const ImagePlane& plane, int maxval = 255);

ImagePlane read_pgm(const std::string& path);
PgmImage read_pgm_file(const std::string& path);
void write_pgm(const std::string& path, const ImagePlane& plane, int maxval = 255);

}  // namespace dwt97
