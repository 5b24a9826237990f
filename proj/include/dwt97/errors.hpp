#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dwt97 {

/// Array/plane dimensions that the transform cannot accept (odd lengths,
/// mismatched bands, insufficient divisibility for the requested octaves).
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A value outside the numeric domain of an operation.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Malformed input file. `offset()` is the byte position where parsing stopped.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// A simulated register left its declared range.
class OverflowFault : public std::runtime_error {
public:
    OverflowFault(std::string reg, std::int64_t value, std::int64_t cycle)
        : std::runtime_error("register '" + reg + "' overflow: value " + std::to_string(value) +
                             " at cycle " + std::to_string(cycle)),
          register_(std::move(reg)), value_(value), cycle_(cycle) {}

    const std::string& register_name() const noexcept { return register_; }
    std::int64_t value() const noexcept { return value_; }
    std::int64_t cycle() const noexcept { return cycle_; }

private:
    std::string register_;
    std::int64_t value_;
    std::int64_t cycle_;
};

}  // namespace dwt97
