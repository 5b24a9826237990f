#include "dwt97/adder.hpp"

#include <algorithm>
#include <string>

#include "dwt97/errors.hpp"
#include "dwt97/fixpoint.hpp"

namespace dwt97::rtl {

namespace {

std::uint64_t mask_of(int width) { return (std::uint64_t{1} << width) - 1u; }

void check_width(int width) {
    if (width < 1 || width > kMaxWordWidth)
        throw RangeError("word width " + std::to_string(width) + " outside 1.." + std::to_string(kMaxWordWidth));
}

Word ripple(const Word& a, const Word& b, bool invert_b, bool carry_in) {
    const int width = std::max(a.width(), b.width()) + 1;
    check_width(width);
    const Word ax = a.sign_extended(width);
    const Word bx = b.sign_extended(width);
    std::uint64_t out = 0;
    bool carry = carry_in;
    for (int i = 0; i < width; ++i) {
        const auto cell = full_adder(ax.bit(i), bx.bit(i) != invert_b, carry);
        out |= static_cast<std::uint64_t>(cell.sum) << i;
        carry = cell.carry;
    }
    return Word::from_bits(out, width);
}

}  // namespace

Word::Word(std::int64_t value, int width) : width_(width) {
    check_width(width);
    if (!fits_twos_complement(value, width))
        throw RangeError("value " + std::to_string(value) + " does not fit in " + std::to_string(width) + " bits");
    bits_ = static_cast<std::uint64_t>(value) & mask_of(width);
}

Word Word::from_bits(std::uint64_t bits, int width) {
    check_width(width);
    Word w;
    w.width_ = width;
    w.bits_ = bits & mask_of(width);
    return w;
}

std::int64_t Word::value() const {
    const std::uint64_t sign = std::uint64_t{1} << (width_ - 1);
    return (bits_ & sign) ? static_cast<std::int64_t>(bits_ | ~mask_of(width_)) : static_cast<std::int64_t>(bits_);
}

Word Word::sign_extended(int width) const {
    check_width(width);
    if (width <= width_) return *this;
    std::uint64_t out = bits_;
    const bool msb = bit(width_ - 1);
    for (int i = width_; i < width; ++i) out |= static_cast<std::uint64_t>(msb) << i;
    return from_bits(out, width);
}

int bits_for(std::int64_t value) {
    int width = 1;
    while (!fits_twos_complement(value, width)) ++width;
    return width;
}

Word ripple_add(const Word& a, const Word& b) { return ripple(a, b, false, false); }

Word ripple_sub(const Word& a, const Word& b) { return ripple(a, b, true, true); }

}  // namespace dwt97::rtl
