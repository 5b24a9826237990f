#pragma once

// Gate-level arithmetic for the structural designs: full-adder cells chained
// into ripple-carry adders over two's-complement words.

#include <cstdint>

namespace dwt97::rtl {

struct FullAdderOut {
    bool sum;
    bool carry;
};

constexpr FullAdderOut full_adder(bool a, bool b, bool cin) {
    return {static_cast<bool>(a ^ b ^ cin), static_cast<bool>((a && b) || (a && cin) || (b && cin))};
}

inline constexpr int kMaxWordWidth = 62;

/// Two's-complement bit vector of a fixed width (1..62 bits).
class Word {
public:
    /// Throws RangeError if `value` is not representable in `width` bits.
    Word(std::int64_t value, int width);

    static Word from_bits(std::uint64_t bits, int width);

    int width() const { return width_; }
    bool bit(int i) const { return (bits_ >> i) & 1u; }
    std::uint64_t bits() const { return bits_; }
    std::int64_t value() const;

    /// Widens by replicating the MSB.
    Word sign_extended(int width) const;

private:
    Word() = default;
    std::uint64_t bits_ = 0;
    int width_ = 1;
};

/// Smallest two's-complement width holding `value`.
int bits_for(std::int64_t value);

/// Chain of max(n, m) + 1 full-adder cells; the narrower operand is sign
/// extended first, so the sum never overflows.
Word ripple_add(const Word& a, const Word& b);

/// a - b as a + ~b + 1 on the same chain (carry-in set).
Word ripple_sub(const Word& a, const Word& b);

}  // namespace dwt97::rtl
