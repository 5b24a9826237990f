#pragma once

// Q2.8 lifting constants and the shift-add arithmetic the datapath is built from.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dwt97 {

/// Implied binary point of every scaled constant: value = scaled_int / 256.
inline constexpr int kQ8Shift = 8;
inline constexpr std::int32_t kQ8One = 1 << kQ8Shift;
/// Two's-complement width of every lifting constant (2 integer + 8 fraction bits).
inline constexpr int kCoeffBits = 10;

enum class CoeffName { Alpha, Beta, Gamma, Delta, NegK, InvK };

inline constexpr std::array<CoeffName, 6> kAllCoeffNames = {
    CoeffName::Alpha, CoeffName::Beta, CoeffName::Gamma,
    CoeffName::Delta, CoeffName::NegK, CoeffName::InvK};

std::string_view to_string(CoeffName name);

struct ScaledCoeff {
    CoeffName name = CoeffName::Alpha;
    double float_value = 0.0;
    std::int32_t scaled_int = 0;
    int bit_width = kCoeffBits;

    /// Two's-complement bit pattern of scaled_int in bit_width bits.
    std::uint32_t encoding() const;
    double ratio() const { return static_cast<double>(scaled_int) / kQ8One; }

    friend bool operator==(const ScaledCoeff&, const ScaledCoeff&) = default;
};

/// Sign-extends the low `width` bits of `bits`.
std::int32_t decode_twos_complement(std::uint32_t bits, int width);

/// Parses a binary literal such as "10.01101010" (the point is cosmetic) as a
/// two's-complement integer of as many bits as there are digits.
std::int32_t decode_binary_literal(std::string_view text);

bool fits_twos_complement(std::int64_t value, int width);

/// One row of the published coefficient table.
struct CoeffTableRow {
    CoeffName name;
    double float_value;
    std::int32_t integer_column;
    std::string_view binary_column;
};

std::span<const CoeffTableRow> coefficient_table();

/// Which column of the table supplies the integer values. They disagree for
/// delta (113 vs 114) and -k (-315 vs -314).
enum class CoeffVariant { BinaryColumn, IntegerColumn };

/// The six lifting constants as one value object.
class CoeffSet {
public:
    CoeffSet(std::array<ScaledCoeff, 6> coeffs, CoeffVariant variant);

    const ScaledCoeff& operator[](CoeffName name) const { return coeffs_[static_cast<std::size_t>(name)]; }
    const std::array<ScaledCoeff, 6>& all() const { return coeffs_; }
    CoeffVariant variant() const { return variant_; }

    friend bool operator==(const CoeffSet&, const CoeffSet&) = default;

private:
    std::array<ScaledCoeff, 6> coeffs_;
    CoeffVariant variant_;
};

/// Constants decoded from the binary column: -406, -14, 226, 113, -315, 208.
CoeffSet canonical_coeffs();
/// Constants taken from the integer-ratio column: -406, -14, 226, 114, -314, 208.
CoeffSet integer_column_coeffs();
CoeffSet coeffs_for(CoeffVariant variant);

/// round-half-away-from-zero of x * 256. Throws RangeError unless |x| < 2.
std::int32_t round_to_q8(double x);

struct ShiftAddTerm {
    int shift = 0;
    int sign = +1;

    friend bool operator==(const ShiftAddTerm&, const ShiftAddTerm&) = default;
};

/// Partial products realizing a constant: one term per set bit of its
/// two's-complement encoding, the sign bit entering negatively.
struct ShiftAddPlan {
    std::vector<ShiftAddTerm> terms;
    ScaledCoeff constant;

    /// Sum over terms of sign * 2^shift.
    std::int64_t value() const;
    /// Terms re-encoded as a bit_width two's-complement word.
    std::uint32_t encode() const;
};

ShiftAddPlan shift_add_plan(const ScaledCoeff& c);

/// x * c computed as a sum of shifted copies of x. The accumulator is 64 bits,
/// far above the 22 bits an 11-bit operand times a 10-bit constant needs.
std::int64_t mul_const(std::int64_t x, const ShiftAddPlan& plan);

/// The datapath's 8-bit right shift: floor(x / 256).
constexpr std::int64_t scale_q8(std::int64_t x) { return x >> kQ8Shift; }

}  // namespace dwt97
