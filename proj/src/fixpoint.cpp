#include "dwt97/fixpoint.hpp"

#include <cmath>
#include <cstdlib>

#include "dwt97/errors.hpp"

namespace dwt97 {

namespace {

// float value, integer column, binary column
constexpr std::array<CoeffTableRow, 6> kTable = {{
    {CoeffName::Alpha, -1.586134342, -406, "10.01101010"},
    {CoeffName::Beta, -0.052980118, -14, "11.11110010"},
    {CoeffName::Gamma, 0.882911075, 226, "00.11100010"},
    {CoeffName::Delta, 0.443506852, 114, "00.01110001"},
    {CoeffName::NegK, -1.230174105, -314, "10.11000101"},
    {CoeffName::InvK, 0.812893066, 208, "00.11010000"},
}};

// Operands beyond this would overflow the 64-bit accumulator at shift 9.
constexpr std::int64_t kMulConstLimit = std::int64_t{1} << 53;

}  // namespace

std::string_view to_string(CoeffName name) {
    switch (name) {
        case CoeffName::Alpha: return "alpha";
        case CoeffName::Beta: return "beta";
        case CoeffName::Gamma: return "gamma";
        case CoeffName::Delta: return "delta";
        case CoeffName::NegK: return "neg_k";
        case CoeffName::InvK: return "inv_k";
    }
    return "?";
}

std::uint32_t ScaledCoeff::encoding() const {
    const std::uint32_t mask = (bit_width >= 32) ? ~0u : ((1u << bit_width) - 1u);
    return static_cast<std::uint32_t>(scaled_int) & mask;
}

std::int32_t decode_twos_complement(std::uint32_t bits, int width) {
    if (width <= 0 || width > 31)
        throw RangeError("two's-complement width must be in 1..31");
    const std::uint32_t mask = (1u << width) - 1u;
    bits &= mask;
    const std::uint32_t sign = 1u << (width - 1);
    return (bits & sign) ? static_cast<std::int32_t>(bits) - static_cast<std::int32_t>(1u << width)
                         : static_cast<std::int32_t>(bits);
}

std::int32_t decode_binary_literal(std::string_view text) {
    std::uint32_t bits = 0;
    int width = 0;
    for (char ch : text) {
        if (ch == '.') continue;
        if (ch != '0' && ch != '1')
            throw RangeError("binary literal contains '" + std::string(1, ch) + "'");
        bits = (bits << 1) | static_cast<std::uint32_t>(ch - '0');
        ++width;
    }
    return decode_twos_complement(bits, width);
}

bool fits_twos_complement(std::int64_t value, int width) {
    if (width >= 64) return true;
    const std::int64_t lo = -(std::int64_t{1} << (width - 1));
    const std::int64_t hi = (std::int64_t{1} << (width - 1)) - 1;
    return value >= lo && value <= hi;
}

std::span<const CoeffTableRow> coefficient_table() { return kTable; }

CoeffSet::CoeffSet(std::array<ScaledCoeff, 6> coeffs, CoeffVariant variant)
    : coeffs_(coeffs), variant_(variant) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const auto& c = coeffs_[i];
        if (static_cast<std::size_t>(c.name) != i)
            throw RangeError("coefficient set out of order at " + std::string(to_string(c.name)));
        if (!fits_twos_complement(c.scaled_int, c.bit_width))
            throw RangeError(std::string(to_string(c.name)) + " does not fit its bit width");
    }
}

CoeffSet canonical_coeffs() {
    std::array<ScaledCoeff, 6> out{};
    for (std::size_t i = 0; i < kTable.size(); ++i) {
        const auto& row = kTable[i];
        out[i] = ScaledCoeff{row.name, row.float_value, decode_binary_literal(row.binary_column), kCoeffBits};
    }
    return CoeffSet(out, CoeffVariant::BinaryColumn);
}

CoeffSet integer_column_coeffs() {
    std::array<ScaledCoeff, 6> out{};
    for (std::size_t i = 0; i < kTable.size(); ++i) {
        const auto& row = kTable[i];
        out[i] = ScaledCoeff{row.name, row.float_value, row.integer_column, kCoeffBits};
    }
    return CoeffSet(out, CoeffVariant::IntegerColumn);
}

CoeffSet coeffs_for(CoeffVariant variant) {
    return variant == CoeffVariant::BinaryColumn ? canonical_coeffs() : integer_column_coeffs();
}

std::int32_t round_to_q8(double x) {
    if (!std::isfinite(x) || std::fabs(x) >= 2.0)
        throw RangeError("value " + std::to_string(x) + " outside Q2.8 range (-2, 2)");
    // std::round rounds halfway cases away from zero.
    return static_cast<std::int32_t>(std::round(x * kQ8One));
}

std::int64_t ShiftAddPlan::value() const {
    std::int64_t sum = 0;
    for (const auto& t : terms) sum += t.sign * (std::int64_t{1} << t.shift);
    return sum;
}

std::uint32_t ShiftAddPlan::encode() const {
    const auto v = value();
    const std::uint32_t mask = (1u << constant.bit_width) - 1u;
    return static_cast<std::uint32_t>(v) & mask;
}

ShiftAddPlan shift_add_plan(const ScaledCoeff& c) {
    ShiftAddPlan plan{{}, c};
    const std::uint32_t bits = c.encoding();
    const int sign_bit = c.bit_width - 1;
    for (int b = 0; b < sign_bit; ++b)
        if (bits & (1u << b)) plan.terms.push_back({b, +1});
    if (bits & (1u << sign_bit)) plan.terms.push_back({sign_bit, -1});
    return plan;
}

std::int64_t mul_const(std::int64_t x, const ShiftAddPlan& plan) {
    if (x >= kMulConstLimit || x <= -kMulConstLimit)
        throw RangeError("mul_const operand exceeds the accumulator headroom");
    std::int64_t acc = 0;
    for (const auto& t : plan.terms) {
        // Left shift of a negative value is well defined from C++20 on.
        const std::int64_t partial = x << t.shift;
        acc = t.sign > 0 ? acc + partial : acc - partial;
    }
    return acc;
}

}  // namespace dwt97
