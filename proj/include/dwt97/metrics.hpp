#pragma once

// Image quality (PSNR), the coefficient rounding study, and the datapath cost
// model.

#include <cstdint>
#include <string>
#include <vector>

#include "dwt97/dwt2d.hpp"
#include "dwt97/rtlsim.hpp"

namespace dwt97 {

struct PsnrResult {
    double mse = 0.0;
    double psnr_db = 0.0;  ///< +inf when mse == 0
    std::string method;
};

/// PSNR with peak 255 over two level-shifted 8-bit planes. Throws ShapeError
/// on a size mismatch and RangeError on a pixel outside [-128, 127].
PsnrResult psnr(const ImagePlane& original, const ImagePlane& reconstructed, std::string method = {});

/// Method labels of the four study rows, in order.
inline constexpr std::string_view kStudyFirFloat = "fir-float";
inline constexpr std::string_view kStudyFirInteger = "fir-integer";
inline constexpr std::string_view kStudyLiftingFloat = "lifting-float";
inline constexpr std::string_view kStudyLiftingFixed = "lifting-fixed";

/// Forward transform variants, each followed by rounding the coefficients to
/// integers, the floating-point lifting inverse, and clamping:
///   fir-float      9/7 analysis filters in real arithmetic
///   fir-integer    filters with taps rounded to Q8, integer accumulation
///   lifting-float  lifting with the real constants
///   lifting-fixed  the shift-add integer datapath
/// FIR high bands are negated to the lifting convention before inversion.
std::vector<PsnrResult> rounding_error_study(const ImagePlane& tile, int octaves = 1,
                                             const CoeffSet& coeffs = canonical_coeffs());

std::string render_study_table(const std::vector<PsnrResult>& rows);
std::string render_study_key_values(const std::vector<PsnrResult>& rows);

// ---------------------------------------------------------------------------
// Cost model

/// Logic elements per adder bit: a carry-chain adder maps one bit per LE, a
/// gate-level ripple adder needs two.
inline constexpr int kLePerAdderBitBehavioral = 1;
inline constexpr int kLePerAdderBitStructural = 2;
/// Logic elements per register bit.
inline constexpr int kLePerRegisterBit = 1;

/// LEs of one adder of the given operand width.
std::int64_t adder_cost(int width, bool structural);

/// Sum over adders of width times the per-bit rate, plus register bits.
/// Generic multipliers count as (constant bits - 1) adders of the operand
/// width at the behavioral rate.
std::int64_t area_estimate(const rtl::PipelineModel& model);

struct DesignReport {
    rtl::DesignKind kind = rtl::DesignKind::BehavioralMultiplier;
    std::int64_t le_estimate = 0;
    std::vector<int> adders_by_stage;  ///< index 0 is stage 1
    int adder_count = 0;
    int register_bits = 0;
    int critical_path_adders = 0;
    int latency = 0;
    int stage_count = 0;
    double max_freq_proxy = 0.0;  ///< 1 / critical_path_adders
};

DesignReport design_report(const rtl::PipelineModel& model);
/// Reports for designs 1..5 in order.
std::vector<DesignReport> tradeoff_report(const CoeffSet& coeffs = canonical_coeffs());

std::string render_report_table(const std::vector<DesignReport>& reports);
std::string render_report_key_values(const std::vector<DesignReport>& reports);

}  // namespace dwt97
