#pragma once

// Untimed 1D 9/7 transforms: lifting (float and integer datapath) and the FIR
// filter-bank reference.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dwt97/errors.hpp"
#include "dwt97/fixpoint.hpp"

namespace dwt97 {

enum class Mode { Float, Fixed };

template <class T>
struct BandPair {
    std::vector<T> low;
    std::vector<T> high;

    friend bool operator==(const BandPair&, const BandPair&) = default;
};

/// Whole-sample symmetric index folding: ..., 2, 1, [0, 1, ..., n-1], n-2, ...
/// Folds repeatedly, so any integer index maps into [0, n).
std::size_t mirror_index(std::ptrdiff_t i, std::size_t n);

/// Whole-sample symmetric extension (the boundary sample is not repeated).
/// Throws RangeError unless left and right are both shorter than the signal.
template <class T>
std::vector<T> symmetric_extend(std::span<const T> s, std::size_t left, std::size_t right) {
    if (left >= s.size() || right >= s.size())
        throw RangeError("symmetric extension longer than the signal");
    std::vector<T> out;
    out.reserve(s.size() + left + right);
    const auto n = static_cast<std::ptrdiff_t>(s.size());
    for (std::ptrdiff_t i = -static_cast<std::ptrdiff_t>(left); i < n + static_cast<std::ptrdiff_t>(right); ++i)
        out.push_back(s[mirror_index(i, s.size())]);
    return out;
}

/// Throws ShapeError unless the length is even and at least 2.
void require_even_length(std::size_t n);

/// Real-valued lifting constants.
struct LiftingConstants {
    double alpha, beta, gamma, delta, neg_k, inv_k;

    /// The floating-point column of the coefficient table.
    static LiftingConstants table();
    /// The integer constants of `coeffs` taken as exact ratios over 256.
    static LiftingConstants from_ratios(const CoeffSet& coeffs);
};

/// Forward lifting in real arithmetic. Even samples feed the low band.
BandPair<double> lifting_forward(std::span<const double> s,
                                 const LiftingConstants& c = LiftingConstants::table());

/// Exact inverse of lifting_forward for the same constants.
std::vector<double> lifting_inverse(const BandPair<double>& bands,
                                    const LiftingConstants& c = LiftingConstants::table());

/// The bit-exact integer datapath: every constant multiplication is a
/// shift-add product followed by the 8-bit floor shift. Samples must be
/// signed 8-bit; throws RangeError otherwise.
BandPair<std::int32_t> lifting_forward_fixed(std::span<const std::int32_t> s,
                                             const CoeffSet& coeffs = canonical_coeffs());

/// Same arithmetic as lifting_forward_fixed without the 8-bit input check,
/// for column passes and deeper octaves of the 2D transform.
BandPair<std::int32_t> lifting_forward_integer(std::span<const std::int32_t> s,
                                               const CoeffSet& coeffs = canonical_coeffs());

/// Mirrored integer steps. The lifting steps cancel exactly; the two output
/// scalings do not, so this is an approximate inverse.
std::vector<std::int32_t> lifting_inverse_fixed(const BandPair<std::int32_t>& bands,
                                                const CoeffSet& coeffs = canonical_coeffs());

enum class FirMode { Float, Q8 };

/// Symmetric 9-tap low-pass / 7-tap high-pass analysis pair.
struct FirCoeffs {
    std::array<double, 9> lowpass{};
    std::array<double, 7> highpass{};
    FirMode mode = FirMode::Float;

    /// JPEG2000 Part 1 irreversible 9/7 analysis filters (ITU-T T.800, Annex F).
    static FirCoeffs jpeg2000();
    /// Taps rounded with round_to_q8; values are exact multiples of 1/256.
    FirCoeffs quantized() const;

    std::array<std::int32_t, 9> lowpass_q8() const;
    std::array<std::int32_t, 7> highpass_q8() const;
};

/// FIR analysis over the symmetrically extended signal, then downsampling:
/// low[n] centred on x[2n], high[n] centred on x[2n+1]. Real arithmetic with
/// whatever taps `coeffs` holds.
BandPair<double> fir_forward(std::span<const double> s, const FirCoeffs& coeffs = FirCoeffs::jpeg2000());

/// Integer FIR analysis with Q8 taps; each output accumulation is floor-shifted
/// by 8. Requires coeffs.mode == FirMode::Q8.
BandPair<std::int32_t> fir_forward_q8(std::span<const std::int32_t> s, const FirCoeffs& coeffs);

/// Converts FIR bands to the lifting band convention (high band negated).
BandPair<double> fir_to_lifting_bands(BandPair<double> fir);

}  // namespace dwt97
