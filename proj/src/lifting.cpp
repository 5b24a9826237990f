#include "dwt97/lifting.hpp"

#include <string>

namespace dwt97 {

namespace {

// Applies the four lifting steps in place on the polyphase components.
// `step(k, a, b)` returns the update for step k (0 = alpha ... 3 = delta)
// from the neighbour sum a + b. Edges use single-sample mirroring, which is
// whole-sample symmetric extension of the input expressed per step.
template <class T, class Step>
void lift_steps(std::vector<T>& even, std::vector<T>& odd, Step&& step) {
    const std::size_t h = even.size();
    for (std::size_t i = 0; i < h; ++i) {
        const T next = (i + 1 < h) ? even[i + 1] : even[i];
        odd[i] += step(0, even[i], next);
    }
    for (std::size_t i = 0; i < h; ++i) {
        const T prev = (i > 0) ? odd[i - 1] : odd[i];
        even[i] += step(1, prev, odd[i]);
    }
    for (std::size_t i = 0; i < h; ++i) {
        const T next = (i + 1 < h) ? even[i + 1] : even[i];
        odd[i] += step(2, even[i], next);
    }
    for (std::size_t i = 0; i < h; ++i) {
        const T prev = (i > 0) ? odd[i - 1] : odd[i];
        even[i] += step(3, prev, odd[i]);
    }
}

// Reverse order, sign-reversed. Each step reads only the component it does not
// modify, so subtracting the identical expression undoes it exactly.
template <class T, class Step>
void unlift_steps(std::vector<T>& even, std::vector<T>& odd, Step&& step) {
    const std::size_t h = even.size();
    for (std::size_t i = 0; i < h; ++i) {
        const T prev = (i > 0) ? odd[i - 1] : odd[i];
        even[i] -= step(3, prev, odd[i]);
    }
    for (std::size_t i = 0; i < h; ++i) {
        const T next = (i + 1 < h) ? even[i + 1] : even[i];
        odd[i] -= step(2, even[i], next);
    }
    for (std::size_t i = 0; i < h; ++i) {
        const T prev = (i > 0) ? odd[i - 1] : odd[i];
        even[i] -= step(1, prev, odd[i]);
    }
    for (std::size_t i = 0; i < h; ++i) {
        const T next = (i + 1 < h) ? even[i + 1] : even[i];
        odd[i] -= step(0, even[i], next);
    }
}

template <class T>
void split(std::span<const T> s, std::vector<T>& even, std::vector<T>& odd) {
    const std::size_t h = s.size() / 2;
    even.resize(h);
    odd.resize(h);
    for (std::size_t i = 0; i < h; ++i) {
        even[i] = s[2 * i];
        odd[i] = s[2 * i + 1];
    }
}

template <class T>
std::vector<T> merge(const std::vector<T>& even, const std::vector<T>& odd) {
    std::vector<T> out(even.size() * 2);
    for (std::size_t i = 0; i < even.size(); ++i) {
        out[2 * i] = even[i];
        out[2 * i + 1] = odd[i];
    }
    return out;
}

template <class T>
void require_matching_bands(const BandPair<T>& b) {
    if (b.low.size() != b.high.size())
        throw ShapeError("band lengths differ: low " + std::to_string(b.low.size()) + ", high " +
                         std::to_string(b.high.size()));
    if (b.low.empty()) throw ShapeError("empty bands");
}

struct PlanSet {
    std::array<ShiftAddPlan, 6> plans;

    explicit PlanSet(const CoeffSet& coeffs) {
        for (auto name : kAllCoeffNames)
            plans[static_cast<std::size_t>(name)] = shift_add_plan(coeffs[name]);
    }
    const ShiftAddPlan& operator[](CoeffName n) const { return plans[static_cast<std::size_t>(n)]; }
};

constexpr std::array<CoeffName, 4> kStepCoeff = {CoeffName::Alpha, CoeffName::Beta, CoeffName::Gamma,
                                                 CoeffName::Delta};

// Products are formed at 64 bits and truncated back; lifting values stay far
// inside 32 bits for any input the 2D transform produces.
std::int32_t truncated_product(std::int64_t x, const ShiftAddPlan& plan) {
    return static_cast<std::int32_t>(scale_q8(mul_const(x, plan)));
}

}  // namespace

std::size_t mirror_index(std::ptrdiff_t i, std::size_t n) {
    if (n == 0) throw RangeError("mirror_index on empty signal");
    if (n == 1) return 0;
    const auto period = static_cast<std::ptrdiff_t>(2 * (n - 1));
    std::ptrdiff_t r = i % period;
    if (r < 0) r += period;
    if (r >= static_cast<std::ptrdiff_t>(n)) r = period - r;
    return static_cast<std::size_t>(r);
}

void require_even_length(std::size_t n) {
    if (n < 2 || n % 2 != 0)
        throw ShapeError("signal length must be even and at least 2, got " + std::to_string(n));
}

LiftingConstants LiftingConstants::table() {
    const auto t = coefficient_table();
    return {t[0].float_value, t[1].float_value, t[2].float_value,
            t[3].float_value, t[4].float_value, t[5].float_value};
}

LiftingConstants LiftingConstants::from_ratios(const CoeffSet& coeffs) {
    return {coeffs[CoeffName::Alpha].ratio(), coeffs[CoeffName::Beta].ratio(),
            coeffs[CoeffName::Gamma].ratio(), coeffs[CoeffName::Delta].ratio(),
            coeffs[CoeffName::NegK].ratio(),  coeffs[CoeffName::InvK].ratio()};
}

BandPair<double> lifting_forward(std::span<const double> s, const LiftingConstants& c) {
    require_even_length(s.size());
    std::vector<double> even, odd;
    split(s, even, odd);
    const std::array<double, 4> k = {c.alpha, c.beta, c.gamma, c.delta};
    lift_steps(even, odd, [&](int step, double a, double b) { return k[step] * (a + b); });
    for (auto& v : even) v *= c.inv_k;
    for (auto& v : odd) v *= c.neg_k;
    return {std::move(even), std::move(odd)};
}

std::vector<double> lifting_inverse(const BandPair<double>& bands, const LiftingConstants& c) {
    require_matching_bands(bands);
    std::vector<double> even = bands.low, odd = bands.high;
    for (auto& v : even) v /= c.inv_k;
    for (auto& v : odd) v /= c.neg_k;
    const std::array<double, 4> k = {c.alpha, c.beta, c.gamma, c.delta};
    unlift_steps(even, odd, [&](int step, double a, double b) { return k[step] * (a + b); });
    return merge(even, odd);
}

BandPair<std::int32_t> lifting_forward_fixed(std::span<const std::int32_t> s, const CoeffSet& coeffs) {
    require_even_length(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] < -128 || s[i] > 127)
            throw RangeError("sample " + std::to_string(i) + " = " + std::to_string(s[i]) +
                             " outside signed 8-bit range");
    return lifting_forward_integer(s, coeffs);
}

BandPair<std::int32_t> lifting_forward_integer(std::span<const std::int32_t> s, const CoeffSet& coeffs) {
    require_even_length(s.size());
    const PlanSet plans(coeffs);
    std::vector<std::int32_t> even, odd;
    split(s, even, odd);
    lift_steps(even, odd, [&](int step, std::int32_t a, std::int32_t b) {
        return truncated_product(std::int64_t{a} + b, plans[kStepCoeff[step]]);
    });
    for (auto& v : even) v = truncated_product(v, plans[CoeffName::InvK]);
    for (auto& v : odd) v = truncated_product(v, plans[CoeffName::NegK]);
    return {std::move(even), std::move(odd)};
}

std::vector<std::int32_t> lifting_inverse_fixed(const BandPair<std::int32_t>& bands, const CoeffSet& coeffs) {
    require_matching_bands(bands);
    const PlanSet plans(coeffs);
    std::vector<std::int32_t> even(bands.low.size()), odd(bands.high.size());
    // 1/(1/k) = -(-k) and 1/(-k) = -(1/k), both re-using the forward constants.
    for (std::size_t i = 0; i < even.size(); ++i) {
        even[i] = static_cast<std::int32_t>(scale_q8(-mul_const(bands.low[i], plans[CoeffName::NegK])));
        odd[i] = static_cast<std::int32_t>(scale_q8(-mul_const(bands.high[i], plans[CoeffName::InvK])));
    }
    unlift_steps(even, odd, [&](int step, std::int32_t a, std::int32_t b) {
        return truncated_product(std::int64_t{a} + b, plans[kStepCoeff[step]]);
    });
    return merge(even, odd);
}

FirCoeffs FirCoeffs::jpeg2000() {
    // Centre tap first in each half; filters are symmetric.
    constexpr std::array<double, 5> h = {0.602949018236360, 0.266864118442875, -0.078223266528990,
                                         -0.016864118442875, 0.026748757410810};
    constexpr std::array<double, 4> g = {1.115087052457000, -0.591271763114250, -0.057543526228500,
                                         0.091271763114250};
    FirCoeffs f;
    for (int k = -4; k <= 4; ++k) f.lowpass[static_cast<std::size_t>(k + 4)] = h[static_cast<std::size_t>(k < 0 ? -k : k)];
    for (int k = -3; k <= 3; ++k) f.highpass[static_cast<std::size_t>(k + 3)] = g[static_cast<std::size_t>(k < 0 ? -k : k)];
    f.mode = FirMode::Float;
    return f;
}

FirCoeffs FirCoeffs::quantized() const {
    FirCoeffs q = *this;
    for (auto& t : q.lowpass) t = static_cast<double>(round_to_q8(t)) / kQ8One;
    for (auto& t : q.highpass) t = static_cast<double>(round_to_q8(t)) / kQ8One;
    q.mode = FirMode::Q8;
    return q;
}

std::array<std::int32_t, 9> FirCoeffs::lowpass_q8() const {
    std::array<std::int32_t, 9> out{};
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = round_to_q8(lowpass[i]);
    return out;
}

std::array<std::int32_t, 7> FirCoeffs::highpass_q8() const {
    std::array<std::int32_t, 7> out{};
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = round_to_q8(highpass[i]);
    return out;
}

BandPair<double> fir_forward(std::span<const double> s, const FirCoeffs& coeffs) {
    require_even_length(s.size());
    const std::size_t h = s.size() / 2;
    BandPair<double> out{std::vector<double>(h), std::vector<double>(h)};
    for (std::size_t n = 0; n < h; ++n) {
        const auto centre_lo = static_cast<std::ptrdiff_t>(2 * n);
        double lo = 0.0, hi = 0.0;
        for (std::ptrdiff_t k = -4; k <= 4; ++k)
            lo += coeffs.lowpass[static_cast<std::size_t>(k + 4)] * s[mirror_index(centre_lo + k, s.size())];
        for (std::ptrdiff_t k = -3; k <= 3; ++k)
            hi += coeffs.highpass[static_cast<std::size_t>(k + 3)] * s[mirror_index(centre_lo + 1 + k, s.size())];
        out.low[n] = lo;
        out.high[n] = hi;
    }
    return out;
}

BandPair<std::int32_t> fir_forward_q8(std::span<const std::int32_t> s, const FirCoeffs& coeffs) {
    if (coeffs.mode != FirMode::Q8) throw RangeError("fir_forward_q8 needs Q8 taps; call quantized()");
    require_even_length(s.size());
    const auto lo_taps = coeffs.lowpass_q8();
    const auto hi_taps = coeffs.highpass_q8();
    const std::size_t h = s.size() / 2;
    BandPair<std::int32_t> out{std::vector<std::int32_t>(h), std::vector<std::int32_t>(h)};
    for (std::size_t n = 0; n < h; ++n) {
        const auto centre_lo = static_cast<std::ptrdiff_t>(2 * n);
        std::int64_t lo = 0, hi = 0;
        for (std::ptrdiff_t k = -4; k <= 4; ++k)
            lo += std::int64_t{lo_taps[static_cast<std::size_t>(k + 4)]} * s[mirror_index(centre_lo + k, s.size())];
        for (std::ptrdiff_t k = -3; k <= 3; ++k)
            hi += std::int64_t{hi_taps[static_cast<std::size_t>(k + 3)]} * s[mirror_index(centre_lo + 1 + k, s.size())];
        out.low[n] = static_cast<std::int32_t>(scale_q8(lo));
        out.high[n] = static_cast<std::int32_t>(scale_q8(hi));
    }
    return out;
}

BandPair<double> fir_to_lifting_bands(BandPair<double> fir) {
    for (auto& v : fir.high) v = -v;
    return fir;
}

}  // namespace dwt97
