#include "dwt97/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

namespace dwt97 {

namespace {

constexpr double kPeak = 255.0;

std::string format_double(double v, int digits) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

Plane<double> rounded(Plane<double> p) {
    for (auto& v : p.pixels) v = static_cast<double>(std::llround(v));
    return p;
}

PsnrResult reconstruct_and_measure(const ImagePlane& tile, SubbandImage<double> coeffs, std::string_view method) {
    coeffs.data = rounded(std::move(coeffs.data));
    return psnr(tile, to_image(inverse_multi_float(coeffs)), std::string(method));
}

template <class T>
BandPair<T> negate_high(BandPair<T> b) {
    for (auto& v : b.high) v = -v;
    return b;
}

}  // namespace

PsnrResult psnr(const ImagePlane& original, const ImagePlane& reconstructed, std::string method) {
    if (original.width != reconstructed.width || original.height != reconstructed.height)
        throw ShapeError("psnr of differently sized images: " + std::to_string(original.width) + "x" +
                         std::to_string(original.height) + " vs " + std::to_string(reconstructed.width) + "x" +
                         std::to_string(reconstructed.height));
    if (original.pixels.empty()) throw ShapeError("psnr of empty images");
    double sum = 0.0;
    for (std::size_t i = 0; i < original.pixels.size(); ++i) {
        const auto a = original.pixels[i], b = reconstructed.pixels[i];
        if (a < -128 || a > 127 || b < -128 || b > 127)
            throw RangeError("pixel " + std::to_string(i) + " outside the 8-bit range");
        const double d = static_cast<double>(a - b);
        sum += d * d;
    }
    PsnrResult r;
    r.method = std::move(method);
    r.mse = sum / static_cast<double>(original.pixels.size());
    r.psnr_db = r.mse == 0.0 ? std::numeric_limits<double>::infinity() : 10.0 * std::log10(kPeak * kPeak / r.mse);
    return r;
}

std::vector<PsnrResult> rounding_error_study(const ImagePlane& tile, int octaves, const CoeffSet& coeffs) {
    require_octave_shape(tile.width, tile.height, octaves);
    const auto tile_f = convert<double>(tile);
    const auto fir = FirCoeffs::jpeg2000();
    const auto fir_q8 = fir.quantized();

    std::vector<PsnrResult> rows;
    rows.push_back(reconstruct_and_measure(
        tile,
        forward_multi_with<double>(tile_f, octaves,
                                   [&](std::span<const double> s) { return fir_to_lifting_bands(fir_forward(s, fir)); }),
        kStudyFirFloat));
    const auto fir_int = forward_multi_with<std::int32_t>(
        tile, octaves, [&](std::span<const std::int32_t> s) { return negate_high(fir_forward_q8(s, fir_q8)); });
    rows.push_back(reconstruct_and_measure(tile, {convert<double>(fir_int.data), octaves}, kStudyFirInteger));
    rows.push_back(reconstruct_and_measure(tile, forward_multi_float(tile_f, octaves), kStudyLiftingFloat));
    const auto fixed = forward_multi_fixed(tile, octaves, coeffs);
    rows.push_back(reconstruct_and_measure(tile, {convert<double>(fixed.data), octaves}, kStudyLiftingFixed));
    return rows;
}

std::string render_study_table(const std::vector<PsnrResult>& rows) {
    std::ostringstream os;
    char line[128];
    std::snprintf(line, sizeof line, "%-16s %12s %12s\n", "method", "mse", "psnr_db");
    os << line;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%-16s %12s %12s\n", r.method.c_str(), format_double(r.mse, 4).c_str(),
                      format_double(r.psnr_db, 3).c_str());
        os << line;
    }
    return os.str();
}

std::string render_study_key_values(const std::vector<PsnrResult>& rows) {
    std::ostringstream os;
    for (const auto& r : rows) {
        os << "study." << r.method << ".mse=" << format_double(r.mse, 6) << '\n';
        os << "study." << r.method << ".psnr_db=" << format_double(r.psnr_db, 6) << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------

std::int64_t adder_cost(int width, bool structural) {
    if (width < 1) throw RangeError("adder width must be positive");
    return std::int64_t{width} * (structural ? kLePerAdderBitStructural : kLePerAdderBitBehavioral);
}

namespace {

struct NodeCost {
    int adders = 0;
    std::int64_t les = 0;
};

NodeCost node_cost(const rtl::Netlist& net, const rtl::NetNode& n) {
    const auto width_of = [&](int id) { return net.nodes[static_cast<std::size_t>(id)].width; };
    switch (n.op) {
        case rtl::NodeOp::Add:
        case rtl::NodeOp::Sub:
            return {1, adder_cost(std::max(width_of(n.a), width_of(n.b)), rtl::is_structural(net.kind))};
        case rtl::NodeOp::Mul: {
            const int rows = n.constant_bits - 1;
            return {rows, rows * adder_cost(width_of(n.a), false)};
        }
        default: return {};
    }
}

// Stage owning each combinational node: the stage of the first register
// whose next-value logic reads it.
std::vector<int> node_stages(const rtl::Netlist& net) {
    std::vector<int> stage(net.nodes.size(), 0);
    for (const auto& r : net.registers) {
        std::vector<int> stack{r.next};
        while (!stack.empty()) {
            const int id = stack.back();
            stack.pop_back();
            if (id < 0 || stage[static_cast<std::size_t>(id)] != 0) continue;
            const auto& n = net.nodes[static_cast<std::size_t>(id)];
            if (n.op == rtl::NodeOp::Reg || n.op == rtl::NodeOp::Input) continue;
            stage[static_cast<std::size_t>(id)] = std::clamp(r.spec.stage, 1, net.stage_count);
            stack.push_back(n.a);
            stack.push_back(n.b);
        }
    }
    return stage;
}

}  // namespace

std::int64_t area_estimate(const rtl::PipelineModel& model) {
    const auto& net = model.netlist();
    std::int64_t les = 0;
    for (const auto& n : net.nodes) les += node_cost(net, n).les;
    for (const auto& r : net.registers) les += std::int64_t{r.spec.width} * kLePerRegisterBit;
    return les;
}

DesignReport design_report(const rtl::PipelineModel& model) {
    const auto& net = model.netlist();
    DesignReport d;
    d.kind = model.kind();
    d.le_estimate = area_estimate(model);
    d.stage_count = model.stage_count();
    d.latency = model.latency();
    d.critical_path_adders = model.critical_path_adders();
    d.max_freq_proxy = d.critical_path_adders > 0 ? 1.0 / d.critical_path_adders : 0.0;
    d.adders_by_stage.assign(static_cast<std::size_t>(d.stage_count), 0);
    const auto stages = node_stages(net);
    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
        const int a = node_cost(net, net.nodes[i]).adders;
        if (a == 0 || stages[i] == 0) continue;
        d.adders_by_stage[static_cast<std::size_t>(stages[i] - 1)] += a;
        d.adder_count += a;
    }
    for (const auto& r : net.registers) d.register_bits += r.spec.width;
    return d;
}

std::vector<DesignReport> tradeoff_report(const CoeffSet& coeffs) {
    std::vector<DesignReport> out;
    for (auto kind : rtl::kAllDesigns) out.push_back(design_report(rtl::build_design(kind, coeffs)));
    return out;
}

std::string render_report_table(const std::vector<DesignReport>& reports) {
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%-6s %-32s %8s %8s %9s %7s %8s %8s %10s\n", "design", "kind", "le", "adders",
                  "reg_bits", "stages", "latency", "cp_add", "freq_proxy");
    os << line;
    for (const auto& d : reports) {
        std::snprintf(line, sizeof line, "%-6d %-32s %8lld %8d %9d %7d %8d %8d %10s\n", rtl::design_number(d.kind),
                      std::string(rtl::to_string(d.kind)).c_str(), static_cast<long long>(d.le_estimate), d.adder_count,
                      d.register_bits, d.stage_count, d.latency, d.critical_path_adders,
                      format_double(d.max_freq_proxy, 4).c_str());
        os << line;
    }
    return os.str();
}

std::string render_report_key_values(const std::vector<DesignReport>& reports) {
    std::ostringstream os;
    for (const auto& d : reports) {
        const std::string p = "design" + std::to_string(rtl::design_number(d.kind)) + ".";
        os << p << "kind=" << rtl::to_string(d.kind) << '\n';
        os << p << "le_estimate=" << d.le_estimate << '\n';
        os << p << "adder_count=" << d.adder_count << '\n';
        os << p << "adders_by_stage=";
        for (std::size_t i = 0; i < d.adders_by_stage.size(); ++i) os << (i ? "," : "") << d.adders_by_stage[i];
        os << '\n';
        os << p << "register_bits=" << d.register_bits << '\n';
        os << p << "stage_count=" << d.stage_count << '\n';
        os << p << "latency=" << d.latency << '\n';
        os << p << "critical_path_adders=" << d.critical_path_adders << '\n';
        os << p << "max_freq_proxy=" << format_double(d.max_freq_proxy, 6) << '\n';
    }
    return os.str();
}

}  // namespace dwt97
