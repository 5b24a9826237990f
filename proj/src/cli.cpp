#include "dwt97/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "dwt97/dwt2d.hpp"
#include "dwt97/metrics.hpp"
#include "dwt97/pgm.hpp"

namespace dwt97::cli {

std::string_view to_string(Command c) {
    switch (c) {
        case Command::Transform: return "transform";
        case Command::Roundtrip: return "roundtrip";
        case Command::Simulate: return "simulate";
        case Command::Study: return "study";
        case Command::Report: return "report";
    }
    return "?";
}

namespace {

std::string format_real(double v) {
    if (std::isinf(v)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
    if (!f) throw std::runtime_error("failed writing " + path);
}

int resolve_octaves(const CliConfig& c, const ImagePlane& img) {
    if (c.octaves) return *c.octaves;
    const int d = default_octaves(img.width, img.height);
    if (d == 0) throw ShapeError("image dimensions must be even");
    return d;
}

// Rows of a bounded random walk: smooth like image rows, so the datapath
// stays inside its register ranges.
ImagePlane random_walk_image(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> start(-100, 100), step(-6, 6);
    ImagePlane img(kRandomImageSide, kRandomImageSide);
    for (std::size_t y = 0; y < img.height; ++y) {
        int v = start(rng);
        for (std::size_t x = 0; x < img.width; ++x) {
            v = std::clamp(v + step(rng), -128, 127);
            img.at(x, y) = v;
        }
    }
    return img;
}

int cmd_transform(const CliConfig& c, std::ostream& out) {
    const auto img = read_pgm(c.input_path);
    const int octaves = resolve_octaves(c, img);
    const auto coeffs = forward_multi(img, octaves, c.mode, coeffs_for(c.coeff_variant));
    std::ofstream f(c.output_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + c.output_path + " for writing");
    write_coefficient_dump(f, coeffs, c.mode);
    f.close();
    if (!f) throw std::runtime_error("failed writing " + c.output_path);
    out << "width=" << img.width << "\nheight=" << img.height << "\noctaves=" << octaves
        << "\nmode=" << (c.mode == Mode::Fixed ? "fixed" : "float") << "\ncoefficients=" << img.pixels.size() << '\n';
    return 0;
}

int cmd_roundtrip(const CliConfig& c, std::ostream& out) {
    const auto img = read_pgm(c.input_path);
    const int octaves = resolve_octaves(c, img);
    const auto& set = coeffs_for(c.coeff_variant);
    const auto rec = to_image(inverse_multi(forward_multi(img, octaves, c.mode, set), c.mode, set));
    const auto q = psnr(img, rec, c.mode == Mode::Fixed ? "fixed" : "float");
    if (!c.output_path.empty()) write_pgm(c.output_path, rec);
    out << "octaves=" << octaves << "\nmode=" << q.method << "\nmse=" << format_real(q.mse)
        << "\npsnr_db=" << format_real(q.psnr_db) << '\n';
    return 0;
}

int cmd_simulate(const CliConfig& c, std::ostream& out, std::ostream& err) {
    const auto img = c.input_path.empty() ? random_walk_image(c.seed) : read_pgm(c.input_path);
    const auto& set = coeffs_for(c.coeff_variant);
    auto model = rtl::build_design(rtl::design_from_number(c.design), set);
    model.set_overflow_policy(c.overflow);
    std::ofstream trace;
    if (!c.trace_path.empty()) {
        trace.open(c.trace_path, std::ios::binary);
        if (!trace) throw std::runtime_error("cannot open " + c.trace_path + " for writing");
        model.set_trace(&trace);
    }
    std::size_t mismatches = 0, overflow_events = 0;
    std::int64_t cycles = 0;
    std::vector<std::int32_t> row(img.width);
    for (std::size_t y = 0; y < img.height; ++y) {
        std::copy_n(img.pixels.begin() + static_cast<std::ptrdiff_t>(y * img.width), img.width, row.begin());
        if (trace.is_open()) trace << "# row " << y << '\n';
        const auto got = rtl::run_stream(model, row);
        if (got != lifting_forward_fixed(row, set)) ++mismatches;
        cycles += model.cycle();
        overflow_events += model.overflow_events().size();
    }
    out << "design=" << c.design << "\nkind=" << rtl::to_string(model.kind()) << "\nstages=" << model.stage_count()
        << "\nlatency=" << model.latency() << "\ncritical_path_adders=" << model.critical_path_adders()
        << "\nrows=" << img.height << "\ncycles_per_row=" << (img.height ? cycles / static_cast<std::int64_t>(img.height) : 0)
        << "\ntotal_cycles=" << cycles << "\noverflow_events=" << overflow_events
        << "\noracle=" << (mismatches == 0 ? "match" : "mismatch") << '\n';
    if (mismatches != 0) {
        err << "error: " << mismatches << " rows differ from the combinational datapath\n";
        return 1;
    }
    return 0;
}

int cmd_study(const CliConfig& c, std::ostream& out) {
    const auto img = read_pgm(c.input_path);
    const auto rows = rounding_error_study(img, c.octaves.value_or(1), coeffs_for(c.coeff_variant));
    out << render_study_table(rows);
    if (!c.output_path.empty()) write_text(c.output_path, render_study_key_values(rows));
    return 0;
}

int cmd_report(const CliConfig& c, std::ostream& out) {
    const auto reports = tradeoff_report(coeffs_for(c.coeff_variant));
    out << render_report_table(reports);
    if (!c.output_path.empty()) write_text(c.output_path, render_report_key_values(reports));
    return 0;
}

}  // namespace

void validate(const CliConfig& c) {
    auto fail = [&](const std::string& msg) { throw std::invalid_argument(std::string(to_string(c.command)) + ": " + msg); };
    if (c.design < 1 || c.design > 5) fail("--design must be 1..5");
    if (c.octaves && *c.octaves < 1) fail("--octaves must be at least 1");
    const bool needs_input =
        c.command == Command::Transform || c.command == Command::Roundtrip || c.command == Command::Study;
    if (needs_input && c.input_path.empty()) fail("an input PGM is required");
    if (c.command == Command::Transform && c.output_path.empty()) fail("--out is required for the coefficient dump");
    if (c.command == Command::Simulate && c.mode != Mode::Fixed) fail("the hardware designs only run in fixed mode");
    if (!c.trace_path.empty() && c.command != Command::Simulate) fail("--trace applies to simulate only");
}

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate(config);
        switch (config.command) {
            case Command::Transform: return cmd_transform(config, out);
            case Command::Roundtrip: return cmd_roundtrip(config, out);
            case Command::Simulate: return cmd_simulate(config, out, err);
            case Command::Study: return cmd_study(config, out);
            case Command::Report: return cmd_report(config, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"CDF 9/7 lifting DWT: transforms, datapath simulation, rounding study, cost report", "dwt97"};
    CliConfig c;
    std::string command, octaves = "auto", mode = "fixed", coeffs = "binary", overflow = "halt";
    const std::map<std::string, Command> commands = {{"transform", Command::Transform},
                                                     {"roundtrip", Command::Roundtrip},
                                                     {"simulate", Command::Simulate},
                                                     {"study", Command::Study},
                                                     {"report", Command::Report}};
    app.add_option("command", command, "transform | roundtrip | simulate | study | report")
        ->required()
        ->check(CLI::IsMember({"transform", "roundtrip", "simulate", "study", "report"}));
    app.add_option("input", c.input_path, "input image (binary PGM)");
    app.add_option("--design", c.design, "datapath design 1..5")->check(CLI::Range(1, 5));
    app.add_option("--mode", mode, "float | fixed")->check(CLI::IsMember({"float", "fixed"}));
    app.add_option("--octaves", octaves, "octave count or 'auto'");
    app.add_option("--coeffs", coeffs, "binary | integer constant column")->check(CLI::IsMember({"binary", "integer"}));
    app.add_option("--seed", c.seed, "seed for generated inputs");
    app.add_option("--trace", c.trace_path, "per-cycle register trace (simulate)");
    app.add_option("--out", c.output_path, "output file");
    app.add_option("--overflow", overflow, "halt | record register range faults (simulate)")
        ->check(CLI::IsMember({"halt", "record"}));

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        if (!rev.empty()) rev.pop_back();
        app.parse(rev);
        if (octaves != "auto") {
            std::size_t used = 0;
            int n = 0;
            try {
                n = std::stoi(octaves, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != octaves.size()) throw CLI::ValidationError("--octaves", "expected a count or 'auto'");
            c.octaves = n;
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }
    c.command = commands.at(command);
    c.mode = mode == "float" ? Mode::Float : Mode::Fixed;
    c.coeff_variant = coeffs == "integer" ? CoeffVariant::IntegerColumn : CoeffVariant::BinaryColumn;
    c.overflow = overflow == "record" ? rtl::OverflowPolicy::Record : rtl::OverflowPolicy::Halt;
    return run(c, out, err);
}

}  // namespace dwt97::cli
