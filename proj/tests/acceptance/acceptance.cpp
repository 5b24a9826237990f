// Acceptance suite: one PASS/FAIL line per criterion.
//
//   dwt97_acceptance                 run all criteria
//   dwt97_acceptance --criterion N   run one

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "dwt97/adder.hpp"
#include "dwt97/cli.hpp"
#include "dwt97/dwt2d.hpp"
#include "dwt97/fixpoint.hpp"
#include "dwt97/lifting.hpp"
#include "dwt97/metrics.hpp"
#include "dwt97/pgm.hpp"
#include "dwt97/rtlsim.hpp"
#include "oracle/oracle.hpp"

using namespace dwt97;
using namespace dwt97::rtl;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v, int digits = 3) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << v;
    return os.str();
}

const std::string kCamera = DWT97_TEST_DATA "/camera_256.pgm";

Outcome coefficient_table_decodes(std::uint64_t) {
    const std::int32_t canonical[6] = {-406, -14, 226, 113, -315, 208};
    const auto table = coefficient_table();
    bool ok = table.size() == 6;
    std::ostringstream why;
    for (std::size_t i = 0; ok && i < 6; ++i) {
        const auto v = decode_binary_literal(table[i].binary_column);
        if (v != canonical[i] || canonical_coeffs().all()[i].scaled_int != canonical[i]) {
            ok = false;
            why << to_string(table[i].name) << " decodes to " << v << "; ";
        }
    }
    for (auto i : {0u, 1u, 2u, 5u}) {
        const auto r = round_to_q8(table[i].float_value);
        if (r != table[i].integer_column) {
            ok = false;
            why << to_string(table[i].name) << " rounds to " << r << "; ";
        }
    }
    return {ok, ok ? "binary column -> (-406, -14, 226, 113, -315, 208); alpha, beta, gamma, 1/k round to the integer column"
                   : why.str()};
}

Outcome shift_add_exact(std::uint64_t) {
    std::size_t cases = 0;
    for (const auto& c : canonical_coeffs().all()) {
        const auto plan = shift_add_plan(c);
        for (std::int64_t x = -1024; x <= 1024; ++x, ++cases)
            if (mul_const(x, plan) != x * c.scaled_int)
                return {false, std::string(to_string(c.name)) + " wrong at x = " + std::to_string(x)};
    }
    return {true, std::to_string(cases) + " products exact"};
}

Outcome ripple_adder_oracle(std::uint64_t seed) {
    const auto t0 = Clock::now();
    std::size_t cases = 0;
    for (int a = -128; a <= 127; ++a)
        for (int b = -128; b <= 127; ++b, ++cases)
            if (ripple_add(Word(a, 8), Word(b, 8)).value() != a + b)
                return {false, "8-bit mismatch at " + std::to_string(a) + " + " + std::to_string(b)};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> wd(9, kMaxWordWidth - 1);
    for (int i = 0; i < 100000; ++i, ++cases) {
        const int wa = wd(rng), wb = wd(rng);
        const auto a = std::uniform_int_distribution<std::int64_t>(-(std::int64_t{1} << (wa - 1)),
                                                                   (std::int64_t{1} << (wa - 1)) - 1)(rng);
        const auto b = std::uniform_int_distribution<std::int64_t>(-(std::int64_t{1} << (wb - 1)),
                                                                   (std::int64_t{1} << (wb - 1)) - 1)(rng);
        if (ripple_add(Word(a, wa), Word(b, wb)).value() != a + b)
            return {false, "wide mismatch at " + std::to_string(a) + " + " + std::to_string(b)};
    }
    const double s = seconds_since(t0);
    return {s < 10.0, std::to_string(cases) + " sums exact in " + fmt(s) + " s (limit 10 s)"};
}

Outcome cross_design_exact(std::uint64_t seed) {
    std::vector<PipelineModel> models;
    for (auto k : kAllDesigns) {
        models.push_back(build_design(k));
        // Uniform 8-bit signals leave the declared ranges (see criterion 5);
        // record instead of halting so the comparison covers every signal.
        models.back().set_overflow_policy(OverflowPolicy::Record);
    }
    const int want_latency[5] = {8, 8, 21, 8, 21};
    std::ostringstream lat;
    bool latency_ok = true;
    for (std::size_t i = 0; i < 5; ++i) {
        lat << (i ? "," : "") << models[i].latency();
        latency_ok = latency_ok && models[i].latency() == want_latency[i];
    }
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 10000; ++t) {
        const auto x64 = oracle::random_int8(rng, oracle::random_even_length(rng, 2, 64));
        const std::vector<std::int32_t> x(x64.begin(), x64.end());
        const auto ref = oracle::lifting_fixed(x64);
        const BandPair<std::int32_t> want{{ref.low.begin(), ref.low.end()}, {ref.high.begin(), ref.high.end()}};
        if (lifting_forward_fixed(x) != want) return {false, "combinational datapath differs on signal " + std::to_string(t)};
        for (auto& m : models)
            if (run_stream(m, x) != want)
                return {false, "design " + std::to_string(design_number(m.kind())) + " differs on signal " +
                                   std::to_string(t)};
    }
    return {latency_ok, "10000 signals identical across designs 1-5 and both oracles; latencies (" + lat.str() +
                            ") expected (8,8,21,8,21)"};
}

Outcome overflow_freedom(std::uint64_t seed) {
    const auto t0 = Clock::now();
    std::ostringstream detail;
    bool ok = true;
    for (auto k : kAllDesigns) {
        auto m = build_design(k);
        m.set_overflow_policy(OverflowPolicy::Record);
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> d(-128, 127);
        std::size_t faults = 0, internal = 0;
        std::map<SignalClass, std::int64_t> worst;
        const auto& regs = m.netlist().registers;
        for (int p = 0; p < 1000000; ++p) {
            m.step(InputPair{d(rng), d(rng)});
            for (const auto& e : m.overflow_events()) {
                const auto c = regs[static_cast<std::size_t>(e.register_index)].spec.signal;
                // Internal registers have derived ranges; they only leave them
                // downstream of an architectural fault.
                if (c == SignalClass::Internal) {
                    ++internal;
                    continue;
                }
                ++faults;
                worst[c] = std::max(worst[c], std::abs(e.value));
            }
            m.clear_overflow_events();
        }
        if (faults != 0) ok = false;
        detail << "design " << design_number(k) << ": " << faults << " faults";
        for (const auto& [c, v] : worst)
            detail << ", " << to_string(c) << " |max| " << v << " vs " << declared_range_for(c).max;
        detail << " (+" << internal << " internal); ";
    }
    const double s = seconds_since(t0);
    detail << fmt(s, 1) << " s (limit 60 s)";
    return {ok && s < 60.0, detail.str()};
}

Outcome float_reconstruction(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(-128.0, 128.0);
    double worst = 0;
    for (int t = 0; t < 1000; ++t) {
        std::vector<double> x(oracle::random_even_length(rng, 2, 64));
        for (auto& v : x) v = d(rng);
        const auto y = lifting_inverse(lifting_forward(x));
        double s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
        worst = std::max(worst, std::sqrt(s / static_cast<double>(x.size())));
    }
    for (std::size_t w = 8; w <= 64; w += 8)
        for (std::size_t h = 8; h <= 64; h += 8)
            for (int o = 1; o <= 3; ++o) {
                if (w % (std::size_t{1} << o) || h % (std::size_t{1} << o)) continue;
                Plane<double> img(w, h);
                for (auto& v : img.pixels) v = d(rng);
                const auto rec = inverse_multi_float(forward_multi_float(img, o));
                double s = 0;
                for (std::size_t i = 0; i < img.pixels.size(); ++i)
                    s += (img.pixels[i] - rec.pixels[i]) * (img.pixels[i] - rec.pixels[i]);
                worst = std::max(worst, std::sqrt(s / static_cast<double>(img.pixels.size())));
            }
    std::ostringstream os;
    os << "worst RMS " << worst << " (limit 1e-9)";
    return {worst < 1e-9, os.str()};
}

Outcome rounding_study(std::uint64_t) {
    const auto rows = rounding_error_study(read_pgm(kCamera));
    bool ok = rows.size() == 4;
    std::ostringstream os;
    for (const auto& r : rows) {
        os << r.method << " " << fmt(r.psnr_db) << " dB; ";
        ok = ok && r.psnr_db > 30.0;
    }
    const double gap = std::abs(rows[2].psnr_db - rows[3].psnr_db);
    os << "|lifting-float - lifting-fixed| = " << fmt(gap) << " dB (limit 0.5)";
    return {ok && gap < 0.5, os.str()};
}

Outcome cost_orderings(std::uint64_t) {
    const auto r = tradeoff_report();
    std::ostringstream os;
    bool ok = true;
    std::size_t min_i = 0, max_i = 0;
    for (std::size_t i = 1; i < r.size(); ++i) {
        if (r[i].le_estimate < r[min_i].le_estimate) min_i = i;
        if (r[i].le_estimate > r[max_i].le_estimate) max_i = i;
    }
    ok = ok && min_i == 1 && max_i == 4;
    const auto f = [&](int d) { return r[static_cast<std::size_t>(d - 1)].max_freq_proxy; };
    ok = ok && std::min(f(3), f(5)) > std::max(f(2), f(4)) && std::min(f(2), f(4)) > f(1);
    ok = ok && r[2].critical_path_adders == 1 && r[4].critical_path_adders == 1;
    os << "LE";
    for (const auto& d : r) os << " " << d.le_estimate;
    os << "; critical path";
    for (const auto& d : r) os << " " << d.critical_path_adders;
    return {ok, os.str()};
}

Outcome address_schedules(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> d(-128, 127);
    std::size_t checked = 0;
    for (std::size_t w = 4; w <= 64; w *= 2)
        for (std::size_t h = 4; h <= 64; h *= 2)
            for (int o = 1; o <= 3; ++o) {
                if (w % (std::size_t{1} << o) || h % (std::size_t{1} << o)) continue;
                const std::size_t aw = w >> (o - 1), ah = h >> (o - 1);
                std::set<std::size_t> region;
                for (std::size_t y = 0; y < ah; ++y)
                    for (std::size_t x = 0; x < aw; ++x) region.insert(y * w + x);
                for (auto pass : {Pass::Rows, Pass::Columns}) {
                    std::multiset<std::size_t> reads, writes;
                    for (const auto& t : address_schedule(w, h, o, pass)) {
                        reads.insert(t.reads.begin(), t.reads.end());
                        writes.insert(t.writes.begin(), t.writes.end());
                    }
                    const std::multiset<std::size_t> want(region.begin(), region.end());
                    if (reads != want || writes != want)
                        return {false, "schedule " + std::to_string(w) + "x" + std::to_string(h) + " octave " +
                                           std::to_string(o) + " is not a permutation"};
                    ++checked;
                }
                ImagePlane img(w, h);
                for (auto& v : img.pixels) v = d(rng);
                MemoryModel mem(w, h);
                mem.load(img);
                const auto r = replay_forward(mem, w, h, o);
                if (r.hazards != 0)
                    return {false, std::to_string(r.hazards) + " hazards at " + std::to_string(w) + "x" + std::to_string(h)};
                if (mem.cells() != forward_multi_fixed(img, o).data.pixels)
                    return {false, "in-place replay differs from the direct transform"};
            }
    return {true, std::to_string(checked) + " pass schedules are permutations; replays hazard free"};
}

Outcome cli_determinism(std::uint64_t seed) {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / ("dwt97_acceptance_" + std::to_string(seed));
    fs::create_directories(dir);
    const auto slurp = [](const fs::path& p) {
        std::ifstream f(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    };
    const std::string s = std::to_string(seed);
    const std::vector<std::vector<std::string>> commands = {
        {"dwt97", "transform", kCamera, "--mode", "fixed", "--seed", s, "--out"},
        {"dwt97", "transform", kCamera, "--mode", "float", "--octaves", "3", "--seed", s, "--out"},
        {"dwt97", "study", kCamera, "--seed", s, "--out"},
        {"dwt97", "report", "--seed", s, "--out"},
    };
    for (std::size_t c = 0; c < commands.size(); ++c) {
        std::string stdout_text[2], file_text[2];
        for (int run = 0; run < 2; ++run) {
            auto args = commands[c];
            const auto path = dir / ("out" + std::to_string(c) + "_" + std::to_string(run));
            args.push_back(path.string());
            std::ostringstream out, err;
            if (cli::main_entry(args, out, err) != 0) return {false, commands[c][1] + " failed: " + err.str()};
            stdout_text[run] = out.str();
            file_text[run] = slurp(path);
        }
        if (stdout_text[0] != stdout_text[1] || file_text[0] != file_text[1] || file_text[0].empty())
            return {false, commands[c][1] + " output differs between runs"};
    }
    fs::remove_all(dir);
    return {true, "transform (fixed, float), study and report byte-identical across two runs"};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    int only = 0;
    std::uint64_t seed = 2024;
    app.add_option("--criterion", only, "run one criterion (1-10)")->check(CLI::Range(1, 10));
    app.add_option("--seed", seed, "seed for randomized criteria");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome(std::uint64_t)>>> criteria = {
        {"coefficient table", coefficient_table_decodes},
        {"shift-add exactness", shift_add_exact},
        {"gate-level adder oracle", ripple_adder_oracle},
        {"cross-design bit-exactness", cross_design_exact},
        {"overflow freedom", overflow_freedom},
        {"float perfect reconstruction", float_reconstruction},
        {"rounding-error study", rounding_study},
        {"cost-model orderings", cost_orderings},
        {"address schedules", address_schedules},
        {"cli determinism", cli_determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int n = static_cast<int>(i) + 1;
        if (only != 0 && only != n) continue;
        Outcome o;
        try {
            o = criteria[i].second(seed);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << "criterion " << n << " [" << criteria[i].first << "]: " << (o.pass ? "PASS" : "FAIL") << " - "
                  << o.detail << std::endl;
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
