#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "dwt97/cli.hpp"
#include "dwt97/pgm.hpp"

using namespace dwt97;
namespace fs = std::filesystem;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

struct Run {
    int status;
    std::string out, err;
};

Run cli_run(std::vector<std::string> args) {
    args.insert(args.begin(), "dwt97");
    std::ostringstream out, err;
    const int s = cli::main_entry(args, out, err);
    return {s, out.str(), err.str()};
}

fs::path scratch_dir() {
    const auto p = fs::temp_directory_path() / "dwt97_cli_test";
    fs::create_directories(p);
    return p;
}

const std::string kCamera = DWT97_TEST_DATA "/camera_256.pgm";

}  // namespace

TEST_CASE("parse a minimal PGM") {
    std::string f = "P5 4 4 255\n" + std::string(16, '\x80');
    const auto img = parse_pgm(bytes_of(f));
    CHECK(img.plane.width == 4);
    CHECK(img.plane.height == 4);
    CHECK(img.maxval == 255);
    for (int v : img.plane.pixels) CHECK(v == 0);
}

TEST_CASE("PGM header comments and whitespace") {
    std::string f = "P5\n# made by hand\n2 # width\n1\n255\n\x01\xff";
    const auto img = parse_pgm(bytes_of(f));
    CHECK(img.plane.pixels == std::vector<std::int32_t>{-127, 127});
}

TEST_CASE("PGM errors carry byte offsets") {
    CHECK_THROWS_AS(parse_pgm(bytes_of("P2 1 1 255\n0")), ParseError);
    try {
        parse_pgm(bytes_of("P5 4 4 255\n" + std::string(10, '\0')));
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("missing 6 of 16 bytes") != std::string::npos);
        CHECK(e.offset() == 21);
    }
    try {
        parse_pgm(bytes_of("P5 1 1 65535\n\0\0"));
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("unsupported depth") != std::string::npos);
        CHECK(e.offset() == 6);
    }
    CHECK_THROWS_AS(parse_pgm(bytes_of("P5 x 1 255\n\0")), ParseError);
    CHECK_THROWS_AS(parse_pgm(bytes_of("P5 1 1 100\n\xff")), ParseError);
    CHECK_THROWS_AS(parse_pgm(bytes_of("P5 1 1 0\n\0")), ParseError);
}

TEST_CASE("PGM encode and decode round trip byte for byte") {
    const auto original = slurp(kCamera);
    const auto img = parse_pgm(bytes_of(original));
    const auto back = encode_pgm(img.plane, img.maxval);
    CHECK(std::string(back.begin(), back.end()) == original);
    const std::string small("P5\n3 1\n100\n\x00\x32\x64", 14);
    const auto s = parse_pgm(bytes_of(small));
    const auto e = encode_pgm(s.plane, s.maxval);
    CHECK(std::string(e.begin(), e.end()) == small);
    CHECK_THROWS_AS(encode_pgm(ImagePlane(1, 1, 200)), RangeError);
}

TEST_CASE("config validation") {
    cli::CliConfig c;
    c.command = cli::Command::Transform;
    CHECK_THROWS_AS(cli::validate(c), std::invalid_argument);
    c.input_path = "x.pgm";
    CHECK_THROWS_AS(cli::validate(c), std::invalid_argument);
    c.output_path = "y.bin";
    CHECK_NOTHROW(cli::validate(c));
    c.trace_path = "t.txt";
    CHECK_THROWS_AS(cli::validate(c), std::invalid_argument);
    cli::CliConfig s;
    s.command = cli::Command::Simulate;
    s.mode = Mode::Float;
    CHECK_THROWS_AS(cli::validate(s), std::invalid_argument);
    s.mode = Mode::Fixed;
    s.design = 6;
    CHECK_THROWS_AS(cli::validate(s), std::invalid_argument);
}

TEST_CASE("cli report and simulate") {
    const auto r = cli_run({"report"});
    CHECK(r.status == 0);
    CHECK(r.out.find("behavioral-shift-add") != std::string::npos);
    const auto s = cli_run({"simulate", "--design", "3", "--seed", "5"});
    CHECK(s.status == 0);
    CHECK(s.out.find("latency=21\n") != std::string::npos);
    CHECK(s.out.find("oracle=match\n") != std::string::npos);
    const auto s1 = cli_run({"simulate", "--design", "1"});
    CHECK(s1.out.find("latency=8\n") != std::string::npos);
}

TEST_CASE("cli simulate writes a trace") {
    const auto dir = scratch_dir();
    const auto trace = dir / "trace.txt";
    const auto s = cli_run({"simulate", "--design", "2", "--trace", trace.string()});
    CHECK(s.status == 0);
    const auto text = slurp(trace);
    CHECK(text.rfind("# row 0\ncycle=0\t", 0) == 0);
}

TEST_CASE("cli transform, roundtrip and study") {
    const auto dir = scratch_dir();
    const auto dump = dir / "c.bin";
    auto t = cli_run({"transform", kCamera, "--out", dump.string(), "--octaves", "2"});
    REQUIRE(t.status == 0);
    CHECK(fs::file_size(dump) == 16 + 256 * 256 * 2);

    auto rt = cli_run({"roundtrip", kCamera, "--mode", "float", "--out", (dir / "r.pgm").string()});
    CHECK(rt.status == 0);
    CHECK(rt.out.find("psnr_db=inf") != std::string::npos);
    CHECK(slurp(dir / "r.pgm") == slurp(kCamera));

    auto st = cli_run({"study", kCamera, "--out", (dir / "s.kv").string()});
    CHECK(st.status == 0);
    CHECK(st.out.find("fir-integer") != std::string::npos);
    CHECK(slurp(dir / "s.kv").find("study.lifting-fixed.psnr_db=") != std::string::npos);
}

TEST_CASE("cli failures are one-line diagnostics with nonzero status") {
    auto a = cli_run({"transform", "/nonexistent.pgm", "--out", "/tmp/x"});
    CHECK(a.status != 0);
    CHECK(a.err.rfind("error: ", 0) == 0);
    CHECK(std::count(a.err.begin(), a.err.end(), '\n') == 1);
    CHECK(cli_run({"frobnicate"}).status != 0);
    CHECK(cli_run({"report", "--octaves", "two"}).status != 0);
    CHECK(cli_run({"simulate", "--design", "9"}).status != 0);
    CHECK(cli_run({"simulate", "--mode", "float"}).status != 0);
}
