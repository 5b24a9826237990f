#include <doctest.h>

#include <cmath>
#include <random>

#include "dwt97/metrics.hpp"
#include "dwt97/pgm.hpp"

using namespace dwt97;

namespace {

ImagePlane camera() { return read_pgm(DWT97_TEST_DATA "/camera_256.pgm"); }

}  // namespace

TEST_CASE("psnr reference values") {
    const ImagePlane a(8, 8, 0);
    const auto same = psnr(a, a);
    CHECK(same.mse == 0.0);
    CHECK(std::isinf(same.psnr_db));
    CHECK(psnr(ImagePlane(4, 4, -128), ImagePlane(4, 4, 127)).psnr_db == doctest::Approx(0.0));
    const auto one = psnr(ImagePlane(4, 4, 10), ImagePlane(4, 4, 11));
    CHECK(one.mse == 1.0);
    CHECK(one.psnr_db == doctest::Approx(48.13).epsilon(0.0002));
    CHECK(one.psnr_db == doctest::Approx(10.0 * std::log10(65025.0)));
    CHECK_THROWS_AS(psnr(ImagePlane(4, 4), ImagePlane(4, 2)), ShapeError);
    CHECK_THROWS_AS(psnr(ImagePlane(2, 2, 200), ImagePlane(2, 2)), RangeError);
}

TEST_CASE("psnr is symmetric, permutation invariant and monotone") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> d(-128, 127);
    ImagePlane a(16, 16), b(16, 16);
    for (auto& v : a.pixels) v = d(rng);
    for (std::size_t i = 0; i < a.pixels.size(); ++i) b.pixels[i] = std::clamp(a.pixels[i] + d(rng) / 16, -128, 127);
    CHECK(psnr(a, b).psnr_db == psnr(b, a).psnr_db);
    auto pa = a, pb = b;
    std::reverse(pa.pixels.begin(), pa.pixels.end());
    std::reverse(pb.pixels.begin(), pb.pixels.end());
    CHECK(psnr(pa, pb).mse == doctest::Approx(psnr(a, b).mse));
    auto worse = b;
    worse.pixels[3] = worse.pixels[3] > 0 ? worse.pixels[3] - 50 : worse.pixels[3] + 50;
    if (std::abs(worse.pixels[3] - a.pixels[3]) > std::abs(b.pixels[3] - a.pixels[3]))
        CHECK(psnr(a, worse).psnr_db < psnr(a, b).psnr_db);
    auto err = a;
    err.pixels[0] = a.pixels[0] == 127 ? 126 : a.pixels[0] + 1;
    CHECK(psnr(a, err).psnr_db < psnr(a, a).psnr_db);
}

TEST_CASE("study rows on a zero tile are lossless") {
    const auto rows = rounding_error_study(ImagePlane(16, 16));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].method == kStudyFirFloat);
    CHECK(rows[1].method == kStudyFirInteger);
    CHECK(rows[2].method == kStudyLiftingFloat);
    CHECK(rows[3].method == kStudyLiftingFixed);
    for (const auto& r : rows) CHECK(std::isinf(r.psnr_db));
}

TEST_CASE("study on the camera tile") {
    const auto tile = camera();
    const auto rows = rounding_error_study(tile);
    REQUIRE(rows.size() == 4);
    // FIR and lifting in real arithmetic are the same transform.
    CHECK(rows[0].mse == doctest::Approx(rows[2].mse).epsilon(1e-3));
    for (const auto& r : rows) CHECK(r.psnr_db > 30.0);
    const auto again = rounding_error_study(tile);
    for (std::size_t i = 0; i < 4; ++i) CHECK(again[i].mse == rows[i].mse);
    const auto text = render_study_table(rows);
    CHECK(text.find("lifting-fixed") != std::string::npos);
    CHECK(render_study_key_values(rows).find("study.lifting-float.psnr_db=") != std::string::npos);
}

TEST_CASE("adder and register costs") {
    CHECK(adder_cost(8, false) == 8);
    CHECK(adder_cost(8, true) == 16);
    CHECK_THROWS_AS(adder_cost(0, false), RangeError);
}

TEST_CASE("cost model orderings") {
    const auto r = tradeoff_report();
    REQUIRE(r.size() == 5);
    const auto le = [&](int d) { return r[static_cast<std::size_t>(d - 1)].le_estimate; };
    for (int d : {1, 3, 4, 5}) CHECK(le(2) < le(d));
    for (int d : {1, 2, 3, 4}) CHECK(le(5) > le(d));
    CHECK(le(4) > le(2));
    CHECK(le(5) > le(3));
    const auto f = [&](int d) { return r[static_cast<std::size_t>(d - 1)].max_freq_proxy; };
    CHECK(f(3) == f(5));
    CHECK(f(2) == f(4));
    CHECK(f(5) > f(4));
    CHECK(f(4) > f(1));
    for (int d : {3, 5}) CHECK(r[static_cast<std::size_t>(d - 1)].critical_path_adders == 1);
    CHECK(r[1].critical_path_adders >= 6);
    const int stages[5] = {8, 8, 21, 8, 21};
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(r[i].stage_count == stages[i]);
        CHECK(static_cast<int>(r[i].adders_by_stage.size()) == stages[i]);
        int sum = 0;
        for (int a : r[i].adders_by_stage) sum += a;
        CHECK(sum == r[i].adder_count);
    }
    for (std::size_t i = 1; i < 5; ++i) CHECK(r[i].adder_count == 29);
    CHECK(r[2].adders_by_stage == std::vector<int>{1, 2, 1, 1, 1, 1, 2, 2, 1, 1, 1, 2, 1, 1, 1, 2, 1, 1, 3, 2, 1});
}

TEST_CASE("report rendering") {
    const auto r = tradeoff_report();
    const auto table = render_report_table(r);
    CHECK(std::count(table.begin(), table.end(), '\n') == 6);
    const auto kv = render_report_key_values(r);
    CHECK(kv.find("design3.stage_count=21\n") != std::string::npos);
    CHECK(kv.find("design2.critical_path_adders=7\n") != std::string::npos);
    CHECK(kv == render_report_key_values(tradeoff_report()));
}
