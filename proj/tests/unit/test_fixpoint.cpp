#include <doctest.h>

#include <algorithm>
#include <random>

#include "dwt97/errors.hpp"
#include "dwt97/fixpoint.hpp"
#include "oracle/oracle.hpp"

using namespace dwt97;

TEST_CASE("binary column decodes to the canonical constants") {
    const std::int32_t expected[6] = {-406, -14, 226, 113, -315, 208};
    const auto table = coefficient_table();
    REQUIRE(table.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(decode_binary_literal(table[i].binary_column) == expected[i]);
        CHECK(canonical_coeffs().all()[i].scaled_int == expected[i]);
    }
}

TEST_CASE("integer column differs from the binary column only for delta and -k") {
    const auto a = canonical_coeffs();
    const auto b = integer_column_coeffs();
    CHECK(b[CoeffName::Delta].scaled_int == 114);
    CHECK(b[CoeffName::NegK].scaled_int == -314);
    for (auto n : {CoeffName::Alpha, CoeffName::Beta, CoeffName::Gamma, CoeffName::InvK})
        CHECK(a[n].scaled_int == b[n].scaled_int);
    CHECK(coeffs_for(CoeffVariant::BinaryColumn) == a);
    CHECK(coeffs_for(CoeffVariant::IntegerColumn) == b);
}

TEST_CASE("round_to_q8 of the float column") {
    const auto t = coefficient_table();
    CHECK(round_to_q8(t[0].float_value) == -406);
    CHECK(round_to_q8(t[1].float_value) == -14);
    CHECK(round_to_q8(t[2].float_value) == 226);
    CHECK(round_to_q8(t[3].float_value) == 114);  // 113.54
    CHECK(round_to_q8(t[4].float_value) == -315);  // -314.92
    CHECK(round_to_q8(t[5].float_value) == 208);
    for (auto i : {0, 1, 2, 5}) CHECK(round_to_q8(t[static_cast<std::size_t>(i)].float_value) == t[static_cast<std::size_t>(i)].integer_column);
}

TEST_CASE("round_to_q8 rounds half away from zero and rejects |x| >= 2") {
    CHECK(round_to_q8(0.5 / 256) == 1);
    CHECK(round_to_q8(-0.5 / 256) == -1);
    CHECK(round_to_q8(1.99) == 509);
    CHECK_THROWS_AS(round_to_q8(2.0), RangeError);
    CHECK_THROWS_AS(round_to_q8(-2.5), RangeError);
}

TEST_CASE("two's-complement helpers") {
    CHECK(decode_twos_complement(0x3FF, 10) == -1);
    CHECK(decode_twos_complement(0x200, 10) == -512);
    CHECK(decode_twos_complement(0x1FF, 10) == 511);
    CHECK_THROWS_AS(decode_twos_complement(0, 0), RangeError);
    CHECK(decode_binary_literal("0101") == 5);
    CHECK(decode_binary_literal("1.1") == -1);
    CHECK_THROWS_AS(decode_binary_literal("10.2"), RangeError);
    CHECK(fits_twos_complement(511, 10));
    CHECK_FALSE(fits_twos_complement(512, 10));
    CHECK(fits_twos_complement(-512, 10));
    CHECK_FALSE(fits_twos_complement(-513, 10));
    for (const auto& c : canonical_coeffs().all()) CHECK(decode_twos_complement(c.encoding(), c.bit_width) == c.scaled_int);
}

TEST_CASE("coefficient set validates order and width") {
    auto all = canonical_coeffs().all();
    std::swap(all[0], all[1]);
    CHECK_THROWS_AS(CoeffSet(all, CoeffVariant::BinaryColumn), RangeError);
    all = canonical_coeffs().all();
    all[2].scaled_int = 600;
    CHECK_THROWS_AS(CoeffSet(all, CoeffVariant::BinaryColumn), RangeError);
}

namespace {
std::vector<std::pair<int, int>> terms_of(const ShiftAddPlan& p) {
    std::vector<std::pair<int, int>> out;
    for (const auto& t : p.terms) out.emplace_back(t.shift, t.sign);
    std::sort(out.begin(), out.end());
    return out;
}
}  // namespace

TEST_CASE("shift-add plans have one term per set bit") {
    const auto c = canonical_coeffs();
    using V = std::vector<std::pair<int, int>>;
    CHECK(terms_of(shift_add_plan(c[CoeffName::Alpha])) == V{{1, 1}, {3, 1}, {5, 1}, {6, 1}, {9, -1}});
    CHECK(terms_of(shift_add_plan(c[CoeffName::Beta])) == V{{1, 1}, {4, 1}, {5, 1}, {6, 1}, {7, 1}, {8, 1}, {9, -1}});
    CHECK(terms_of(shift_add_plan(c[CoeffName::Gamma])) == V{{1, 1}, {5, 1}, {6, 1}, {7, 1}});
    CHECK(terms_of(shift_add_plan(c[CoeffName::Delta])) == V{{0, 1}, {4, 1}, {5, 1}, {6, 1}});
    CHECK(terms_of(shift_add_plan(c[CoeffName::NegK])) == V{{0, 1}, {2, 1}, {6, 1}, {7, 1}, {9, -1}});
    CHECK(terms_of(shift_add_plan(c[CoeffName::InvK])) == V{{4, 1}, {6, 1}, {7, 1}});
    for (const auto& k : c.all()) {
        const auto p = shift_add_plan(k);
        CHECK(p.value() == k.scaled_int);
        CHECK(p.encode() == k.encoding());
    }
}

TEST_CASE("mul_const equals multiplication over the operand range") {
    for (const auto& set : {canonical_coeffs(), integer_column_coeffs()})
        for (const auto& k : set.all()) {
            const auto p = shift_add_plan(k);
            for (std::int64_t x = -1024; x <= 1024; ++x) REQUIRE(mul_const(x, p) == x * k.scaled_int);
        }
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> d(-(std::int64_t{1} << 40), std::int64_t{1} << 40);
    const auto p = shift_add_plan(canonical_coeffs()[CoeffName::Alpha]);
    for (int i = 0; i < 10000; ++i) {
        const auto x = d(rng);
        REQUIRE(mul_const(x, p) == x * -406);
    }
    CHECK_THROWS_AS(mul_const(std::int64_t{1} << 53, p), RangeError);
}

TEST_CASE("scale_q8 is floor division by 256") {
    for (std::int64_t x = -70000; x <= 70000; ++x) REQUIRE(scale_q8(x) == oracle::floor_div256(x));
    static_assert(scale_q8(-1) == -1);
    static_assert(scale_q8(255) == 0);
}
