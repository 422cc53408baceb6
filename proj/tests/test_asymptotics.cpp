#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "partition_lab/asymptotics.hpp"
#include "partition_lab/identities.hpp"

using namespace partition_lab;

namespace {
const SieveTable& table() {
    static const SieveTable t = SieveTable::build(20000, {.threads = 2});
    return t;
}
}  // namespace

TEST_CASE("twin constant: values, monotonicity, interval nesting") {
    CHECK(twin_constant(3).value == 0.75L);  // single factor 3*1/4
    CHECK_THROWS_AS(twin_constant(2), std::invalid_argument);

    const TwinConstant a = twin_constant(100);
    const TwinConstant b = twin_constant(10000);
    const TwinConstant c = twin_constant(100000);
    CHECK(a.value > b.value);
    CHECK(b.value > c.value);
    // each reported interval contains every later (more precise) value
    CHECK(b.value >= a.lower);
    CHECK(b.value <= a.upper);
    CHECK(c.value >= b.lower);
    CHECK(c.value <= b.upper);
    CHECK_THAT(static_cast<double>(c.value),
               Catch::Matchers::WithinAbs(0.6601624, 1e-6));
}

TEST_CASE("singular series: exact rationals") {
    CHECK(singular_series(2).value == Rational::of(1, 1));
    CHECK(singular_series(15).value == Rational::of(8, 3));
    CHECK(singular_series(9).value == Rational::of(2, 1));
    CHECK_THROWS_AS(singular_series(1), std::invalid_argument);

    for (u64 k = 1; k <= 20; ++k)  // powers of two: empty product
        CHECK(singular_series(u64{1} << k).value == Rational::of(1, 1));

    // depends only on the squarefree odd kernel
    CHECK(singular_series(45).value == singular_series(15).value);
    CHECK(singular_series(2 * 2 * 3 * 3 * 7).value == singular_series(21).value);

    for (u64 n = 2; n <= 500; ++n) {
        const Rational v = singular_series(n).value;
        CHECK(v.num >= v.den);  // value >= 1
    }
}

TEST_CASE("singular series expansion cross-check is exact to 1000") {
    CHECK(singular_series_expansion_agrees(1000));
}

TEST_CASE("average singular series ratio") {
    const SingularSeriesAverage three = average_singular_series_ratio(3, 1000);
    CHECK(three.sum == 6.0L);  // single term 3 * 2
    CHECK(three.ratio == three.sum / three.main_term);

    const SingularSeriesAverage big = average_singular_series_ratio(100000, 1'000'000);
    CHECK_THAT(static_cast<double>(big.ratio),
               Catch::Matchers::WithinAbs(1.0, 0.01));
    CHECK_THROWS_AS(average_singular_series_ratio(2), std::invalid_argument);
}

TEST_CASE("sum ratio tables: raw values, markers, main terms") {
    const auto& t = table();
    const std::vector<u64> xs = {4, 20, 10000, 30000};
    const auto rows = sum_ratio_table(t, SumRatioKind::goldbach_thm2, xs, 2);
    REQUIRE(rows.size() == 4);

    CHECK_FALSE(rows[0].valid);  // raw = 0 below the first partition
    CHECK(rows[0].note == "empty sum");
    CHECK_FALSE(rows[3].valid);  // beyond the sieve
    CHECK(rows[3].note == "x exceeds sieve limit");

    // raw at 20: g(6..20) = 1,1,2,1,2,2,2,2
    CHECK(rows[1].valid);
    CHECK(rows[1].raw == 13.0L);
    const long double x = 20.0L;
    CHECK(rows[1].main_term == x * x / (4 * std::log(x) * std::log(x)));
    CHECK(rows[1].ratio == rows[1].raw / rows[1].main_term);

    // lemoine and chen tables accept the same (even) bounds: the raw value
    // is a cumulative sum over admissible arguments <= x
    const std::vector<u64> one = {10000};
    const auto lem = sum_ratio_table(t, SumRatioKind::lemoine_thm3, one, 2);
    REQUIRE(lem.size() == 1);
    const oracle::SimpleSieve s(10000);
    u64 expect = 0;
    for (u64 n = 1; n <= 10000; n += 2) expect += oracle::lemoine_l(s, n);
    CHECK(lem[0].raw == static_cast<long double>(expect));
}

TEST_CASE("log sum ratio table: exact pair-enumeration agreement at 20") {
    const auto& t = table();
    const std::vector<u64> xs = {6, 20};
    const auto rows = log_sum_ratio_table(t, LogSumRatioKind::goldbach_cor1, xs, 2);
    REQUIRE(rows.size() == 2);
    // single partition 3+3 at x = 6
    CHECK(rows[0].raw == std::log(6.0L));

    // direct pair enumeration, grouped by argument in ascending order
    const oracle::SimpleSieve s(20);
    long double expect = 0.0L;
    for (u64 n = 6; n <= 20; n += 2) {
        const u64 g = oracle::goldbach_g(s, n);
        if (g) expect += static_cast<long double>(g) * std::log(static_cast<long double>(n));
    }
    CHECK(rows[1].raw == expect);  // bitwise: same addends, same order

    const long double x = 20.0L;
    CHECK(rows[1].main_term == x * x / (4 * std::log(x)));
}

TEST_CASE("ratio tables are bitwise identical across worker counts") {
    const auto& t = table();
    const std::vector<u64> xs = {100, 2000, 20000};
    const auto a = sum_ratio_table(t, SumRatioKind::chen_thm5, xs, 1);
    const auto b = sum_ratio_table(t, SumRatioKind::chen_thm5, xs, 2);
    const auto c = sum_ratio_table(t, SumRatioKind::chen_thm5, xs, 8);
    const auto la = log_sum_ratio_table(t, LogSumRatioKind::chen_cor3, xs, 1);
    const auto lb = log_sum_ratio_table(t, LogSumRatioKind::chen_cor3, xs, 8);
    for (size_t i = 0; i < xs.size(); ++i) {
        REQUIRE(a[i].raw == b[i].raw);
        REQUIRE(a[i].raw == c[i].raw);
        REQUIRE(a[i].ratio == c[i].ratio);
        REQUIRE(la[i].raw == lb[i].raw);
        REQUIRE(la[i].ratio == lb[i].ratio);
    }
}

TEST_CASE("hl point ratio") {
    const auto& t = table();
    // N2(100) = 12, S(100) = 4/3
    const double expect = 12.0 * std::pow(std::log(100.0), 2) / (100.0 * 4.0 / 3.0);
    CHECK_THAT(hl_point_ratio(t, HlConjecture::goldbach_conj2, 100),
               Catch::Matchers::WithinRel(expect, 1e-12));
    CHECK(singular_series(1024).value == Rational::of(1, 1));
    CHECK_THROWS_AS(hl_point_ratio(t, HlConjecture::goldbach_conj2, 10),
                    std::invalid_argument);

    const long double mean =
        hl_window_mean(t, HlConjecture::goldbach_conj2, 1000, 2000, 2);
    CHECK(mean > 0.5L);
    CHECK(mean < 4.0L);
    // deterministic across thread counts
    CHECK(mean == hl_window_mean(t, HlConjecture::goldbach_conj2, 1000, 2000, 8));
}

TEST_CASE("two squares average") {
    const AsymptoticSample five = two_squares_average_ratio(5);
    CHECK(five.raw == 2.0L);  // q(1) + q(5)
    CHECK_THROWS_AS(two_squares_average_ratio(7), std::invalid_argument);

    const AsymptoticSample big = two_squares_average_ratio(1'000'001);
    CHECK(big.raw == 196595.0L);
    CHECK(std::fabs(static_cast<double>(big.ratio) - 1.0) <= 0.005);

    // cross-check the lattice count against the per-argument oracle sums
    u64 direct = 0;
    for (u64 i = 0; i <= (10001 - 1) / 4; ++i)
        direct += oracle::two_squares_q(4 * i + 1);
    CHECK(two_squares_average_ratio(10001).raw == static_cast<long double>(direct));

    // the identity right side is an alternative route to the same raw value
    const IdentityReport id = verify_two_squares_identity((10001 - 1) / 4);
    CHECK(id.rhs == static_cast<i64>(direct));
}
