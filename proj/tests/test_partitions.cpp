#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "partition_lab/partitions.hpp"

using namespace partition_lab;

namespace {
const SieveTable& table() {
    static const SieveTable t = SieveTable::build(20000, {.threads = 2});
    return t;
}
}  // namespace

TEST_CASE("goldbach_g point values") {
    const auto& t = table();
    CHECK(goldbach_g(t, 6) == 1);    // 3+3
    CHECK(goldbach_g(t, 10) == 2);   // 3+7, 5+5
    CHECK(goldbach_g(t, 4) == 0);    // odd-prime convention: 2+2 excluded
    CHECK(goldbach_g(t, 100) == 6);
    CHECK_THROWS_AS(goldbach_g(t, 7), std::invalid_argument);
    CHECK_THROWS_AS(goldbach_g(t, 20002), std::out_of_range);
}

TEST_CASE("goldbach symmetry: scanning the upper half gives the same count") {
    const auto& t = table();
    for (u64 n = 4; n <= 3000; n += 2) {
        u64 upper = 0;  // scan q >= n/2 with n-q odd prime
        for (u64 q = n / 2; q < n; ++q)
            if (t.is_odd_prime(q) && n - q >= 3 && t.is_odd_prime(n - q)) ++upper;
        CAPTURE(n);
        REQUIRE(goldbach_g(t, n) == upper);
    }
}

TEST_CASE("goldbach_ordered_N2 equals direct ordered enumeration") {
    const auto& t = table();
    CHECK(goldbach_ordered_n2(t, 10) == 3);  // (3,7),(5,5),(7,3)
    CHECK(goldbach_ordered_n2(t, 16) == 4);
    CHECK(goldbach_ordered_n2(t, 4) == 0);   // clamped; 2 is prime but g = 0
    const oracle::SimpleSieve s(10000);
    for (u64 n = 4; n <= 10000; n += 2) {
        CAPTURE(n);
        REQUIRE(goldbach_ordered_n2(t, n) == oracle::goldbach_n2_ordered(s, n));
    }
}

TEST_CASE("N2 closed form in terms of g holds from 6 upward") {
    const auto& t = table();
    for (u64 n = 6; n <= 5000; n += 2) {
        const u64 expect = 2 * goldbach_g(t, n) - (t.is_prime(n / 2) ? 1 : 0);
        REQUIRE(goldbach_ordered_n2(t, n) == expect);
    }
}

TEST_CASE("lemoine_l point values (doubled part may be 2)") {
    const auto& t = table();
    CHECK(lemoine_l(t, 7) == 1);   // 3 + 2*2
    CHECK(lemoine_l(t, 9) == 2);   // 5 + 2*2, 3 + 2*3
    CHECK(lemoine_l(t, 1) == 0);
    CHECK(lemoine_l(t, 5) == 0);
    CHECK_THROWS_AS(lemoine_l(t, 8), std::invalid_argument);
    const oracle::SimpleSieve s(5000);
    for (u64 n = 1; n <= 5000; n += 2)
        REQUIRE(lemoine_l(t, n) == oracle::lemoine_l(s, n));
}

TEST_CASE("chen_c point values under the identity-resolved convention") {
    const auto& t = table();
    // semiprime complements include the even ones: c(6) counts {3,3} and
    // {2,4}; c(12) counts {5,7}, {3,9} and {2,10}.
    CHECK(chen_c(t, 4) == 1);    // {2,2}
    CHECK(chen_c(t, 6) == 2);
    CHECK(chen_c(t, 12) == 3);
    CHECK(chen_c(t, 14) == 3);   // {3,11}, {7,7}, {5,9}; 12 is not semiprime
    CHECK_THROWS_AS(chen_c(t, 9), std::invalid_argument);
    const oracle::SimpleSieve s(3000);
    for (u64 n = 4; n <= 3000; n += 2) {
        CAPTURE(n);
        REQUIRE(chen_c(t, n) == oracle::chen_c(s, n, /*full=*/true));
    }
}

TEST_CASE("chen dominates goldbach; glr is dominated by goldbach") {
    const auto& t = table();
    for (u64 n = 16; n <= 4000; n += 2) {
        CAPTURE(n);
        REQUIRE(chen_c(t, n) >= goldbach_g(t, n));
        REQUIRE(glr_nu(t, n, 1.0) <= goldbach_g(t, n));
        REQUIRE(glr_nu(t, n, 0.5) <= glr_nu(t, n, 2.0));
    }
}

TEST_CASE("two_squares_q point values and dedup property") {
    CHECK(two_squares_q(1) == 1);     // 0^2 + 1^2
    CHECK(two_squares_q(25) == 2);    // 3^2+4^2, 0^2+5^2
    CHECK(two_squares_q(21) == 0);
    CHECK(two_squares_q(5) == 1);
    CHECK_THROWS_AS(two_squares_q(3), std::invalid_argument);
    for (u64 n = 1; n <= 10000; n += 4) {
        // halving the ordered count with the diagonal correction must agree
        // with the unordered count (a == b cannot occur for n = 1 mod 4)
        u64 ordered = 0, diagonal = 0;
        for (u64 a = 0; a * a <= n; ++a) {
            const u64 b2 = n - a * a;
            const u64 b = isqrt(b2);
            if (b * b == b2) {
                ++ordered;
                if (a == b) ++diagonal;
            }
        }
        CAPTURE(n);
        REQUIRE(diagonal == 0);
        REQUIRE(two_squares_q(n) == (ordered + diagonal) / 2);
        REQUIRE(two_squares_q(n) == oracle::two_squares_q(n));
    }
}

TEST_CASE("least_partner_prime") {
    const auto& t = table();
    REQUIRE(least_partner_prime(t, 6) == 3u);
    REQUIRE(least_partner_prime(t, 8) == 3u);
    REQUIRE(least_partner_prime(t, 98) == 19u);
    CHECK_THROWS_AS(least_partner_prime(t, 9), std::invalid_argument);
}

TEST_CASE("glr_nu window behaviour") {
    const auto& t = table();
    CHECK(glr_nu(t, 100, 10.0) == goldbach_g(t, 100));  // window exceeds n/2
    CHECK_THROWS_AS(glr_nu(t, 14, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(glr_nu(t, 101, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(glr_nu(t, 100, 0.0), std::invalid_argument);
    // direct window enumeration
    for (u64 n : {1000ull, 5000ull, 10000ull}) {
        const double w = glr_window(n, 1.0);
        u64 direct = 0;
        for (u64 p = 3; p <= std::min<u64>(n / 2, static_cast<u64>(w)); p += 2)
            if (t.is_prime(p) && t.is_odd_prime(n - p)) ++direct;
        REQUIRE(glr_nu(t, n, 1.0) == direct);
    }
}

TEST_CASE("count_series examples and invariants") {
    const auto& t = table();
    const CountSeries g = count_series(t, PartitionKind::goldbach(), 4, 12);
    REQUIRE(g.size() == 5);
    CHECK(g.first == 4);
    CHECK(g.counts == std::vector<u32>{0, 1, 1, 2, 1});
    CHECK(g.cumulative == std::vector<u64>{0, 1, 2, 4, 5});

    const CountSeries q = count_series(t, PartitionKind::two_squares(), 1, 13);
    REQUIRE(q.size() == 4);
    CHECK(q.counts == std::vector<u32>{1, 1, 1, 1});
    CHECK(q.argument(3) == 13);

    const CountSeries empty = count_series(t, PartitionKind::goldbach(), 5, 3);
    CHECK(empty.empty());
    const CountSeries none = count_series(t, PartitionKind::glr(1.0), 4, 10);
    CHECK(none.empty());

    // final cumulative equals the sum of counts
    const CountSeries c = count_series(t, PartitionKind::chen(), 4, 500);
    u64 sum = 0;
    for (const u32 v : c.counts) sum += v;
    CHECK(c.cumulative.back() == sum);
    CHECK(c.cumulative_upto(3) == 0);
    CHECK(c.cumulative_upto(501) == sum);  // odd x falls back to the last even
}

TEST_CASE("count_series identical for 1, 2 and 8 workers") {
    const auto& t = table();
    for (const PartitionKind kind :
         {PartitionKind::goldbach(), PartitionKind::lemoine(),
          PartitionKind::chen(), PartitionKind::two_squares()}) {
        const CountSeries s1 = count_series(t, kind, 1, 6000, 1);
        const CountSeries s2 = count_series(t, kind, 1, 6000, 2);
        const CountSeries s8 = count_series(t, kind, 1, 6000, 8);
        CAPTURE(kind.name());
        REQUIRE(s1.counts == s2.counts);
        REQUIRE(s1.counts == s8.counts);
        REQUIRE(s1.cumulative == s8.cumulative);
    }
}

TEST_CASE("series counts match point functions") {
    const auto& t = table();
    const CountSeries l = count_series(t, PartitionKind::lemoine(), 1, 999, 2);
    for (size_t i = 0; i < l.size(); i += 17)
        REQUIRE(l.counts[i] == lemoine_l(t, l.argument(i)));
}
