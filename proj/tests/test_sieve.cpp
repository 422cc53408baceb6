#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <random>

#include "oracles.hpp"
#include "partition_lab/sieve.hpp"

using namespace partition_lab;

TEST_CASE("build_sieve small tables") {
    const SieveTable t100 = SieveTable::build(100);
    CHECK(t100.prime_count() == 25);
    CHECK(t100.pi(100) == 25);
    CHECK(t100.nth_prime(1) == 2);
    CHECK(t100.nth_prime(6) == 13);
    CHECK(t100.nth_prime(25) == 97);
    CHECK_THROWS_AS(t100.nth_prime(26), std::out_of_range);
    CHECK_THROWS_AS(t100.nth_prime(0), std::out_of_range);

    const SieveTable t10 = SieveTable::build(10);
    CHECK(t10.primes().size() == 4);
    CHECK(t10.nth_prime(4) == 7);
    // 9 = 3*3 is the least odd semiprime, and the only one up to 10
    CHECK(t10.count_upto(NumberClass::odd_semiprime, 10) == 1);
    CHECK(t10.count_upto(NumberClass::odd_semiprime, 9) == 1);
    CHECK(t10.count_upto(NumberClass::odd_semiprime, 8) == 0);
    CHECK(t10.is_odd_semiprime(9));
}

TEST_CASE("build_sieve rejects bad limits") {
    CHECK_THROWS_AS(SieveTable::build(9), std::invalid_argument);
    CHECK_THROWS_WITH(SieveTable::build(9),
                      Catch::Matchers::ContainsSubstring("at least 10"));
    SieveBuildOptions opt;
    opt.max_limit = 1000;
    CHECK_THROWS_WITH(SieveTable::build(2000, opt),
                      Catch::Matchers::ContainsSubstring("memory budget"));
}

TEST_CASE("count_upto matches trial division on random sample") {
    const u64 limit = 10000;
    const SieveTable t = SieveTable::build(limit);
    std::mt19937_64 rng(12345);  // fixed seed: reproducible sample
    std::uniform_int_distribution<u64> dist(0, limit);
    for (int i = 0; i < 100; ++i) {
        const u64 x = dist(rng);
        u64 primes = 0, odd_sp = 0;
        for (u64 n = 2; n <= x; ++n) {
            if (oracle::is_prime_trial(n)) ++primes;
            if (oracle::is_odd_semiprime_trial(n)) ++odd_sp;
        }
        CAPTURE(x);
        CHECK(t.count_upto(NumberClass::prime, x) == primes);
        CHECK(t.count_upto(NumberClass::odd_semiprime, x) == odd_sp);
        CHECK(t.count_upto(NumberClass::odd_prime, x) ==
              primes - (x >= 2 ? 1 : 0));
    }
}

TEST_CASE("count examples") {
    const SieveTable t = SieveTable::build(100);
    CHECK(t.count_upto(NumberClass::prime, 100) == 25);
    CHECK(t.count_upto(NumberClass::odd_prime, 10) == 3);
    CHECK(t.count_upto(NumberClass::odd_semiprime, 8) == 0);
    CHECK_THROWS_AS(t.count_upto(NumberClass::prime, 101), std::out_of_range);
}

TEST_CASE("class sums") {
    const SieveTable t = SieveTable::build(1000);
    CHECK(t.class_sum_upto(NumberClass::prime, 10) == 17);       // 2+3+5+7
    CHECK(t.class_sum_upto(NumberClass::odd_prime, 10) == 15);
    CHECK(t.class_sum_upto(NumberClass::odd_semiprime, 15) == 24);  // 9+15
    CHECK(t.class_sum_upto(NumberClass::prime, 1) == 0);
    CHECK_THROWS_AS(t.class_sum_upto(NumberClass::prime, 1001), std::out_of_range);
}

TEST_CASE("counts and sums are monotone in x") {
    const SieveTable t = SieveTable::build(5000);
    u64 prev_c = 0, prev_s = 0;
    for (u64 x = 0; x <= 5000; x += 7) {
        const u64 c = t.count_upto(NumberClass::odd_semiprime, x);
        const u64 s = t.class_sum_upto(NumberClass::odd_semiprime, x);
        CHECK(c >= prev_c);
        CHECK(s >= prev_s);
        prev_c = c;
        prev_s = s;
    }
}

TEST_CASE("rank index agrees with direct popcount scan") {
    const SieveTable t = SieveTable::build(200000);
    const auto& bits = t.prime_flags();
    u64 running = 0;
    for (u64 n = 0, next_check = 1; n <= 200000; ++n) {
        if (bits.test(n)) ++running;
        if (n == next_check) {
            REQUIRE(bits.rank(n) == running);
            next_check = next_check * 3 + 1;
        }
    }
    CHECK(bits.rank(200000) == t.prime_count());
}

TEST_CASE("construction is bit-identical across worker counts and segment sizes") {
    const u64 limit = 300000;
    const SieveTable a = SieveTable::build(limit, {.segment_size = 1 << 20, .threads = 1});
    const SieveTable b = SieveTable::build(limit, {.segment_size = 1 << 14, .threads = 2});
    const SieveTable c = SieveTable::build(limit, {.segment_size = 1 << 16, .threads = 8});
    CHECK(a.prime_flags() == b.prime_flags());
    CHECK(a.prime_flags() == c.prime_flags());
    CHECK(a.semiprime_flags() == b.semiprime_flags());
    CHECK(a.semiprime_flags() == c.semiprime_flags());
}

TEST_CASE("dusart audit is clean in range") {
    const SieveTable t = SieveTable::build(1'000'000, {.threads = 2});
    const auto rep = t.audit_dusart(355991, 1'000'000, 1000);
    CHECK(rep.pi_violations.empty());
    CHECK(rep.pn_violations.empty());
    CHECK(rep.pi_samples > 600);
    CHECK(rep.pn_samples == t.prime_count() - 5);
    CHECK(rep.clean());
}

TEST_CASE("dusart audit rejects out-of-validity ranges") {
    const SieveTable t = SieveTable::build(400000);
    CHECK_THROWS_AS(t.audit_dusart(100, 400000, 10), std::invalid_argument);
    CHECK_THROWS_AS(t.audit_dusart(355991, 500000, 10), std::out_of_range);
}

TEST_CASE("sieve cache round trip") {
    const std::string path = "plab_test_sieve.cache";
    const SieveTable t = SieveTable::build(50000, {.threads = 2});
    REQUIRE(t.save_cache(path));
    const auto loaded = SieveTable::load_cache(path);
    REQUIRE(loaded.has_value());
    CHECK(loaded->limit() == 50000);
    CHECK(loaded->prime_flags() == t.prime_flags());
    CHECK(loaded->semiprime_flags() == t.semiprime_flags());
    CHECK(loaded->pi(50000) == t.pi(50000));
    CHECK(loaded->pi21(50000) == t.pi21(50000));
    CHECK(loaded->nth_prime(100) == t.nth_prime(100));

    // corrupted magic is rejected
    {
        std::ofstream f(path, std::ios::binary | std::ios::in);
        f.seekp(0);
        f.write("XXXX", 4);
    }
    CHECK_FALSE(SieveTable::load_cache(path).has_value());
    std::remove(path.c_str());
    CHECK_FALSE(SieveTable::load_cache(path).has_value());
}
