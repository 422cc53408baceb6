// Brute-force oracles for the test suites. Everything here is deliberately
// independent of the library: its own bool-vector sieve, trial division,
// and pair enumeration, so an agreement is a genuine cross-check.
#ifndef PARTITION_LAB_TESTS_ORACLES_HPP
#define PARTITION_LAB_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

inline bool is_prime_trial(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// product of exactly two odd primes (squares allowed)
inline bool is_odd_semiprime_trial(u64 n) {
    if (n % 2 == 0 || n < 9) return false;
    for (u64 p = 3; p * p <= n; p += 2) {
        if (n % p) continue;
        return is_prime_trial(p) && is_prime_trial(n / p);
    }
    return false;  // prime or 1
}

// product of exactly two primes, even factors allowed
inline bool is_any_semiprime_trial(u64 n) {
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        return is_prime_trial(p) && is_prime_trial(n / p);
    }
    return false;
}

struct SimpleSieve {
    std::vector<char> prime;
    explicit SimpleSieve(u64 limit) : prime(limit + 1, 1) {
        prime[0] = 0;
        if (limit >= 1) prime[1] = 0;
        for (u64 i = 2; i * i <= limit; ++i)
            if (prime[i])
                for (u64 j = i * i; j <= limit; j += i) prime[j] = 0;
    }
    bool operator()(u64 n) const { return n < prime.size() && prime[n]; }
};

// unordered Goldbach partitions into odd primes
inline u64 goldbach_g(const SimpleSieve& s, u64 n) {
    u64 c = 0;
    for (u64 p = 3; 2 * p <= n; p += 2)
        if (s(p) && s(n - p) && (n - p) % 2 == 1) ++c;
    return c;
}

// ordered pairs of odd primes summing to n
inline u64 goldbach_n2_ordered(const SimpleSieve& s, u64 n) {
    u64 c = 0;
    for (u64 p = 3; p < n; p += 2)
        if (s(p) && s(n - p) && (n - p) % 2 == 1) ++c;
    return c;
}

// (p, q) prime pairs with p + 2q = n; q_any=false restricts q to odd primes
inline u64 lemoine_l(const SimpleSieve& s, u64 n, bool q_any = true) {
    u64 c = 0;
    for (u64 q = 2; 2 * q < n; ++q) {
        if (!s(q)) continue;
        if (!q_any && q == 2) continue;
        if (s(n - 2 * q)) ++c;
    }
    return c;
}

// unordered {a, b}, a + b = n, a prime, b prime-or-semiprime.
// full=true admits every semiprime (even ones); full=false restricts to odd
// parts only (the candidate convention rejected by the identity sweep).
inline u64 chen_c(const SimpleSieve& s, u64 n, bool full) {
    u64 c = 0;
    for (u64 a = 2; 2 * a <= n; ++a) {
        const u64 b = n - a;
        const bool a_p = s(a), b_p = s(b);
        const bool a_sp = full ? is_any_semiprime_trial(a) : is_odd_semiprime_trial(a);
        const bool b_sp = full ? is_any_semiprime_trial(b) : is_odd_semiprime_trial(b);
        if (!full && (a % 2 == 0 || b % 2 == 0)) continue;
        if ((a_p && (b_p || b_sp)) || (b_p && a_sp)) ++c;
    }
    return c;
}

// representations n = x^2 + y^2 with 0 <= x <= y
inline u64 two_squares_q(u64 n) {
    u64 c = 0;
    for (u64 x = 0; 2 * x * x <= n; ++x) {
        const u64 rest = n - x * x;
        const u64 y = static_cast<u64>(std::llround(std::sqrt(static_cast<double>(rest))));
        for (u64 yy : {y, y + 1, y > 0 ? y - 1 : 0})
            if (yy >= x && yy * yy == rest) { ++c; break; }
    }
    return c;
}

}  // namespace oracle

#endif
