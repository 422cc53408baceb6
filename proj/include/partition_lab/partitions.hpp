#ifndef PARTITION_LAB_PARTITIONS_HPP
#define PARTITION_LAB_PARTITIONS_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "partition_lab/common.hpp"
#include "partition_lab/parallel.hpp"
#include "partition_lab/sieve.hpp"

namespace partition_lab {

// Counting conventions, locked by sweeping every plausible variant against
// the exact cumulative identities (see identities.hpp and the resolution
// tests) and keeping the unique one with difference == 0 everywhere:
//
//   g(n)  unordered pairs of odd primes p <= q with p + q = n; g(4) == 0.
//   N2(n) ordered count: 2 g(n) - [n/2 prime], clamped at 0.
//   l(n)  pairs (p, q) of primes with p + 2q = n; q = 2 is admissible
//         (for odd n the un-doubled part p is odd automatically).
//   c(n)  unordered pairs {a, b} with a + b = n, a prime, b prime or
//         semiprime, where semiprimes are all products of two primes:
//         both odd (9, 15, 21, ...) and even (4, 6, 10, ... = 2p). For
//         even n this is g(n) + #{p odd prime: n - p odd semiprime}
//         + [ (n-2)/2 prime ] + [ n == 4 ].
//   q(n)  unordered 0 <= a <= b with a^2 + b^2 = n, for n = 1 (mod 4).
//   nu(n) Goldbach partitions whose least part is <= C ln^2(n) lnln(n).

enum class PartitionKindTag {
    goldbach_g,
    goldbach_ordered_n2,
    lemoine_l,
    chen_c,
    two_squares_q,
    glr_nu,
};

struct PartitionKind {
    PartitionKindTag tag = PartitionKindTag::goldbach_g;
    double glr_constant = 1.0;  // used by glr_nu only

    static PartitionKind goldbach() { return {PartitionKindTag::goldbach_g}; }
    static PartitionKind goldbach_ordered() {
        return {PartitionKindTag::goldbach_ordered_n2};
    }
    static PartitionKind lemoine() { return {PartitionKindTag::lemoine_l}; }
    static PartitionKind chen() { return {PartitionKindTag::chen_c}; }
    static PartitionKind two_squares() { return {PartitionKindTag::two_squares_q}; }
    static PartitionKind glr(double c) {
        return {PartitionKindTag::glr_nu, c};
    }

    /// Spacing between admissible arguments (2, except 4 for n = 1 mod 4).
    u64 step() const {
        return tag == PartitionKindTag::two_squares_q ? 4 : 2;
    }

    /// Least admissible argument.
    u64 min_argument() const {
        switch (tag) {
            case PartitionKindTag::goldbach_g:
            case PartitionKindTag::goldbach_ordered_n2:
            case PartitionKindTag::chen_c: return 4;
            case PartitionKindTag::lemoine_l:
            case PartitionKindTag::two_squares_q: return 1;
            case PartitionKindTag::glr_nu: return 16;
        }
        return 0;
    }

    bool admissible(u64 n) const {
        if (n < min_argument()) return false;
        switch (tag) {
            case PartitionKindTag::goldbach_g:
            case PartitionKindTag::goldbach_ordered_n2:
            case PartitionKindTag::chen_c:
            case PartitionKindTag::glr_nu: return n % 2 == 0;
            case PartitionKindTag::lemoine_l: return n % 2 == 1;
            case PartitionKindTag::two_squares_q: return n % 4 == 1;
        }
        return false;
    }

    const char* name() const {
        switch (tag) {
            case PartitionKindTag::goldbach_g: return "goldbach_g";
            case PartitionKindTag::goldbach_ordered_n2: return "goldbach_ordered_N2";
            case PartitionKindTag::lemoine_l: return "lemoine_l";
            case PartitionKindTag::chen_c: return "chen_c";
            case PartitionKindTag::two_squares_q: return "two_squares_q";
            case PartitionKindTag::glr_nu: return "glr_nu";
        }
        return "?";
    }
};

namespace detail {
inline void check_even(u64 n, const char* fn) {
    require(n % 2 == 0, std::string(fn) + ": argument must be even, got " +
                            std::to_string(n));
}
inline void check_arg_range(const SieveTable& t, u64 n, u64 min_n, const char* fn) {
    require(n >= min_n, std::string(fn) + ": argument must be >= " +
                            std::to_string(min_n));
    require_range(n <= t.limit(), std::string(fn) + ": argument " +
                                      std::to_string(n) +
                                      " exceeds sieve limit");
}
}  // namespace detail

/// g(n): unordered Goldbach partitions of even n into two odd primes.
inline u64 goldbach_g(const SieveTable& t, u64 n) {
    detail::check_even(n, "goldbach_g");
    detail::check_arg_range(t, n, 4, "goldbach_g");
    u64 cnt = 0;
    for (const u32 p : t.primes()) {
        if (u64{p} * 2 > n) break;
        if (p == 2) continue;
        if (t.is_odd_prime(n - p)) ++cnt;
    }
    return cnt;
}

/// N2(n): Goldbach partitions counted with order. Equals the direct
/// ordered-pair enumeration; the closed form 2 g(n) - [n/2 prime] is
/// clamped at 0 (it would read -1 at n = 4 under the odd-prime convention).
inline u64 goldbach_ordered_n2(const SieveTable& t, u64 n) {
    detail::check_even(n, "goldbach_ordered_N2");
    detail::check_arg_range(t, n, 4, "goldbach_ordered_N2");
    const u64 g = goldbach_g(t, n);
    const u64 twice = 2 * g;
    if (t.is_prime(n / 2)) return twice == 0 ? 0 : twice - 1;
    return twice;
}

/// l(n): Lemoine-Levy decompositions of odd n as p + 2q, p and q prime.
inline u64 lemoine_l(const SieveTable& t, u64 n) {
    require(n % 2 == 1, "lemoine_l: argument must be odd, got " + std::to_string(n));
    detail::check_arg_range(t, n, 1, "lemoine_l");
    u64 cnt = 0;
    for (const u32 q : t.primes()) {
        if (u64{q} * 2 >= n) break;
        if (t.is_prime(n - u64{q} * 2)) ++cnt;
    }
    return cnt;
}

/// c(n): Chen decompositions of even n into prime + (prime or semiprime).
inline u64 chen_c(const SieveTable& t, u64 n) {
    detail::check_even(n, "chen_c");
    detail::check_arg_range(t, n, 4, "chen_c");
    if (n == 4) return 1;  // {2, 2}
    u64 cnt = t.is_prime(n / 2 - 1) ? 1 : 0;  // {2, n-2} with n-2 = 2p
    for (const u32 p : t.primes()) {
        if (p >= n) break;
        if (p == 2) continue;
        const u64 r = n - p;
        if (u64{p} * 2 <= n && t.is_odd_prime(r)) ++cnt;  // odd prime pair, once
        if (t.is_odd_semiprime(r)) ++cnt;                 // odd prime + odd semiprime
    }
    return cnt;
}

/// q(n): representations of n = 1 (mod 4) as a^2 + b^2, 0 <= a <= b.
inline u64 two_squares_q(u64 n) {
    require(n % 4 == 1, "two_squares_q: argument must be 1 (mod 4), got " +
                            std::to_string(n));
    u64 cnt = 0;
    for (u64 a = 0; 2 * a * a <= n; ++a) {
        const u64 b2 = n - a * a;
        const u64 b = isqrt(b2);
        if (b * b == b2 && b >= a) ++cnt;
    }
    return cnt;
}

/// Least prime p with n - p prime, scanning p <= n/2. Absent only if no
/// Goldbach partition exists (never expected for even n >= 6).
inline std::optional<u64> least_partner_prime(const SieveTable& t, u64 n) {
    detail::check_even(n, "least_partner_prime");
    detail::check_arg_range(t, n, 6, "least_partner_prime");
    for (const u32 p : t.primes()) {
        if (u64{p} * 2 > n) break;
        if (t.is_prime(n - p)) return u64{p};
    }
    return std::nullopt;
}

/// Window C ln^2(n) lnln(n) of the least-part bound; negative below n = 16.
inline double glr_window(u64 n, double c) {
    const double ln = std::log(static_cast<double>(n));
    return c * ln * ln * std::log(ln);
}

namespace detail {
// nu(n) without the n >= 16 domain check; window clamped at 0 so the
// cumulative sums in identities can start from small arguments.
inline u64 glr_nu_raw(const SieveTable& t, u64 n, double c) {
    const double w = glr_window(n, c);
    if (w < 3) return 0;
    const u64 bound = std::min<u64>(n / 2, static_cast<u64>(w));
    u64 cnt = 0;
    for (const u32 p : t.primes()) {
        if (p > bound) break;
        if (p == 2) continue;
        if (t.is_odd_prime(n - p)) ++cnt;
    }
    return cnt;
}
}  // namespace detail

/// nu(n): Goldbach partitions of n whose least part is <= C ln^2(n) lnln(n).
inline u64 glr_nu(const SieveTable& t, u64 n, double c) {
    detail::check_even(n, "glr_nu");
    require(n >= 16, "glr_nu: argument must be >= 16 (lnln window undefined "
                     "or negative below)");
    detail::check_arg_range(t, n, 16, "glr_nu");
    require(c > 0, "glr_nu: constant C must be positive");
    return detail::glr_nu_raw(t, n, c);
}

/// Counts for one kind over every admissible argument of [start, end],
/// with running cumulative sums.
struct CountSeries {
    PartitionKind kind;
    u64 start = 0, end = 0;   // requested range (inclusive)
    u64 first = 0;            // first admissible argument, if any
    std::vector<u32> counts;
    std::vector<u64> cumulative;

    size_t size() const { return counts.size(); }
    bool empty() const { return counts.empty(); }
    u64 argument(size_t i) const { return first + kind.step() * i; }

    /// Sum of counts over admissible arguments <= x (0 below the first).
    u64 cumulative_upto(u64 x) const {
        if (empty() || x < first) return 0;
        size_t i = static_cast<size_t>((x - first) / kind.step());
        if (i >= size()) i = size() - 1;
        return cumulative[i];
    }
};

inline u64 count_partition(const SieveTable& t, PartitionKind kind, u64 n) {
    switch (kind.tag) {
        case PartitionKindTag::goldbach_g: return goldbach_g(t, n);
        case PartitionKindTag::goldbach_ordered_n2: return goldbach_ordered_n2(t, n);
        case PartitionKindTag::lemoine_l: return lemoine_l(t, n);
        case PartitionKindTag::chen_c: return chen_c(t, n);
        case PartitionKindTag::two_squares_q: return two_squares_q(n);
        case PartitionKindTag::glr_nu: return glr_nu(t, n, kind.glr_constant);
    }
    return 0;
}

/// Bulk driver. Arguments are filtered to the kind's residue class; an empty
/// admissible range yields an empty series. Parallel chunking is fixed, so
/// the result is identical for any worker count.
inline CountSeries count_series(const SieveTable& t, PartitionKind kind,
                                u64 start, u64 end, unsigned threads = 1) {
    require_range(end <= t.limit(), "count_series: range end exceeds sieve limit");
    CountSeries s;
    s.kind = kind;
    s.start = start;
    s.end = end;
    u64 first = std::max(start, kind.min_argument());
    const u64 step = kind.step();
    while (first <= end && !kind.admissible(first)) ++first;
    if (first > end) return s;
    s.first = first;
    const u64 n_args = (end - first) / step + 1;
    s.counts.assign(static_cast<size_t>(n_args), 0);

    constexpr u64 kChunk = 1024;
    parallel_chunks(n_args, kChunk, threads, [&](u64, u64 lo, u64 hi) {
        for (u64 i = lo; i < hi; ++i) {
            const u64 n = first + step * i;
            s.counts[static_cast<size_t>(i)] =
                static_cast<u32>(count_partition(t, kind, n));
        }
    });

    s.cumulative.resize(s.counts.size());
    u64 run = 0;
    for (size_t i = 0; i < s.counts.size(); ++i) {
        run += s.counts[i];
        s.cumulative[i] = run;
    }
    return s;
}

}  // namespace partition_lab

#endif
