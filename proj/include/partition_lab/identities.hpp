#ifndef PARTITION_LAB_IDENTITIES_HPP
#define PARTITION_LAB_IDENTITIES_HPP

#include <string>
#include <vector>

#include "partition_lab/common.hpp"
#include "partition_lab/parallel.hpp"
#include "partition_lab/partitions.hpp"
#include "partition_lab/sieve.hpp"

namespace partition_lab {

// Each verifier computes the left side by direct per-argument partition
// counting (partitions.hpp) and the right side from sieve counting queries
// only; the two paths share no partition-counting code. The right sides are
// the closed forms the counting conventions were locked against; real-valued
// fractions inside them use floor semantics.

enum class IdentityId {
    goldbach_eq7,
    lemoine_eq15,
    chen_eq19,
    pi21_eq20,
    two_squares_eq44,
};

inline const char* identity_name(IdentityId id) {
    switch (id) {
        case IdentityId::goldbach_eq7: return "goldbach_eq7";
        case IdentityId::lemoine_eq15: return "lemoine_eq15";
        case IdentityId::chen_eq19: return "chen_eq19";
        case IdentityId::pi21_eq20: return "pi21_eq20";
        case IdentityId::two_squares_eq44: return "two_squares_eq44";
    }
    return "?";
}

/// Traceability anchor used in emitted table headers.
inline const char* identity_anchor(IdentityId id) {
    switch (id) {
        case IdentityId::goldbach_eq7: return "Eq.(7)";
        case IdentityId::lemoine_eq15: return "Eq.(15)";
        case IdentityId::chen_eq19: return "Eq.(19)";
        case IdentityId::pi21_eq20: return "Eq.(20)";
        case IdentityId::two_squares_eq44: return "Eq.(44)";
    }
    return "?";
}

struct IdentityReport {
    IdentityId id;
    u64 argument = 0;
    i64 lhs = 0;
    i64 rhs = 0;
    i64 difference = 0;  // lhs - rhs
    bool pass = false;
};

namespace detail {

inline IdentityReport make_report(IdentityId id, u64 arg, i64 lhs, i64 rhs) {
    IdentityReport r;
    r.id = id;
    r.argument = arg;
    r.lhs = lhs;
    r.rhs = rhs;
    r.difference = lhs - rhs;
    r.pass = (r.difference == 0);
    return r;
}

// rhs of the cumulative Goldbach identity at even x:
//   sum_{3<=p<=x/2} pi1(x-p) - C(pi1(x/2), 2)
inline i64 goldbach_rhs(const SieveTable& t, u64 x) {
    i64 rhs = 0;
    for (const u32 p : t.primes()) {
        if (u64{p} * 2 > x) break;
        if (p == 2) continue;
        rhs += static_cast<i64>(t.pi1(x - p));
    }
    return rhs - static_cast<i64>(choose2(t.pi1(x / 2)));
}

// rhs of the cumulative Lemoine-Levy identity at odd x:
//   sum_{3<=p<=(x+1)/2} pi((x-p)/2) + sum_{2<=q<=(x+1)/4} pi1(x-2q)
//   - pi1((x+1)/2) pi((x+1)/4)
// The un-doubled part ranges over odd primes; the doubled part may be 2.
inline i64 lemoine_rhs(const SieveTable& t, u64 x) {
    const u64 bound_p = (x + 1) / 2;
    const u64 bound_q = (x + 1) / 4;
    i64 rhs = 0;
    for (const u32 p : t.primes()) {
        if (p > bound_p) break;
        if (p == 2) continue;
        rhs += static_cast<i64>(t.pi((x - p) / 2));
    }
    for (const u32 q : t.primes()) {
        if (q > bound_q) break;
        rhs += static_cast<i64>(t.pi1(x - u64{q} * 2));
    }
    rhs -= static_cast<i64>(t.pi1(bound_p) * t.pi(bound_q));
    return rhs;
}

// rhs of the cumulative Chen identity at even x >= 4:
//   sum_{9<=q<=x/2, q odd semiprime} pi1(x-q)
//   + sum_{3<=p<=x/2, p prime} (pi1 + pi21)(x-p)
//   - pi1(x/2) (pi21(x/2) + (pi1(x/2)-1)/2) + pi(x/2-1) + 1
// The second sum counts complements among odd numbers with at most two
// prime factors; the trailing terms are the decompositions with an even
// part ({2, 2p} and {2, 2}).
inline i64 chen_rhs(const SieveTable& t, u64 x) {
    const u64 half = x / 2;
    i64 rhs = 0;
    t.for_each_odd_semiprime(9, half, [&](u64 q) {
        rhs += static_cast<i64>(t.pi1(x - q));
    });
    for (const u32 p : t.primes()) {
        if (p > half) break;
        if (p == 2) continue;
        rhs += static_cast<i64>(t.pi1(x - p) + t.pi21(x - p));
    }
    const i64 k1 = static_cast<i64>(t.pi1(half));
    const i64 k21 = static_cast<i64>(t.pi21(half));
    rhs -= k1 * k21 + k1 * (k1 - 1) / 2;
    rhs += static_cast<i64>(t.pi(half - 1)) + 1;
    return rhs;
}

// rhs of the odd-semiprime counting identity:
//   sum_{3<=p<=sqrt(x)} (pi(x/p) - pi(p) + 1)
inline i64 pi21_rhs(const SieveTable& t, u64 x) {
    const u64 root = isqrt(x);
    i64 rhs = 0;
    for (const u32 p : t.primes()) {
        if (p > root) break;
        if (p == 2) continue;
        rhs += static_cast<i64>(t.pi(x / p)) - static_cast<i64>(t.pi(p)) + 1;
    }
    return rhs;
}

// rhs of the two-squares cumulative identity at n = (x-1)/4:
//   sum_{1<=k<=r(n)} r(2n - k^2 + k) - C(r(n), 2),
// r(m) = nearest integer to sqrt(m+1) (never a tie).
inline i64 two_squares_rhs(u64 n) {
    const u64 r_n = nearest_sqrt_succ(n);
    i64 rhs = 0;
    for (u64 k = 1; k <= r_n; ++k)
        rhs += static_cast<i64>(nearest_sqrt_succ(2 * n - k * k + k));
    return rhs - static_cast<i64>(choose2(r_n));
}

}  // namespace detail

inline IdentityReport verify_goldbach_identity(const SieveTable& t, u64 x) {
    detail::check_even(x, "verify_goldbach_identity");
    detail::check_arg_range(t, x, 6, "verify_goldbach_identity");
    const CountSeries s = count_series(t, PartitionKind::goldbach(), 4, x);
    return detail::make_report(IdentityId::goldbach_eq7, x,
                               static_cast<i64>(s.cumulative_upto(x)),
                               detail::goldbach_rhs(t, x));
}

inline IdentityReport verify_lemoine_identity(const SieveTable& t, u64 x) {
    require(x % 2 == 1, "verify_lemoine_identity: argument must be odd");
    detail::check_arg_range(t, x, 9, "verify_lemoine_identity");
    const CountSeries s = count_series(t, PartitionKind::lemoine(), 1, x);
    return detail::make_report(IdentityId::lemoine_eq15, x,
                               static_cast<i64>(s.cumulative_upto(x)),
                               detail::lemoine_rhs(t, x));
}

inline IdentityReport verify_chen_identity(const SieveTable& t, u64 x) {
    detail::check_even(x, "verify_chen_identity");
    detail::check_arg_range(t, x, 4, "verify_chen_identity");
    const CountSeries s = count_series(t, PartitionKind::chen(), 4, x);
    return detail::make_report(IdentityId::chen_eq19, x,
                               static_cast<i64>(s.cumulative_upto(x)),
                               detail::chen_rhs(t, x));
}

inline IdentityReport verify_pi21_identity(const SieveTable& t, u64 x) {
    require(x >= 1, "verify_pi21_identity: argument must be >= 1");
    require_range(x <= t.limit(), "verify_pi21_identity: argument exceeds limit");
    return detail::make_report(IdentityId::pi21_eq20, x,
                               static_cast<i64>(t.pi21(x)),
                               detail::pi21_rhs(t, x));
}

inline IdentityReport verify_two_squares_identity(i64 n) {
    require(n >= 0, "verify_two_squares_identity: argument must be >= 0");
    const u64 un = static_cast<u64>(n);
    i64 lhs = 0;
    for (u64 i = 0; i <= un; ++i)
        lhs += static_cast<i64>(two_squares_q(4 * i + 1));
    return detail::make_report(IdentityId::two_squares_eq44, un, lhs,
                               detail::two_squares_rhs(un));
}

/// Sweeps an identity over every admissible argument of [from, to], reports
/// emitted in argument order. Verifying [a,b] then [b,c] yields the same
/// reports as [a,c]: each report depends on its argument only.
inline std::vector<IdentityReport> sweep_identity(const SieveTable& t,
                                                  IdentityId id, u64 from,
                                                  u64 to, unsigned threads = 1) {
    std::vector<IdentityReport> out;
    if (from > to) return out;

    auto run = [&](u64 first, u64 step, auto&& lhs_at, auto&& rhs_at) {
        if (first > to) return;
        const u64 n_args = (to - first) / step + 1;
        out.resize(static_cast<size_t>(n_args));
        parallel_chunks(n_args, 256, threads, [&](u64, u64 lo, u64 hi) {
            for (u64 i = lo; i < hi; ++i) {
                const u64 arg = first + step * i;
                out[static_cast<size_t>(i)] =
                    detail::make_report(id, arg, lhs_at(arg), rhs_at(arg));
            }
        });
    };

    switch (id) {
        case IdentityId::goldbach_eq7: {
            require_range(to <= t.limit(), "sweep exceeds sieve limit");
            const CountSeries s = count_series(t, PartitionKind::goldbach(), 4, to, threads);
            u64 first = std::max<u64>(from, 6);
            if (first % 2) ++first;
            run(first, 2,
                [&](u64 x) { return static_cast<i64>(s.cumulative_upto(x)); },
                [&](u64 x) { return detail::goldbach_rhs(t, x); });
            break;
        }
        case IdentityId::lemoine_eq15: {
            require_range(to <= t.limit(), "sweep exceeds sieve limit");
            const CountSeries s = count_series(t, PartitionKind::lemoine(), 1, to, threads);
            u64 first = std::max<u64>(from, 9);
            if (first % 2 == 0) ++first;
            run(first, 2,
                [&](u64 x) { return static_cast<i64>(s.cumulative_upto(x)); },
                [&](u64 x) { return detail::lemoine_rhs(t, x); });
            break;
        }
        case IdentityId::chen_eq19: {
            require_range(to <= t.limit(), "sweep exceeds sieve limit");
            const CountSeries s = count_series(t, PartitionKind::chen(), 4, to, threads);
            u64 first = std::max<u64>(from, 4);
            if (first % 2) ++first;
            run(first, 2,
                [&](u64 x) { return static_cast<i64>(s.cumulative_upto(x)); },
                [&](u64 x) { return detail::chen_rhs(t, x); });
            break;
        }
        case IdentityId::pi21_eq20: {
            require_range(to <= t.limit(), "sweep exceeds sieve limit");
            run(std::max<u64>(from, 1), 1,
                [&](u64 x) { return static_cast<i64>(t.pi21(x)); },
                [&](u64 x) { return detail::pi21_rhs(t, x); });
            break;
        }
        case IdentityId::two_squares_eq44: {
            // lhs is the running sum of q(4i+1); precompute it once.
            std::vector<i64> lhs(static_cast<size_t>(to) + 1);
            i64 acc = 0;
            for (u64 i = 0; i <= to; ++i) {
                acc += static_cast<i64>(two_squares_q(4 * i + 1));
                lhs[static_cast<size_t>(i)] = acc;
            }
            run(from, 1,
                [&](u64 n) { return lhs[static_cast<size_t>(n)]; },
                [&](u64 n) { return detail::two_squares_rhs(n); });
            break;
        }
    }
    return out;
}

/// Trajectory row of the GLR cumulative comparison: lhs = sum of nu(2i) up
/// to x, rhs = sum_{3<=p<=C ln^2(x) lnln(x)} pi1(x-p). The difference is
/// recorded, not gated: the two windows scale differently (per-argument vs
/// at-x), so only boundedness over x is of interest.
struct GlrGapRow {
    u64 x = 0;
    double glr_constant = 1.0;
    i64 lhs = 0;
    i64 rhs = 0;
    i64 difference = 0;
};

inline GlrGapRow glr_sum_gap(const SieveTable& t, u64 x, double c,
                             unsigned threads = 1) {
    detail::check_even(x, "glr_sum_gap");
    detail::check_arg_range(t, x, 16, "glr_sum_gap");
    require(c >= 0, "glr_sum_gap: constant C must be nonnegative");
    GlrGapRow row;
    row.x = x;
    row.glr_constant = c;

    const u64 n_args = (x - 6) / 2 + 1;
    row.lhs = parallel_reduce<i64>(
        n_args, 1024, threads, 0,
        [&](u64 i, i64& acc) {
            acc += static_cast<i64>(detail::glr_nu_raw(t, 6 + 2 * i, c));
        },
        [](i64& a, i64 b) { a += b; });

    const double w = glr_window(x, c);
    if (w >= 3) {
        const u64 bound = std::min<u64>(x - 3, static_cast<u64>(w));
        for (const u32 p : t.primes()) {
            if (p > bound) break;
            if (p == 2) continue;
            row.rhs += static_cast<i64>(t.pi1(x - p));
        }
    }
    row.difference = row.lhs - row.rhs;
    return row;
}

}  // namespace partition_lab

#endif
