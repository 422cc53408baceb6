#ifndef PARTITION_LAB_ASYMPTOTICS_HPP
#define PARTITION_LAB_ASYMPTOTICS_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "partition_lab/common.hpp"
#include "partition_lab/parallel.hpp"
#include "partition_lab/partitions.hpp"
#include "partition_lab/sieve.hpp"

namespace partition_lab {

// ---------------------------------------------------------------------------
// exact rationals (for the singular series; no floating point in its value)

struct Rational {
    u64 num = 0;
    u64 den = 1;

    static Rational of(u64 n, u64 d) {
        Rational r{n, d};
        r.reduce();
        return r;
    }
    void reduce() {
        const u64 g = std::gcd(num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }
    Rational& mul(u64 n, u64 d) {
        // cross-reduce first; our products stay far below 2^64
        u64 g1 = std::gcd(num, d), g2 = std::gcd(n, den);
        num = (num / g1) * (n / g2);
        den = (den / g2) * (d / g1);
        return *this;
    }
    Rational& add(const Rational& o) {
        const u64 l = den / std::gcd(den, o.den) * o.den;
        num = num * (l / den) + o.num * (l / o.den);
        den = l;
        reduce();
        return *this;
    }
    bool operator==(const Rational& o) const {
        return num == o.num && den == o.den;
    }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// S(n) = prod over distinct odd prime divisors p of n of (p-1)/(p-2),
/// exact. S = 1 exactly when n is a power of two; the value depends only
/// on the squarefree odd kernel of n.
struct SingularSeriesValue {
    u64 n = 0;
    Rational value;
};

inline SingularSeriesValue singular_series(u64 n) {
    require(n >= 2, "singular_series: argument must be >= 2");
    SingularSeriesValue s;
    s.n = n;
    s.value = Rational::of(1, 1);
    u64 m = n;
    while (m % 2 == 0) m /= 2;
    for (u64 p = 3; p * p <= m; p += 2) {
        if (m % p) continue;
        s.value.mul(p - 1, p - 2);
        while (m % p == 0) m /= p;
    }
    if (m > 1) s.value.mul(m - 1, m - 2);
    return s;
}

// ---------------------------------------------------------------------------
// twin constant

/// Truncated product over odd primes p <= prime_bound of p(p-2)/(p-1)^2,
/// with an elementary tail bound: the omitted log mass is below
/// (16/15) * sum_{m > B} 1/(m-1)^2 < (16/15)/(B-1). The true constant lies
/// in [value * exp(-log_tail_bound), value]; the value is strictly
/// decreasing in the bound.
struct TwinConstant {
    u64 prime_bound = 0;
    long double value = 1.0L;
    long double log_tail_bound = 0.0L;
    long double lower = 0.0L;
    long double upper = 1.0L;
};

inline TwinConstant twin_constant(const SieveTable& t, u64 prime_bound) {
    require(prime_bound >= 3, "twin_constant: prime bound must be >= 3");
    require_range(prime_bound <= t.limit(), "twin_constant: bound exceeds sieve");
    TwinConstant tc;
    tc.prime_bound = prime_bound;
    for (const u32 p : t.primes()) {
        if (p > prime_bound) break;
        if (p == 2) continue;
        const long double pl = static_cast<long double>(p);
        tc.value *= pl * (pl - 2) / ((pl - 1) * (pl - 1));
    }
    tc.log_tail_bound = (16.0L / 15.0L) / static_cast<long double>(prime_bound - 1);
    tc.lower = tc.value * std::exp(-tc.log_tail_bound);
    tc.upper = tc.value;
    return tc;
}

inline TwinConstant twin_constant(u64 prime_bound) {
    require(prime_bound >= 3, "twin_constant: prime bound must be >= 3");
    const SieveTable t = SieveTable::build(std::max<u64>(prime_bound, 10));
    return twin_constant(t, prime_bound);
}

// ---------------------------------------------------------------------------
// ratio tables

/// One convergence-table row: exact sum, predicted main term, their ratio.
struct AsymptoticSample {
    u64 x = 0;
    long double raw = 0.0L;
    long double main_term = 0.0L;
    long double ratio = 0.0L;
    bool valid = false;
    std::string note;
};

enum class SumRatioKind { goldbach_thm2, lemoine_thm3, chen_thm5 };
enum class LogSumRatioKind { goldbach_cor1, lemoine_cor2, chen_cor3 };
enum class HlConjecture { goldbach_conj2, lemoine_conj17, chen_conj33 };

inline const char* kind_name(SumRatioKind k) {
    switch (k) {
        case SumRatioKind::goldbach_thm2: return "goldbach_thm2";
        case SumRatioKind::lemoine_thm3: return "lemoine_thm3";
        case SumRatioKind::chen_thm5: return "chen_thm5";
    }
    return "?";
}
inline const char* kind_anchor(SumRatioKind k) {
    switch (k) {
        case SumRatioKind::goldbach_thm2: return "Eq.(11)";
        case SumRatioKind::lemoine_thm3: return "Eq.(16)";
        case SumRatioKind::chen_thm5: return "Eq.(32)";
    }
    return "?";
}
inline const char* kind_name(LogSumRatioKind k) {
    switch (k) {
        case LogSumRatioKind::goldbach_cor1: return "goldbach_cor1";
        case LogSumRatioKind::lemoine_cor2: return "lemoine_cor2";
        case LogSumRatioKind::chen_cor3: return "chen_cor3";
    }
    return "?";
}
inline const char* kind_anchor(LogSumRatioKind k) {
    switch (k) {
        case LogSumRatioKind::goldbach_cor1: return "Corollary 1";
        case LogSumRatioKind::lemoine_cor2: return "Corollary 2";
        case LogSumRatioKind::chen_cor3: return "Corollary 3";
    }
    return "?";
}
inline const char* kind_name(HlConjecture k) {
    switch (k) {
        case HlConjecture::goldbach_conj2: return "goldbach_conj2";
        case HlConjecture::lemoine_conj17: return "lemoine_conj17";
        case HlConjecture::chen_conj33: return "chen_conj33";
    }
    return "?";
}
inline const char* kind_anchor(HlConjecture k) {
    switch (k) {
        case HlConjecture::goldbach_conj2: return "Eq.(2) DIAGNOSTIC";
        case HlConjecture::lemoine_conj17: return "Eq.(17) DIAGNOSTIC";
        case HlConjecture::chen_conj33: return "Eq.(33) DIAGNOSTIC";
    }
    return "?";
}

namespace detail {

inline PartitionKind series_kind(SumRatioKind k) {
    switch (k) {
        case SumRatioKind::goldbach_thm2: return PartitionKind::goldbach();
        case SumRatioKind::lemoine_thm3: return PartitionKind::lemoine();
        case SumRatioKind::chen_thm5: return PartitionKind::chen();
    }
    return PartitionKind::goldbach();
}
inline PartitionKind series_kind(LogSumRatioKind k) {
    switch (k) {
        case LogSumRatioKind::goldbach_cor1: return PartitionKind::goldbach();
        case LogSumRatioKind::lemoine_cor2: return PartitionKind::lemoine();
        case LogSumRatioKind::chen_cor3: return PartitionKind::chen();
    }
    return PartitionKind::goldbach();
}

inline long double main_term(SumRatioKind k, u64 x) {
    const long double xl = static_cast<long double>(x);
    const long double lx = std::log(xl);
    switch (k) {
        case SumRatioKind::goldbach_thm2:
        case SumRatioKind::lemoine_thm3: return xl * xl / (4 * lx * lx);
        case SumRatioKind::chen_thm5:
            return xl * xl * std::log(lx) / (2 * lx * lx);
    }
    return 0;
}
inline long double main_term(LogSumRatioKind k, u64 x) {
    const long double xl = static_cast<long double>(x);
    const long double lx = std::log(xl);
    switch (k) {
        case LogSumRatioKind::goldbach_cor1:
        case LogSumRatioKind::lemoine_cor2: return xl * xl / (4 * lx);
        case LogSumRatioKind::chen_cor3: return xl * xl * std::log(lx) / (2 * lx);
    }
    return 0;
}

template <typename Kind, typename RawAt>
std::vector<AsymptoticSample> ratio_table(const SieveTable& t, Kind kind,
                                          std::span<const u64> xs,
                                          RawAt&& raw_at) {
    std::vector<AsymptoticSample> rows;
    rows.reserve(xs.size());
    std::vector<u64> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    for (const u64 x : sorted) {
        AsymptoticSample s;
        s.x = x;
        if (x > t.limit()) {
            s.note = "x exceeds sieve limit";
            rows.push_back(std::move(s));
            continue;
        }
        s.raw = raw_at(x);
        if (s.raw <= 0) {
            s.note = "empty sum";
            rows.push_back(std::move(s));
            continue;
        }
        s.main_term = main_term(kind, x);
        s.ratio = s.raw / s.main_term;
        s.valid = true;
        rows.push_back(std::move(s));
    }
    return rows;
}

}  // namespace detail

/// Cumulative-count convergence table: raw = sum of counts over admissible
/// arguments <= x, main term per the theorem. Rows are sorted by x;
/// out-of-range or empty-sum rows are marked, not fatal.
inline std::vector<AsymptoticSample> sum_ratio_table(const SieveTable& t,
                                                     SumRatioKind kind,
                                                     std::span<const u64> xs,
                                                     unsigned threads = 1) {
    u64 xmax = 0;
    for (const u64 x : xs)
        if (x <= t.limit()) xmax = std::max(xmax, x);
    const PartitionKind pk = detail::series_kind(kind);
    const CountSeries s = xmax >= pk.min_argument()
                              ? count_series(t, pk, pk.min_argument(), xmax, threads)
                              : CountSeries{};
    return detail::ratio_table(t, kind, xs, [&](u64 x) {
        return static_cast<long double>(s.cumulative_upto(x));
    });
}

/// Log-weighted convergence table: raw = sum over admissible k <= x of
/// count(k) * ln(k), accumulated in long double in a fixed order (so the
/// result is identical for any thread count).
inline std::vector<AsymptoticSample> log_sum_ratio_table(const SieveTable& t,
                                                         LogSumRatioKind kind,
                                                         std::span<const u64> xs,
                                                         unsigned threads = 1) {
    u64 xmax = 0;
    for (const u64 x : xs)
        if (x <= t.limit()) xmax = std::max(xmax, x);
    const PartitionKind pk = detail::series_kind(kind);
    CountSeries s;
    std::vector<long double> prefix;
    if (xmax >= pk.min_argument()) {
        s = count_series(t, pk, pk.min_argument(), xmax, threads);
        prefix.resize(s.size());
        long double acc = 0.0L;
        for (size_t i = 0; i < s.size(); ++i) {
            if (s.counts[i])
                acc += static_cast<long double>(s.counts[i]) *
                       std::log(static_cast<long double>(s.argument(i)));
            prefix[i] = acc;
        }
    }
    return detail::ratio_table(t, kind, xs, [&](u64 x) -> long double {
        if (s.empty() || x < s.first) return 0.0L;
        size_t i = static_cast<size_t>((x - s.first) / s.kind.step());
        if (i >= s.size()) i = s.size() - 1;
        return prefix[i];
    });
}

/// Hardy-Littlewood-type point diagnostic (probes a conjecture, not a
/// theorem): count(n) ln^2(n) / (n S(n)), resp. with an extra 1/lnln(n)
/// for the Chen kind. Conjectured limits: 2 C_tw, C_tw, 2 C_tw.
inline double hl_point_ratio(const SieveTable& t, HlConjecture kind, u64 n) {
    require(n >= 16, "hl_point_ratio: argument must be >= 16");
    const double s = singular_series(n).value.value();
    const double ln = std::log(static_cast<double>(n));
    switch (kind) {
        case HlConjecture::goldbach_conj2:
            return static_cast<double>(goldbach_ordered_n2(t, n)) * ln * ln /
                   (static_cast<double>(n) * s);
        case HlConjecture::lemoine_conj17:
            return static_cast<double>(lemoine_l(t, n)) * ln * ln /
                   (static_cast<double>(n) * s);
        case HlConjecture::chen_conj33:
            return static_cast<double>(chen_c(t, n)) * ln * ln /
                   (static_cast<double>(n) * std::log(ln) * s);
    }
    return 0;
}

/// Mean of hl_point_ratio over the admissible n in (from, to].
inline long double hl_window_mean(const SieveTable& t, HlConjecture kind,
                                  u64 from, u64 to, unsigned threads = 1) {
    const bool odd = (kind == HlConjecture::lemoine_conj17);
    u64 first = from + 1;
    if ((first % 2 == 0) == odd) ++first;
    require(first <= to, "hl_window_mean: empty window");
    const u64 n_args = (to - first) / 2 + 1;
    struct Acc { long double sum = 0.0L; u64 count = 0; };
    Acc total = parallel_reduce<Acc>(
        n_args, 512, threads, Acc{},
        [&](u64 i, Acc& a) {
            a.sum += static_cast<long double>(hl_point_ratio(t, kind, first + 2 * i));
            ++a.count;
        },
        [](Acc& a, const Acc& b) { a.sum += b.sum; a.count += b.count; });
    return total.sum / static_cast<long double>(total.count);
}

// ---------------------------------------------------------------------------
// singular series average

/// sum_{i=3}^{n} i * prod_{p|i, p odd} (1 + 1/(p-2)) against its main term
/// n^2 / (2 C_tw); the ratio tends to 1.
struct SingularSeriesAverage {
    u64 n = 0;
    long double sum = 0.0L;
    long double main_term = 0.0L;
    long double ratio = 0.0L;
};

inline SingularSeriesAverage average_singular_series_ratio(
    u64 n, u64 ctw_prime_bound = 2'000'000) {
    require(n >= 3, "average_singular_series_ratio: argument must be >= 3");
    SingularSeriesAverage out;
    out.n = n;

    const SieveTable t = SieveTable::build(std::max<u64>({n, ctw_prime_bound, 10}));
    std::vector<double> factor(n + 1, 1.0);
    for (const u32 p : t.primes()) {
        if (p == 2) continue;
        if (p > n) break;
        const double f = static_cast<double>(p - 1) / static_cast<double>(p - 2);
        for (u64 m = p; m <= n; m += p) factor[m] *= f;
    }
    long double acc = 0.0L;
    for (u64 i = 3; i <= n; ++i)
        acc += static_cast<long double>(i) * factor[i];
    out.sum = acc;

    const TwinConstant tc = twin_constant(t, ctw_prime_bound);
    out.main_term = static_cast<long double>(n) * static_cast<long double>(n) /
                    (2.0L * tc.value);
    out.ratio = out.sum / out.main_term;
    return out;
}

/// Cross-check of the two expansions of the per-term factor, in exact
/// rational arithmetic: the direct product over odd prime divisors of
/// (1 + 1/(p-2)) must equal the divisor sum of eta(d)/d*, where eta(d) = 1
/// exactly for odd squarefree d and d* = prod (p-2)^(alpha_p). Verified for
/// every i in [3, n]; false return pinpoints nothing (tests report i).
inline bool singular_series_expansion_agrees(u64 n) {
    require(n >= 3, "expansion check: argument must be >= 3");
    for (u64 i = 3; i <= n; ++i) {
        // direct product
        Rational direct = Rational::of(1, 1);
        u64 m = i;
        while (m % 2 == 0) m /= 2;
        for (u64 p = 3; p * p <= m; p += 2) {
            if (m % p) continue;
            direct.mul(p - 1, p - 2);
            while (m % p == 0) m /= p;
        }
        if (m > 1) direct.mul(m - 1, m - 2);

        // literal eta/d* divisor sum
        Rational sum = Rational::of(0, 1);
        std::vector<u64> divisors;
        for (u64 d = 1; d * d <= i; ++d) {
            if (i % d) continue;
            divisors.push_back(d);
            if (d != i / d) divisors.push_back(i / d);
        }
        for (const u64 d : divisors) {
            if (d % 2 == 0) continue;  // eta = 0
            u64 dstar = 1;
            u64 rest = d;
            bool squarefree = true;
            for (u64 p = 3; p * p <= rest; p += 2) {
                if (rest % p) continue;
                u64 alpha = 0;
                while (rest % p == 0) { rest /= p; ++alpha; }
                if (alpha > 1) squarefree = false;
                for (u64 a = 0; a < alpha; ++a) dstar *= (p - 2);
            }
            if (rest > 1) dstar *= (rest - 2);
            if (!squarefree) continue;  // eta = 0
            sum.add(Rational::of(1, dstar));
        }
        if (!(sum == direct)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// two squares average

/// Cumulative two-squares count against its main term (pi/16) x; the error
/// is O(sqrt x). raw is the exact integer lattice count.
inline AsymptoticSample two_squares_average_ratio(u64 x) {
    require(x % 4 == 1, "two_squares_average_ratio: x must be 1 (mod 4)");
    require(x >= 5, "two_squares_average_ratio: x must be >= 5");
    // sum_{i<=(x-1)/4} q(4i+1) = #{(a,b): 0 <= a < b, a+b odd, a^2+b^2 <= x}
    u64 raw = 0;
    for (u64 a = 0; 2 * a * a <= x; ++a) {
        const u64 bmax = isqrt(x - a * a);
        const u64 b0 = a + 1;  // opposite parity, so b > a
        if (b0 > bmax) continue;
        raw += (bmax - b0) / 2 + 1;
    }
    AsymptoticSample s;
    s.x = x;
    s.raw = static_cast<long double>(raw);
    s.main_term = std::numbers::pi_v<long double> / 16.0L *
                  static_cast<long double>(x);
    s.ratio = s.raw / s.main_term;
    s.valid = true;
    return s;
}

}  // namespace partition_lab

#endif
