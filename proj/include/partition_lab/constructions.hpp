#ifndef PARTITION_LAB_CONSTRUCTIONS_HPP
#define PARTITION_LAB_CONSTRUCTIONS_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "partition_lab/common.hpp"
#include "partition_lab/parallel.hpp"
#include "partition_lab/partitions.hpp"
#include "partition_lab/sieve.hpp"

namespace partition_lab {

// Forging prime-like sequences: remove chosen parts of the Goldbach
// partitions of the powers of two 2^k, k = 3..k_max, and study the counting
// function pi*(x) = pi(x) - #removed(x) of what is left. The greedy order is
// fixed: k ascending, small parts p ascending, remove the large part
// q = 2^k - p. Large parts of 2^k lie strictly inside (2^(k-1), 2^k), so
// removals for different k never collide.
//
//   glr_removal     removes q for every small part p inside the GLR window
//                   p <= C ln^2(2^k) lnln(2^k) with q prime.
//   a152451_style   removes the large part of every partition of 2^k not
//                   already removed.
//   a156284_style   economical: removes the large part only when the
//                   partition is not already broken (neither part removed),
//                   one removal per still-unbroken partition.

enum class ForgeVariant { glr_removal, a152451_style, a156284_style };

inline const char* variant_name(ForgeVariant v) {
    switch (v) {
        case ForgeVariant::glr_removal: return "glr_removal";
        case ForgeVariant::a152451_style: return "a152451_style";
        case ForgeVariant::a156284_style: return "a156284_style";
    }
    return "?";
}

struct ConstructionLog {
    ForgeVariant variant = ForgeVariant::glr_removal;
    int k_min = 3, k_max = 3;
    double glr_constant = 1.0;
    u64 coverage_limit = 0;                    // 2^k_max
    std::vector<std::vector<u64>> removed_per_k;  // index k - k_min, ascending
    std::vector<u64> removed_sorted;           // union, ascending

    /// #removed primes <= x == pi(x) - pi*(x).
    u64 deficit_at(u64 x) const {
        return static_cast<u64>(std::upper_bound(removed_sorted.begin(),
                                                 removed_sorted.end(), x) -
                                removed_sorted.begin());
    }
    bool contains(u64 p) const {
        return std::binary_search(removed_sorted.begin(), removed_sorted.end(), p);
    }
};

/// Runs the removal construction for k in [3, k_max]. Sequential by design:
/// the greedy depends on prior removals. Deterministic for fixed inputs.
inline ConstructionLog forge_sequence(const SieveTable& t, ForgeVariant variant,
                                      int k_max, double c = 1.0) {
    require(k_max >= 3, "forge_sequence: k_max must be >= 3");
    require((u64{1} << k_max) <= t.limit(),
            "forge_sequence: 2^k_max exceeds sieve limit");
    require(c > 0, "forge_sequence: constant C must be positive");

    ConstructionLog log;
    log.variant = variant;
    log.k_max = k_max;
    log.glr_constant = c;
    log.coverage_limit = u64{1} << k_max;

    std::vector<char> removed_flag(static_cast<size_t>(log.coverage_limit) + 1, 0);
    for (int k = 3; k <= k_max; ++k) {
        const u64 n = u64{1} << k;
        std::vector<u64> removed_k;
        const double window =
            variant == ForgeVariant::glr_removal ? glr_window(n, c) : 0.0;
        for (const u32 p : t.primes()) {
            if (u64{p} * 2 > n) break;
            if (p == 2) continue;
            const u64 q = n - p;
            if (!t.is_odd_prime(q)) continue;
            switch (variant) {
                case ForgeVariant::glr_removal:
                    if (p > window) continue;
                    break;
                case ForgeVariant::a152451_style:
                    break;
                case ForgeVariant::a156284_style:
                    if (removed_flag[p] || removed_flag[q]) continue;  // broken
                    break;
            }
            if (removed_flag[q]) continue;
            removed_flag[q] = 1;
            removed_k.push_back(q);
        }
        std::sort(removed_k.begin(), removed_k.end());
        log.removed_per_k.push_back(std::move(removed_k));
    }
    for (const auto& ks : log.removed_per_k)
        log.removed_sorted.insert(log.removed_sorted.end(), ks.begin(), ks.end());
    std::sort(log.removed_sorted.begin(), log.removed_sorted.end());
    return log;
}

/// (x, deficit, ln^3(x) lnln(x), deficit / bound): the ratio trajectory is
/// the empirical probe of the removed-mass bound.
struct DeficitRow {
    u64 x = 0;
    u64 deficit = 0;
    long double bound = 0.0L;
    long double ratio = 0.0L;
};

inline DeficitRow deficit_vs_bound(const ConstructionLog& log, u64 x) {
    require_range(x <= log.coverage_limit,
                  "deficit_vs_bound: x beyond construction coverage");
    DeficitRow row;
    row.x = x;
    row.deficit = log.deficit_at(x);
    const long double lx = std::log(static_cast<long double>(x));
    row.bound = lx * lx * lx * std::log(lx);
    row.ratio = row.bound > 0 ? row.deficit / row.bound : 0.0L;
    return row;
}

/// Even n <= x_max whose every Goldbach partition (or, in glr_mode, every
/// GLR partition) lost a part to the removed set. Only n that had at least
/// one partition before removal are reported, so an empty removed set gives
/// an empty list. Powers of two are expected members by construction.
inline std::vector<u64> goldbach_breakage_scan(const SieveTable& t,
                                               const ConstructionLog& log,
                                               u64 x_max, bool glr_mode = false,
                                               unsigned threads = 1) {
    require_range(x_max <= t.limit(), "breakage scan exceeds sieve limit");
    require_range(x_max <= log.coverage_limit,
                  "breakage scan beyond construction coverage");
    if (x_max < 6) return {};
    const u64 n_args = (x_max - 6) / 2 + 1;
    std::vector<char> broken(static_cast<size_t>(n_args), 0);
    parallel_chunks(n_args, 2048, threads, [&](u64, u64 lo, u64 hi) {
        for (u64 i = lo; i < hi; ++i) {
            const u64 n = 6 + 2 * i;
            const double window = glr_mode ? glr_window(n, log.glr_constant) : 0.0;
            bool any = false, survives = false;
            for (const u32 p : t.primes()) {
                if (u64{p} * 2 > n) break;
                if (p == 2) continue;
                if (glr_mode && p > window) break;
                const u64 q = n - p;
                if (!t.is_odd_prime(q)) continue;
                any = true;
                if (!log.contains(p) && !log.contains(q)) {
                    survives = true;
                    break;
                }
            }
            broken[static_cast<size_t>(i)] = any && !survives;
        }
    });
    std::vector<u64> out;
    for (u64 i = 0; i < n_args; ++i)
        if (broken[static_cast<size_t>(i)]) out.push_back(6 + 2 * i);
    return out;
}

/// Empirical constant of the least-partner-prime bound: max over even
/// n in [16, x_max] of p(n) / (ln^2(n) lnln(n)), with the attaining n.
struct GlrConstantEstimate {
    double c_hat = 0.0;
    u64 argmax_n = 0;
    u64 p_at_argmax = 0;
};

inline GlrConstantEstimate glr_constant_estimate(const SieveTable& t, u64 x_max,
                                                 unsigned threads = 1) {
    detail::check_even(x_max, "glr_constant_estimate");
    detail::check_arg_range(t, x_max, 16, "glr_constant_estimate");
    const u64 n_args = (x_max - 16) / 2 + 1;
    GlrConstantEstimate best = parallel_reduce<GlrConstantEstimate>(
        n_args, 4096, threads, GlrConstantEstimate{},
        [&](u64 i, GlrConstantEstimate& acc) {
            const u64 n = 16 + 2 * i;
            const auto p = least_partner_prime(t, n);
            if (!p) return;  // Goldbach counterexample; never expected
            const double v = static_cast<double>(*p) / glr_window(n, 1.0);
            if (v > acc.c_hat) acc = {v, n, *p};
        },
        [](GlrConstantEstimate& a, const GlrConstantEstimate& b) {
            if (b.c_hat > a.c_hat) a = b;
        });
    return best;
}

}  // namespace partition_lab

#endif
