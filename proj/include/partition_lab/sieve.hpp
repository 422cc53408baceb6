#ifndef PARTITION_LAB_SIEVE_HPP
#define PARTITION_LAB_SIEVE_HPP

#include <algorithm>
#include <bit>
#include <cfloat>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "partition_lab/common.hpp"
#include "partition_lab/parallel.hpp"

namespace partition_lab {

/// Bit array over [0, nbits) with a two-level rank index:
/// cumulative counts per 2^16-bit superblock plus 16-bit offsets per
/// 512-bit subblock. rank() is a handful of loads and popcounts.
class RankBitset {
public:
    RankBitset() = default;
    explicit RankBitset(u64 nbits)
        : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    void set(u64 i) { words_[i >> 6] |= u64{1} << (i & 63); }
    bool test(u64 i) const {
        return (words_[i >> 6] >> (i & 63)) & 1;
    }
    u64 size_bits() const { return nbits_; }

    /// Rebuilds the rank index; call once after all set() calls.
    void finalize() {
        const u64 n_super = (words_.size() + kWordsPerSuper - 1) / kWordsPerSuper;
        super_.assign(n_super + 1, 0);
        sub_.assign((words_.size() + kWordsPerSub - 1) / kWordsPerSub, 0);
        u64 total = 0;
        for (u64 s = 0; s < n_super; ++s) {
            super_[s] = total;
            u64 in_super = 0;
            const u64 w0 = s * kWordsPerSuper;
            const u64 w1 = std::min<u64>(words_.size(), w0 + kWordsPerSuper);
            for (u64 w = w0; w < w1; ++w) {
                if ((w - w0) % kWordsPerSub == 0)
                    sub_[w / kWordsPerSub] = static_cast<std::uint16_t>(in_super);
                in_super += std::popcount(words_[w]);
            }
            total += in_super;
        }
        super_[n_super] = total;
        total_ = total;
    }

    /// Number of set bits in [0, i] (inclusive). i < size_bits().
    u64 rank(u64 i) const {
        const u64 w = i >> 6;
        u64 r = super_[w / kWordsPerSuper] + sub_[w / kWordsPerSub];
        for (u64 k = (w / kWordsPerSub) * kWordsPerSub; k < w; ++k)
            r += std::popcount(words_[k]);
        const u64 mask = (i & 63) == 63 ? ~u64{0} : ((u64{1} << ((i & 63) + 1)) - 1);
        return r + std::popcount(words_[w] & mask);
    }

    u64 total() const { return total_; }
    std::span<const u64> words() const { return words_; }
    std::span<u64> mutable_words() { return words_; }
    bool operator==(const RankBitset& o) const {
        return nbits_ == o.nbits_ && words_ == o.words_;
    }

    // raw accessors for the cache codec
    const std::vector<u64>& super_index() const { return super_; }
    const std::vector<std::uint16_t>& sub_index() const { return sub_; }
    void load_raw(u64 nbits, std::vector<u64> words, std::vector<u64> super,
                  std::vector<std::uint16_t> sub) {
        nbits_ = nbits;
        words_ = std::move(words);
        super_ = std::move(super);
        sub_ = std::move(sub);
        total_ = super_.empty() ? 0 : super_.back();
    }

private:
    static constexpr u64 kWordsPerSuper = 1024;  // 2^16 bits
    static constexpr u64 kWordsPerSub = 8;       // 512 bits

    u64 nbits_ = 0;
    u64 total_ = 0;
    std::vector<u64> words_;
    std::vector<u64> super_;
    std::vector<std::uint16_t> sub_;
};

enum class NumberClass { prime, odd_prime, odd_semiprime };

struct SieveBuildOptions {
    u64 segment_size = u64{1} << 20;  // values per segment; never affects results
    unsigned threads = 1;
    u64 max_limit = 1'000'000'000;    // memory budget expressed as a limit cap
};

struct DusartPiViolation {
    u64 x;
    u64 pi_x;
    long double lower, upper;
};

struct DusartPnViolation {
    u64 n;
    u64 p_n;
    long double lower, upper;
};

/// Outcome of the prime-counting / nth-prime bound audits. The bounds are
/// strict inequalities on real-valued expressions; comparisons carry a
/// small guard band (documented in `guard_scale`, a few ulps of the bound)
/// so that log() rounding can never manufacture a violation.
struct DusartAuditReport {
    u64 x_min = 0, x_max = 0, stride = 1;
    u64 pn_min = 6, pn_max = 0;
    u64 pi_samples = 0, pn_samples = 0;
    long double guard_scale = 8 * LDBL_EPSILON;
    std::vector<DusartPiViolation> pi_violations;
    std::vector<DusartPnViolation> pn_violations;
    bool clean() const { return pi_violations.empty() && pn_violations.empty(); }
};

/// Immutable classification of the integers up to `limit`: prime flags,
/// odd-semiprime flags (p*q with p <= q odd primes, squares included, so the
/// least flagged value is 9), rank indexes for counting queries, and the
/// ascending prime list. Construction may be parallel over disjoint
/// segments; the result is bit-identical for any worker count. All queries
/// are pure reads, so a built table is freely shareable across threads.
class SieveTable {
public:
    static SieveTable build(u64 limit, SieveBuildOptions opt = {}) {
        require(limit >= 10, "sieve limit must be at least 10");
        require(limit <= opt.max_limit,
                "sieve limit " + std::to_string(limit) +
                    " exceeds configured memory budget (max_limit=" +
                    std::to_string(opt.max_limit) + ")");
        SieveTable t;
        t.limit_ = limit;
        t.segment_size_ = std::max<u64>(64, opt.segment_size & ~u64{63});
        t.build_primes(opt.threads);
        t.build_semiprimes(opt.threads);
        return t;
    }

    u64 limit() const { return limit_; }
    u64 segment_size() const { return segment_size_; }

    bool is_prime(u64 n) const { return n <= limit_ && prime_flags_.test(n); }
    bool is_odd_prime(u64 n) const { return n != 2 && is_prime(n); }
    bool is_odd_semiprime(u64 n) const {
        return n <= limit_ && n >= 9 && semiprime_flags_.test(n);
    }

    /// pi(x): number of primes <= x. Requires x <= limit.
    u64 pi(u64 x) const {
        check_range(x);
        return x < 2 ? 0 : prime_flags_.rank(x);
    }
    /// pi_1(x): number of odd primes <= x.
    u64 pi1(u64 x) const {
        const u64 p = pi(x);
        return x >= 2 ? p - 1 : p;
    }
    /// pi_21(x): number of odd semiprimes <= x.
    u64 pi21(u64 x) const {
        check_range(x);
        return x < 9 ? 0 : semiprime_flags_.rank(x);
    }

    u64 count_upto(NumberClass c, u64 x) const {
        switch (c) {
            case NumberClass::prime: return pi(x);
            case NumberClass::odd_prime: return pi1(x);
            case NumberClass::odd_semiprime: return pi21(x);
        }
        return 0;
    }

    u64 prime_count() const { return primes_.size(); }

    /// nth prime, 1-indexed: nth_prime(1) == 2.
    u64 nth_prime(u64 n) const {
        require_range(n >= 1 && n <= primes_.size(),
                      "nth_prime: n=" + std::to_string(n) + " out of range (have " +
                          std::to_string(primes_.size()) + " primes)");
        return primes_[n - 1];
    }

    std::span<const u32> primes() const { return primes_; }

    /// Exact sum of the class members <= x (64-bit accumulator; no overflow
    /// up to limit 1e9).
    u64 class_sum_upto(NumberClass c, u64 x) const {
        check_range(x);
        if (c == NumberClass::prime || c == NumberClass::odd_prime) {
            u64 s = 0;
            const u64 k = pi(x);
            for (u64 i = 0; i < k; ++i) s += primes_[i];
            if (c == NumberClass::odd_prime && x >= 2) s -= 2;
            return s;
        }
        u64 s = 0;
        for_each_odd_semiprime(9, x, [&](u64 q) { s += q; });
        return s;
    }

    /// Calls fn(q) for every odd semiprime q in [lo, hi], ascending.
    template <typename Fn>
    void for_each_odd_semiprime(u64 lo, u64 hi, Fn&& fn) const {
        if (hi > limit_) hi = limit_;
        if (lo < 9) lo = 9;
        if (lo > hi) return;
        const auto words = semiprime_flags_.words();
        u64 w = lo >> 6;
        const u64 w_end = hi >> 6;
        for (; w <= w_end; ++w) {
            u64 bits = words[w];
            if (w == (lo >> 6)) bits &= ~u64{0} << (lo & 63);
            if (w == w_end && (hi & 63) != 63)
                bits &= (u64{1} << ((hi & 63) + 1)) - 1;
            while (bits) {
                fn((w << 6) + std::countr_zero(bits));
                bits &= bits - 1;
            }
        }
    }

    const RankBitset& prime_flags() const { return prime_flags_; }
    const RankBitset& semiprime_flags() const { return semiprime_flags_; }

    /// Audits the explicit two-sided bounds on pi(x) (valid for x >= 355991)
    /// over [x_min, x_max] with the given stride, and the nth-prime bounds
    /// n ln n + n lnln n - n < p_n < n ln n + n lnln n for 6 <= n <= pi(limit).
    DusartAuditReport audit_dusart(u64 x_min, u64 x_max, u64 stride) const {
        require(x_min >= 355991, "pi(x) bound audit is stated for x >= 355991");
        require(x_min <= x_max, "audit range is empty");
        require_range(x_max <= limit_, "audit range exceeds sieve limit");
        require(stride >= 1, "stride must be positive");

        DusartAuditReport rep;
        rep.x_min = x_min;
        rep.x_max = x_max;
        rep.stride = stride;
        for (u64 x = x_min; x <= x_max; x += stride) {
            ++rep.pi_samples;
            const long double lx = std::log(static_cast<long double>(x));
            const long double base = x / lx + x / (lx * lx);
            const long double lower = base;
            const long double upper = base + 2.51L * x / (lx * lx * lx);
            const long double guard = rep.guard_scale * upper;
            const long double pix = static_cast<long double>(pi(x));
            if (!(pix > lower - guard && pix < upper + guard))
                rep.pi_violations.push_back({x, pi(x), lower, upper});
        }

        rep.pn_max = prime_count();
        for (u64 n = 6; n <= rep.pn_max; ++n) {
            ++rep.pn_samples;
            const long double ln = std::log(static_cast<long double>(n));
            const long double lln = std::log(ln);
            const long double upper = n * ln + n * lln;
            const long double lower = upper - static_cast<long double>(n);
            const long double guard = rep.guard_scale * upper;
            const long double pn = static_cast<long double>(primes_[n - 1]);
            if (!(pn > lower - guard && pn < upper + guard))
                rep.pn_violations.push_back({n, primes_[n - 1], lower, upper});
        }
        return rep;
    }

    // ---- binary cache ------------------------------------------------
    // Layout (little-endian): magic "PLSV", u32 version, u64 limit,
    // u64 segment_size, then both flag arrays and their rank index blocks,
    // each as a u64 element count followed by raw elements. The cache is an
    // optimization only; loading rebuilds the prime list by scanning flags.

    bool save_cache(const std::string& path) const {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) return false;
        out.write(kCacheMagic, 4);
        write_pod(out, u32{1});
        write_pod(out, limit_);
        write_pod(out, segment_size_);
        write_bitset(out, prime_flags_);
        write_bitset(out, semiprime_flags_);
        return static_cast<bool>(out);
    }

    static std::optional<SieveTable> load_cache(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) return std::nullopt;
        char magic[4] = {};
        in.read(magic, 4);
        if (!in || std::memcmp(magic, kCacheMagic, 4) != 0) return std::nullopt;
        u32 version = 0;
        if (!read_pod(in, version) || version != 1) return std::nullopt;
        SieveTable t;
        if (!read_pod(in, t.limit_) || !read_pod(in, t.segment_size_))
            return std::nullopt;
        if (!read_bitset(in, t.limit_ + 1, t.prime_flags_)) return std::nullopt;
        if (!read_bitset(in, t.limit_ + 1, t.semiprime_flags_)) return std::nullopt;
        t.primes_.reserve(static_cast<size_t>(t.prime_flags_.total()));
        for (u64 n = 2; n <= t.limit_; ++n)
            if (t.prime_flags_.test(n)) t.primes_.push_back(static_cast<u32>(n));
        if (t.primes_.size() != t.prime_flags_.total()) return std::nullopt;
        return t;
    }

private:
    SieveTable() = default;

    void check_range(u64 x) const {
        require_range(x <= limit_, "query x=" + std::to_string(x) +
                                       " exceeds sieve limit " +
                                       std::to_string(limit_));
    }

    void build_primes(unsigned threads) {
        prime_flags_ = RankBitset(limit_ + 1);
        const u64 root = isqrt(limit_);

        // base primes by simple sieve to sqrt(limit); limit >= 10 so root >= 3
        std::vector<bool> base(root + 1, true);
        base[0] = base[1] = false;
        for (u64 i = 2; i * i <= root; ++i)
            if (base[i])
                for (u64 j = i * i; j <= root; j += i) base[j] = false;
        std::vector<u32> base_primes;
        for (u64 i = 2; i <= root; ++i)
            if (base[i]) base_primes.push_back(static_cast<u32>(i));

        // segments are word-aligned so parallel workers touch disjoint words
        const u64 n_values = limit_ + 1;
        const u64 n_segments = (n_values + segment_size_ - 1) / segment_size_;
        parallel_chunks(n_segments, 1, threads, [&](u64 seg, u64, u64) {
            const u64 lo = seg * segment_size_;
            const u64 hi = std::min(limit_, lo + segment_size_ - 1);
            std::vector<char> mark(hi - lo + 1, 1);
            for (const u32 p : base_primes) {
                const u64 pp = u64{p} * p;
                if (pp > hi) break;
                u64 start = std::max(pp, ((lo + p - 1) / p) * p);
                for (u64 j = start; j <= hi; j += p) mark[j - lo] = 0;
            }
            for (u64 n = std::max<u64>(lo, 2); n <= hi; ++n)
                if (mark[n - lo]) prime_flags_.set(n);
        });
        prime_flags_.finalize();

        primes_.reserve(static_cast<size_t>(prime_flags_.total()));
        for (u64 n = 2; n <= limit_; ++n)
            if (prime_flags_.test(n)) primes_.push_back(static_cast<u32>(n));
    }

    void build_semiprimes(unsigned threads) {
        semiprime_flags_ = RankBitset(limit_ + 1);
        const u64 n_values = limit_ + 1;
        const u64 n_segments = (n_values + segment_size_ - 1) / segment_size_;
        // first odd-prime index
        size_t first_odd = 0;
        while (first_odd < primes_.size() && primes_[first_odd] < 3) ++first_odd;

        parallel_chunks(n_segments, 1, threads, [&](u64 seg, u64, u64) {
            const u64 lo = seg * segment_size_;
            const u64 hi = std::min(limit_, lo + segment_size_ - 1);
            for (size_t i = first_odd; i < primes_.size(); ++i) {
                const u64 p = primes_[i];
                if (p * p > hi) break;
                // q runs over primes in [max(p, ceil(lo/p)), hi/p]
                u64 q_lo = std::max<u64>(p, (lo + p - 1) / p);
                const u64 q_hi = hi / p;
                if (q_lo > q_hi) continue;
                size_t j = std::lower_bound(primes_.begin() + i, primes_.end(),
                                            static_cast<u32>(q_lo)) -
                           primes_.begin();
                for (; j < primes_.size() && primes_[j] <= q_hi; ++j)
                    semiprime_flags_.set(p * primes_[j]);
            }
        });
        semiprime_flags_.finalize();
    }

    static constexpr const char kCacheMagic[5] = "PLSV";

    template <typename T>
    static void write_pod(std::ofstream& out, const T& v) {
        out.write(reinterpret_cast<const char*>(&v), sizeof(T));
    }
    template <typename T>
    static bool read_pod(std::ifstream& in, T& v) {
        in.read(reinterpret_cast<char*>(&v), sizeof(T));
        return static_cast<bool>(in);
    }
    template <typename T>
    static void write_vec(std::ofstream& out, const std::vector<T>& v) {
        write_pod(out, static_cast<u64>(v.size()));
        out.write(reinterpret_cast<const char*>(v.data()),
                  static_cast<std::streamsize>(v.size() * sizeof(T)));
    }
    template <typename T>
    static bool read_vec(std::ifstream& in, std::vector<T>& v) {
        u64 n = 0;
        if (!read_pod(in, n)) return false;
        if (n > (u64{1} << 32)) return false;
        v.resize(static_cast<size_t>(n));
        in.read(reinterpret_cast<char*>(v.data()),
                static_cast<std::streamsize>(n * sizeof(T)));
        return static_cast<bool>(in);
    }
    static void write_bitset(std::ofstream& out, const RankBitset& b) {
        std::vector<u64> words(b.words().begin(), b.words().end());
        write_vec(out, words);
        write_vec(out, b.super_index());
        write_vec(out, b.sub_index());
    }
    static bool read_bitset(std::ifstream& in, u64 nbits, RankBitset& b) {
        std::vector<u64> words, super;
        std::vector<std::uint16_t> sub;
        if (!read_vec(in, words) || !read_vec(in, super) || !read_vec(in, sub))
            return false;
        const u64 n_words = (nbits + 63) / 64;
        if (words.size() != n_words) return false;
        if (super.size() != (n_words + 1023) / 1024 + 1) return false;
        if (sub.size() != (n_words + 7) / 8) return false;
        b.load_raw(nbits, std::move(words), std::move(super), std::move(sub));
        return true;
    }

    u64 limit_ = 0;
    u64 segment_size_ = u64{1} << 20;
    RankBitset prime_flags_;
    RankBitset semiprime_flags_;
    std::vector<u32> primes_;
};

}  // namespace partition_lab

#endif
