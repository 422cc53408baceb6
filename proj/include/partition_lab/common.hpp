#ifndef PARTITION_LAB_COMMON_HPP
#define PARTITION_LAB_COMMON_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace partition_lab {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// Exact integer square root: largest r with r*r <= n.
inline u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Binomial coefficient C(k, 2).
inline u64 choose2(u64 k) { return k * (k - 1) / 2; }

// Nearest integer to sqrt(m + 1), exact integer arithmetic.
// Never a tie: m + 1 = (r + 1/2)^2 has no integer solution.
inline u64 nearest_sqrt_succ(u64 m) {
    u64 r = isqrt(m + 1);
    if (m + 1 - r * r > r) ++r;
    return r;
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

inline void require_range(bool cond, const std::string& msg) {
    if (!cond) throw std::out_of_range(msg);
}

}  // namespace partition_lab

#endif
