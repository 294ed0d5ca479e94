#pragma once

#include <cstddef>

namespace willmore::kernels::detail {

inline constexpr std::size_t kBlock = 64;
inline constexpr std::size_t kLanes = 4;

// Pairwise combination of per-block partial sums; shared by every variant.
inline double combine_pairwise(const double* b, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return b[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return combine_pairwise(b, lo, mid) + combine_pairwise(b, mid, hi);
}

inline double combine_lanes(const double* l) { return (l[0] + l[1]) + (l[2] + l[3]); }

} // namespace willmore::kernels::detail
