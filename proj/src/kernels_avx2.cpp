// Compiled with -mavx2 -ffp-contract=off; only entered after a CPU check.
#include <algorithm>
#include <cmath>
#include <vector>

#include <immintrin.h>

#include "kernels_common.hpp"
#include "willmore/kernels.hpp"

namespace willmore::kernels {
namespace {

using detail::kBlock;
using detail::kLanes;

// Lane k % 4 of the scalar reference is vector lane k % 4 here, because every
// block starts at a multiple of 4.
template <class Load>
double blocked_sum_avx2(std::size_t n, Load load) {
    if (n == 0) return 0.0;
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(nblocks);
    for (std::size_t b = 0; b < nblocks; ++b) {
        const std::size_t begin = b * kBlock;
        const std::size_t end = std::min(n, begin + kBlock);
        __m256d acc = _mm256_setzero_pd();
        std::size_t k = begin;
        for (; k + kLanes <= end; k += kLanes) acc = _mm256_add_pd(acc, load(k));
        alignas(32) double lane[kLanes];
        _mm256_store_pd(lane, acc);
        for (; k < end; ++k) lane[k % kLanes] += load.scalar(k);
        partial[b] = detail::combine_lanes(lane);
    }
    return detail::combine_pairwise(partial.data(), 0, nblocks);
}

struct ProductLoad {
    const double* w;
    const double* f;
    __m256d operator()(std::size_t k) const {
        return _mm256_mul_pd(_mm256_loadu_pd(w + k), _mm256_loadu_pd(f + k));
    }
    double scalar(std::size_t k) const { return w[k] * f[k]; }
};

struct PlainLoad {
    const double* f;
    __m256d operator()(std::size_t k) const { return _mm256_loadu_pd(f + k); }
    double scalar(std::size_t k) const { return f[k]; }
};

double weighted_sum_avx2(const double* w, const double* f, std::size_t n) {
    return blocked_sum_avx2(n, ProductLoad{w, f});
}

double sum_avx2(const double* f, std::size_t n) { return blocked_sum_avx2(n, PlainLoad{f}); }

double max_abs_avx2(const double* f, std::size_t n) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d m = _mm256_setzero_pd();
    __m256d nan = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d a = _mm256_andnot_pd(sign, _mm256_loadu_pd(f + k));
        nan = _mm256_or_pd(nan, _mm256_cmp_pd(a, a, _CMP_UNORD_Q));
        m = _mm256_max_pd(m, a);
    }
    if (_mm256_movemask_pd(nan) != 0) return std::nan("");
    alignas(32) double lane[4];
    _mm256_store_pd(lane, m);
    double r = std::max(std::max(lane[0], lane[1]), std::max(lane[2], lane[3]));
    for (; k < n; ++k) {
        const double a = std::fabs(f[k]);
        if (std::isnan(a)) return a;
        r = std::max(r, a);
    }
    return r;
}

void laplacian5_avx2(const double* f, std::size_t nx, std::size_t ny, double h, double* out) {
    if (nx < 3 || ny < 3) return;
    const double h2 = h * h;
    const __m256d vh2 = _mm256_set1_pd(h2);
    const __m256d four = _mm256_set1_pd(4.0);
    for (std::size_t j = 1; j + 1 < ny; ++j) {
        const std::size_t row = j * nx;
        std::size_t i = 1;
        for (; i + 4 <= nx - 1; i += 4) {
            const std::size_t k = row + i;
            __m256d s = _mm256_add_pd(_mm256_loadu_pd(f + k - 1), _mm256_loadu_pd(f + k + 1));
            s = _mm256_add_pd(s, _mm256_loadu_pd(f + k - nx));
            s = _mm256_add_pd(s, _mm256_loadu_pd(f + k + nx));
            s = _mm256_sub_pd(s, _mm256_mul_pd(four, _mm256_loadu_pd(f + k)));
            _mm256_storeu_pd(out + k, _mm256_div_pd(s, vh2));
        }
        for (; i + 1 < nx; ++i) {
            const std::size_t k = row + i;
            double s = f[k - 1] + f[k + 1];
            s = s + f[k - nx];
            s = s + f[k + nx];
            s = s - 4.0 * f[k];
            out[k] = s / h2;
        }
    }
}

} // namespace

const Table& avx2_table() {
    static const Table t{"avx2", &weighted_sum_avx2, &sum_avx2, &max_abs_avx2, &laplacian5_avx2};
    return t;
}

} // namespace willmore::kernels
