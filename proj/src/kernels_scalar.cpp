#include <algorithm>
#include <cmath>
#include <vector>

#include "kernels_common.hpp"
#include "willmore/kernels.hpp"

namespace willmore::kernels {
namespace {

using detail::kBlock;
using detail::kLanes;

template <class Term>
double blocked_sum(std::size_t n, Term term) {
    if (n == 0) return 0.0;
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(nblocks);
    for (std::size_t b = 0; b < nblocks; ++b) {
        double lane[kLanes] = {0.0, 0.0, 0.0, 0.0};
        const std::size_t end = std::min(n, (b + 1) * kBlock);
        for (std::size_t k = b * kBlock; k < end; ++k) lane[k % kLanes] += term(k);
        partial[b] = detail::combine_lanes(lane);
    }
    return detail::combine_pairwise(partial.data(), 0, nblocks);
}

double weighted_sum_scalar(const double* w, const double* f, std::size_t n) {
    return blocked_sum(n, [&](std::size_t k) { return w[k] * f[k]; });
}

double sum_scalar(const double* f, std::size_t n) {
    return blocked_sum(n, [&](std::size_t k) { return f[k]; });
}

double max_abs_scalar(const double* f, std::size_t n) {
    double m = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double a = std::fabs(f[k]);
        if (std::isnan(a)) return a;
        m = std::max(m, a);
    }
    return m;
}

void laplacian5_scalar(const double* f, std::size_t nx, std::size_t ny, double h, double* out) {
    if (nx < 3 || ny < 3) return;
    const double h2 = h * h;
    for (std::size_t j = 1; j + 1 < ny; ++j) {
        for (std::size_t i = 1; i + 1 < nx; ++i) {
            const std::size_t k = j * nx + i;
            double s = f[k - 1] + f[k + 1];
            s = s + f[k - nx];
            s = s + f[k + nx];
            s = s - 4.0 * f[k];
            out[k] = s / h2;
        }
    }
}

} // namespace

const Table& scalar() {
    static const Table t{"scalar", &weighted_sum_scalar, &sum_scalar, &max_abs_scalar,
                         &laplacian5_scalar};
    return t;
}

} // namespace willmore::kernels
