#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace willmore::kernels {

/// Data-parallel inner loops. Each has a scalar reference and, on x86-64, an
/// AVX2 variant chosen at runtime. Both variants evaluate the same
/// arithmetic in the same association order, so they agree bit for bit.
///
/// Reductions use blocked pairwise summation: 4 interleaved lanes over
/// blocks of 64 elements, blocks combined pairwise, lanes combined as
/// (l0 + l1) + (l2 + l3). The order depends only on the length.
struct Table {
    const char* name;
    double (*weighted_sum)(const double* w, const double* f, std::size_t n);
    double (*sum)(const double* f, std::size_t n);
    double (*max_abs)(const double* f, std::size_t n);
    /// out[k] = (f[k-1] + f[k+1] + f[k-nx] + f[k+nx] - 4 f[k]) / h^2 for
    /// interior nodes of an nx-by-ny row-major grid; the border is untouched.
    void (*laplacian5)(const double* f, std::size_t nx, std::size_t ny, double h, double* out);
};

const Table& scalar();
/// nullptr when the CPU or the build lacks AVX2.
const Table* avx2();

/// Variant in use: AVX2 when available, unless WILLMORE_KERNELS=scalar.
const Table& active();

/// Forces a variant by name ("scalar" or "avx2"); returns false if unavailable.
bool select(std::string_view name);

inline double weighted_sum(std::span<const double> w, std::span<const double> f) {
    return active().weighted_sum(w.data(), f.data(), w.size());
}
inline double sum(std::span<const double> f) { return active().sum(f.data(), f.size()); }
inline double max_abs(std::span<const double> f) { return active().max_abs(f.data(), f.size()); }

} // namespace willmore::kernels
