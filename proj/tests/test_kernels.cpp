#include <gtest/gtest.h>

#include <cstdlib>
#include <cstring>
#include <vector>

#include "support.hpp"
#include "willmore/kernels.hpp"

using namespace willmore;
using namespace willmore::testing;

namespace {

std::vector<double> random_values(std::size_t n, double scale) {
    std::vector<double> v(n);
    for (double& x : v) x = uniform(-scale, scale) * std::exp(uniform(-20, 20));
    return v;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

/// Plain pairwise-free reference for accuracy checks (not bit equality).
long double long_sum(const std::vector<double>& f) {
    long double s = 0;
    for (double x : f) s += x;
    return s;
}

} // namespace

TEST(Kernels, ScalarIsAlwaysAvailable) {
    EXPECT_STREQ(kernels::scalar().name, "scalar");
    EXPECT_TRUE(kernels::select("scalar"));
    EXPECT_STREQ(kernels::active().name, "scalar");
    EXPECT_FALSE(kernels::select("neon"));
    if (kernels::avx2() != nullptr) {
        EXPECT_TRUE(kernels::select("avx2"));
        EXPECT_STREQ(kernels::active().name, "avx2");
    } else {
        EXPECT_FALSE(kernels::select("avx2"));
    }
}

TEST(Kernels, ReductionsAgreeBitForBit) {
    const kernels::Table* simd = kernels::avx2();
    if (simd == nullptr) GTEST_SKIP() << "no AVX2 on this machine";
    const kernels::Table& ref = kernels::scalar();
    std::vector<std::size_t> lengths;
    for (std::size_t n = 0; n <= 300; ++n) lengths.push_back(n);
    for (std::size_t n : {511u, 512u, 513u, 1000u, 4095u, 4096u, 4097u, 100003u}) lengths.push_back(n);
    for (std::size_t n : lengths) {
        const auto f = random_values(n, 1.0);
        const auto w = random_values(n, 1.0);
        EXPECT_TRUE(same_bits(ref.sum(f.data(), n), simd->sum(f.data(), n))) << n;
        EXPECT_TRUE(same_bits(ref.weighted_sum(w.data(), f.data(), n), simd->weighted_sum(w.data(), f.data(), n))) << n;
        EXPECT_TRUE(same_bits(ref.max_abs(f.data(), n), simd->max_abs(f.data(), n))) << n;
    }
}

TEST(Kernels, ReductionsAreAccurate) {
    for (std::size_t n : {1u, 7u, 64u, 1000u, 100000u}) {
        std::vector<double> f(n);
        for (double& x : f) x = uniform(0, 1);
        const long double exact = long_sum(f);
        EXPECT_NEAR(kernels::scalar().sum(f.data(), n), static_cast<double>(exact), 1e-13 * static_cast<double>(exact));
        std::vector<double> ones(n, 1.0);
        EXPECT_EQ(kernels::scalar().weighted_sum(ones.data(), ones.data(), n), static_cast<double>(n));
    }
    EXPECT_EQ(kernels::scalar().sum(nullptr, 0), 0.0);
    EXPECT_EQ(kernels::scalar().max_abs(nullptr, 0), 0.0);
    const std::vector<double> v{1.0, -7.5, 3.0, 2.0, -0.5};
    EXPECT_EQ(kernels::scalar().max_abs(v.data(), v.size()), 7.5);
}

TEST(Kernels, NaNPropagates) {
    for (const kernels::Table* t : {&kernels::scalar(), kernels::avx2()}) {
        if (t == nullptr) continue;
        for (std::size_t pos : {0u, 3u, 4u, 17u, 99u}) {
            auto f = random_values(100, 1.0);
            f[pos] = std::nan("");
            EXPECT_TRUE(std::isnan(t->max_abs(f.data(), f.size()))) << t->name << " " << pos;
            EXPECT_TRUE(std::isnan(t->sum(f.data(), f.size()))) << t->name << " " << pos;
        }
    }
}

TEST(Kernels, LaplacianMatchesStencilAndVariantsAgree) {
    for (auto [nx, ny] : {std::pair<std::size_t, std::size_t>{3, 3}, {5, 7}, {17, 9}, {64, 33}, {101, 101}}) {
        const double h = 0.03;
        std::vector<double> f(nx * ny);
        for (std::size_t j = 0; j < ny; ++j)
            for (std::size_t i = 0; i < nx; ++i) f[j * nx + i] = std::sin(0.3 * i) * std::cos(0.2 * j) + 0.01 * i * j;
        std::vector<double> out(nx * ny, -1.0);
        kernels::scalar().laplacian5(f.data(), nx, ny, h, out.data());
        for (std::size_t j = 0; j < ny; ++j)
            for (std::size_t i = 0; i < nx; ++i) {
                const std::size_t k = j * nx + i;
                if (i == 0 || j == 0 || i + 1 == nx || j + 1 == ny) {
                    EXPECT_EQ(out[k], -1.0);
                    continue;
                }
                const double ref = (f[k - 1] + f[k + 1] + f[k - nx] + f[k + nx] - 4 * f[k]) / (h * h);
                EXPECT_NEAR(out[k], ref, 1e-12 * std::max(1.0, std::abs(ref)));
            }
        if (const kernels::Table* simd = kernels::avx2()) {
            std::vector<double> o2(nx * ny, -1.0);
            simd->laplacian5(f.data(), nx, ny, h, o2.data());
            for (std::size_t k = 0; k < out.size(); ++k) EXPECT_TRUE(same_bits(out[k], o2[k])) << nx << "x" << ny << " " << k;
        }
    }
    // a quadratic has a constant discrete Laplacian
    std::vector<double> q(25), o(25, 0.0);
    for (int j = 0; j < 5; ++j)
        for (int i = 0; i < 5; ++i) q[j * 5 + i] = 0.25 * (i * i + 3 * j * j);
    kernels::scalar().laplacian5(q.data(), 5, 5, 0.5, o.data());
    EXPECT_DOUBLE_EQ(o[12], 8.0);
}

TEST(KernelsEnv, OverrideSelectsScalar) {
    const char* env = std::getenv("WILLMORE_KERNELS");
    if (env == nullptr || std::string(env) != "scalar") GTEST_SKIP() << "run with WILLMORE_KERNELS=scalar";
    EXPECT_STREQ(kernels::active().name, "scalar");
}
