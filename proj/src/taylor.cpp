#include "willmore/taylor.hpp"

namespace willmore {
namespace {

// (i, j) exponents of each coefficient slot, and the inverse map.
constexpr int kI[Taylor3::kSize] = {0, 1, 0, 2, 1, 0, 3, 2, 1, 0};
constexpr int kJ[Taylor3::kSize] = {0, 0, 1, 0, 1, 2, 0, 1, 2, 3};

constexpr int slot(int i, int j) {
    const int d = i + j;
    return d * (d + 1) / 2 + j;
}

constexpr double kFact[4] = {1.0, 1.0, 2.0, 6.0};

} // namespace

double Taylor3::derivative(int i, int j) const { return c_[slot(i, j)] * kFact[i] * kFact[j]; }

Taylor3 operator*(const Taylor3& a, const Taylor3& b) {
    Taylor3 r;
    for (int p = 0; p < Taylor3::kSize; ++p) {
        if (a.c_[p] == 0.0) continue;
        for (int q = 0; q < Taylor3::kSize; ++q) {
            const int i = kI[p] + kI[q];
            const int j = kJ[p] + kJ[q];
            if (i + j > 3) continue;
            r.c_[slot(i, j)] += a.c_[p] * b.c_[q];
        }
    }
    return r;
}

Taylor3 Taylor3::compose(double f0, double f1, double f2, double f3) const {
    Taylor3 t = *this;
    t.c_[0] = 0.0;
    const Taylor3 t2 = t * t;
    const Taylor3 t3 = t2 * t;
    Taylor3 r = t * f1 + t2 * (f2 / 2.0) + t3 * (f3 / 6.0);
    r.c_[0] += f0;
    return r;
}

Taylor3 operator/(const Taylor3& a, const Taylor3& b) { return a * reciprocal(b); }

Taylor3 reciprocal(const Taylor3& t) {
    const double u = 1.0 / t.value();
    return t.compose(u, -u * u, 2.0 * u * u * u, -6.0 * u * u * u * u);
}

Taylor3 sqrt(const Taylor3& t) {
    const double x = t.value();
    const double s = std::sqrt(x);
    return t.compose(s, 0.5 / s, -0.25 / (s * x), 0.375 / (s * x * x));
}

Taylor3 exp(const Taylor3& t) {
    const double e = std::exp(t.value());
    return t.compose(e, e, e, e);
}

Taylor3 log(const Taylor3& t) {
    const double x = t.value();
    return t.compose(std::log(x), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x));
}

Taylor3 sin(const Taylor3& t) {
    const double s = std::sin(t.value());
    const double c = std::cos(t.value());
    return t.compose(s, c, -s, -c);
}

Taylor3 cos(const Taylor3& t) {
    const double s = std::sin(t.value());
    const double c = std::cos(t.value());
    return t.compose(c, -s, -c, s);
}

Taylor3 sinh(const Taylor3& t) {
    const double s = std::sinh(t.value());
    const double c = std::cosh(t.value());
    return t.compose(s, c, s, c);
}

Taylor3 cosh(const Taylor3& t) {
    const double s = std::sinh(t.value());
    const double c = std::cosh(t.value());
    return t.compose(c, s, c, s);
}

TaylorVec3 to_taylor(const Jet3& j) {
    TaylorVec3 out;
    for (int k = 0; k < 3; ++k) {
        Taylor3& t = out[k];
        t[slot(0, 0)] = j.phi[k];
        t[slot(1, 0)] = j.d1[0][k];
        t[slot(0, 1)] = j.d1[1][k];
        t[slot(2, 0)] = j.d2[0][k] / 2.0;
        t[slot(1, 1)] = j.d2[1][k];
        t[slot(0, 2)] = j.d2[2][k] / 2.0;
        t[slot(3, 0)] = j.d3[0][k] / 6.0;
        t[slot(2, 1)] = j.d3[1][k] / 2.0;
        t[slot(1, 2)] = j.d3[2][k] / 2.0;
        t[slot(0, 3)] = j.d3[3][k] / 6.0;
    }
    return out;
}

TaylorVec3 to_taylor(const Jet2& j) {
    Jet3 j3;
    static_cast<Jet2&>(j3) = j;
    return to_taylor(j3);
}

Jet3 to_jet3(const TaylorVec3& t, const Vec2& p) {
    Jet3 j;
    j.p = p;
    for (int k = 0; k < 3; ++k) {
        j.phi[k] = t[k].derivative(0, 0);
        j.d1[0][k] = t[k].derivative(1, 0);
        j.d1[1][k] = t[k].derivative(0, 1);
        j.d2[0][k] = t[k].derivative(2, 0);
        j.d2[1][k] = t[k].derivative(1, 1);
        j.d2[2][k] = t[k].derivative(0, 2);
        j.d3[0][k] = t[k].derivative(3, 0);
        j.d3[1][k] = t[k].derivative(2, 1);
        j.d3[2][k] = t[k].derivative(1, 2);
        j.d3[3][k] = t[k].derivative(0, 3);
    }
    return j;
}

} // namespace willmore
