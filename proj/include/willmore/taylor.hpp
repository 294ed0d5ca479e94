#pragma once

#include <array>
#include <cmath>

#include "willmore/jet.hpp"

namespace willmore {

/// Truncated bivariate Taylor polynomial of total degree 3 in (dx, dy).
/// Coefficient layout: 1, dx, dy, dx^2, dxdy, dy^2, dx^3, dx^2dy, dxdy^2, dy^3.
class Taylor3 {
public:
    static constexpr int kSize = 10;

    constexpr Taylor3() = default;
    constexpr Taylor3(double constant) { c_[0] = constant; }

    /// The affine coordinate value + dx (axis 0) or value + dy (axis 1).
    static Taylor3 variable(double value, int axis) {
        Taylor3 t(value);
        t.c_[1 + axis] = 1.0;
        return t;
    }

    double operator[](int i) const { return c_[i]; }
    double& operator[](int i) { return c_[i]; }
    double value() const { return c_[0]; }

    /// Partial derivative d^(i+j) / dx^i dy^j at the expansion point.
    double derivative(int i, int j) const;

    Taylor3& operator+=(const Taylor3& o) {
        for (int k = 0; k < kSize; ++k) c_[k] += o.c_[k];
        return *this;
    }
    Taylor3& operator-=(const Taylor3& o) {
        for (int k = 0; k < kSize; ++k) c_[k] -= o.c_[k];
        return *this;
    }
    Taylor3& operator*=(double s) {
        for (auto& v : c_) v *= s;
        return *this;
    }

    friend Taylor3 operator+(Taylor3 a, const Taylor3& b) { return a += b; }
    friend Taylor3 operator-(Taylor3 a, const Taylor3& b) { return a -= b; }
    friend Taylor3 operator-(Taylor3 a) { return a *= -1.0; }
    friend Taylor3 operator*(Taylor3 a, double s) { return a *= s; }
    friend Taylor3 operator*(double s, Taylor3 a) { return a *= s; }
    friend Taylor3 operator*(const Taylor3& a, const Taylor3& b);
    friend Taylor3 operator/(const Taylor3& a, const Taylor3& b);

    /// f(t) given f and its first three derivatives at t.value().
    Taylor3 compose(double f0, double f1, double f2, double f3) const;

private:
    std::array<double, kSize> c_{};
};

Taylor3 reciprocal(const Taylor3& t);
Taylor3 sqrt(const Taylor3& t);
Taylor3 exp(const Taylor3& t);
Taylor3 log(const Taylor3& t);
Taylor3 sin(const Taylor3& t);
Taylor3 cos(const Taylor3& t);
Taylor3 sinh(const Taylor3& t);
Taylor3 cosh(const Taylor3& t);

using TaylorVec3 = std::array<Taylor3, 3>;

/// Expand a jet's components as Taylor polynomials around its point.
TaylorVec3 to_taylor(const Jet3& j);
TaylorVec3 to_taylor(const Jet2& j);

/// Read the jet back; `p` is the parameter point the expansion is taken at.
Jet3 to_jet3(const TaylorVec3& t, const Vec2& p);

} // namespace willmore
