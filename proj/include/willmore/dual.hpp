#pragma once

#include <array>
#include <cmath>

namespace willmore {

/// Forward-mode value with its two parameter partials. Used to differentiate
/// the pointwise geometry formulas exactly once, from third-order jets.
struct Dual {
    double v = 0.0;
    double dx = 0.0;
    double dy = 0.0;

    constexpr Dual() = default;
    constexpr Dual(double value) : v(value) {}
    constexpr Dual(double value, double gx, double gy) : v(value), dx(gx), dy(gy) {}
};

inline Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.dx + b.dx, a.dy + b.dy}; }
inline Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.dx - b.dx, a.dy - b.dy}; }
inline Dual operator-(Dual a) { return {-a.v, -a.dx, -a.dy}; }
inline Dual operator*(Dual a, Dual b) {
    return {a.v * b.v, a.dx * b.v + a.v * b.dx, a.dy * b.v + a.v * b.dy};
}
inline Dual operator/(Dual a, Dual b) {
    const double inv = 1.0 / b.v;
    const double q = a.v * inv;
    return {q, (a.dx - q * b.dx) * inv, (a.dy - q * b.dy) * inv};
}
inline Dual& operator+=(Dual& a, Dual b) { return a = a + b; }
inline Dual& operator-=(Dual& a, Dual b) { return a = a - b; }
inline Dual& operator*=(Dual& a, Dual b) { return a = a * b; }

inline Dual sqrt(Dual a) {
    const double s = std::sqrt(a.v);
    const double k = 0.5 / s;
    return {s, k * a.dx, k * a.dy};
}
inline Dual log(Dual a) { return {std::log(a.v), a.dx / a.v, a.dy / a.v}; }
inline Dual exp(Dual a) {
    const double e = std::exp(a.v);
    return {e, e * a.dx, e * a.dy};
}

inline double value_of(double a) { return a; }
inline double value_of(const Dual& a) { return a.v; }

template <class T>
using V3 = std::array<T, 3>;

template <class T>
T dot(const V3<T>& a, const V3<T>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class T>
V3<T> cross(const V3<T>& a, const V3<T>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class T>
V3<T> scale(const V3<T>& a, T s) {
    return {a[0] * s, a[1] * s, a[2] * s};
}

} // namespace willmore
