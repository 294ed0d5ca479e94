#pragma once

#include <Eigen/Dense>

namespace willmore {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;

/// Signature matrix of R^{4,1}; coordinates ordered (Y1, Y2, Y3, Y4, Y5).
inline Mat5 lorentz_signature() {
    Mat5 eps = Mat5::Identity();
    eps(4, 4) = -1.0;
    return eps;
}

inline double lorentz_dot(const Vec5& a, const Vec5& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3] - a[4] * b[4];
}

/// Null lift x -> (x, (|x|^2-1)/2, (|x|^2+1)/2) of R^3 into the light cone.
inline Vec5 null_lift(const Vec3& x) {
    const double r2 = x.squaredNorm();
    Vec5 l;
    l << x[0], x[1], x[2], 0.5 * (r2 - 1.0), 0.5 * (r2 + 1.0);
    return l;
}

} // namespace willmore
