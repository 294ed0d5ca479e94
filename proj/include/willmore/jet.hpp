#pragma once

#include <array>

#include "willmore/linalg.hpp"

namespace willmore {

/// Value and partial derivatives up to order two of an immersion D -> R^3
/// at the parameter point `p`.
struct Jet2 {
    Vec2 p = Vec2::Zero();
    Vec3 phi = Vec3::Zero();
    std::array<Vec3, 2> d1{Vec3::Zero(), Vec3::Zero()};               // x, y
    std::array<Vec3, 3> d2{Vec3::Zero(), Vec3::Zero(), Vec3::Zero()}; // xx, xy, yy

    bool finite() const;
};

struct Jet3 : Jet2 {
    std::array<Vec3, 4> d3{Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), Vec3::Zero()}; // xxx, xxy, xyy, yyy

    bool finite() const;
};

inline bool Jet2::finite() const {
    if (!p.allFinite() || !phi.allFinite()) return false;
    for (const auto& v : d1) if (!v.allFinite()) return false;
    for (const auto& v : d2) if (!v.allFinite()) return false;
    return true;
}

inline bool Jet3::finite() const {
    if (!Jet2::finite()) return false;
    for (const auto& v : d3) if (!v.allFinite()) return false;
    return true;
}

} // namespace willmore
