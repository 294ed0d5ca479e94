#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "willmore/linalg.hpp"
#include "willmore/moebius.hpp"
#include "willmore/surface.hpp"

namespace willmore::testing {

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20240517);
    return g;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline Vec2 point_in_disk(const Vec2& c, double r) {
    for (;;) {
        const Vec2 p(uniform(-1, 1), uniform(-1, 1));
        if (p.squaredNorm() <= 1.0) return c + r * p;
    }
}

inline Vec3 random_vec3(double s) { return {uniform(-s, s), uniform(-s, s), uniform(-s, s)}; }

inline Vec3 random_unit() {
    for (;;) {
        const Vec3 v = random_vec3(1.0);
        const double n = v.norm();
        if (n > 0.1 && n <= 1.0) return v / n;
    }
}

/// A conformal chart with a patch on which it is regular.
struct Patch {
    std::string spec;
    Vec2 center;
    double radius;
};

inline std::vector<Patch> conformal_zoo() {
    return {
        {"plane", {0.2, -0.1}, 1.0},
        {"sphere r=1", {0.1, 0.2}, 1.0},
        {"sphere r=2 chart=south", {-0.3, 0.1}, 0.8},
        {"enneper", {0.3, 0.2}, 1.0},
        {"catenoid", {0.2, 0.5}, 1.0},
        {"weierstrass g=\"z^2\" dh=\"1\"", {0.4, -0.2}, 0.7},
        {"weierstrass g=\"1/z\" dh=\"z^2\" base=1", {1.5, 0.2}, 0.4},
        {"invert center=(0,0,0) of (catenoid)", {0.5, 0.2}, 0.6},
        {"invert center=(0.5,0.3,2) of (enneper)", {0.2, 0.1}, 0.5},
    };
}

/// Min distance from a to Phi over a coarse sample of the patch.
inline double patch_distance(const SurfaceSpec& s, const Patch& p, const Vec3& a) {
    double m = 1e300;
    for (int i = -6; i <= 6; ++i)
        for (int j = -6; j <= 6; ++j) {
            const Vec2 u(i / 6.0, j / 6.0);
            if (u.squaredNorm() > 1.0) continue;
            m = std::min(m, (jet2(s, p.center + p.radius * u).phi - a).norm());
        }
    return m;
}

/// Random composition of primitive stages whose inversions stay at least
/// `margin` away from the running image of the patch.
inline MoebiusMap random_moebius(const SurfaceSpec& s, const Patch& p, double margin) {
    for (;;) {
        std::vector<MoebiusStage> st;
        const int n = 2 + static_cast<int>(uniform(0, 3));
        for (int k = 0; k < n; ++k) {
            switch (static_cast<int>(uniform(0, 4))) {
            case 0: st.push_back(Translate{random_vec3(1.0)}); break;
            case 1: st.push_back(Dilate{std::exp(uniform(-0.7, 0.7))}); break;
            case 2: st.push_back(Rotate{Eigen::AngleAxisd(uniform(-3, 3), random_unit()).toRotationMatrix()}); break;
            default: st.push_back(Invert{random_vec3(2.5)}); break;
            }
        }
        bool ok = true;
        std::vector<MoebiusStage> prefix;
        for (const MoebiusStage& stage : st) {
            if (const auto* inv = std::get_if<Invert>(&stage)) {
                const SurfacePtr img = make_transformed(MoebiusMap(prefix), std::make_shared<const SurfaceSpec>(s));
                if (patch_distance(*img, p, inv->a) < margin) {
                    ok = false;
                    break;
                }
            }
            prefix.push_back(stage);
        }
        if (ok) return MoebiusMap(st);
    }
}

} // namespace willmore::testing
