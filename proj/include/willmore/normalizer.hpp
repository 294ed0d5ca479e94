#pragma once

#include <string>
#include <vector>

#include "willmore/quadrature.hpp"
#include "willmore/surface.hpp"

namespace willmore {

/// Plain dxdy averages over a disk rule.
struct AverageData {
    double hbar = 0.0;
    Vec5 ybar = Vec5::Zero();
    double lorentz_square = 0.0; // <ybar, ybar>
    double variance = 0.0;       // mean of <Y - ybar, Y - ybar>
};

AverageData averages(const SurfaceSpec& s, const DiskQuadrature& q);

/// Mean of H after x -> (x - a)/|x - a|^2, read off the averaged Y:
/// 2 <a, ybar_123> - ybar_5 - ybar_4 - |a|^2 (ybar_5 - ybar_4).
double predicted_hbar_after_inversion(const Vec3& a, const AverageData& avg);

struct SphereTarget {
    enum class Kind { Sphere, IdentitySuffices, NoRealSphere };
    Kind kind = Kind::IdentitySuffices;
    Vec3 center = Vec3::Zero();
    double radius = 0.0;
};

/// IdentitySuffices when |ybar_5 - ybar_4| <= tol.
SphereTarget target_sphere(const AverageData& avg, double tol = 1e-12);

struct CenterChoice {
    Vec3 a = Vec3::Zero();
    double min_distance = 0.0;
};

/// Point of S(c, r) farthest (in the max-min sense) from the sampled patch
/// image: 256 Fibonacci points, then one local refinement. Throws
/// NoAdmissibleCenter below `delta` or beyond |a| <= r_max.
CenterChoice select_center(const Vec3& c, double r, const std::vector<Vec3>& patch, double delta, double r_max);

/// Phi over the patch's dense sample set.
std::vector<Vec3> patch_image(const SurfaceSpec& s, const Vec2& center, double radius, int n_r = 16,
                              int n_theta = 64);

struct NormalizeOptions {
    int n_r = 16;
    int n_theta = 64;
    double hbar_tol = 1e-10;     // relative to the curvature scale
    double delta_factor = 1e-2;  // delta = factor * patch diameter
    double r_max_factor = 1e3;   // r_max = factor * patch diameter
    double eps0 = 0.1;
};

struct NormalizationResult {
    enum class Status { Inverted, IdentitySuffices };
    Status status = Status::IdentitySuffices;
    MoebiusMap theta;
    Vec3 sphere_center = Vec3::Zero();
    double sphere_radius = 0.0;
    Vec3 chosen_a = Vec3::Zero();
    double achieved_hbar = 0.0;
    double predicted_hbar = 0.0;
    double min_distance = 0.0;
    double hbar_before = 0.0;
    double lambda_bar_before = 0.0;
    double lambda_bar_after = 0.0;
    double curvature_scale = 0.0;
    double lorentz_square = 0.0;
    double variance = 0.0;
    double l2_tf = 0.0;
    double cory_quotient = 0.0; // (1 - lorentz_square) / l2_tf^2
    bool cory_applicable = false;
    bool cory_gate = false;     // lorentz_square >= 1/2
};

/// theta = Invert(a) o Dilate(e^{-lambda_bar}) o Translate(-Phi(center)).
/// Throws NoRealSphere and NoAdmissibleCenter.
NormalizationResult normalize(const SurfaceSpec& s, const Vec2& center, double radius,
                              const NormalizeOptions& opt = {});

/// Euclidean mean of lambda and root-mean-square |A|_g over a rule.
double mean_lambda(const SurfaceSpec& s, const DiskQuadrature& q);
double rms_curvature(const SurfaceSpec& s, const DiskQuadrature& q);

} // namespace willmore
