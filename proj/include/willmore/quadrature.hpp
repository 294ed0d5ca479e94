#pragma once

#include <string>
#include <vector>

#include "willmore/linalg.hpp"

namespace willmore {

struct GaussLegendre {
    std::vector<double> nodes;   // on [-1, 1], ascending
    std::vector<double> weights;
};

/// n-point rule by Newton iteration on P_n; cached per n.
const GaussLegendre& gauss_legendre(int n);

/// Polar tensor rule on a disk or annulus: Gauss-Legendre in r (with the
/// Jacobian r folded into the weights) and the trapezoid rule in theta.
struct DiskQuadrature {
    Vec2 center = Vec2::Zero();
    double radius = 1.0;
    double inner_radius = 0.0;
    int n_r = 0;      // radial nodes per panel
    int n_theta = 0;
    int panels = 1;
    std::vector<Vec2> nodes;
    std::vector<double> weights;

    double area() const;          // exact area of the region
    std::string scheme() const;   // e.g. "polar-gl16x64"
};

/// Throws BadResolution unless n_r >= 4 and n_theta >= 8.
DiskQuadrature disk_quadrature(const Vec2& center, double radius, int n_r, int n_theta);

/// Annulus r_in <= r <= r_out; same rule.
DiskQuadrature annulus_quadrature(const Vec2& center, double r_in, double r_out, int n_r, int n_theta);

/// Composite radial panels between consecutive breakpoints (first must be 0),
/// for integrands spread over many radial scales.
DiskQuadrature paneled_disk_quadrature(const Vec2& center, const std::vector<double>& breakpoints, int n_r,
                                       int n_theta);

/// Nodes of the disk of radius `radius`, refined: 2 n_r x 2 n_theta plus the
/// center. Used for sup-norm estimates.
std::vector<Vec2> dense_disk_samples(const Vec2& center, double radius, int n_r, int n_theta);

} // namespace willmore
