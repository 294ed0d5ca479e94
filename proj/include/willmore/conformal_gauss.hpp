#pragma once

#include <string>
#include <vector>

#include "willmore/geom.hpp"
#include "willmore/grid.hpp"
#include "willmore/surface.hpp"

namespace willmore {

/// Conformal Gauss map Y = H l(Phi) + (n, <n,Phi>, <n,Phi>) in R^{4,1}, with
/// l(x) = (x, (|x|^2-1)/2, (|x|^2+1)/2), and its parameter derivatives.
struct CGMJet {
    Vec5 Y = Vec5::Zero();
    Vec5 Yx = Vec5::Zero();
    Vec5 Yy = Vec5::Zero();
    double lorentz_energy_density = 0.0; // <Yx,Yx> + <Yy,Yy>
};

Vec5 conformal_gauss_point(const Jet2& j, const FundamentalForms& f);

/// dY = dH l(Phi) - e^{-2 lambda} Atf . (Phi_j, <Phi,Phi_j>, <Phi,Phi_j>).
CGMJet conformal_gauss(const Jet2& j, const FundamentalForms& f, const Vec2& grad_H);
/// Same, with forms and grad H taken from the third-order jet.
CGMJet conformal_gauss(const Jet3& j);
/// Product-rule differentiation of Y itself, using exact grad n and grad H;
/// an independent path to the same derivatives.
CGMJet conformal_gauss_direct(const Jet3& j);

inline double recover_H(const Vec5& Y) { return Y[4] - Y[3]; }

struct ConformalityDefects {
    double cross = 0.0;      // |<Yx,Yy>|
    double anisotropy = 0.0; // |<Yx,Yx> - <Yy,Yy>|
    double density = 0.0;    // |<Yx,Yx> + <Yy,Yy> - density^2|
    double max() const;
};

ConformalityDefects conformality_report(const CGMJet& c, double density);

/// Y sampled on a disk grid; NaN outside the disk or where evaluation fails.
struct YGrid {
    DiskGrid grid;
    std::vector<Vec5> values;

    const Vec5& at(int i, int j) const { return values[grid.index(i, j)]; }
    bool valid(int i, int j) const;
};

YGrid sample_y_grid(const SurfaceSpec& s, const DiskGrid& g);

/// |Delta Y + <grad Y, grad Y> Y| on nodes whose 3x3 stencil is in the disk.
/// Throws GridTooSmall below 5x5 nodes.
ResidualField harmonicity_residual(const YGrid& y);
/// Frobenius norm of div(grad Y Y^T - Y grad Y^T) in flux form; the
/// discrete divergence collapses to (Delta_h Y) Y^T - Y (Delta_h Y)^T.
ResidualField conservation_residual(const YGrid& y);

/// CSV: '#' comments, header "x,y,Y1,Y2,Y3,Y4,Y5", one row per disk node.
void write_y_grid_csv(const YGrid& y, const std::string& path);
YGrid read_y_grid_csv(const std::string& path);

} // namespace willmore
