#pragma once

#include <string>
#include <vector>

#include "willmore/quadrature.hpp"
#include "willmore/surface.hpp"

namespace willmore {

/// Experiment thresholds for the small-energy hypotheses. They only gate
/// scan rows; no theorem constant is asserted.
struct Thresholds {
    double eps0 = 0.1;
    double c0 = 10.0;
};

inline constexpr double kDirichletGate = 4.0 * 3.14159265358979323846 / 3.0;

/// Raw integrals over one quadrature rule.
struct EnergyTotals {
    double W = 0.0;           // int H^2 e^{2 lambda}
    double E_tf = 0.0;        // int |Atf e^{-lambda}|^2
    double dirichlet_n = 0.0; // int |grad n|^2
    double area = 0.0;        // int e^{2 lambda}
};

EnergyTotals integrate_energies(const SurfaceSpec& s, const DiskQuadrature& q);

struct EnergyReport {
    Vec2 center = Vec2::Zero();
    double radius = 0.0;
    std::string scheme;
    double W = 0.0;
    double E_tf = 0.0;
    double dirichlet_n = 0.0;
    double l2_tf = 0.0;        // ||Atf e^{-lambda}||_{L2(D_rho)}
    double linf_tf_half = 0.0; // sup over dense samples of D_{rho/2}
    double weak_l2_gradlambda = 0.0;
    double ratio = 0.0;        // rho linf / l2, 0 when umbilic
    bool umbilic = false;
    double hbar = 0.0;         // Euclidean mean of H over D_{rho/2}
    double h_osc = 0.0;        // ||(H - hbar) e^lambda||_{L2(D_{rho/2})}
    double lambda_bar = 0.0;   // Euclidean mean of lambda over D_rho
    bool gate_dirichlet = false;
    bool gate_weak = false;
    bool gate_small = false;
    bool hypotheses() const { return gate_dirichlet && gate_weak && gate_small; }
};

/// Anything at or below this L2 norm of the tracefree density counts as umbilic.
inline constexpr double kUmbilicTol = 1e-10;

EnergyReport energy_report(const SurfaceSpec& s, const DiskQuadrature& q, const Thresholds& t = {});

/// sup_alpha alpha^2 |{|f| >= alpha}| over 64 geometric levels spanning the
/// nonzero sample range. Throws EmptyField below 100 samples.
double weak_l2_quasinorm(const std::vector<double>& values, const std::vector<double>& weights);

/// One report per (center, radius), centers outer, in input order.
std::vector<EnergyReport> epsreg_scan(const SurfaceSpec& s, const std::vector<Vec2>& centers,
                                      const std::vector<double>& radii, int n_r, int n_theta,
                                      const Thresholds& t = {});

struct OscillationResult {
    double h_osc = 0.0; // ||(H - hbar) e^lambda||_{L2(D_{rho/2})}
    double l2_tf = 0.0; // ||Atf e^{-lambda}||_{L2(D_{rho/2})}
    double quotient = 0.0;
    double hbar = 0.0;
    bool degenerate = false;
    bool willmore = false; // the bound is only claimed for Willmore patches
};

OscillationResult oscillation_check(const SurfaceSpec& s, const DiskQuadrature& q);

struct GaussBonnetResult {
    double E_tf_total = 0.0;
    double W_total = 0.0;
    int chi = 2;
    double rhs = 0.0; // 2 W - 4 pi chi
    double defect = 0.0;
    double chart_radius = 1e3;
    std::string tail; // "analytic" or "complementary-chart"
};

/// Round spheres and Moebius images of them. Throws UnsupportedClosedSurface.
GaussBonnetResult gauss_bonnet_check(const SurfaceSpec& s, double chart_radius = 1e3);

/// Geometric radial breakpoints 0, R 2^-k, ..., R/2, R with the first
/// nonzero one below 0.1.
std::vector<double> geometric_breakpoints(double R);

} // namespace willmore
