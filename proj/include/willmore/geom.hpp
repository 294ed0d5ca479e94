#pragma once

#include "willmore/jet.hpp"

namespace willmore {

/// Pointwise extrinsic geometry of a conformal chart.
///
/// The conformal factor follows lambda = 1/2 log(|grad Phi|^2 / 2), which
/// coincides with e^{2 lambda} dxdy = Phi^* xi when the chart is conformal.
/// The normal is Phi_x x Phi_y / |Phi_x x Phi_y|; with this choice the
/// stereographic sphere chart has H = +1/R (the normal points inward).
struct FundamentalForms {
    double lambda = 0.0;
    Vec3 normal = Vec3::UnitZ();
    double a11 = 0.0;
    double a12 = 0.0;
    double a22 = 0.0;
    double H = 0.0;
    double tf11 = 0.0;
    double tf12 = 0.0;
    double K = 0.0;
    double conformality_defect = 0.0;

    double tf22() const { return -tf11; }
    double e2l() const;
};

/// Parameter gradients of the pointwise fields, exact when computed from a
/// third-order jet.
struct FormsGradient {
    Vec2 grad_lambda = Vec2::Zero();
    Vec2 grad_H = Vec2::Zero();
    std::array<Vec3, 2> grad_normal{Vec3::Zero(), Vec3::Zero()};
    std::array<Vec2, 3> grad_a{Vec2::Zero(), Vec2::Zero(), Vec2::Zero()}; // a11, a12, a22
};

/// Threshold on |Phi_x x Phi_y| below which a jet is rejected.
double degeneracy_threshold(const Jet2& jet);

/// Throws DegenerateJet when |Phi_x x Phi_y| is below the degeneracy threshold.
FundamentalForms fundamental_forms(const Jet2& jet);

FormsGradient forms_gradient(const Jet3& jet);

/// Throws ConformalityViolation when f.conformality_defect > tol.
void require_conformal(const FundamentalForms& f, double tol);

/// Frobenius norm of e^{-lambda} * Atf, the conformally invariant density.
double tracefree_density(const FundamentalForms& f);

/// |A|_g^2 - 2|Atf|_g^2 - 2K; vanishes identically.
double curvature_identity_residual(const FundamentalForms& f);

double tracefree_norm_sq_g(const FundamentalForms& f); // |Atf|_g^2
double full_norm_sq_g(const FundamentalForms& f);      // |A|_g^2

} // namespace willmore
