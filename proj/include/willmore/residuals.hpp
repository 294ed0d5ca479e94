#pragma once

#include <string>
#include <vector>

#include "willmore/grid.hpp"
#include "willmore/surface.hpp"

namespace willmore {

struct GaussCodazziResidual {
    ResidualField x;         // |((l-n)/2)_x + m_y - e^{2 lambda} H_x|
    ResidualField y;         // |-((l-n)/2)_y + m_x - e^{2 lambda} H_y|
    ResidualField magnitude; // Euclidean norm of the pair
};

/// Centered differences of l, m, n, H sampled from jets; l, m, n are the
/// second fundamental form entries.
GaussCodazziResidual gauss_codazzi_residual(const SurfaceSpec& s, const DiskGrid& g);

/// e^{-2 lambda} Delta_h H + |Atf|_g^2 H.
ResidualField willmore_residual_classical(const SurfaceSpec& s, const DiskGrid& g);

/// |div_h V| with V_k = d_k Hvec - 3 <d_k Hvec, n> n + (perp grad n)_k x Hvec,
/// perp grad = (-d_y, d_x), Hvec = H n. V is exact from third-order jets; the
/// outer divergence is a centered difference.
ResidualField willmore_residual_divergence(const SurfaceSpec& s, const DiskGrid& g);

enum class ResidualKind { GaussCodazzi, WillmoreClassical, WillmoreDivergence, Harmonicity, Conservation };

const char* residual_name(ResidualKind k);
ResidualKind parse_residual_kind(const std::string& name);
ResidualField residual(ResidualKind k, const SurfaceSpec& s, const DiskGrid& g);

struct ConvergenceStudy {
    ResidualKind kind = ResidualKind::GaussCodazzi;
    std::vector<double> h;
    std::vector<double> max_residual;
    std::vector<double> orders;
};

/// Max interior residual at h0, h0/2, ... (`levels` grids).
ConvergenceStudy convergence_study(ResidualKind k, const SurfaceSpec& s, const Vec2& center, double radius,
                                   double h0, int levels = 3);

} // namespace willmore
