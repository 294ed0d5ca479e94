#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "willmore/jet.hpp"
#include "willmore/moebius.hpp"
#include "willmore/rational.hpp"

namespace willmore {

class SurfaceSpec;
using SurfacePtr = std::shared_ptr<const SurfaceSpec>;

namespace surf {

struct Plane {};

/// Stereographic chart r (2x, 2y, x^2+y^2-1) / (1+x^2+y^2), covering all but
/// the north pole.
struct RoundSphere {
    double radius = 1.0;
    /// Chart from the south pole instead, r (2x, 2y, 1-x^2-y^2)/(1+x^2+y^2).
    bool antipodal = false;
};

/// (x - x^3/3 + x y^2, -y + y^3/3 - x^2 y, x^2 - y^2)
struct Enneper {};

/// (cosh x cos y, cosh x sin y, x)
struct Catenoid {};

/// Non-conformal graph (x, y, h(x, y)); heights are built-ins.
struct GraphPatch {
    enum class Height { Paraboloid, Saddle, Bump };
    Height height = Height::Paraboloid;
};

/// Phi(z) = Re int_base^z (1/2 (1 - g^2), i/2 (1 + g^2), g) dh, with dh the
/// coefficient of dz.
struct Weierstrass {
    std::string g_text;
    std::string dh_text;
    Complex base{0.0, 0.0};
    // Integrand F and its first two derivatives, per component.
    std::array<RationalExpr, 3> F;
    std::array<RationalExpr, 3> dF;
    std::array<RationalExpr, 3> ddF;
    std::vector<Complex> poles;
};

struct Transformed {
    MoebiusMap moebius;
    SurfacePtr inner;
};

/// Phi(center + scale * u)
struct Rescaled {
    Vec2 center = Vec2::Zero();
    double scale = 1.0;
    SurfacePtr inner;
};

/// Phi + eps (0, 0, x^2): a non-Willmore, non-conformal control.
struct Perturbed {
    double eps = 0.05;
    SurfacePtr inner;
};

/// Samples of Phi on a uniform grid; derivatives by centered differences.
struct SampledGrid {
    double x0 = 0.0;
    double y0 = 0.0;
    double h = 1.0;
    int nx = 0;
    int ny = 0;
    std::vector<Vec3> values; // row-major in y, nx per row; NaN marks a hole
    bool richardson = false;
    std::string source;

    const Vec3& at(int i, int j) const { return values[static_cast<std::size_t>(j) * nx + i]; }
};

struct GridSampled {
    std::shared_ptr<const SampledGrid> grid;
};

} // namespace surf

/// Analytic test surface (or sampled data) with jets up to third order.
class SurfaceSpec {
public:
    using Variant = std::variant<surf::Plane, surf::RoundSphere, surf::Enneper, surf::Catenoid,
                                 surf::GraphPatch, surf::Weierstrass, surf::Transformed,
                                 surf::Rescaled, surf::Perturbed, surf::GridSampled>;

    explicit SurfaceSpec(Variant v) : v_(std::move(v)) {}

    const Variant& variant() const { return v_; }

    /// Critical point of W: minimal, umbilic, or a Moebius image of one.
    bool is_willmore() const;
    /// Conformal charts (graphs, perturbations and grids are not certified).
    bool is_conformal() const;
    /// Nesting depth of Transformed / Rescaled / Perturbed wrappers.
    int depth() const;

    std::string to_string() const;

private:
    Variant v_;
};

inline constexpr int kMaxSurfaceDepth = 8;

SurfacePtr make_plane();
SurfacePtr make_sphere(double radius = 1.0, bool antipodal = false);
SurfacePtr make_enneper();
SurfacePtr make_catenoid();
SurfacePtr make_graph(surf::GraphPatch::Height h);
/// Throws SyntaxError / DivisionByZeroExpr on bad expressions.
SurfacePtr make_weierstrass(std::string_view g, std::string_view dh, Complex base = {});
SurfacePtr make_transformed(const MoebiusMap& m, SurfacePtr inner);
SurfacePtr make_rescaled(const Vec2& center, double scale, SurfacePtr inner);
SurfacePtr make_perturbed(double eps, SurfacePtr inner);
SurfacePtr make_grid_sampled(surf::SampledGrid grid);

/// Samples a surface on a uniform grid (for tests and the CSV dump).
surf::SampledGrid sample_grid(const SurfaceSpec& s, const Vec2& origin, double h, int nx, int ny);

Jet3 jet3(const SurfaceSpec& s, const Vec2& p);
Jet2 jet2(const SurfaceSpec& s, const Vec2& p);

/// Single-line spec language:
///   plane | sphere [r=R] [chart=south] | enneper | catenoid
///   graph h=paraboloid|saddle|bump
///   weierstrass g="EXPR" dh="EXPR" [base=COMPLEX]
///   invert center=(x,y,z) of (SPEC)
///   moebius "STAGES" of (SPEC)
///   rescale center=(x,y) scale=S of (SPEC)
///   perturb eps=E of (SPEC)
///   grid file=PATH [richardson=1]
SurfacePtr parse_surface(std::string_view text);

/// Grid CSV: optional '#' comment lines, header "x,y,X,Y,Z", one row per node.
surf::SampledGrid read_grid_csv(const std::string& path);
void write_grid_csv(const surf::SampledGrid& g, const std::string& path);

} // namespace willmore
