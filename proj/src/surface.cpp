#include "willmore/surface.hpp"

#include <cmath>
#include <sstream>

#include "willmore/error.hpp"
#include "willmore/format.hpp"
#include "willmore/quadrature.hpp"
#include "willmore/taylor.hpp"

namespace willmore {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Jet3 from_components(const Taylor3& a, const Taylor3& b, const Taylor3& c, const Vec2& p) {
    return to_jet3({a, b, c}, p);
}

// ------------------------------------------------------------ Weierstrass

constexpr double kPoleMargin = 1e-3;

double distance_to_segment(Complex q, Complex a, Complex b) {
    const Complex d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(q - a);
    double t = ((q - a) * std::conj(d)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(q - (a + t * d));
}

std::array<Complex, 3> eval3(const std::array<RationalExpr, 3>& e, Complex z) {
    return {e[0].evaluate(z), e[1].evaluate(z), e[2].evaluate(z)};
}

// Gauss-Legendre on [t0, t1] of F(base + t (p - base)), 16 nodes.
std::array<Complex, 3> gl_panel(const surf::Weierstrass& w, Complex base, Complex dir, double t0, double t1) {
    const auto& gl = gauss_legendre(16);
    std::array<Complex, 3> acc{};
    const double half = 0.5 * (t1 - t0);
    const double mid = 0.5 * (t1 + t0);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const auto f = eval3(w.F, base + (mid + half * gl.nodes[i]) * dir);
        for (int k = 0; k < 3; ++k) acc[k] += half * gl.weights[i] * f[k];
    }
    return acc;
}

std::array<Complex, 3> adaptive(const surf::Weierstrass& w, Complex base, Complex dir, double t0, double t1,
                                const std::array<Complex, 3>& whole, int depth) {
    const double tm = 0.5 * (t0 + t1);
    const auto left = gl_panel(w, base, dir, t0, tm);
    const auto right = gl_panel(w, base, dir, tm, t1);
    double err = 0.0;
    double mag = 0.0;
    std::array<Complex, 3> both;
    for (int k = 0; k < 3; ++k) {
        both[k] = left[k] + right[k];
        err = std::max(err, std::abs(both[k] - whole[k]));
        mag = std::max(mag, std::abs(both[k]));
    }
    if (err <= 1e-14 * std::max(1.0, mag) || depth >= 24) return both;
    const auto l = adaptive(w, base, dir, t0, tm, left, depth + 1);
    const auto r = adaptive(w, base, dir, tm, t1, right, depth + 1);
    return {l[0] + r[0], l[1] + r[1], l[2] + r[2]};
}

Jet3 weierstrass_jet(const surf::Weierstrass& w, const Vec2& p) {
    const Complex z(p[0], p[1]);
    for (const Complex& pole : w.poles) {
        if (distance_to_segment(pole, w.base, z) < kPoleMargin) {
            std::ostringstream os;
            os << "integration path from " << w.base << " to " << z << " passes within " << kPoleMargin
               << " of the pole " << pole;
            throw PoleOnPath(os.str());
        }
    }
    const auto F = eval3(w.F, z);
    const auto dF = eval3(w.dF, z);
    const auto ddF = eval3(w.ddF, z);
    Jet3 j;
    j.p = p;
    const Complex dir = z - w.base;
    std::array<Complex, 3> integral{};
    if (dir != Complex(0.0, 0.0)) integral = adaptive(w, w.base, dir, 0.0, 1.0, gl_panel(w, w.base, dir, 0.0, 1.0), 0);
    for (int k = 0; k < 3; ++k) {
        j.phi[k] = (dir * integral[k]).real();
        j.d1[0][k] = F[k].real();
        j.d1[1][k] = -F[k].imag();
        j.d2[0][k] = dF[k].real();
        j.d2[1][k] = -dF[k].imag();
        j.d2[2][k] = -dF[k].real();
        j.d3[0][k] = ddF[k].real();
        j.d3[1][k] = -ddF[k].imag();
        j.d3[2][k] = -ddF[k].real();
        j.d3[3][k] = ddF[k].imag();
    }
    if (!j.finite()) throw OutOfDomain("Weierstrass integrand is not finite at the requested point");
    return j;
}

// ------------------------------------------------------------ sampled grids

struct GridStencil {
    const surf::SampledGrid& g;

    Vec3 f(int i, int j) const {
        if (i < 0 || j < 0 || i >= g.nx || j >= g.ny) throw OutOfDomain("finite-difference stencil leaves the grid");
        const Vec3& v = g.at(i, j);
        if (!v.allFinite()) throw OutOfDomain("finite-difference stencil meets a hole in the grid");
        return v;
    }

    // Centered differences with node step s (h_eff = s h), second order.
    Vec3 d(int i, int j, int ox, int oy, int s) const {
        const double h = s * g.h;
        auto dx1 = [&](int a, int b) { return (f(a + s, b) - f(a - s, b)) / (2.0 * h); };
        auto dxx = [&](int a, int b) { return (f(a + s, b) - 2.0 * f(a, b) + f(a - s, b)) / (h * h); };
        auto dy1 = [&](auto fn, int a, int b) { return (fn(a, b + s) - fn(a, b - s)) / (2.0 * h); };
        auto dyy = [&](auto fn, int a, int b) { return (fn(a, b + s) - 2.0 * fn(a, b) + fn(a, b - s)) / (h * h); };
        auto id = [&](int a, int b) { return f(a, b); };
        auto dxxx = [&](int a, int b) {
            return (f(a + 2 * s, b) - 2.0 * f(a + s, b) + 2.0 * f(a - s, b) - f(a - 2 * s, b)) / (2.0 * h * h * h);
        };
        switch (ox * 10 + oy) {
        case 0: return f(i, j);
        case 10: return dx1(i, j);
        case 1: return dy1(id, i, j);
        case 20: return dxx(i, j);
        case 11: return dy1(dx1, i, j);
        case 2: return dyy(id, i, j);
        case 30: return dxxx(i, j);
        case 21: return dy1(dxx, i, j);
        case 12: return dyy(dx1, i, j);
        case 3: {
            return (f(i, j + 2 * s) - 2.0 * f(i, j + s) + 2.0 * f(i, j - s) - f(i, j - 2 * s)) / (2.0 * h * h * h);
        }
        default: throw InvalidArgument("unsupported derivative order");
        }
    }

    Vec3 deriv(int i, int j, int ox, int oy) const {
        if (ox + oy == 0) return f(i, j);
        const Vec3 fine = d(i, j, ox, oy, 1);
        if (!g.richardson) return fine;
        return (4.0 * fine - d(i, j, ox, oy, 2)) / 3.0;
    }

    Jet3 node_jet(int i, int j) const {
        Jet3 jt;
        jt.p = Vec2(g.x0 + i * g.h, g.y0 + j * g.h);
        jt.phi = deriv(i, j, 0, 0);
        jt.d1 = {deriv(i, j, 1, 0), deriv(i, j, 0, 1)};
        jt.d2 = {deriv(i, j, 2, 0), deriv(i, j, 1, 1), deriv(i, j, 0, 2)};
        jt.d3 = {deriv(i, j, 3, 0), deriv(i, j, 2, 1), deriv(i, j, 1, 2), deriv(i, j, 0, 3)};
        return jt;
    }
};

Jet3 blend(const Jet3& a, const Jet3& b, double t) {
    Jet3 r = a;
    r.phi = (1 - t) * a.phi + t * b.phi;
    for (int k = 0; k < 2; ++k) r.d1[k] = (1 - t) * a.d1[k] + t * b.d1[k];
    for (int k = 0; k < 3; ++k) r.d2[k] = (1 - t) * a.d2[k] + t * b.d2[k];
    for (int k = 0; k < 4; ++k) r.d3[k] = (1 - t) * a.d3[k] + t * b.d3[k];
    return r;
}

Jet3 grid_jet(const surf::SampledGrid& g, const Vec2& p) {
    const GridStencil st{g};
    const double u = (p[0] - g.x0) / g.h;
    const double v = (p[1] - g.y0) / g.h;
    if (!std::isfinite(u) || !std::isfinite(v)) throw OutOfDomain("non-finite parameter");
    const double ru = std::round(u);
    const double rv = std::round(v);
    if (std::fabs(u - ru) < 1e-9 && std::fabs(v - rv) < 1e-9) {
        Jet3 j = st.node_jet(static_cast<int>(ru), static_cast<int>(rv));
        j.p = p;
        return j;
    }
    // Off-node: bilinear blend of the four surrounding node jets.
    const int i = static_cast<int>(std::floor(u));
    const int j = static_cast<int>(std::floor(v));
    const double tu = u - i;
    const double tv = v - j;
    const Jet3 lo = blend(st.node_jet(i, j), st.node_jet(i + 1, j), tu);
    const Jet3 hi = blend(st.node_jet(i, j + 1), st.node_jet(i + 1, j + 1), tu);
    Jet3 r = blend(lo, hi, tv);
    r.p = p;
    return r;
}

} // namespace

// ------------------------------------------------------------ jets

Jet3 jet3(const SurfaceSpec& s, const Vec2& p) {
    if (!p.allFinite()) throw OutOfDomain("non-finite parameter point");
    const Taylor3 X = Taylor3::variable(p[0], 0);
    const Taylor3 Y = Taylor3::variable(p[1], 1);
    return std::visit(
        Overloaded{
            [&](const surf::Plane&) { return from_components(X, Y, Taylor3(0.0), p); },
            [&](const surf::RoundSphere& r) {
                const Taylor3 r2 = X * X + Y * Y;
                const Taylor3 inv = reciprocal(1.0 + r2) * r.radius;
                const Taylor3 z = r.antipodal ? 1.0 - r2 : r2 - 1.0;
                return from_components(2.0 * X * inv, 2.0 * Y * inv, z * inv, p);
            },
            [&](const surf::Enneper&) {
                const Taylor3 a = X - X * X * X * (1.0 / 3.0) + X * Y * Y;
                const Taylor3 b = -Y + Y * Y * Y * (1.0 / 3.0) - X * X * Y;
                return from_components(a, b, X * X - Y * Y, p);
            },
            [&](const surf::Catenoid&) {
                const Taylor3 ch = cosh(X);
                return from_components(ch * cos(Y), ch * sin(Y), X, p);
            },
            [&](const surf::GraphPatch& g) {
                Taylor3 h;
                switch (g.height) {
                case surf::GraphPatch::Height::Paraboloid: h = X * X + 2.0 * Y * Y; break;
                case surf::GraphPatch::Height::Saddle: h = X * Y; break;
                case surf::GraphPatch::Height::Bump: h = exp(-(X * X + Y * Y)); break;
                }
                return from_components(X, Y, h, p);
            },
            [&](const surf::Weierstrass& w) { return weierstrass_jet(w, p); },
            [&](const surf::Transformed& t) { return pushforward_jet(t.moebius, jet3(*t.inner, p)); },
            [&](const surf::Rescaled& r) {
                Jet3 j = jet3(*r.inner, r.center + r.scale * p);
                const double s = r.scale;
                j.p = p;
                for (auto& v : j.d1) v *= s;
                for (auto& v : j.d2) v *= s * s;
                for (auto& v : j.d3) v *= s * s * s;
                return j;
            },
            [&](const surf::Perturbed& pt) {
                Jet3 j = jet3(*pt.inner, p);
                TaylorVec3 t = to_taylor(j);
                t[2] += pt.eps * X * X;
                return to_jet3(t, p);
            },
            [&](const surf::GridSampled& g) { return grid_jet(*g.grid, p); },
        },
        s.variant());
}

Jet2 jet2(const SurfaceSpec& s, const Vec2& p) { return static_cast<Jet2>(jet3(s, p)); }

// ------------------------------------------------------------ properties

bool SurfaceSpec::is_willmore() const {
    return std::visit(Overloaded{
                          [](const surf::GraphPatch&) { return false; },
                          [](const surf::GridSampled&) { return false; },
                          [](const surf::Transformed& t) { return t.inner->is_willmore(); },
                          [](const surf::Rescaled& r) { return r.inner->is_willmore(); },
                          [](const surf::Perturbed& p) { return p.eps == 0.0 && p.inner->is_willmore(); },
                          [](const auto&) { return true; },
                      },
                      v_);
}

bool SurfaceSpec::is_conformal() const {
    return std::visit(Overloaded{
                          [](const surf::GraphPatch&) { return false; },
                          [](const surf::GridSampled&) { return false; },
                          [](const surf::Transformed& t) { return t.inner->is_conformal(); },
                          [](const surf::Rescaled& r) { return r.inner->is_conformal(); },
                          [](const surf::Perturbed& p) { return p.eps == 0.0 && p.inner->is_conformal(); },
                          [](const auto&) { return true; },
                      },
                      v_);
}

int SurfaceSpec::depth() const {
    return std::visit(Overloaded{
                          [](const surf::Transformed& t) { return 1 + t.inner->depth(); },
                          [](const surf::Rescaled& r) { return 1 + r.inner->depth(); },
                          [](const surf::Perturbed& p) { return 1 + p.inner->depth(); },
                          [](const auto&) { return 0; },
                      },
                      v_);
}

namespace {

std::string fmt(double v) { return shortest(v); }

std::string fmt_complex(Complex c) {
    if (c.imag() == 0.0) return fmt(c.real());
    return fmt(c.real()) + (c.imag() < 0 ? "-" : "+") + fmt(std::fabs(c.imag())) + "i";
}

const char* height_name(surf::GraphPatch::Height h) {
    switch (h) {
    case surf::GraphPatch::Height::Paraboloid: return "paraboloid";
    case surf::GraphPatch::Height::Saddle: return "saddle";
    case surf::GraphPatch::Height::Bump: return "bump";
    }
    return "paraboloid";
}

} // namespace

std::string SurfaceSpec::to_string() const {
    return std::visit(
        Overloaded{
            [](const surf::Plane&) -> std::string { return "plane"; },
            [](const surf::RoundSphere& r) -> std::string {
                return "sphere r=" + fmt(r.radius) + (r.antipodal ? " chart=south" : "");
            },
            [](const surf::Enneper&) -> std::string { return "enneper"; },
            [](const surf::Catenoid&) -> std::string { return "catenoid"; },
            [](const surf::GraphPatch& g) -> std::string { return std::string("graph h=") + height_name(g.height); },
            [](const surf::Weierstrass& w) -> std::string {
                return "weierstrass g=\"" + w.g_text + "\" dh=\"" + w.dh_text + "\" base=" + fmt_complex(w.base);
            },
            [](const surf::Transformed& t) -> std::string {
                return "moebius \"" + willmore::to_string(t.moebius) + "\" of (" + t.inner->to_string() + ")";
            },
            [](const surf::Rescaled& r) -> std::string {
                return "rescale center=(" + fmt(r.center[0]) + "," + fmt(r.center[1]) + ") scale=" + fmt(r.scale) +
                       " of (" + r.inner->to_string() + ")";
            },
            [](const surf::Perturbed& p) -> std::string {
                return "perturb eps=" + fmt(p.eps) + " of (" + p.inner->to_string() + ")";
            },
            [](const surf::GridSampled& g) -> std::string {
                return "grid file=" + g.grid->source + (g.grid->richardson ? " richardson=1" : "");
            },
        },
        v_);
}

// ------------------------------------------------------------ factories

namespace {

SurfacePtr wrap(SurfaceSpec::Variant v) {
    auto s = std::make_shared<const SurfaceSpec>(std::move(v));
    if (s->depth() > kMaxSurfaceDepth)
        throw InvalidArgument("surface nesting depth exceeds " + std::to_string(kMaxSurfaceDepth));
    return s;
}

void require_inner(const SurfacePtr& inner) {
    if (!inner) throw InvalidArgument("missing inner surface");
}

} // namespace

SurfacePtr make_plane() { return wrap(surf::Plane{}); }

SurfacePtr make_sphere(double radius, bool antipodal) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("sphere radius must be positive");
    return wrap(surf::RoundSphere{radius, antipodal});
}

SurfacePtr make_enneper() { return wrap(surf::Enneper{}); }
SurfacePtr make_catenoid() { return wrap(surf::Catenoid{}); }
SurfacePtr make_graph(surf::GraphPatch::Height h) { return wrap(surf::GraphPatch{h}); }

SurfacePtr make_weierstrass(std::string_view g_text, std::string_view dh_text, Complex base) {
    surf::Weierstrass w;
    w.g_text = std::string(g_text);
    w.dh_text = std::string(dh_text);
    w.base = base;
    const RationalExpr g = parse_rational(g_text);
    const RationalExpr dh = parse_rational(dh_text);
    const RationalExpr one = RationalExpr::constant({1.0, 0.0});
    const RationalExpr half = RationalExpr::constant({0.5, 0.0});
    const RationalExpr ihalf = RationalExpr::constant({0.0, 0.5});
    const RationalExpr g2 = g.pow(2);
    w.F = {half * (one - g2) * dh, ihalf * (one + g2) * dh, g * dh};
    for (int k = 0; k < 3; ++k) {
        check_denominators(w.F[k]);
        w.dF[k] = differentiate(w.F[k]);
        w.ddF[k] = differentiate(w.dF[k]);
    }
    for (int k = 0; k < 3; ++k) {
        for (const Complex& pole : candidate_poles(w.F[k])) w.poles.push_back(pole);
    }
    for (const Complex& pole : w.poles) {
        if (std::abs(pole - base) < kPoleMargin)
            throw PoleOnPath("Weierstrass basepoint lies on a pole of the integrand");
    }
    return wrap(std::move(w));
}

SurfacePtr make_transformed(const MoebiusMap& m, SurfacePtr inner) {
    require_inner(inner);
    validate(m);
    return wrap(surf::Transformed{m, std::move(inner)});
}

SurfacePtr make_rescaled(const Vec2& center, double scale, SurfacePtr inner) {
    require_inner(inner);
    if (!(scale > 0.0) || !std::isfinite(scale) || !center.allFinite())
        throw InvalidArgument("rescale needs a finite center and a positive scale");
    return wrap(surf::Rescaled{center, scale, std::move(inner)});
}

SurfacePtr make_perturbed(double eps, SurfacePtr inner) {
    require_inner(inner);
    if (!std::isfinite(eps)) throw InvalidArgument("perturbation must be finite");
    return wrap(surf::Perturbed{eps, std::move(inner)});
}

SurfacePtr make_grid_sampled(surf::SampledGrid grid) {
    if (grid.nx < 5 || grid.ny < 5) throw GridTooSmall("sampled grids need at least 5x5 nodes");
    if (!(grid.h > 0.0)) throw InvalidArgument("grid spacing must be positive");
    if (grid.values.size() != static_cast<std::size_t>(grid.nx) * grid.ny)
        throw InvalidArgument("grid value count does not match its dimensions");
    return wrap(surf::GridSampled{std::make_shared<const surf::SampledGrid>(std::move(grid))});
}

surf::SampledGrid sample_grid(const SurfaceSpec& s, const Vec2& origin, double h, int nx, int ny) {
    surf::SampledGrid g;
    g.x0 = origin[0];
    g.y0 = origin[1];
    g.h = h;
    g.nx = nx;
    g.ny = ny;
    g.values.reserve(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            try {
                g.values.push_back(jet2(s, Vec2(g.x0 + i * h, g.y0 + j * h)).phi);
            } catch (const Error&) {
                g.values.push_back(Vec3::Constant(std::nan("")));
            }
        }
    }
    g.source = "<sampled " + s.to_string() + ">";
    return g;
}

} // namespace willmore
