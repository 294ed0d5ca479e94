#include "willmore/conformal_gauss.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <cstdio>
#include <optional>
#include <sstream>

#include "willmore/error.hpp"
#include "willmore/format.hpp"
#include "willmore/kernels.hpp"

namespace willmore {
namespace {

Vec5 tangent_lift(const Vec3& phi, const Vec3& v) {
    const double s = phi.dot(v);
    Vec5 out;
    out << v[0], v[1], v[2], s, s;
    return out;
}

Vec5 normal_part(const Vec3& n, const Vec3& phi) {
    const double s = n.dot(phi);
    Vec5 out;
    out << n[0], n[1], n[2], s, s;
    return out;
}

void finish(CGMJet& c) {
    c.lorentz_energy_density = lorentz_dot(c.Yx, c.Yx) + lorentz_dot(c.Yy, c.Yy);
}

} // namespace

Vec5 conformal_gauss_point(const Jet2& j, const FundamentalForms& f) {
    return f.H * null_lift(j.phi) + normal_part(f.normal, j.phi);
}

CGMJet conformal_gauss(const Jet2& j, const FundamentalForms& f, const Vec2& grad_H) {
    CGMJet c;
    c.Y = conformal_gauss_point(j, f);
    const Vec5 l = null_lift(j.phi);
    const Vec5 tx = tangent_lift(j.phi, j.d1[0]);
    const Vec5 ty = tangent_lift(j.phi, j.d1[1]);
    const double k = std::exp(-2.0 * f.lambda);
    c.Yx = grad_H[0] * l - k * (f.tf11 * tx + f.tf12 * ty);
    c.Yy = grad_H[1] * l - k * (f.tf12 * tx + f.tf22() * ty);
    finish(c);
    return c;
}

CGMJet conformal_gauss(const Jet3& j) {
    const FundamentalForms f = fundamental_forms(j);
    return conformal_gauss(j, f, forms_gradient(j).grad_H);
}

CGMJet conformal_gauss_direct(const Jet3& j) {
    const FundamentalForms f = fundamental_forms(j);
    const FormsGradient g = forms_gradient(j);
    CGMJet c;
    c.Y = conformal_gauss_point(j, f);
    const Vec5 l = null_lift(j.phi);
    for (int k = 0; k < 2; ++k) {
        const Vec3& pk = j.d1[k];
        const Vec3& nk = g.grad_normal[k];
        Vec5 d = g.grad_H[k] * l + f.H * tangent_lift(j.phi, pk);
        const double s = nk.dot(j.phi) + f.normal.dot(pk);
        Vec5 dn;
        dn << nk[0], nk[1], nk[2], s, s;
        d += dn;
        (k == 0 ? c.Yx : c.Yy) = d;
    }
    finish(c);
    return c;
}

double ConformalityDefects::max() const { return std::max({cross, anisotropy, density}); }

ConformalityDefects conformality_report(const CGMJet& c, double density) {
    const double xx = lorentz_dot(c.Yx, c.Yx);
    const double yy = lorentz_dot(c.Yy, c.Yy);
    return {std::fabs(lorentz_dot(c.Yx, c.Yy)), std::fabs(xx - yy), std::fabs(xx + yy - density * density)};
}

bool YGrid::valid(int i, int j) const { return grid.inside(i, j) && at(i, j).allFinite(); }

YGrid sample_y_grid(const SurfaceSpec& s, const DiskGrid& g) {
    YGrid y{g, std::vector<Vec5>(g.size(), Vec5::Constant(std::nan("")))};
    for (int j = -g.n; j <= g.n; ++j) {
        for (int i = -g.n; i <= g.n; ++i) {
            if (!g.inside(i, j)) continue;
            try {
                const Jet2 jt = jet2(s, g.node(i, j));
                y.values[g.index(i, j)] = conformal_gauss_point(jt, fundamental_forms(jt));
            } catch (const Error&) {
                // left as a hole; residuals skip stencils touching it
            }
        }
    }
    return y;
}

namespace {

struct Stencils {
    std::vector<Vec5> lap;
    std::vector<Vec5> dx;
    std::vector<Vec5> dy;
};

Stencils stencils(const YGrid& y) {
    const DiskGrid& g = y.grid;
    if (g.side() < 5) throw GridTooSmall("harmonic residuals need at least 5x5 nodes");
    const std::size_t side = static_cast<std::size_t>(g.side());
    Stencils s;
    s.lap.assign(g.size(), Vec5::Constant(std::nan("")));
    std::vector<double> comp(g.size());
    std::vector<double> out(g.size(), std::nan(""));
    for (int c = 0; c < 5; ++c) {
        for (std::size_t k = 0; k < g.size(); ++k) comp[k] = y.values[k][c];
        kernels::active().laplacian5(comp.data(), side, side, g.h, out.data());
        for (std::size_t k = 0; k < g.size(); ++k) s.lap[k][c] = out[k];
    }
    s.dx.assign(g.size(), Vec5::Constant(std::nan("")));
    s.dy = s.dx;
    for (int j = -g.n + 1; j < g.n; ++j) {
        for (int i = -g.n + 1; i < g.n; ++i) {
            s.dx[g.index(i, j)] = (y.at(i + 1, j) - y.at(i - 1, j)) / (2.0 * g.h);
            s.dy[g.index(i, j)] = (y.at(i, j + 1) - y.at(i, j - 1)) / (2.0 * g.h);
        }
    }
    return s;
}

template <class F>
ResidualField interior_field(const YGrid& y, F value) {
    const DiskGrid& g = y.grid;
    ResidualField r;
    r.center = g.center;
    r.radius = g.radius;
    r.h = g.h;
    for (int j = -g.n; j <= g.n; ++j) {
        for (int i = -g.n; i <= g.n; ++i) {
            if (!g.interior(i, j, 1)) continue;
            const double v = value(g.index(i, j));
            if (!std::isfinite(v)) continue;
            r.nodes.push_back(g.node(i, j));
            r.values.push_back(v);
        }
    }
    r.summarize();
    return r;
}

} // namespace

ResidualField harmonicity_residual(const YGrid& y) {
    const Stencils s = stencils(y);
    return interior_field(y, [&](std::size_t k) {
        const double e = lorentz_dot(s.dx[k], s.dx[k]) + lorentz_dot(s.dy[k], s.dy[k]);
        return (s.lap[k] + e * y.values[k]).norm();
    });
}

ResidualField conservation_residual(const YGrid& y) {
    const Stencils s = stencils(y);
    return interior_field(y, [&](std::size_t k) {
        const Vec5& u = y.values[k];
        const Mat5 m = s.lap[k] * u.transpose() - u * s.lap[k].transpose();
        return m.norm();
    });
}

void write_y_grid_csv(const YGrid& y, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write '" + path + "'");
    out.precision(17);
    const DiskGrid& g = y.grid;
    out << "# willmore y-grid v1\n";
    out << "# grid center=" << shortest(g.center[0]) << ',' << shortest(g.center[1]) << " radius=" << shortest(g.radius)
        << " h=" << shortest(g.h) << '\n';
    out << "x,y,Y1,Y2,Y3,Y4,Y5\n";
    for (int j = -g.n; j <= g.n; ++j) {
        for (int i = -g.n; i <= g.n; ++i) {
            if (!y.valid(i, j)) continue;
            const Vec2 p = g.node(i, j);
            const Vec5& v = y.at(i, j);
            out << p[0] << ',' << p[1];
            for (int c = 0; c < 5; ++c) out << ',' << v[c];
            out << '\n';
        }
    }
}

namespace {

YGrid place_rows(const DiskGrid& g, const std::vector<std::pair<Vec2, Vec5>>& rows, const std::string& path) {
    YGrid y{g, {}};
    y.values.assign(y.grid.size(), Vec5::Constant(std::nan("")));
    for (const auto& [p, Y] : rows) {
        const Vec2 u = (p - g.center) / g.h;
        const long i = std::lround(u[0]);
        const long j = std::lround(u[1]);
        if (std::abs(u[0] - i) > 1e-6 || std::abs(u[1] - j) > 1e-6 || std::abs(i) > y.grid.n || std::abs(j) > y.grid.n)
            throw InvalidArgument("'" + path + "' is not a uniform square grid");
        y.values[y.grid.index(static_cast<int>(i), static_cast<int>(j))] = Y;
    }
    return y;
}

} // namespace

YGrid read_y_grid_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open '" + path + "'");
    std::vector<std::pair<Vec2, Vec5>> rows;
    std::string line;
    int lineno = 0;
    std::optional<DiskGrid> declared;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.rfind("# grid ", 0) == 0) {
            double cx, cy, r, h;
            if (std::sscanf(line.c_str(), "# grid center=%lf,%lf radius=%lf h=%lf", &cx, &cy, &r, &h) == 4)
                declared = DiskGrid::make({cx, cy}, r, h);
            continue;
        }
        if (line.empty() || line[0] == '#' || line.rfind("x,y", 0) == 0) continue;
        std::istringstream ls(line);
        double f[7];
        for (double& v : f) {
            std::string cell;
            if (!std::getline(ls, cell, ',')) throw InvalidArgument("row " + std::to_string(lineno) + ": expected 7 columns");
            char* e = nullptr;
            v = std::strtod(cell.c_str(), &e);
            if (e == cell.c_str()) throw InvalidArgument("row " + std::to_string(lineno) + ": bad number '" + cell + "'");
        }
        Vec5 Y;
        Y << f[2], f[3], f[4], f[5], f[6];
        rows.emplace_back(Vec2(f[0], f[1]), Y);
    }
    if (rows.empty()) throw EmptyField("no rows in '" + path + "'");
    if (declared) return place_rows(*declared, rows, path);
    Vec2 lo = rows[0].first, hi = lo;
    for (const auto& r : rows) {
        lo = lo.cwiseMin(r.first);
        hi = hi.cwiseMax(r.first);
    }
    double h = 0.0;
    for (const auto& r : rows) {
        const double d = r.first[0] - lo[0];
        if (d > 1e-12 && (h == 0.0 || d < h)) h = d;
    }
    if (h == 0.0) throw GridTooSmall("y-grid has a single column");
    const Vec2 center = 0.5 * (lo + hi);
    const double radius = 0.5 * std::max(hi[0] - lo[0], hi[1] - lo[1]);
    return place_rows(DiskGrid::make(center, radius, h), rows, path);
}

} // namespace willmore

