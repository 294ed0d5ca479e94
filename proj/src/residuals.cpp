#include "willmore/residuals.hpp"

#include <cmath>

#include "willmore/conformal_gauss.hpp"
#include "willmore/error.hpp"
#include "willmore/geom.hpp"
#include "willmore/kernels.hpp"

namespace willmore {
namespace {

struct NodeFields {
    double l, m, n, H, lambda, tf2;
    Vec3 V[2];
};

struct Sampled {
    DiskGrid g;
    std::vector<NodeFields> f;
    std::vector<char> ok;

    const NodeFields& at(int i, int j) const { return f[g.index(i, j)]; }
    bool good(int i, int j) const { return g.inside(i, j) && ok[g.index(i, j)]; }
    bool stencil_ok(int i, int j) const {
        return g.interior(i, j, 1) && good(i, j) && good(i + 1, j) && good(i - 1, j) && good(i, j + 1) &&
               good(i, j - 1);
    }
};

Sampled sample(const SurfaceSpec& s, const DiskGrid& g, bool with_flux) {
    Sampled out{g, std::vector<NodeFields>(g.size()), std::vector<char>(g.size(), 0)};
    for (int j = -g.n; j <= g.n; ++j) {
        for (int i = -g.n; i <= g.n; ++i) {
            if (!g.inside(i, j)) continue;
            try {
                const Jet3 jt = jet3(s, g.node(i, j));
                const FundamentalForms f = fundamental_forms(jt);
                NodeFields& nf = out.f[g.index(i, j)];
                nf.l = f.a11;
                nf.m = f.a12;
                nf.n = f.a22;
                nf.H = f.H;
                nf.lambda = f.lambda;
                nf.tf2 = tracefree_norm_sq_g(f);
                if (with_flux) {
                    const FormsGradient gr = forms_gradient(jt);
                    const Vec3 Hv = f.H * f.normal;
                    const Vec3 perp[2] = {-gr.grad_normal[1], gr.grad_normal[0]};
                    for (int k = 0; k < 2; ++k) {
                        const Vec3 dHv = gr.grad_H[k] * f.normal + f.H * gr.grad_normal[k];
                        nf.V[k] = dHv - 3.0 * dHv.dot(f.normal) * f.normal + perp[k].cross(Hv);
                    }
                }
                out.ok[g.index(i, j)] = 1;
            } catch (const Error&) {
                // hole
            }
        }
    }
    return out;
}

ResidualField empty_field(const DiskGrid& g) {
    ResidualField r;
    r.center = g.center;
    r.radius = g.radius;
    r.h = g.h;
    return r;
}

} // namespace

GaussCodazziResidual gauss_codazzi_residual(const SurfaceSpec& s, const DiskGrid& g) {
    const Sampled sm = sample(s, g, false);
    GaussCodazziResidual r{empty_field(g), empty_field(g), empty_field(g)};
    const double inv2h = 1.0 / (2.0 * g.h);
    for (int j = -g.n; j <= g.n; ++j) {
        for (int i = -g.n; i <= g.n; ++i) {
            if (!sm.stencil_ok(i, j)) continue;
            auto d = [&](auto field, int di, int dj) {
                return (field(sm.at(i + di, j + dj)) - field(sm.at(i - di, j - dj))) * inv2h;
            };
            auto tf = [](const NodeFields& f) { return 0.5 * (f.l - f.n); };
            auto m = [](const NodeFields& f) { return f.m; };
            auto H = [](const NodeFields& f) { return f.H; };
            const double e2l = std::exp(2.0 * sm.at(i, j).lambda);
            const double r1 = d(tf, 1, 0) + d(m, 0, 1) - e2l * d(H, 1, 0);
            const double r2 = -d(tf, 0, 1) + d(m, 1, 0) - e2l * d(H, 0, 1);
            const Vec2 p = g.node(i, j);
            r.x.nodes.push_back(p);
            r.x.values.push_back(std::fabs(r1));
            r.y.nodes.push_back(p);
            r.y.values.push_back(std::fabs(r2));
            r.magnitude.nodes.push_back(p);
            r.magnitude.values.push_back(std::hypot(r1, r2));
        }
    }
    r.x.summarize();
    r.y.summarize();
    r.magnitude.summarize();
    return r;
}

ResidualField willmore_residual_classical(const SurfaceSpec& s, const DiskGrid& g) {
    const Sampled sm = sample(s, g, false);
    std::vector<double> H(g.size(), std::nan(""));
    for (std::size_t k = 0; k < g.size(); ++k)
        if (sm.ok[k]) H[k] = sm.f[k].H;
    std::vector<double> lap(g.size(), std::nan(""));
    const std::size_t side = static_cast<std::size_t>(g.side());
    kernels::active().laplacian5(H.data(), side, side, g.h, lap.data());
    ResidualField r = empty_field(g);
    for (int j = -g.n; j <= g.n; ++j) {
        for (int i = -g.n; i <= g.n; ++i) {
            if (!sm.stencil_ok(i, j)) continue;
            const NodeFields& f = sm.at(i, j);
            const double v = std::exp(-2.0 * f.lambda) * lap[g.index(i, j)] + f.tf2 * f.H;
            r.nodes.push_back(g.node(i, j));
            r.values.push_back(std::fabs(v));
        }
    }
    r.summarize();
    return r;
}

ResidualField willmore_residual_divergence(const SurfaceSpec& s, const DiskGrid& g) {
    const Sampled sm = sample(s, g, true);
    ResidualField r = empty_field(g);
    const double inv2h = 1.0 / (2.0 * g.h);
    for (int j = -g.n; j <= g.n; ++j) {
        for (int i = -g.n; i <= g.n; ++i) {
            if (!sm.stencil_ok(i, j)) continue;
            const Vec3 div = (sm.at(i + 1, j).V[0] - sm.at(i - 1, j).V[0]) * inv2h +
                             (sm.at(i, j + 1).V[1] - sm.at(i, j - 1).V[1]) * inv2h;
            r.nodes.push_back(g.node(i, j));
            r.values.push_back(div.norm());
        }
    }
    r.summarize();
    return r;
}

const char* residual_name(ResidualKind k) {
    switch (k) {
    case ResidualKind::GaussCodazzi: return "gauss-codazzi";
    case ResidualKind::WillmoreClassical: return "willmore";
    case ResidualKind::WillmoreDivergence: return "willmore-divergence";
    case ResidualKind::Harmonicity: return "harmonicity";
    case ResidualKind::Conservation: return "conservation";
    }
    return "?";
}

ResidualKind parse_residual_kind(const std::string& name) {
    for (ResidualKind k : {ResidualKind::GaussCodazzi, ResidualKind::WillmoreClassical,
                           ResidualKind::WillmoreDivergence, ResidualKind::Harmonicity, ResidualKind::Conservation}) {
        if (name == residual_name(k)) return k;
    }
    throw InvalidArgument("unknown residual '" + name +
                          "' (gauss-codazzi, willmore, willmore-divergence, harmonicity, conservation)");
}

ResidualField residual(ResidualKind k, const SurfaceSpec& s, const DiskGrid& g) {
    switch (k) {
    case ResidualKind::GaussCodazzi: return gauss_codazzi_residual(s, g).magnitude;
    case ResidualKind::WillmoreClassical: return willmore_residual_classical(s, g);
    case ResidualKind::WillmoreDivergence: return willmore_residual_divergence(s, g);
    case ResidualKind::Harmonicity: return harmonicity_residual(sample_y_grid(s, g));
    case ResidualKind::Conservation: return conservation_residual(sample_y_grid(s, g));
    }
    throw InvalidArgument("unknown residual kind");
}

ConvergenceStudy convergence_study(ResidualKind k, const SurfaceSpec& s, const Vec2& center, double radius,
                                   double h0, int levels) {
    if (levels < 2) throw InvalidArgument("a convergence study needs at least two levels");
    ConvergenceStudy st;
    st.kind = k;
    double h = h0;
    for (int l = 0; l < levels; ++l, h *= 0.5) {
        const ResidualField f = residual(k, s, DiskGrid::make(center, radius, h));
        st.h.push_back(h);
        st.max_residual.push_back(f.max);
    }
    st.orders = observed_orders(st.max_residual);
    return st;
}

} // namespace willmore
