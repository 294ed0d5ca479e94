#include "willmore/energetics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "willmore/error.hpp"
#include "willmore/geom.hpp"
#include "willmore/kernels.hpp"

namespace willmore {
namespace {

struct PointData {
    FundamentalForms f;
    FormsGradient g;
};

PointData evaluate(const SurfaceSpec& s, const Vec2& p) {
    const Jet3 j = jet3(s, p);
    return {fundamental_forms(j), forms_gradient(j)};
}

double weighted(const std::vector<double>& w, const std::vector<double>& f) {
    return kernels::weighted_sum(w, f);
}

} // namespace

EnergyTotals integrate_energies(const SurfaceSpec& s, const DiskQuadrature& q) {
    const std::size_t n = q.nodes.size();
    std::vector<double> h2(n), tf(n), dn(n), a(n);
    for (std::size_t k = 0; k < n; ++k) {
        const PointData d = evaluate(s, q.nodes[k]);
        const double e2l = d.f.e2l();
        h2[k] = d.f.H * d.f.H * e2l;
        const double t = tracefree_density(d.f);
        tf[k] = t * t;
        dn[k] = d.g.grad_normal[0].squaredNorm() + d.g.grad_normal[1].squaredNorm();
        a[k] = e2l;
    }
    return {weighted(q.weights, h2), weighted(q.weights, tf), weighted(q.weights, dn), weighted(q.weights, a)};
}

double weak_l2_quasinorm(const std::vector<double>& values, const std::vector<double>& weights) {
    if (values.size() != weights.size()) throw InvalidArgument("values and weights differ in length");
    if (values.size() < 100) throw EmptyField("weak-L2 estimate needs at least 100 weighted samples");
    double lo = 0.0;
    double hi = 0.0;
    for (double v : values) {
        const double a = std::fabs(v);
        if (!std::isfinite(a)) throw InvalidArgument("non-finite sample in weak-L2 estimate");
        if (a > 0.0) {
            lo = lo == 0.0 ? a : std::min(lo, a);
            hi = std::max(hi, a);
        }
    }
    if (hi == 0.0) return 0.0;
    constexpr int kLevels = 64;
    std::vector<double> indicator(values.size());
    double best = 0.0;
    for (int l = 0; l < kLevels; ++l) {
        const double alpha = lo == hi ? hi : lo * std::pow(hi / lo, static_cast<double>(l) / (kLevels - 1));
        for (std::size_t k = 0; k < values.size(); ++k) indicator[k] = std::fabs(values[k]) >= alpha ? 1.0 : 0.0;
        best = std::max(best, alpha * alpha * weighted(weights, indicator));
    }
    return best;
}

EnergyReport energy_report(const SurfaceSpec& s, const DiskQuadrature& q, const Thresholds& t) {
    EnergyReport r;
    r.center = q.center;
    r.radius = q.radius;
    r.scheme = q.scheme();
    const std::size_t n = q.nodes.size();
    std::vector<double> h2(n), tf(n), dn(n), gl(n), lam(n);
    for (std::size_t k = 0; k < n; ++k) {
        const PointData d = evaluate(s, q.nodes[k]);
        h2[k] = d.f.H * d.f.H * d.f.e2l();
        const double dens = tracefree_density(d.f);
        tf[k] = dens * dens;
        dn[k] = d.g.grad_normal[0].squaredNorm() + d.g.grad_normal[1].squaredNorm();
        gl[k] = d.g.grad_lambda.norm();
        lam[k] = d.f.lambda;
    }
    r.W = weighted(q.weights, h2);
    r.E_tf = weighted(q.weights, tf);
    r.dirichlet_n = weighted(q.weights, dn);
    r.l2_tf = std::sqrt(r.E_tf);
    r.weak_l2_gradlambda = weak_l2_quasinorm(gl, q.weights);
    r.lambda_bar = weighted(q.weights, lam) / q.area();

    double linf = 0.0;
    for (const Vec2& p : dense_disk_samples(q.center, 0.5 * q.radius, q.n_r * q.panels, q.n_theta)) {
        linf = std::max(linf, tracefree_density(fundamental_forms(jet2(s, p))));
    }
    r.linf_tf_half = linf;
    r.umbilic = r.l2_tf <= kUmbilicTol;
    r.ratio = r.umbilic ? 0.0 : q.radius * r.linf_tf_half / r.l2_tf;

    const OscillationResult osc = oscillation_check(s, q);
    r.hbar = osc.hbar;
    r.h_osc = osc.h_osc;

    r.gate_dirichlet = r.dirichlet_n <= kDirichletGate;
    r.gate_weak = r.weak_l2_gradlambda <= t.c0;
    r.gate_small = r.l2_tf <= t.eps0;
    return r;
}

std::vector<EnergyReport> epsreg_scan(const SurfaceSpec& s, const std::vector<Vec2>& centers,
                                      const std::vector<double>& radii, int n_r, int n_theta, const Thresholds& t) {
    std::vector<EnergyReport> out;
    out.reserve(centers.size() * radii.size());
    for (const Vec2& c : centers) {
        for (double rho : radii) out.push_back(energy_report(s, disk_quadrature(c, rho, n_r, n_theta), t));
    }
    return out;
}

OscillationResult oscillation_check(const SurfaceSpec& s, const DiskQuadrature& q) {
    const DiskQuadrature half = disk_quadrature(q.center, 0.5 * q.radius, q.n_r * q.panels, q.n_theta);
    const std::size_t n = half.nodes.size();
    std::vector<double> H(n), el(n), tf(n);
    for (std::size_t k = 0; k < n; ++k) {
        const FundamentalForms f = fundamental_forms(jet2(s, half.nodes[k]));
        H[k] = f.H;
        el[k] = std::exp(f.lambda);
        const double d = tracefree_density(f);
        tf[k] = d * d;
    }
    OscillationResult o;
    o.willmore = s.is_willmore();
    o.hbar = weighted(half.weights, H) / half.area();
    std::vector<double> dev(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double v = (H[k] - o.hbar) * el[k];
        dev[k] = v * v;
    }
    o.h_osc = std::sqrt(weighted(half.weights, dev));
    o.l2_tf = std::sqrt(weighted(half.weights, tf));
    o.degenerate = o.l2_tf <= kUmbilicTol;
    o.quotient = o.degenerate ? 0.0 : o.h_osc / o.l2_tf;
    return o;
}

std::vector<double> geometric_breakpoints(double R) {
    std::vector<double> b{R};
    while (b.back() > 0.1) b.push_back(0.5 * b.back());
    b.push_back(0.0);
    std::reverse(b.begin(), b.end());
    return b;
}

namespace {

// Peels Moebius wrappers; returns the sphere underneath or nullptr.
const surf::RoundSphere* underlying_sphere(const SurfaceSpec& s, std::vector<MoebiusMap>& maps) {
    if (const auto* r = std::get_if<surf::RoundSphere>(&s.variant())) return r;
    if (const auto* t = std::get_if<surf::Transformed>(&s.variant())) {
        maps.push_back(t->moebius);
        return underlying_sphere(*t->inner, maps);
    }
    return nullptr;
}

} // namespace

GaussBonnetResult gauss_bonnet_check(const SurfaceSpec& s, double chart_radius) {
    std::vector<MoebiusMap> maps;
    const surf::RoundSphere* sphere = underlying_sphere(s, maps);
    if (!sphere) throw UnsupportedClosedSurface("only round spheres and their Moebius images are supported, got '" + s.to_string() + "'");
    if (!(chart_radius > 1.0)) throw InvalidArgument("chart radius must exceed 1");
    GaussBonnetResult g;
    g.chart_radius = chart_radius;
    constexpr int kNr = 16;
    constexpr int kNt = 128;
    const DiskQuadrature main = paneled_disk_quadrature(Vec2::Zero(), geometric_breakpoints(chart_radius), kNr, kNt);
    const EnergyTotals chart = integrate_energies(s, main);
    g.W_total = chart.W;
    g.E_tf_total = chart.E_tf;
    if (maps.empty()) {
        // The chart disk misses a cap of area 4 pi r^2 / (1 + R^2) where H^2 = 1/r^2.
        g.W_total += 4.0 * std::numbers::pi / (1.0 + chart_radius * chart_radius);
        g.tail = "analytic";
    } else {
        // Same surface through the opposite stereographic chart, over the complementary disk.
        SurfacePtr other = make_sphere(sphere->radius, !sphere->antipodal);
        for (auto it = maps.rbegin(); it != maps.rend(); ++it) other = make_transformed(*it, other);
        const EnergyTotals cap = integrate_energies(*other, disk_quadrature(Vec2::Zero(), 1.0 / chart_radius, kNr, kNt));
        g.W_total += cap.W;
        g.E_tf_total += cap.E_tf;
        g.tail = "complementary-chart";
    }
    g.rhs = 2.0 * g.W_total - 4.0 * std::numbers::pi * g.chi;
    g.defect = std::fabs(g.E_tf_total - g.rhs);
    return g;
}

} // namespace willmore
