#include "willmore/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "willmore/error.hpp"

namespace willmore {
namespace {

GaussLegendre build_gauss_legendre(int n) {
    GaussLegendre r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

void check_resolution(int n_r, int n_theta) {
    if (n_r < 4 || n_theta < 8)
        throw BadResolution("disk quadrature needs n_r >= 4 and n_theta >= 8, got " + std::to_string(n_r) + "x" +
                            std::to_string(n_theta));
}

void add_ring_panel(DiskQuadrature& q, double r0, double r1, int n_r, int n_theta) {
    const auto& gl = gauss_legendre(n_r);
    const double half = 0.5 * (r1 - r0);
    const double mid = 0.5 * (r1 + r0);
    const double dtheta = 2.0 * std::numbers::pi / n_theta;
    for (int i = 0; i < n_r; ++i) {
        const double r = mid + half * gl.nodes[i];
        const double wr = half * gl.weights[i] * r * dtheta;
        for (int k = 0; k < n_theta; ++k) {
            const double t = k * dtheta;
            q.nodes.emplace_back(q.center[0] + r * std::cos(t), q.center[1] + r * std::sin(t));
            q.weights.push_back(wr);
        }
    }
}

} // namespace

const GaussLegendre& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
    return it->second;
}

double DiskQuadrature::area() const {
    return std::numbers::pi * (radius * radius - inner_radius * inner_radius);
}

std::string DiskQuadrature::scheme() const {
    std::string s = "polar-gl" + std::to_string(n_r) + "x" + std::to_string(n_theta);
    if (panels > 1) s += "-p" + std::to_string(panels);
    return s;
}

DiskQuadrature disk_quadrature(const Vec2& center, double radius, int n_r, int n_theta) {
    return annulus_quadrature(center, 0.0, radius, n_r, n_theta);
}

DiskQuadrature annulus_quadrature(const Vec2& center, double r_in, double r_out, int n_r, int n_theta) {
    check_resolution(n_r, n_theta);
    if (!(r_out > 0.0) || !(r_in >= 0.0) || !(r_in < r_out) || !center.allFinite())
        throw InvalidArgument("quadrature needs 0 <= r_in < r_out and a finite center");
    DiskQuadrature q;
    q.center = center;
    q.radius = r_out;
    q.inner_radius = r_in;
    q.n_r = n_r;
    q.n_theta = n_theta;
    add_ring_panel(q, r_in, r_out, n_r, n_theta);
    return q;
}

DiskQuadrature paneled_disk_quadrature(const Vec2& center, const std::vector<double>& breakpoints, int n_r,
                                       int n_theta) {
    check_resolution(n_r, n_theta);
    if (breakpoints.size() < 2 || breakpoints.front() != 0.0)
        throw InvalidArgument("panel breakpoints must start at 0 and have at least two entries");
    DiskQuadrature q;
    q.center = center;
    q.radius = breakpoints.back();
    q.n_r = n_r;
    q.n_theta = n_theta;
    q.panels = static_cast<int>(breakpoints.size()) - 1;
    for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
        if (!(breakpoints[k + 1] > breakpoints[k])) throw InvalidArgument("panel breakpoints must increase");
        add_ring_panel(q, breakpoints[k], breakpoints[k + 1], n_r, n_theta);
    }
    return q;
}

std::vector<Vec2> dense_disk_samples(const Vec2& center, double radius, int n_r, int n_theta) {
    std::vector<Vec2> pts;
    pts.push_back(center);
    const int nr = 2 * n_r;
    const int nt = 2 * n_theta;
    const auto& gl = gauss_legendre(nr);
    for (int i = 0; i < nr; ++i) {
        const double r = 0.5 * radius * (1.0 + gl.nodes[i]);
        for (int k = 0; k < nt; ++k) {
            const double t = 2.0 * std::numbers::pi * k / nt;
            pts.emplace_back(center[0] + r * std::cos(t), center[1] + r * std::sin(t));
        }
    }
    // The boundary circle itself.
    for (int k = 0; k < nt; ++k) {
        const double t = 2.0 * std::numbers::pi * k / nt;
        pts.emplace_back(center[0] + radius * std::cos(t), center[1] + radius * std::sin(t));
    }
    return pts;
}

} // namespace willmore
