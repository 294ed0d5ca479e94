#include "willmore/normalizer.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "willmore/conformal_gauss.hpp"
#include "willmore/error.hpp"
#include "willmore/geom.hpp"
#include "willmore/kernels.hpp"

namespace willmore {

AverageData averages(const SurfaceSpec& s, const DiskQuadrature& q) {
    const std::size_t n = q.nodes.size();
    std::vector<Vec5> Y(n);
    std::vector<double> H(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Jet2 j = jet2(s, q.nodes[k]);
        const FundamentalForms f = fundamental_forms(j);
        Y[k] = conformal_gauss_point(j, f);
        H[k] = f.H;
    }
    const double mass = kernels::sum(q.weights);
    AverageData a;
    a.hbar = kernels::weighted_sum(q.weights, H) / mass;
    std::vector<double> comp(n);
    for (int c = 0; c < 5; ++c) {
        for (std::size_t k = 0; k < n; ++k) comp[k] = Y[k][c];
        a.ybar[c] = kernels::weighted_sum(q.weights, comp) / mass;
    }
    a.lorentz_square = lorentz_dot(a.ybar, a.ybar);
    for (std::size_t k = 0; k < n; ++k) {
        const Vec5 d = Y[k] - a.ybar;
        comp[k] = lorentz_dot(d, d);
    }
    a.variance = kernels::weighted_sum(q.weights, comp) / mass;
    return a;
}

double predicted_hbar_after_inversion(const Vec3& a, const AverageData& avg) {
    const Vec3 y123 = avg.ybar.head<3>();
    const double y4 = avg.ybar[3];
    const double y5 = avg.ybar[4];
    return 2.0 * a.dot(y123) - y5 - y4 - a.squaredNorm() * (y5 - y4);
}

SphereTarget target_sphere(const AverageData& avg, double tol) {
    SphereTarget t;
    const double p = avg.ybar[4] - avg.ybar[3];
    if (std::fabs(p) <= tol) {
        t.kind = SphereTarget::Kind::IdentitySuffices;
        return t;
    }
    if (avg.lorentz_square < 0.0) {
        t.kind = SphereTarget::Kind::NoRealSphere;
        return t;
    }
    t.kind = SphereTarget::Kind::Sphere;
    t.center = avg.ybar.head<3>() / p;
    t.radius = std::sqrt(avg.lorentz_square) / std::fabs(p);
    return t;
}

namespace {

std::vector<Vec3> fibonacci_sphere(int n) {
    std::vector<Vec3> out;
    out.reserve(n);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < n; ++k) {
        const double z = 1.0 - (2.0 * k + 1.0) / n;
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * k;
        out.emplace_back(rho * std::cos(phi), rho * std::sin(phi), z);
    }
    return out;
}

double min_distance(const Vec3& a, const std::vector<Vec3>& patch) {
    double m = std::numeric_limits<double>::infinity();
    for (const Vec3& x : patch) m = std::min(m, (x - a).norm());
    return m;
}

// Orthonormal frame with u as the third axis.
Mat3 frame_along(const Vec3& u) {
    const Vec3 helper = std::fabs(u[0]) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    const Vec3 e1 = helper.cross(u).normalized();
    const Vec3 e2 = u.cross(e1);
    Mat3 m;
    m.col(0) = e1;
    m.col(1) = e2;
    m.col(2) = u;
    return m;
}

} // namespace

CenterChoice select_center(const Vec3& c, double r, const std::vector<Vec3>& patch, double delta, double r_max) {
    if (patch.empty()) throw EmptyField("empty patch sample");
    constexpr int kCoarse = 256;
    constexpr int kFine = 64;
    const std::vector<Vec3> dirs = fibonacci_sphere(kCoarse);
    auto score = [&](const Vec3& a) { return a.norm() <= r_max ? min_distance(a, patch) : -1.0; };
    CenterChoice best{c + r * dirs[0], -2.0};
    Vec3 best_dir = dirs[0];
    for (const Vec3& d : dirs) {
        const Vec3 a = c + r * d;
        const double sc = score(a);
        if (sc > best.min_distance) {
            best = {a, sc};
            best_dir = d;
        }
    }
    // Refine on a cap about one coarse spacing wide around the winner.
    const double cap = std::sqrt(4.0 * std::numbers::pi / kCoarse);
    const Mat3 fr = frame_along(best_dir);
    for (const Vec3& d : fibonacci_sphere(kFine)) {
        if (d[2] < std::cos(cap)) continue;
        const Vec3 a = c + r * (fr * d).normalized();
        const double sc = score(a);
        if (sc > best.min_distance) best = {a, sc};
    }
    if (best.min_distance < delta) {
        std::ostringstream os;
        os << "no inversion center on the sphere keeps distance " << delta << " from the patch (best "
           << best.min_distance << ", |a| <= " << r_max << ")";
        throw NoAdmissibleCenter(os.str());
    }
    return best;
}

std::vector<Vec3> patch_image(const SurfaceSpec& s, const Vec2& center, double radius, int n_r, int n_theta) {
    std::vector<Vec3> out;
    for (const Vec2& p : dense_disk_samples(center, radius, n_r, n_theta)) out.push_back(jet2(s, p).phi);
    return out;
}

double mean_lambda(const SurfaceSpec& s, const DiskQuadrature& q) {
    std::vector<double> lam(q.nodes.size());
    for (std::size_t k = 0; k < lam.size(); ++k) lam[k] = fundamental_forms(jet2(s, q.nodes[k])).lambda;
    return kernels::weighted_sum(q.weights, lam) / kernels::sum(q.weights);
}

double rms_curvature(const SurfaceSpec& s, const DiskQuadrature& q) {
    std::vector<double> a2(q.nodes.size());
    for (std::size_t k = 0; k < a2.size(); ++k) a2[k] = full_norm_sq_g(fundamental_forms(jet2(s, q.nodes[k])));
    return std::sqrt(kernels::weighted_sum(q.weights, a2) / kernels::sum(q.weights));
}

namespace {

double image_diameter(const std::vector<Vec3>& image) {
    Vec3 lo = image.front(), hi = image.front();
    for (const Vec3& x : image) {
        lo = lo.cwiseMin(x);
        hi = hi.cwiseMax(x);
    }
    return std::max((hi - lo).norm(), 1e-300);
}

} // namespace

NormalizationResult normalize(const SurfaceSpec& s, const Vec2& center, double radius, const NormalizeOptions& opt) {
    const DiskQuadrature q = disk_quadrature(center, radius, opt.n_r, opt.n_theta);
    NormalizationResult res;
    res.lambda_bar_before = mean_lambda(s, q);

    const Vec3 origin = jet2(s, center).phi;
    const MoebiusMap pre = MoebiusMap::translate(-origin).then(MoebiusMap::dilate(std::exp(-res.lambda_bar_before)));
    const SurfacePtr prepared = make_transformed(pre, std::make_shared<const SurfaceSpec>(s));

    const AverageData avg = averages(*prepared, q);
    res.hbar_before = averages(s, q).hbar;
    res.lorentz_square = avg.lorentz_square;
    res.variance = avg.variance;
    double e_tf = 0.0;
    {
        std::vector<double> tf(q.nodes.size());
        for (std::size_t k = 0; k < tf.size(); ++k) {
            const double d = tracefree_density(fundamental_forms(jet2(s, q.nodes[k])));
            tf[k] = d * d;
        }
        e_tf = kernels::weighted_sum(q.weights, tf);
    }
    res.l2_tf = std::sqrt(e_tf);
    res.cory_quotient = res.l2_tf > 0.0 ? (1.0 - avg.lorentz_square) / e_tf : 0.0;
    res.cory_applicable = res.l2_tf <= opt.eps0;
    res.cory_gate = avg.lorentz_square >= 0.5;

    const double scale_before = rms_curvature(*prepared, q);
    res.curvature_scale = scale_before;
    // A flat patch has no curvature scale of its own; its size supplies one.
    const double floor_scale = 1.0 / image_diameter(patch_image(s, center, radius, opt.n_r, opt.n_theta));
    if (std::fabs(res.hbar_before) <= opt.hbar_tol * std::max(rms_curvature(s, q), floor_scale)) {
        res.status = NormalizationResult::Status::IdentitySuffices;
        res.achieved_hbar = std::fabs(res.hbar_before);
        res.lambda_bar_after = res.lambda_bar_before;
        return res;
    }

    const SphereTarget t = target_sphere(avg, 0.0);
    if (t.kind == SphereTarget::Kind::NoRealSphere) {
        std::ostringstream os;
        os << "<ybar, ybar> = " << avg.lorentz_square << " < 0: no real sphere of admissible centers";
        throw NoRealSphere(os.str());
    }
    const std::vector<Vec3> image = patch_image(*prepared, center, radius, opt.n_r, opt.n_theta);
    const double diameter = image_diameter(image);
    const CenterChoice choice =
        select_center(t.center, t.radius, image, opt.delta_factor * diameter, opt.r_max_factor * diameter);

    res.status = NormalizationResult::Status::Inverted;
    res.sphere_center = t.center;
    res.sphere_radius = t.radius;
    res.chosen_a = choice.a;
    res.min_distance = choice.min_distance;
    res.predicted_hbar = predicted_hbar_after_inversion(choice.a, avg);
    res.theta = pre.then(MoebiusMap::invert(choice.a));

    const SurfacePtr psi = make_transformed(res.theta, std::make_shared<const SurfaceSpec>(s));
    res.achieved_hbar = std::fabs(averages(*psi, q).hbar);
    res.lambda_bar_after = mean_lambda(*psi, q);
    res.curvature_scale = std::max(scale_before, rms_curvature(*psi, q));
    return res;
}

} // namespace willmore
