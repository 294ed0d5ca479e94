#include "willmore/geom.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "willmore/dual.hpp"
#include "willmore/error.hpp"

namespace willmore {
namespace {

template <class T>
struct FormsT {
    T lambda;
    V3<T> normal;
    T a11, a12, a22;
    T H;
};

// The definitions, written once over a generic scalar so that Dual inputs
// yield exact first derivatives of every field.
template <class T>
FormsT<T> forms_generic(const V3<T>& px, const V3<T>& py, const V3<T>& pxx, const V3<T>& pxy,
                        const V3<T>& pyy) {
    using std::log;
    using std::sqrt;
    FormsT<T> f;
    const V3<T> N = cross(px, py);
    const T nn = sqrt(dot(N, N));
    f.normal = {N[0] / nn, N[1] / nn, N[2] / nn};
    const T e2l = (dot(px, px) + dot(py, py)) * T(0.5);
    f.lambda = log(e2l) * T(0.5);
    f.a11 = dot(pxx, f.normal);
    f.a12 = dot(pxy, f.normal);
    f.a22 = dot(pyy, f.normal);
    f.H = (f.a11 + f.a22) / (e2l * T(2.0));
    return f;
}

V3<double> arr(const Vec3& v) { return {v[0], v[1], v[2]}; }

V3<Dual> lift(const Vec3& v, const Vec3& dx, const Vec3& dy) {
    return {Dual(v[0], dx[0], dy[0]), Dual(v[1], dx[1], dy[1]), Dual(v[2], dx[2], dy[2])};
}

} // namespace

double FundamentalForms::e2l() const { return std::exp(2.0 * lambda); }

double degeneracy_threshold(const Jet2& jet) {
    return 1e-14 * std::max(1.0, jet.d1[0].norm() * jet.d1[1].norm());
}

FundamentalForms fundamental_forms(const Jet2& jet) {
    const double cross_norm = jet.d1[0].cross(jet.d1[1]).norm();
    if (!(cross_norm >= degeneracy_threshold(jet))) {
        std::ostringstream os;
        os << "|Phi_x x Phi_y| = " << cross_norm << " at (" << jet.p[0] << ", " << jet.p[1] << ")";
        throw DegenerateJet(os.str());
    }
    const auto g = forms_generic<double>(arr(jet.d1[0]), arr(jet.d1[1]), arr(jet.d2[0]),
                                         arr(jet.d2[1]), arr(jet.d2[2]));
    FundamentalForms f;
    f.lambda = g.lambda;
    f.normal = Vec3(g.normal[0], g.normal[1], g.normal[2]);
    f.a11 = g.a11;
    f.a12 = g.a12;
    f.a22 = g.a22;
    f.H = g.H;
    const double e2l = std::exp(2.0 * f.lambda);
    f.tf11 = 0.5 * (f.a11 - f.a22);
    f.tf12 = f.a12;
    f.K = (f.a11 * f.a22 - f.a12 * f.a12) / (e2l * e2l);
    const double d_len = std::fabs(jet.d1[0].squaredNorm() - jet.d1[1].squaredNorm());
    const double d_dot = std::fabs(jet.d1[0].dot(jet.d1[1]));
    f.conformality_defect = std::max(d_len, d_dot) / e2l;
    return f;
}

FormsGradient forms_gradient(const Jet3& j) {
    // Partials of each jet entry come from the next order up.
    const auto px = lift(j.d1[0], j.d2[0], j.d2[1]);
    const auto py = lift(j.d1[1], j.d2[1], j.d2[2]);
    const auto pxx = lift(j.d2[0], j.d3[0], j.d3[1]);
    const auto pxy = lift(j.d2[1], j.d3[1], j.d3[2]);
    const auto pyy = lift(j.d2[2], j.d3[2], j.d3[3]);
    const auto f = forms_generic<Dual>(px, py, pxx, pxy, pyy);
    FormsGradient g;
    g.grad_lambda = {f.lambda.dx, f.lambda.dy};
    g.grad_H = {f.H.dx, f.H.dy};
    g.grad_normal[0] = Vec3(f.normal[0].dx, f.normal[1].dx, f.normal[2].dx);
    g.grad_normal[1] = Vec3(f.normal[0].dy, f.normal[1].dy, f.normal[2].dy);
    g.grad_a[0] = {f.a11.dx, f.a11.dy};
    g.grad_a[1] = {f.a12.dx, f.a12.dy};
    g.grad_a[2] = {f.a22.dx, f.a22.dy};
    return g;
}

void require_conformal(const FundamentalForms& f, double tol) {
    if (f.conformality_defect > tol) {
        std::ostringstream os;
        os << "conformality defect " << f.conformality_defect << " exceeds " << tol;
        throw ConformalityViolation(os.str());
    }
}

double tracefree_density(const FundamentalForms& f) {
    return std::sqrt(2.0 * (f.tf11 * f.tf11 + f.tf12 * f.tf12)) * std::exp(-f.lambda);
}

double tracefree_norm_sq_g(const FundamentalForms& f) {
    const double e4l = std::exp(4.0 * f.lambda);
    return 2.0 * (f.tf11 * f.tf11 + f.tf12 * f.tf12) / e4l;
}

double full_norm_sq_g(const FundamentalForms& f) {
    const double e4l = std::exp(4.0 * f.lambda);
    return (f.a11 * f.a11 + 2.0 * f.a12 * f.a12 + f.a22 * f.a22) / e4l;
}

double curvature_identity_residual(const FundamentalForms& f) {
    return full_norm_sq_g(f) - 2.0 * tracefree_norm_sq_g(f) - 2.0 * f.K;
}

} // namespace willmore
