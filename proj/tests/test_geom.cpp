#include <gtest/gtest.h>

#include "support.hpp"
#include "willmore/error.hpp"
#include "willmore/geom.hpp"
#include "willmore/surface.hpp"

using namespace willmore;
using namespace willmore::testing;

namespace {

Vec3 enneper_closed(double x, double y) {
    return {x - x * x * x / 3 + x * y * y, -y + y * y * y / 3 - x * x * y, x * x - y * y};
}

} // namespace

TEST(FundamentalForms, PlaneIsFlat) {
    const auto f = fundamental_forms(jet2(*make_plane(), {0.4, -1.2}));
    EXPECT_EQ(f.lambda, 0.0);
    EXPECT_EQ(f.H, 0.0);
    EXPECT_EQ(f.tf11, 0.0);
    EXPECT_EQ(f.tf12, 0.0);
    EXPECT_EQ(f.K, 0.0);
    EXPECT_EQ(f.normal, Vec3(0, 0, 1));
}

TEST(FundamentalForms, SphereChartIsUmbilicWithPositiveH) {
    const auto s = make_sphere(1.0);
    for (int k = 0; k < 50; ++k) {
        const auto f = fundamental_forms(jet2(*s, point_in_disk({0, 0}, 2.0)));
        // Pinned orientation: the normal points inward, so H = +1/R.
        EXPECT_NEAR(f.H, 1.0, 1e-12);
        EXPECT_NEAR(f.K, 1.0, 1e-12);
        EXPECT_NEAR(tracefree_density(f), 0.0, 1e-12);
    }
    const auto f2 = fundamental_forms(jet2(*make_sphere(2.0), {0.3, 0.1}));
    EXPECT_NEAR(f2.H, 0.5, 1e-14);
    EXPECT_NEAR(f2.K, 0.25, 1e-14);
}

TEST(FundamentalForms, EnneperGaussCurvatureMatchesFiniteDifferences) {
    const auto f = fundamental_forms(jet2(*make_enneper(), {1.0, 0.0}));
    EXPECT_NEAR(f.H, 0.0, 1e-15);
    // Independent oracle: central differences of the closed form, classical
    // (LN - M^2) / (EG - F^2).
    const double h = 1e-4;
    const double x = 1.0, y = 0.0;
    const Vec3 px = (enneper_closed(x + h, y) - enneper_closed(x - h, y)) / (2 * h);
    const Vec3 py = (enneper_closed(x, y + h) - enneper_closed(x, y - h)) / (2 * h);
    const Vec3 c = enneper_closed(x, y);
    const Vec3 pxx = (enneper_closed(x + h, y) - 2 * c + enneper_closed(x - h, y)) / (h * h);
    const Vec3 pyy = (enneper_closed(x, y + h) - 2 * c + enneper_closed(x, y - h)) / (h * h);
    const Vec3 pxy = (enneper_closed(x + h, y + h) - enneper_closed(x + h, y - h) - enneper_closed(x - h, y + h) +
                      enneper_closed(x - h, y - h)) /
                     (4 * h * h);
    const Vec3 n = px.cross(py).normalized();
    const double E = px.dot(px), F = px.dot(py), G = py.dot(py);
    const double L = pxx.dot(n), M = pxy.dot(n), N = pyy.dot(n);
    const double K = (L * N - M * M) / (E * G - F * F);
    EXPECT_NEAR(f.K, K, 1e-6);
    EXPECT_NEAR(f.K, -0.25, 1e-14); // -4 / (1 + |z|^2)^4 at z = 1
}

TEST(FundamentalForms, DefinitionClosureAndCurvatureIdentity) {
    for (const Patch& p : conformal_zoo()) {
        const auto s = parse_surface(p.spec);
        for (int k = 0; k < 100; ++k) {
            const auto f = fundamental_forms(jet2(*s, point_in_disk(p.center, p.radius)));
            const double scale = std::max(1.0, std::fabs(f.a11) + std::fabs(f.a22));
            EXPECT_NEAR(f.a11 + f.a22 - 2 * f.H * f.e2l(), 0.0, 1e-13 * scale) << p.spec;
            const double cs = std::max(1.0, full_norm_sq_g(f));
            EXPECT_NEAR(curvature_identity_residual(f), 0.0, 1e-12 * cs) << p.spec;
            EXPECT_LE(f.conformality_defect, 1e-10) << p.spec;
            EXPECT_NEAR(f.normal.norm(), 1.0, 1e-14);
            EXPECT_EQ(f.tf11 + f.tf22(), 0.0);
            EXPECT_NEAR(f.K, (f.a11 * f.a22 - f.a12 * f.a12) * std::exp(-4 * f.lambda),
                        1e-12 * std::max(1.0, std::fabs(f.K)));
        }
    }
}

TEST(FundamentalForms, CurvatureIdentityOnEnneperDiskOfRadiusTwo) {
    const auto s = make_enneper();
    for (int k = 0; k < 100; ++k) {
        const auto f = fundamental_forms(jet2(*s, point_in_disk({0, 0}, 2.0)));
        EXPECT_LE(std::fabs(curvature_identity_residual(f)), 1e-12);
    }
}

TEST(FundamentalForms, TracefreeDensityScalesUnderReparametrization) {
    const auto base = make_enneper();
    const double rho = 0.37;
    const auto scaled = make_rescaled({0, 0}, rho, base);
    for (int k = 0; k < 50; ++k) {
        const Vec2 x = point_in_disk({0, 0}, 2.0);
        const double a = tracefree_density(fundamental_forms(jet2(*scaled, x)));
        const double b = tracefree_density(fundamental_forms(jet2(*base, rho * x)));
        EXPECT_NEAR(a, rho * b, 1e-14 * std::max(1.0, a));
    }
}

TEST(FundamentalForms, NonConformalGraphReportsDefect) {
    const auto f = fundamental_forms(jet2(*make_graph(surf::GraphPatch::Height::Paraboloid), {0.5, 0.5}));
    EXPECT_GT(f.conformality_defect, 0.1);
    EXPECT_THROW(require_conformal(f, 1e-8), ConformalityViolation);
    EXPECT_NO_THROW(require_conformal(fundamental_forms(jet2(*make_enneper(), {0.5, 0.5})), 1e-8));
}

TEST(FundamentalForms, DegenerateJetIsRejected) {
    Jet2 j;
    j.d1 = {Vec3(1, 0, 0), Vec3(2, 0, 0)};
    EXPECT_THROW(fundamental_forms(j), DegenerateJet);
    // Enneper's first derivatives never vanish, but the catenoid inverted about
    // a point of itself does not even evaluate there.
    EXPECT_THROW(jet2(*parse_surface("invert center=(1,0,0) of (catenoid)"), {0, 0}), SingularPoint);
}

TEST(FundamentalForms, ExactGradientsMatchFiniteDifferences) {
    const auto s = parse_surface("invert center=(0.5,0.3,2) of (enneper)");
    const Vec2 p(0.3, -0.2);
    const auto g = forms_gradient(jet3(*s, p));
    const double h = 1e-5;
    auto H = [&](Vec2 q) { return fundamental_forms(jet2(*s, q)).H; };
    auto L = [&](Vec2 q) { return fundamental_forms(jet2(*s, q)).lambda; };
    EXPECT_NEAR(g.grad_H[0], (H(p + Vec2(h, 0)) - H(p - Vec2(h, 0))) / (2 * h), 1e-6);
    EXPECT_NEAR(g.grad_H[1], (H(p + Vec2(0, h)) - H(p - Vec2(0, h))) / (2 * h), 1e-6);
    EXPECT_NEAR(g.grad_lambda[0], (L(p + Vec2(h, 0)) - L(p - Vec2(h, 0))) / (2 * h), 1e-7);
    EXPECT_NEAR(g.grad_lambda[1], (L(p + Vec2(0, h)) - L(p - Vec2(0, h))) / (2 * h), 1e-7);
}
