#include <gtest/gtest.h>

#include "support.hpp"
#include "willmore/conformal_gauss.hpp"
#include "willmore/error.hpp"
#include "willmore/geom.hpp"
#include "willmore/moebius.hpp"

using namespace willmore;
using namespace willmore::testing;

namespace {

double lorentz_norm_sq(const Vec5& y) { return lorentz_dot(y, y); }

Vec5 random_unit_spacelike() {
    // Y = (u cosh t, 0) + (0, 0, 0, w sinh t...) built from a unit vector in R^4 and a boost.
    Vec5 y;
    const double t = uniform(-1.5, 1.5);
    Eigen::Vector4d u(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
    u.normalize();
    y << u * std::cosh(t), std::sinh(t);
    return y;
}

double parallel_defect(const Vec5& a, const Vec5& b) {
    // |a - (a.b / b.b) b| / |a| with Euclidean products
    const Vec5 r = a - (a.dot(b) / b.dot(b)) * b;
    return r.norm() / a.norm();
}

double lambda_of(const Vec3& px, const Vec3& py) { return 0.5 * std::log((px.squaredNorm() + py.squaredNorm()) / 2); }

} // namespace

TEST(Moebius, PointExamples) {
    EXPECT_EQ(apply_point(MoebiusMap::invert(Vec3::Zero()), {2, 0, 0}), Vec3(0.5, 0, 0));
    const MoebiusMap m = compose(MoebiusMap::translate({1, 1, 1}), MoebiusMap::dilate(2));
    EXPECT_EQ(apply_point(m, {1, 0, 0}), Vec3(3, 1, 1));
    EXPECT_EQ(apply_point(MoebiusMap::identity(), {1, 2, 3}), Vec3(1, 2, 3));
    const Vec3 r = apply_point(MoebiusMap::rotate({0, 0, 1}, M_PI / 2), {1, 0, 0});
    EXPECT_NEAR((r - Vec3(0, 1, 0)).norm(), 0.0, 1e-15);
}

TEST(Moebius, InversionIsAnInvolution) {
    // x -> (x - a)/|x - a|^2 is an involution for a = 0; for general a the
    // reflection in the unit sphere about a is x -> a + (x - a)/|x - a|^2.
    for (int k = 0; k < 100; ++k) {
        const Vec3 a = random_vec3(2.0);
        const Vec3 x = random_vec3(3.0);
        if ((x - a).norm() < 0.1 || x.norm() < 0.1) continue;
        const MoebiusMap at_origin = MoebiusMap::invert(Vec3::Zero());
        EXPECT_LE((apply_point(at_origin.then(at_origin), x) - x).norm(), 1e-12 * std::max(1.0, x.norm()));
        const MoebiusMap reflect = MoebiusMap::invert(a).then(MoebiusMap::translate(a));
        EXPECT_LE((apply_point(reflect.then(reflect), x) - x).norm(), 1e-12 * std::max(1.0, x.norm()));
    }
}

TEST(Moebius, SingularPointsAndValidation) {
    EXPECT_THROW(apply_point(MoebiusMap::invert({1, 2, 3}), {1, 2, 3}), SingularPoint);
    EXPECT_THROW(pushforward_jet(MoebiusMap::invert({0, 0, -1}), jet3(*make_sphere(), {0, 0})), SingularPoint);
    EXPECT_THROW(validate(MoebiusMap::dilate(0.0)), InvalidArgument);
    EXPECT_THROW(validate(MoebiusMap::dilate(-2.0)), InvalidArgument);
    Mat3 reflect = Mat3::Identity();
    reflect(2, 2) = -1;
    EXPECT_THROW(validate(MoebiusMap::rotate(reflect)), InvalidArgument);
    Mat3 sheared = Mat3::Identity();
    sheared(0, 1) = 1e-6;
    EXPECT_THROW(validate(MoebiusMap::rotate(sheared)), InvalidArgument);
}

TEST(Moebius, DilationScalesJets) {
    const Jet3 j = jet3(*make_enneper(), {0.3, -0.2});
    const Jet3 d = pushforward_jet(MoebiusMap::dilate(2.5), j);
    for (int k = 0; k < 2; ++k) EXPECT_LE((d.d1[k] - 2.5 * j.d1[k]).norm(), 1e-15);
    EXPECT_NEAR(fundamental_forms(d).lambda, fundamental_forms(j).lambda + std::log(2.5), 1e-14);
}

TEST(Moebius, InversionPreservesConformality) {
    const MoebiusMap m = MoebiusMap::invert({0.3, -0.2, 1.7});
    for (int k = 0; k < 50; ++k) {
        const Jet3 j = pushforward_jet(m, jet3(*make_sphere(), point_in_disk({0, 0}, 2.0)));
        const double nx = j.d1[0].norm(), ny = j.d1[1].norm();
        EXPECT_LE(std::abs(nx - ny), 1e-10 * nx);
        EXPECT_LE(std::abs(j.d1[0].dot(j.d1[1])), 1e-10 * nx * ny);
    }
}

TEST(Moebius, InversionLogFactorMatchesChainRuleAndFiniteDifferences) {
    const Vec3 a(0, 0, 3);
    const MoebiusMap m = MoebiusMap::invert(a);
    const auto sphere = make_sphere();
    const double h = 1e-5;
    for (int k = 0; k < 20; ++k) {
        const Vec2 p = point_in_disk({0, 0}, 1.5);
        const Jet3 j = jet3(*sphere, p);
        const double lam_psi = fundamental_forms(pushforward_jet(m, j)).lambda;
        const double predicted = fundamental_forms(j).lambda - 2 * std::log((j.phi - a).norm());
        EXPECT_NEAR(lam_psi, predicted, 1e-10);
        auto psi = [&](double dx, double dy) { return apply_point(m, jet2(*sphere, p + Vec2(dx, dy)).phi); };
        const Vec3 px = (psi(h, 0) - psi(-h, 0)) / (2 * h);
        const Vec3 py = (psi(0, h) - psi(0, -h)) / (2 * h);
        EXPECT_NEAR(lambda_of(px, py), lam_psi, 1e-8);
    }
}

TEST(Moebius, PushforwardMatchesFiniteDifferencesOfTheComposedMap) {
    for (const Patch& patch : conformal_zoo()) {
        const auto s = parse_surface(patch.spec);
        const MoebiusMap m = random_moebius(*s, patch, 0.3);
        const double h = 1e-5;
        for (int k = 0; k < 5; ++k) {
            const Vec2 p = point_in_disk(patch.center, 0.8 * patch.radius);
            const Jet3 j = pushforward_jet(m, jet3(*s, p));
            auto psi1 = [&](double dx, double dy) { return pushforward_jet(m, jet3(*s, p + Vec2(dx, dy))); };
            const Jet3 xp = psi1(h, 0), xm = psi1(-h, 0), yp = psi1(0, h), ym = psi1(0, -h);
            const double scale = std::max({1.0, j.d1[0].norm(), j.d2[0].norm(), j.d2[1].norm()});
            EXPECT_LE(((xp.phi - xm.phi) / (2 * h) - j.d1[0]).norm(), 1e-7 * scale) << patch.spec;
            EXPECT_LE(((yp.phi - ym.phi) / (2 * h) - j.d1[1]).norm(), 1e-7 * scale) << patch.spec;
            EXPECT_LE(((xp.d1[0] - xm.d1[0]) / (2 * h) - j.d2[0]).norm(), 1e-6 * scale) << patch.spec;
            EXPECT_LE(((yp.d1[0] - ym.d1[0]) / (2 * h) - j.d2[1]).norm(), 1e-6 * scale) << patch.spec;
            EXPECT_LE(((yp.d1[1] - ym.d1[1]) / (2 * h) - j.d2[2]).norm(), 1e-6 * scale) << patch.spec;
            const double s3 = std::max(scale, j.d3[0].norm());
            EXPECT_LE(((xp.d2[0] - xm.d2[0]) / (2 * h) - j.d3[0]).norm(), 1e-5 * s3) << patch.spec;
            EXPECT_LE(((yp.d2[0] - ym.d2[0]) / (2 * h) - j.d3[1]).norm(), 1e-5 * s3) << patch.spec;
            EXPECT_LE(((yp.d2[1] - ym.d2[1]) / (2 * h) - j.d3[2]).norm(), 1e-5 * s3) << patch.spec;
            EXPECT_LE(((yp.d2[2] - ym.d2[2]) / (2 * h) - j.d3[3]).norm(), 1e-5 * s3) << patch.spec;
        }
    }
}

TEST(Moebius, InversionLorentzMatrixAtOrigin) {
    Mat5 expected = Mat5::Identity();
    expected(0, 0) = expected(1, 1) = expected(2, 2) = -1;
    expected(4, 4) = -1;
    EXPECT_LE((lorentz_of(MoebiusMap::invert(Vec3::Zero())) - expected).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(lorentz_of(MoebiusMap::identity()), Mat5::Identity());
    const Vec5 y = random_unit_spacelike();
    EXPECT_EQ(act_on_Y(Mat5::Identity(), y), y);
}

TEST(Moebius, NullLiftParallelism) {
    for (int k = 0; k < 100; ++k) {
        const Vec3 a = random_vec3(2.0);
        const Vec3 x = random_vec3(3.0);
        if ((x - a).norm() < 0.05) continue;
        const MoebiusMap m = MoebiusMap::invert(a);
        EXPECT_LE(parallel_defect(null_lift(apply_point(m, x)), lorentz_of(m) * null_lift(x)), 1e-10);
    }
    for (int k = 0; k < 100; ++k) {
        const MoebiusMap m({Translate{random_vec3(2.0)}, Dilate{std::exp(uniform(-1, 1))},
                            Rotate{Eigen::AngleAxisd(uniform(-3, 3), random_unit()).toRotationMatrix()}});
        const Vec3 x = random_vec3(3.0);
        EXPECT_LE(parallel_defect(null_lift(apply_point(m, x)), lorentz_of(m) * null_lift(x)), 1e-10);
    }
}

TEST(Moebius, LorentzMatricesAreIsometries) {
    for (int k = 0; k < 100; ++k) {
        const Mat5 M = lorentz_of(MoebiusMap({Invert{random_vec3(2.0)}, Dilate{std::exp(uniform(-1, 1))},
                                              Translate{random_vec3(1.0)}, Invert{random_vec3(1.0)}}));
        EXPECT_LE(lorentz_defect(M), 1e-10 * M.cwiseAbs().maxCoeff() * M.cwiseAbs().maxCoeff());
        const Vec5 y = random_unit_spacelike();
        ASSERT_NEAR(lorentz_norm_sq(y), 1.0, 1e-12);
        const Mat5 I = lorentz_of(MoebiusMap::invert(random_vec3(2.0)));
        EXPECT_NEAR(lorentz_norm_sq(act_on_Y(I, y)), 1.0, 1e-12 * std::max(1.0, act_on_Y(I, y).squaredNorm()));
        EXPECT_GT(M.determinant(), 0.0);
    }
}

TEST(Moebius, LorentzIsAHomomorphism) {
    for (int k = 0; k < 50; ++k) {
        const MoebiusMap m1({Invert{random_vec3(2.0)}, Dilate{std::exp(uniform(-1, 1))}});
        const MoebiusMap m2({Rotate{Eigen::AngleAxisd(uniform(-3, 3), random_unit()).toRotationMatrix()},
                             Translate{random_vec3(1.0)}, Invert{random_vec3(2.0)}});
        const Mat5 lhs = lorentz_of(compose(m1, m2));
        const Mat5 rhs = lorentz_of(m1) * lorentz_of(m2);
        EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
    }
}

TEST(Moebius, ConformalGaussMapOfInvertedSphere) {
    const MoebiusMap m = MoebiusMap::invert({0, 0, 3});
    const Mat5 M = lorentz_of(m);
    const auto sphere = make_sphere();
    const auto image = make_transformed(m, sphere);
    double worst = 0;
    for (int k = 0; k < 50; ++k) {
        const Vec2 p = point_in_disk({0, 0}, 2.0);
        worst = std::max(worst, (conformal_gauss(jet3(*image, p)).Y - M * conformal_gauss(jet3(*sphere, p)).Y).norm());
    }
    EXPECT_LE(worst, 1e-8);
}

TEST(Moebius, EquivarianceAndDensityInvarianceOnTheZoo) {
    for (const Patch& patch : conformal_zoo()) {
        const auto s = parse_surface(patch.spec);
        for (int trial = 0; trial < 3; ++trial) {
            const MoebiusMap m = random_moebius(*s, patch, 0.3);
            const Mat5 M = lorentz_of(m);
            for (int k = 0; k < 10; ++k) {
                const Vec2 p = point_in_disk(patch.center, patch.radius);
                const Jet3 j = jet3(*s, p);
                const Jet3 pj = pushforward_jet(m, j);
                const Vec5 lhs = conformal_gauss(pj).Y;
                const Vec5 rhs = act_on_Y(M, conformal_gauss(j).Y);
                EXPECT_LE((lhs - rhs).norm(), 1e-8 * std::max(1.0, rhs.norm())) << patch.spec;
                const double d0 = tracefree_density(fundamental_forms(j));
                const double d1 = tracefree_density(fundamental_forms(pj));
                EXPECT_NEAR(d0, d1, 1e-8 * std::max(1.0, d0)) << patch.spec;
            }
        }
    }
}

TEST(Moebius, TextRoundTrip) {
    EXPECT_TRUE(parse_moebius("").empty());
    const MoebiusMap m = parse_moebius("translate (1,0,0) | dilate 2 | rotate (0,0,1) 0.5 | invert (0,0,3)");
    ASSERT_EQ(m.stages().size(), 4u);
    for (int k = 0; k < 30; ++k) {
        const MoebiusMap r = random_moebius(*make_plane(), {"plane", {0, 0}, 1.0}, 0.1);
        const MoebiusMap back = parse_moebius(to_string(r));
        for (int i = 0; i < 5; ++i) {
            const Vec3 x = random_vec3(1.0);
            try {
                const Vec3 a = apply_point(r, x);
                EXPECT_LE((apply_point(back, x) - a).norm(), 1e-12 * std::max(1.0, a.norm()));
            } catch (const SingularPoint&) {
            }
        }
    }
    EXPECT_THROW(parse_moebius("dilate"), SyntaxError);
    EXPECT_THROW(parse_moebius("invert (0,0)"), SyntaxError);
    EXPECT_THROW(parse_moebius("shear 2"), SyntaxError);
    EXPECT_THROW(parse_moebius("dilate 2 |"), SyntaxError);
}
