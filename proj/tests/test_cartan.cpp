#include "symcartan/actions.hpp"
#include "symcartan/cartan.hpp"
#include "symcartan/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace symcartan;

namespace {

// Rodrigues formula for exp(t J) with J the so3 basis matrix of an axis.
Eigen::Matrix3d rotation(const Eigen::MatrixXd& j, double t)
{
    const Eigen::Matrix3d k = j;
    return Eigen::Matrix3d::Identity() + std::sin(t) * k + (1 - std::cos(t)) * k * k;
}

}  // namespace

TEST(Cartan, CurvatureSplitsIntoRotationalAndTorsionalParts)
{
    for (auto name : {AlgebraName::so31, AlgebraName::iso21, AlgebraName::so22, AlgebraName::so41}) {
        auto alg = build_algebra(name);
        const int n = alg->spacetime_dim;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto conn = random_connection(alg, seed, n, 1, 2);
            const auto c = curvature(conn);
            const auto ee = bracket(conn.coframe, conn.coframe);
            EXPECT_EQ(c.F_h, c.R + Rational(1, 2) * ee.h_part()) << to_string(name);
            EXPECT_EQ(c.F_p, covariant_d(conn.omega, conn.coframe) + Rational(1, 2) * ee.p_part());
            EXPECT_EQ(c.F, c.F_h + c.F_p);
        }
    }
}

TEST(Cartan, IsoCurvatureHasNoCosmologicalTerm)
{
    auto alg = build_algebra(AlgebraName::iso21);
    const auto conn = random_connection(alg, 3, 3, 2, 2);
    EXPECT_TRUE(bracket(conn.coframe, conn.coframe).is_zero());
    EXPECT_EQ(curvature(conn).F_h, curvature(conn).R);
}

TEST(Cartan, InvolutionFlipsTorsion)
{
    auto alg = build_algebra(AlgebraName::so22);
    const auto conn = random_connection(alg, 11, 3, 2, 2);
    const auto c = curvature(conn);
    const auto ct = curvature(involute_connection(conn));
    EXPECT_EQ(ct.F_h, c.F_h);
    EXPECT_EQ(ct.F_p, -c.F_p);
    EXPECT_EQ(ct.F, involution(c.F));
}

TEST(Cartan, BianchiIdentities)
{
    for (auto name : {AlgebraName::so31, AlgebraName::iso21, AlgebraName::so22, AlgebraName::so4, AlgebraName::so41,
                      AlgebraName::so32}) {
        auto alg = build_algebra(name);
        const int n = alg->spacetime_dim;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto b = bianchi_residuals(random_connection(alg, seed, n, 1, 1));
            ASSERT_TRUE(b.full.is_zero()) << to_string(name) << " seed " << seed;
            ASSERT_TRUE(b.rotational.is_zero());
            ASSERT_TRUE(b.torsional.is_zero());
        }
    }
}

TEST(Cartan, MakeConnectionChecksSupport)
{
    auto alg = build_algebra(AlgebraName::so31);
    RandomFormSpec spec;
    spec.support = Support::full;
    const auto full = random_form(5, alg, spec);
    EXPECT_THROW(make_connection(full, full.p_part()), std::invalid_argument);
    EXPECT_THROW(make_connection(full.h_part(), full), std::invalid_argument);
    const auto split = split_connection(full);
    EXPECT_EQ(split.combined(), full);
    spec.degree = 2;
    EXPECT_THROW(split_connection(random_form(5, alg, spec)), std::invalid_argument);
}

TEST(Cartan, CoframeCheck)
{
    auto alg = build_algebra(AlgebraName::so31);
    std::vector<AlgebraElement> id;
    for (int mu = 0; mu < 3; ++mu) id.push_back(AlgebraElement::basis_vector(alg, alg->dim_h() + mu));
    const auto e = constant_one_form(id, 3);
    const auto ok = coframe_check(e, 8);
    EXPECT_TRUE(ok.nondegenerate);
    EXPECT_DOUBLE_EQ(ok.min_abs_det, 1.0);

    // e^0 = cos(x) dx vanishes on the plane x = pi/2, which the 4-point grid hits
    auto bad = e;
    bad.part(alg->dim_h())[0] = TrigPoly::cos(3, {1, 0, 0});
    EXPECT_FALSE(coframe_check(bad, 4).nondegenerate);
    EXPECT_TRUE(perturbed_identity_coframe(alg, 4).h_part().is_zero());
    EXPECT_TRUE(coframe_check(perturbed_identity_coframe(alg, 4), 8).nondegenerate);
}

TEST(Cartan, MaurerCartanChartsAreFlat)
{
    for (const auto& chart : bundled_charts()) {
        auto alg = build_algebra(chart.algebra);
        const auto a = maurer_cartan_field(alg, chart.generators);
        const int n = static_cast<int>(chart.generators.size());
        EXPECT_LT(maurer_cartan_remainder(alg, chart.generators, 0.5), 1e-10) << chart.name;
        const auto report = flatness(a, box_points(n, 3, 0.5));
        EXPECT_LT(report.max_curvature, 1e-9) << chart.name;
        EXPECT_EQ(report.points, n == 3 ? 27 : 81);
    }
}

TEST(Cartan, PerturbedMaurerCartanIsNotFlat)
{
    auto alg = build_algebra(AlgebraName::so31);
    const auto mc = maurer_cartan_field(alg, {3, 4, 5});
    const Eigen::MatrixXd j = to_eigen(alg->basis[0]);
    ConnectionField bent = [&](std::span<const double> x) {
        auto a = mc(x);
        a[1] += 0.1 * x[0] * j;
        return a;
    };
    EXPECT_GT(flatness(bent, box_points(3, 3, 0.5)).max_curvature, 1e-3);
}

TEST(Cartan, MaurerCartanMatchesGroupDerivative)
{
    // A_i = g^{-1} d_i g with g = exp(X) differentiated numerically
    auto alg = build_algebra(AlgebraName::so22);
    const std::vector<int> gens = {3, 4, 5};
    const auto a = maurer_cartan_field(alg, gens);
    const std::vector<double> x = {0.2, -0.1, 0.3};
    auto g = [&](std::vector<double> y) {
        Eigen::MatrixXd X = Eigen::MatrixXd::Zero(alg->matrix_dim, alg->matrix_dim);
        for (int i = 0; i < 3; ++i) X += y[i] * to_eigen(alg->basis[gens[i]]);
        return matrix_exp(X);
    };
    const auto A = a(x);
    const double h = 1e-5;
    for (int i = 0; i < 3; ++i) {
        auto xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        const Eigen::MatrixXd dg = (g(xp) - g(xm)) / (2 * h);
        EXPECT_LT((g(x).inverse() * dg - A[i]).norm(), 1e-8);
    }
}

TEST(Cartan, MatrixExpAgreesWithRodrigues)
{
    auto alg = build_algebra(AlgebraName::so3);
    const Eigen::MatrixXd j = to_eigen(alg->basis[1]);
    for (double t : {0.0, 0.1, 1.0, 3.0, 10.0}) EXPECT_LT((matrix_exp(t * j) - rotation(j, t)).norm(), 1e-12) << t;
}

TEST(Cartan, ZeroConnectionHasTrivialHolonomy)
{
    auto alg = build_algebra(AlgebraName::so3);
    ConnectionField zero = [](std::span<const double>) {
        return std::vector<Eigen::MatrixXd>(2, Eigen::MatrixXd::Zero(3, 3));
    };
    const auto h = holonomy(zero, square_loop(2, {0, 0}, 1.0), 4, *alg);
    EXPECT_EQ(h.matrix, Eigen::MatrixXd::Identity(3, 3));
    EXPECT_EQ(h.drift, 0.0);
}

TEST(Cartan, SphereSquareLoopAngleIsArea)
{
    auto alg = build_algebra(AlgebraName::so3);
    const auto h = holonomy(sphere_model(), square_loop(2, {0.3, 0.1}, 0.2), 64, *alg);
    EXPECT_NEAR(rotation_angle(h.matrix), 0.04, 1e-4);
    EXPECT_LT(h.drift, 1e-12);
}

TEST(Cartan, SphereCircleAngle)
{
    auto alg = build_algebra(AlgebraName::so3);
    const double r = 0.25;
    const auto h = holonomy(sphere_model(), circle_loop(2, {1.0, 0.0}, r), 512, *alg);
    EXPECT_NEAR(rotation_angle(h.matrix), std::numbers::pi * r * r, 1e-5);
}

TEST(Cartan, HamsterSquareMatchesGroupCommutator)
{
    auto alg = build_algebra(AlgebraName::so3);
    const Eigen::MatrixXd p0 = to_eigen(alg->basis[1]), p1 = to_eigen(alg->basis[2]);
    const double s = 0.2;
    const Eigen::Matrix3d expected = rotation(p1, s) * rotation(p0, s) * rotation(p1, -s) * rotation(p0, -s);
    const auto h = holonomy(hamster_model(), square_loop(2, {0, 0}, s), 1, *alg);
    EXPECT_LT((h.matrix - expected).norm(), 1e-13);
    // close to, but not exactly, the enclosed area
    EXPECT_NEAR(rotation_angle(h.matrix), 0.04, 5e-4);
}

TEST(Cartan, HolonomyConvergesAtSecondOrder)
{
    auto alg = build_algebra(AlgebraName::so3);
    const auto loop = circle_loop(2, {0, 0}, 0.5);
    const auto ref = holonomy(hamster_model(), loop, 4096, *alg).matrix;
    double prev = 0;
    for (int steps : {16, 32, 64}) {
        const double err = (holonomy(hamster_model(), loop, steps, *alg).matrix - ref).norm();
        if (prev > 0) EXPECT_GE(std::log2(prev / err), 1.9) << steps;
        prev = err;
    }
}

TEST(Cartan, HolonomyRejectsBadInput)
{
    auto alg = build_algebra(AlgebraName::so3);
    EXPECT_THROW(holonomy(sphere_model(), square_loop(2, {0, 0}, 0.2), 0, *alg), std::invalid_argument);
    EXPECT_THROW(holonomy(sphere_model(), square_loop(2, {0, 0}, 0.0), 4, *alg), std::invalid_argument);
    EXPECT_THROW(holonomy(sphere_model(), circle_loop(2, {0, 0}, -1.0), 4, *alg), std::invalid_argument);
    EXPECT_THROW(rotation_angle(Eigen::MatrixXd::Identity(4, 4)), std::invalid_argument);
}

TEST(Cartan, GroupDriftDetectsNonIsometry)
{
    auto alg = build_algebra(AlgebraName::so31);
    EXPECT_EQ(group_drift(Eigen::MatrixXd::Identity(4, 4), *alg), 0.0);
    EXPECT_GT(group_drift(2 * Eigen::MatrixXd::Identity(4, 4), *alg), 1.0);
    auto iso = build_algebra(AlgebraName::iso21);
    Eigen::MatrixXd t = Eigen::MatrixXd::Identity(4, 4);
    t(0, 3) = 5;  // a translation
    EXPECT_EQ(group_drift(t, *iso), 0.0);
    t(3, 0) = 1;
    EXPECT_GT(group_drift(t, *iso), 0.5);
}

TEST(Cartan, SerialAndParallelKernelsAgreeBitwise)
{
    auto alg = build_algebra(AlgebraName::so31);
    const auto e = perturbed_identity_coframe(alg, 9);
    EXPECT_EQ(coframe_check(e, 12, 1e-8, Exec::serial).min_abs_det, coframe_check(e, 12, 1e-8, Exec::parallel).min_abs_det);
    const auto chart = bundled_charts().front();
    const auto a = maurer_cartan_field(build_algebra(chart.algebra), chart.generators);
    const auto pts = box_points(3, 3, 0.4);
    EXPECT_EQ(flatness(a, pts, 1e-2, Exec::serial).max_curvature, flatness(a, pts, 1e-2, Exec::parallel).max_curvature);
}
