#include "symcartan/actions.hpp"
#include "symcartan/random.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace symcartan;

namespace {

AlgebraElement e_(const AlgebraPtr& alg, int i)
{
    return AlgebraElement::basis_vector(alg, i);
}

LieForm single(const AlgebraElement& x, int n, int mu, TrigPoly f)
{
    return lie_monomial(x, monomial_form(n, {mu}, std::move(f)));
}

}  // namespace

TEST(Actions, ConstantConnectionOracle)
{
    // For constant A = X_0 dx + X_1 dy + X_2 dz only the cubic term survives:
    // S = beta(X_0, [X_1, X_2]).
    for (auto name : {AlgebraName::so31, AlgebraName::iso21, AlgebraName::so22}) {
        auto alg = build_algebra(name);
        SeededRng rng(17);
        std::vector<AlgebraElement> x;
        for (int mu = 0; mu < 3; ++mu) x.push_back(random_element(alg, rng));
        const auto beta = cs_form(*alg, 2, 3);
        const auto s = cs_action(constant_one_form(x, 3), beta);
        EXPECT_EQ(s.exact_value, pair(beta.gram, x[0], bracket(x[1], x[2]))) << to_string(name);
        EXPECT_EQ(s.torus_dim, 3);
    }
}

TEST(Actions, QuadraticTermOracle)
{
    // A = X cos z dx + Y sin z dy has A ^ [A, A] = 0 and mean(A ^ dA) = -beta(X, Y).
    auto alg = build_algebra(AlgebraName::so22);
    const auto X = e_(alg, 3), Y = e_(alg, 4) + e_(alg, 0);
    const auto a = single(X, 3, 0, TrigPoly::cos(3, {0, 0, 1})) + single(Y, 3, 1, TrigPoly::sin(3, {0, 0, 1}));
    const auto beta = cs_form(*alg, 1, 1);
    EXPECT_EQ(cs_action(a, beta).exact_value, Rational(-1, 2) * pair(beta.gram, X, Y));
    EXPECT_NE(pair(beta.gram, X, Y), 0);
}

TEST(Actions, QuadratureMatchesExactValue)
{
    auto alg = build_algebra(AlgebraName::so31);
    RandomFormSpec spec;
    spec.cutoff = 2;
    const auto a = random_form(21, alg, spec);
    const auto beta = cs_form(*alg, Rational(-1, 2), Rational(5, 3));
    const double exact = to_double(cs_action(a, beta).exact_value);
    const double q = cs_action_quadrature(a, to_eigen(beta.gram));
    EXPECT_NEAR(q, exact, 1e-11 * std::max(1.0, std::abs(exact)));
    EXPECT_EQ(cs_action_quadrature(a, to_eigen(beta.gram), 0, Exec::serial),
              cs_action_quadrature(a, to_eigen(beta.gram), 0, Exec::parallel));
}

TEST(Actions, DisplayUsesTorusUnits)
{
    EXPECT_EQ(ActionValue::exact(Rational(-3, 4), 3).display(), "-3/4 x (2pi)^3");
    EXPECT_EQ(ActionValue::exact(0, 4).display(), "0");
    ActionValue v;
    v.mode = ActionValue::Mode::numeric;
    v.numeric_value = 0.125;
    v.torus_dim = 3;
    EXPECT_EQ(v.display(), "0.125 x (2pi)^3");
}

TEST(Actions, ChernSimonsNeedsThreeTorus)
{
    auto alg = build_algebra(AlgebraName::so41);
    EXPECT_THROW(cs_form(*alg, 1, 1), std::invalid_argument);
    auto a3 = build_algebra(AlgebraName::so31);
    RandomFormSpec spec;
    spec.torus_dim = 4;
    spec.cutoff = 1;
    EXPECT_THROW(cs_action(random_form(1, a3, spec), cs_form(*a3, 1, 1)), std::invalid_argument);
}

TEST(Actions, ThreeDimensionalIdentitiesAreExact)
{
    for (auto name : {AlgebraName::so31, AlgebraName::iso21, AlgebraName::so22}) {
        auto alg = build_algebra(name);
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            for (auto [id, c0, c1] : std::vector<std::tuple<IdentityId, Rational, Rational>>{
                     {IdentityId::CS_NULL, 0, 1},
                     {IdentityId::CS_PERP, 1, 0},
                     {IdentityId::EINSTEIN_CS, 2, 3},
                     {IdentityId::TWO_CS_SUM, Rational(-1, 2), Rational(5, 3)},
                     {IdentityId::TWO_CS_DIFF, 2, 3}}) {
                CouplingConstants c;
                c.c0 = c0;
                c.c1 = c1;
                const auto r = identity_residual(id, alg, seed, c);
                EXPECT_TRUE(r.passed) << to_string(name) << " " << to_string(id) << " " << to_string(r.residual);
                EXPECT_EQ(r.residual, 0);
            }
        }
    }
}

TEST(Actions, IdentitiesAreNotVacuous)
{
    // both sides of EINSTEIN_CS are nonzero for a generic field
    auto alg = build_algebra(AlgebraName::so31);
    const auto conn = random_connection(alg, 4, 3, 2, 2);
    EXPECT_NE(palatini_action(conn.omega, conn.coframe).exact_value, 0);
    EXPECT_NE(cs_omega_torsion_action(conn.omega, conn.coframe).exact_value, 0);
    EXPECT_NE(cs_action(conn.combined(), cs_form(*alg, 2, 3)).exact_value, 0);
}

TEST(Actions, DirectPalatiniOracle)
{
    // S_Pal through the star map applied to the form instead of the twisted Gram matrix
    auto alg = build_algebra(AlgebraName::so22);
    const auto conn = random_connection(alg, 8, 3, 1, 2);
    const auto& k = alg->killing();
    const auto R = curvature_form(conn.omega);
    const auto& e = conn.coframe;
    const Rational direct = integrate_pairing(k, e, hodge_star(R)) +
                            Rational(1, 6) * integrate_pairing(k, e, hodge_star(bracket(e, e)));
    EXPECT_EQ(palatini_action(conn.omega, e).exact_value, direct);
}

TEST(Actions, DegenerateFormsAreFlagged)
{
    auto alg = build_algebra(AlgebraName::so31);
    EXPECT_TRUE(cs_form(*alg, 0, 0).degenerate);
    EXPECT_FALSE(cs_form(*alg, 2, 3).degenerate);
    auto iso = build_algebra(AlgebraName::iso21);
    EXPECT_TRUE(cs_form(*iso, Rational(3, 4), 0).degenerate);
    auto so22 = build_algebra(AlgebraName::so22);
    EXPECT_TRUE(cs_form(*so22, 1, 1).degenerate);
    CouplingConstants c;
    c.c0 = 1;
    c.c1 = 1;
    EXPECT_TRUE(identity_residual(IdentityId::EINSTEIN_CS, so22, 1, c).degenerate_form);
}

TEST(Actions, PreconditionsAreEnforced)
{
    CouplingConstants c;
    EXPECT_THROW(identity_residual(IdentityId::CS_NULL, build_algebra(AlgebraName::so41), 1, c), std::invalid_argument);
    EXPECT_THROW(identity_residual(IdentityId::CS_NULL, build_algebra(AlgebraName::so31), 1, c), std::invalid_argument);
    EXPECT_THROW(identity_residual(IdentityId::CS_PERP, build_algebra(AlgebraName::so31), 1, c), std::invalid_argument);
    EXPECT_THROW(identity_residual(IdentityId::MM_EXPANSION, build_algebra(AlgebraName::so31), 1, c),
                 std::invalid_argument);
    c.mu = 0;
    EXPECT_THROW(identity_residual(IdentityId::CS_TMG, build_algebra(AlgebraName::so31), 1, c), std::invalid_argument);
    EXPECT_THROW(parse_identity("CS_BOGUS"), std::invalid_argument);
    for (auto id : all_identities()) EXPECT_EQ(parse_identity(to_string(id)), id);
}

TEST(Actions, DigestIsStable)
{
    CouplingConstants c;
    c.c0 = 2;
    c.c1 = 3;
    const auto r = identity_residual(IdentityId::EINSTEIN_CS, build_algebra(AlgebraName::so31), 5, c);
    EXPECT_EQ(r.inputs_digest, "id=EINSTEIN_CS;algebra=so31;seed=5;c0=2;c1=3;mu=5;gamma=1;cutoff=2;terms=2");
}

TEST(Actions, VariationMatchesFiniteDifference)
{
    for (auto name : {AlgebraName::so31, AlgebraName::iso21, AlgebraName::so22}) {
        auto alg = build_algebra(name);
        const auto beta = cs_form(*alg, 2, 3);
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            RandomFormSpec spec;
            spec.cutoff = 1;
            const auto a = random_form(seed, alg, spec);
            const auto delta = random_form(1000 + seed, alg, spec);
            const auto v = cs_variation(a, delta, beta);
            EXPECT_EQ(v.exact, v.expanded);
            const double ex = to_double(v.exact);
            EXPECT_LE(std::abs(v.finite_difference - ex), 1e-6 * std::max(1.0, std::abs(ex))) << to_string(name);
        }
    }
}

TEST(Actions, CentralDifferenceErrorIsTheCubicTerm)
{
    // S is cubic in A, so the central difference equals S' + h^2/6 int beta(d ^ [d, d]).
    auto alg = build_algebra(AlgebraName::so22);
    const auto beta = cs_form(*alg, 2, 3);
    RandomFormSpec spec;
    spec.cutoff = 1;
    const auto a = random_form(31, alg, spec), delta = random_form(32, alg, spec);
    const auto v = cs_variation(a, delta, beta, 1e-3);
    const double cubic = to_double(integrate_pairing(beta.gram, delta, bracket(delta, delta)));
    EXPECT_NEAR(v.finite_difference, to_double(v.exact) + v.step * v.step / 6 * cubic, 1e-8 * std::abs(to_double(v.exact)));
}

TEST(Actions, FlatConnectionIsStationary)
{
    // constant A in a single direction of an abelian subalgebra: F = 0
    auto alg = build_algebra(AlgebraName::so31);
    const auto a = constant_one_form({e_(alg, 0), 2 * e_(alg, 0), Rational(-1, 3) * e_(alg, 0)}, 3);
    EXPECT_TRUE(curvature_form(a).is_zero());
    RandomFormSpec spec;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto v = cs_variation(a, random_form(seed, alg, spec), cs_form(*alg, 2, 3));
        EXPECT_EQ(v.exact, 0);
    }
}

TEST(Actions, StepIsRational)
{
    auto alg = build_algebra(AlgebraName::so31);
    RandomFormSpec spec;
    spec.cutoff = 1;
    const auto a = random_form(1, alg, spec);
    EXPECT_DOUBLE_EQ(cs_variation(a, a, cs_form(*alg, 1, 1), 1e-3).step, 1e-3);
    EXPECT_THROW(cs_variation(a, a, cs_form(*alg, 1, 1), -1), std::invalid_argument);
}

TEST(Actions, QuarticTermVanishes)
{
    for (auto name : {AlgebraName::so41, AlgebraName::so32}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto r = identity_residual(IdentityId::QUARTIC_ZERO, build_algebra(name), seed, {});
            EXPECT_TRUE(r.passed);
        }
    }
}

TEST(Actions, MacDowellMansouriExpansion)
{
    for (auto name : {AlgebraName::so41, AlgebraName::so32}) {
        auto alg = build_algebra(name);
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            CouplingConstants c;
            c.c0 = Rational(2, 3);
            c.c1 = -1;
            const auto r = identity_residual(IdentityId::MM_EXPANSION, alg, seed, c);
            EXPECT_TRUE(r.passed) << to_string(r.residual);
            const auto conn = random_connection(alg, seed, 4, 1, 2);
            EXPECT_NE(mm_action(conn, h_invariant_form(*alg, c.c0, c.c1)).exact_value, 0);
        }
    }
}

TEST(Actions, MacDowellMansouriOracle)
{
    // Independent expansion of F_h ^ F_h with F_h = R + 1/2 [e,e]_h and beta = c0 K + c1 K *.
    auto alg = build_algebra(AlgebraName::so32);
    const auto conn = random_connection(alg, 6, 4, 1, 2);
    const Rational c0 = 3, c1 = Rational(-1, 2);
    const auto R = curvature_form(conn.omega);
    const auto ee = bracket(conn.coframe, conn.coframe).h_part();
    const auto Fh = R + Rational(1, 2) * ee;
    const auto& k = alg->killing();
    const Rational direct = Rational(-1, 2) * (c0 * integrate_pairing(k, Fh, Fh) + c1 * integrate_pairing(k, Fh, h_star(Fh)));
    EXPECT_EQ(mm_action(conn, h_invariant_form(*alg, c0, c1)).exact_value, direct);
    EXPECT_EQ(mm_expansion(conn, c0, c1), direct);
}

TEST(Actions, TopologicalTermsVanishOnTheTorus)
{
    for (auto name : {AlgebraName::so41, AlgebraName::so32}) {
        auto alg = build_algebra(name);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto w = random_connection(alg, seed, 4, 1, 2).omega;
            const auto t = topological_terms(w);
            EXPECT_EQ(t.pontryagin, 0);
            EXPECT_EQ(t.holst, 0);
        }
    }
}

TEST(Actions, TopologicalVariationVanishes)
{
    auto alg = build_algebra(AlgebraName::so41);
    const auto w = random_connection(alg, 2, 4, 1, 1).omega;
    const auto dw = random_connection(alg, 3, 4, 1, 1).omega;
    const auto v = topological_variation_check(w, dw);
    EXPECT_LT(std::abs(v.d_pontryagin), 1e-8);
    EXPECT_LT(std::abs(v.d_holst), 1e-8);
    EXPECT_THROW(topological_terms(random_connection(alg, 2, 4, 1, 1).coframe), std::invalid_argument);
}

TEST(Actions, ImmirziCouplings)
{
    for (const Rational gamma : {Rational(1), Rational(2, 7), Rational(-3)}) {
        const auto [c0, c1] = immirzi_couplings(gamma);
        const auto [k0, k1] = mm_expansion_coefficients(c0, c1);
        EXPECT_EQ(k1, 1);
        EXPECT_EQ(k0, 1 / gamma);
    }
    EXPECT_THROW(immirzi_couplings(0), std::invalid_argument);
}

TEST(Actions, LeviCivitaOfFlatCoframeVanishes)
{
    auto alg = build_algebra(AlgebraName::so31);
    std::vector<AlgebraElement> id;
    for (int mu = 0; mu < 3; ++mu) id.push_back(e_(alg, alg->dim_h() + mu));
    const LeviCivitaSolver solver(constant_one_form(id, 3));
    const std::vector<double> x = {0.1, 0.2, 0.3};
    const auto pc = solver.at(x);
    for (double v : pc.omega.values) EXPECT_EQ(v, 0.0);
}

TEST(Actions, LeviCivitaSolvesTorsion)
{
    for (auto name : {AlgebraName::so31, AlgebraName::so22, AlgebraName::iso21}) {
        auto alg = build_algebra(name);
        const auto e = perturbed_identity_coframe(alg, 12);
        const auto omega = levi_civita_connection(e, 32);
        for (const std::vector<double>& x : {std::vector<double>{0.1, 0.2, 0.3}, {1.7, 4.1, 2.9}, {5.5, 0.05, 3.3}})
            EXPECT_LT(torsion_residual(e, omega, x), 1e-7) << to_string(name);
    }
}

TEST(Actions, LeviCivitaDerivativeMatchesDifferences)
{
    auto alg = build_algebra(AlgebraName::so22);
    const LeviCivitaSolver solver(perturbed_identity_coframe(alg, 5));
    std::vector<double> x = {0.4, 1.1, 2.5};
    const auto pc = solver.at(x);
    const double h = 1e-5;
    for (int j = 0; j < 3; ++j) {
        auto xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        const auto p = solver.at(xp, false).omega, m = solver.at(xm, false).omega;
        for (std::size_t i = 0; i < p.values.size(); ++i)
            EXPECT_NEAR((p.values[i] - m.values[i]) / (2 * h), pc.partials[j].values[i], 1e-8);
    }
}

TEST(Actions, TopologicallyMassiveGravityIdentities)
{
    for (auto name : {AlgebraName::so31, AlgebraName::so22}) {
        auto alg = build_algebra(name);
        for (std::uint64_t seed = 0; seed < 2; ++seed) {
            CouplingConstants c;
            c.c0 = 2;
            IdentityOptions o;
            o.grid = 16;
            EXPECT_TRUE(identity_residual(IdentityId::CS_TMG, alg, seed, c, o).passed) << to_string(name);
            EXPECT_TRUE(identity_residual(IdentityId::TWO_CS_TMG, alg, seed, c, o).passed) << to_string(name);
        }
    }
}

TEST(Actions, TmgQuadratureConverges)
{
    auto alg = build_algebra(AlgebraName::so31);
    const auto e = perturbed_identity_coframe(alg, 3);
    const auto coarse = tmg_action(e, 5, 4);  // grids 4 and 8
    const auto fine = tmg_action(e, 5, 16);   // grids 16 and 32
    EXPECT_NE(fine.refined_value, 0.0);
    EXPECT_EQ(coarse.grid, 4);
    const double ref = fine.refined_value;
    const double floor = 1e-13 * std::abs(ref);
    const std::vector<double> errs = {std::abs(coarse.numeric_value - ref), std::abs(coarse.refined_value - ref),
                                      std::abs(fine.numeric_value - ref)};
    EXPECT_GT(errs[0], floor);
    for (std::size_t i = 1; i < errs.size(); ++i)
        EXPECT_TRUE(errs[i] <= errs[i - 1] / 2 || errs[i] < floor) << errs[i] << " " << errs[i - 1];
    EXPECT_DOUBLE_EQ(fine.refinement_error, std::abs(fine.refined_value - fine.numeric_value));
}

TEST(Actions, TmgNeedsNondegenerateCoframe)
{
    auto alg = build_algebra(AlgebraName::so31);
    LieForm e(alg, 3, 1);
    e.part(alg->dim_h())[0] = TrigPoly::cos(3, {1, 0, 0});
    e.part(alg->dim_h() + 1)[1] = TrigPoly::constant(3, 1);
    e.part(alg->dim_h() + 2)[2] = TrigPoly::constant(3, 1);
    EXPECT_THROW(tmg_action(e, 5, 4), std::domain_error);
    EXPECT_THROW(tmg_action(e, 0, 4), std::invalid_argument);
}
