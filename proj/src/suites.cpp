#include "symcartan/suites.hpp"
#include "symcartan/random.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace symcartan {

AlgebraSource default_algebras()
{
    return [](AlgebraName name) { return build_algebra(name); };
}

bool SuiteResult::passed() const
{
    if (checks.empty()) return false;
    for (const auto& c : checks)
        if (!c.passed()) return false;
    return true;
}

namespace {

class Timer {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Accumulates exact residuals for one check.
struct ExactCheck {
    CheckResult r;
    Rational worst = 0;

    explicit ExactCheck(std::string name) { r.name = std::move(name); }

    void add(const Rational& residual, const std::string& where)
    {
        ++r.cases;
        if (abs(residual) > worst) worst = abs(residual);
        if (residual != 0) fail(where);
    }
    void add_zero(bool zero, const std::string& where) { add(zero ? Rational(0) : Rational(1), where); }
    void fail(const std::string& where)
    {
        if (r.failures++ == 0) r.first_failure = where;
    }
    CheckResult done()
    {
        r.worst = to_string(worst);
        return r;
    }
};

struct NumericCheck {
    CheckResult r;
    double worst = 0;

    explicit NumericCheck(std::string name) { r.name = std::move(name); }

    void add(double value, double tolerance, const std::string& where)
    {
        ++r.cases;
        if (!std::isfinite(value) || value > worst) worst = value;
        if (!(value <= tolerance)) {
            if (r.failures++ == 0) r.first_failure = where;
        }
    }
    CheckResult done()
    {
        std::ostringstream os;
        os.precision(3);
        os << std::scientific << worst;
        r.worst = os.str();
        return r;
    }
};

std::string where(AlgebraName alg, std::uint64_t seed)
{
    return std::string(to_string(alg)) + " seed " + std::to_string(seed);
}

int sign(int k)
{
    return k % 2 ? -1 : 1;
}

// Degrees (d_0, ..., d_{count-1}) with sum <= max_sum.
std::vector<int> random_degrees(SeededRng& rng, int count, int max_sum)
{
    std::vector<int> d(count);
    int left = max_sum;
    for (int i = 0; i < count; ++i) {
        d[i] = rng.uniform(0, left);
        left -= d[i];
    }
    // shuffle so late slots are not biased towards 0
    for (int i = count - 1; i > 0; --i) std::swap(d[i], d[rng.uniform(0, i)]);
    return d;
}

RationalMatrix random_invariant_gram(SeededRng& rng, const std::vector<RationalMatrix>& space, int dim)
{
    RationalMatrix g(dim, dim);
    for (const auto& b : space) {
        const Rational c = rng.nonzero_small_rational();
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) g(i, j) += c * b(i, j);
    }
    return g;
}

}  // namespace

// ---------------------------------------------------------------------------

SuiteResult forms_suite(const FormsSuiteOptions& o, const AlgebraSource& src)
{
    Timer timer;
    SuiteResult suite;
    suite.name = "forms";
    struct Torus {
        int n;
        int cutoff;
        std::vector<AlgebraName> algebras;
    };
    const std::vector<Torus> tori = {{3, o.cutoff3, {AlgebraName::so31, AlgebraName::iso21, AlgebraName::so22}},
                                     {4, o.cutoff4, {AlgebraName::so41, AlgebraName::so32, AlgebraName::iso31}}};
    const std::vector<std::string> names = {"graded_commutativity", "graded_jacobi",  "d_derivation", "covariant_derivation",
                                            "graded_invariance",    "covariant_ibp", "d_squared",     "covariant_d_squared"};
    for (const auto& t : tori) {
        std::map<AlgebraName, AlgebraPtr> algs;
        std::map<AlgebraName, std::vector<RationalMatrix>> spaces;
        for (auto a : t.algebras) {
            algs[a] = src(a);
            spaces[a] = invariant_form_space(*algs[a]);
        }
        for (std::size_t id = 0; id < names.size(); ++id) {
            ExactCheck check(names[id] + "/T" + std::to_string(t.n));
            for (int i = 0; i < o.cases; ++i) {
                const auto name = t.algebras[static_cast<std::size_t>(i) % t.algebras.size()];
                const auto& alg = algs[name];
                const std::uint64_t seed = 1'000'000ull * t.n + 10'000ull * id + static_cast<std::uint64_t>(i);
                SeededRng rng(seed);
                auto form = [&](int degree) {
                    RandomFormSpec spec;
                    spec.degree = degree;
                    spec.torus_dim = t.n;
                    spec.cutoff = t.cutoff;
                    spec.terms_per_component = o.terms;
                    return random_form(rng, alg, spec);
                };
                const int n = t.n;
                const auto at = where(name, seed);
                switch (id) {
                case 0: {
                    const auto d = random_degrees(rng, 2, n);
                    const auto a = form(d[0]), b = form(d[1]);
                    check.add_zero((bracket(a, b) + Rational(sign(d[0] * d[1])) * bracket(b, a)).is_zero(), at);
                    break;
                }
                case 1: {
                    const auto d = random_degrees(rng, 3, n);
                    const auto a = form(d[0]), b = form(d[1]), c = form(d[2]);
                    const auto s = Rational(sign(d[0] * d[2])) * bracket(a, bracket(b, c)) +
                                   Rational(sign(d[1] * d[0])) * bracket(b, bracket(c, a)) +
                                   Rational(sign(d[2] * d[1])) * bracket(c, bracket(a, b));
                    check.add_zero(s.is_zero(), at);
                    break;
                }
                case 2: {
                    const auto d = random_degrees(rng, 2, n - 1);
                    const auto a = form(d[0]), b = form(d[1]);
                    const auto s = exterior_d(bracket(a, b)) - bracket(exterior_d(a), b) -
                                   Rational(sign(d[0])) * bracket(a, exterior_d(b));
                    check.add_zero(s.is_zero(), at);
                    break;
                }
                case 3: {
                    const auto d = random_degrees(rng, 2, n - 1);
                    const auto A = form(1);
                    const auto a = form(d[0]), b = form(d[1]);
                    const auto s = covariant_d(A, bracket(a, b)) - bracket(covariant_d(A, a), b) -
                                   Rational(sign(d[0])) * bracket(a, covariant_d(A, b));
                    check.add_zero(s.is_zero(), at);
                    break;
                }
                case 4: {
                    const auto d = random_degrees(rng, 3, n);
                    const auto g = random_invariant_gram(rng, spaces[name], alg->dim());
                    const auto a = form(d[0]), b = form(d[1]), c = form(d[2]);
                    check.add_zero(beta_pair(g, a, bracket(b, c)) == beta_pair(g, bracket(a, b), c), at);
                    break;
                }
                case 5: {
                    const int p = rng.uniform(0, n - 1);
                    const auto g = random_invariant_gram(rng, spaces[name], alg->dim());
                    const auto A = form(1);
                    const auto a = form(p), c = form(n - 1 - p);
                    check.add(integrate_pairing(g, covariant_d(A, a), c) +
                                  Rational(sign(p)) * integrate_pairing(g, a, covariant_d(A, c)),
                              at);
                    break;
                }
                case 6: {
                    const auto a = form(rng.uniform(0, n - 2));
                    check.add_zero(exterior_d(exterior_d(a)).is_zero(), at);
                    break;
                }
                case 7: {
                    const auto A = form(1);
                    const auto a = form(rng.uniform(0, n - 2));
                    check.add_zero(covariant_d(A, covariant_d(A, a)) == bracket(curvature_form(A), a), at);
                    break;
                }
                default: break;
                }
            }
            suite.checks.push_back(check.done());
        }
    }
    suite.seconds = timer.seconds();
    return suite;
}

// ---------------------------------------------------------------------------

namespace {

int expected_star_square(AlgebraName name)
{
    switch (name) {
    case AlgebraName::so31: return -1;
    default: return 1;  // so22, so4 and the plus contractions
    }
}

// Basis pairs followed by seeded random pairs.
template <class F>
void for_pairs(const AlgebraPtr& alg, int random_pairs, std::uint64_t seed, Support xs, F f)
{
    for (int a = 0; a < alg->dim(); ++a) {
        if (xs == Support::h && !alg->in_h(a)) continue;
        for (int b = 0; b < alg->dim(); ++b)
            f(AlgebraElement::basis_vector(alg, a), AlgebraElement::basis_vector(alg, b),
              "basis " + std::to_string(a) + "," + std::to_string(b));
    }
    SeededRng rng(seed);
    for (int i = 0; i < random_pairs; ++i) {
        const auto x = random_element(alg, rng, xs);
        const auto y = random_element(alg, rng);
        f(x, y, "random pair " + std::to_string(i));
    }
}

}  // namespace

SuiteResult star_suite(const StarSuiteOptions& o, const AlgebraSource& src)
{
    Timer timer;
    SuiteResult suite;
    suite.name = "star";
    const std::vector<AlgebraName> star3 = {AlgebraName::so31, AlgebraName::iso21, AlgebraName::so22, AlgebraName::so4,
                                            AlgebraName::iso3};
    const std::vector<AlgebraName> star4 = {AlgebraName::so41, AlgebraName::so32, AlgebraName::iso31};

    for (auto name : star3) {
        const auto alg = src(name);
        const std::string tag = "/" + std::string(to_string(name));
        const bool contraction = alg->lambda_sign == 0;
        const auto& K = alg->killing();
        const auto& S = alg->star_gram();

        ExactCheck square("star_square" + tag);
        for (int a = 0; a < alg->dim(); ++a) {
            const auto x = AlgebraElement::basis_vector(alg, a);
            square.add_zero(hodge_star(hodge_star(x)) == Rational(expected_star_square(name)) * x, "basis " + std::to_string(a));
        }
        suite.checks.push_back(square.done());

        // On the contractions only h acts equivariantly.
        ExactCheck equiv("star_equivariance" + tag);
        for_pairs(alg, o.random_pairs, o.seed, contraction ? Support::h : Support::full,
                  [&](const AlgebraElement& x, const AlgebraElement& y, const std::string& at) {
                      equiv.add_zero(hodge_star(bracket(x, y)) == bracket(x, hodge_star(y)), at);
                  });
        suite.checks.push_back(equiv.done());

        ExactCheck sym("twisted_trace_symmetry" + tag);
        for_pairs(alg, o.random_pairs, o.seed + 1, Support::full,
                  [&](const AlgebraElement& x, const AlgebraElement& y, const std::string& at) {
                      sym.add(pair(S, x, y) - pair(S, y, x), at);
                      // the Killing form of a contraction is degenerate and does not carry the trace
                      if (!contraction) sym.add(pair(K, x, hodge_star(y)) - pair(K, hodge_star(x), y), at);
                  });
        suite.checks.push_back(sym.done());

        ExactCheck inv("involution" + tag);
        for_pairs(alg, o.random_pairs, o.seed + 2, Support::full,
                  [&](const AlgebraElement& x, const AlgebraElement& y, const std::string& at) {
                      const auto tx = involution(x), ty = involution(y);
                      inv.add_zero(involution(bracket(x, y)) == bracket(tx, ty), at);
                      inv.add(pair(K, tx, ty) - pair(K, x, y), at);
                      inv.add(pair(S, tx, ty) + pair(S, x, y), at);
                      inv.add_zero(involution(hodge_star(x)) == -hodge_star(tx), at);
                  });
        suite.checks.push_back(inv.done());

        ExactCheck cov("covariant_star" + tag);
        for (int i = 0; i < o.random_pairs; ++i) {
            const std::uint64_t seed = o.seed * 7919 + static_cast<std::uint64_t>(i);
            SeededRng rng(seed);
            RandomFormSpec spec;
            spec.cutoff = 1;
            spec.terms_per_component = 1;
            spec.support = Support::h;
            const auto w = random_form(rng, alg, spec);
            spec.support = Support::full;
            spec.degree = rng.uniform(0, 2);
            const auto a = random_form(rng, alg, spec);
            cov.add_zero(covariant_d(w, hodge_star(a)) == hodge_star(covariant_d(w, a)), where(name, seed));
        }
        suite.checks.push_back(cov.done());

        if (alg->star_square() == 1 && alg->lambda_sign != 0) {
            ExactCheck sd("selfdual_split" + tag);
            for_pairs(alg, o.random_pairs, o.seed + 3, Support::full,
                      [&](const AlgebraElement& x, const AlgebraElement& y, const std::string& at) {
                          const auto [xp, xm] = selfdual_split(x);
                          const auto [yp, ym] = selfdual_split(y);
                          sd.add_zero(xp + xm == x && hodge_star(xp) == xp && hodge_star(xm) == -xm, at);
                          sd.add_zero(bracket(xp, ym).is_zero(), at);
                          const auto pp = bracket(xp, yp), mm = bracket(xm, ym);
                          sd.add_zero(hodge_star(pp) == pp && hodge_star(mm) == -mm, at);
                          sd.add(pair(K, xp, ym), at);
                      });
            suite.checks.push_back(sd.done());
        }
    }

    for (auto name : star4) {
        const auto alg = src(name);
        const std::string tag = "/" + std::string(to_string(name));
        ExactCheck square("h_star_square" + tag);
        ExactCheck equiv("h_star_equivariance" + tag);
        for_pairs(alg, o.random_pairs, o.seed + 4, Support::h,
                  [&](const AlgebraElement& x, const AlgebraElement& y, const std::string& at) {
                      const auto yh = y.h_part();
                      square.add_zero(h_star(h_star(yh)) == -yh, at);
                      equiv.add_zero(h_star(bracket(x, yh)) == bracket(x, h_star(yh)), at);
                  });
        suite.checks.push_back(square.done());
        suite.checks.push_back(equiv.done());
    }
    suite.seconds = timer.seconds();
    return suite;
}

// ---------------------------------------------------------------------------

SuiteResult invariant_forms_suite(const AlgebraSource& src)
{
    Timer timer;
    SuiteResult suite;
    suite.name = "invariant_forms";
    const std::vector<std::pair<AlgebraName, int>> expected = {
        {AlgebraName::so4, 2},  {AlgebraName::so31, 2}, {AlgebraName::so22, 2},
        {AlgebraName::iso3, 2}, {AlgebraName::iso21, 2}, {AlgebraName::so41, 1}, {AlgebraName::so32, 1}};
    for (auto [name, dim] : expected) {
        CheckResult c;
        c.name = "dimension/" + std::string(to_string(name));
        c.cases = 1;
        const auto got = static_cast<int>(invariant_form_space(*src(name)).size());
        c.worst = std::to_string(got);
        if (got != dim) {
            c.failures = 1;
            c.first_failure = "expected " + std::to_string(dim) + ", got " + std::to_string(got);
        }
        suite.checks.push_back(c);
    }
    suite.seconds = timer.seconds();
    return suite;
}

// ---------------------------------------------------------------------------

std::vector<CouplingSet> suite_couplings(IdentityId id, AlgebraName alg)
{
    if (id == IdentityId::CS_NULL) return {{0, 1}, {0, Rational(-2, 3)}, {0, 0}};
    if (id == IdentityId::CS_PERP) return {{1, 0}, {Rational(-2, 3), 0}, {0, 0}};
    // the last pair is degenerate on each algebra
    CouplingSet degenerate{0, 0};
    if (alg == AlgebraName::iso21) degenerate = {Rational(3, 4), 0};
    if (alg == AlgebraName::so22) degenerate = {1, 1};
    return {{2, 3}, {Rational(-1, 2), Rational(5, 3)}, degenerate};
}

SuiteResult chern_simons_suite(const IdentitySuiteOptions& o, const AlgebraSource& src)
{
    Timer timer;
    SuiteResult suite;
    suite.name = "chern_simons";
    const std::vector<AlgebraName> algebras = {AlgebraName::so31, AlgebraName::iso21, AlgebraName::so22};
    const std::vector<IdentityId> ids = {IdentityId::CS_NULL, IdentityId::CS_PERP, IdentityId::EINSTEIN_CS,
                                         IdentityId::TWO_CS_SUM, IdentityId::TWO_CS_DIFF};
    for (auto id : ids)
        for (auto name : algebras) {
            const auto alg = src(name);
            ExactCheck check(std::string(to_string(id)) + "/" + std::string(to_string(name)));
            int degenerate = 0;
            for (const auto& cs : suite_couplings(id, name))
                for (auto seed = o.seed_begin; seed < o.seed_end; ++seed) {
                    CouplingConstants c;
                    c.c0 = cs.c0;
                    c.c1 = cs.c1;
                    const auto at = where(name, seed) + " c0=" + to_string(cs.c0) + " c1=" + to_string(cs.c1);
                    try {
                        const auto r = identity_residual(id, alg, seed, c, o.identity);
                        degenerate += r.degenerate_form;
                        check.add(r.residual, at);
                    } catch (const std::exception& e) {
                        ++check.r.cases;
                        check.fail(at + ": " + e.what());
                    }
                }
            // one coupling per algebra must exercise a degenerate form
            if (degenerate == 0) check.fail("no degenerate coupling exercised");
            suite.checks.push_back(check.done());
        }
    suite.seconds = timer.seconds();
    return suite;
}

// ---------------------------------------------------------------------------

SuiteResult mm_suite(const MmSuiteOptions& o, const AlgebraSource& src)
{
    Timer timer;
    SuiteResult suite;
    suite.name = "macdowell_mansouri";
    const std::vector<CouplingSet> couplings = {{2, 3}, {Rational(-1, 2), Rational(5, 3)},
                                                {immirzi_couplings(Rational(1, 3)).first, immirzi_couplings(Rational(1, 3)).second}};
    for (auto name : {AlgebraName::so41, AlgebraName::so32}) {
        const auto alg = src(name);
        const std::string tag = "/" + std::string(to_string(name));
        ExactCheck quartic("QUARTIC_ZERO" + tag);
        ExactCheck expansion("MM_EXPANSION" + tag);
        for (auto seed = o.seed_begin; seed < o.seed_end; ++seed) {
            const auto& cs = couplings[seed % couplings.size()];
            CouplingConstants c;
            c.c0 = cs.c0;
            c.c1 = cs.c1;
            const auto q = identity_residual(IdentityId::QUARTIC_ZERO, alg, seed, c);
            quartic.add_zero(q.passed, where(name, seed));
            expansion.add(identity_residual(IdentityId::MM_EXPANSION, alg, seed, c).residual, where(name, seed));
        }
        suite.checks.push_back(quartic.done());
        suite.checks.push_back(expansion.done());

        ExactCheck pont("pontryagin" + tag);
        ExactCheck holst("holst" + tag);
        for (int i = 0; i < o.topological_fields; ++i) {
            const auto seed = 5000 + static_cast<std::uint64_t>(i);
            const auto w = random_connection(alg, seed, 4, 1, 2).omega;
            const auto t = topological_terms(w);
            pont.add(t.pontryagin, where(name, seed));
            holst.add(t.holst, where(name, seed));
        }
        suite.checks.push_back(pont.done());
        suite.checks.push_back(holst.done());

        NumericCheck var("topological_variation" + tag);
        for (int i = 0; i < o.variation_fields; ++i) {
            const auto seed = 6000 + static_cast<std::uint64_t>(i);
            const auto w = random_connection(alg, seed, 4, 1, 1).omega;
            const auto dw = random_connection(alg, seed + 500, 4, 1, 1).omega;
            const auto v = topological_variation_check(w, dw, o.variation_step);
            var.add(std::max(std::abs(v.d_pontryagin), std::abs(v.d_holst)), o.variation_tolerance, where(name, seed));
        }
        suite.checks.push_back(var.done());
    }
    suite.seconds = timer.seconds();
    return suite;
}

// ---------------------------------------------------------------------------

SuiteResult variation_suite(const VariationSuiteOptions& o, const AlgebraSource& src)
{
    Timer timer;
    SuiteResult suite;
    suite.name = "variation";
    const std::vector<AlgebraName> algebras = {AlgebraName::so31, AlgebraName::iso21, AlgebraName::so22};
    NumericCheck fd("finite_difference");
    ExactCheck expanded("expanded_variation");
    ExactCheck flat("flat_stationary");
    for (int s = 0; s < o.seeds; ++s) {
        const auto name = algebras[static_cast<std::size_t>(s) % algebras.size()];
        const auto alg = src(name);
        const auto beta = cs_form(*alg, 2, 3);
        RandomFormSpec spec;
        spec.cutoff = 1;
        const auto seed = 7000 + static_cast<std::uint64_t>(s);
        const auto a = random_form(seed, alg, spec);
        const auto x = AlgebraElement::basis_vector(alg, 0);
        const auto flat_a = constant_one_form({x, 2 * x, Rational(-1, 3) * x}, 3);
        for (int d = 0; d < o.directions; ++d) {
            const auto dseed = seed * 100 + static_cast<std::uint64_t>(d);
            const auto delta = random_form(dseed, alg, spec);
            const auto at = where(name, seed) + " direction " + std::to_string(d);
            const auto v = cs_variation(a, delta, beta, o.step);
            expanded.add(v.exact - v.expanded, at);
            const double ex = to_double(v.exact);
            const double rel = ex == 0 ? std::abs(v.finite_difference) : std::abs(v.finite_difference - ex) / std::abs(ex);
            fd.add(rel, o.tolerance, at);
            flat.add(integrate_pairing(beta.gram, delta, curvature_form(flat_a)), at);
        }
    }
    suite.checks.push_back(fd.done());
    suite.checks.push_back(expanded.done());
    suite.checks.push_back(flat.done());
    suite.seconds = timer.seconds();
    return suite;
}

// ---------------------------------------------------------------------------

SuiteResult tmg_suite(const TmgSuiteOptions& o, const AlgebraSource& src)
{
    Timer timer;
    SuiteResult suite;
    suite.name = "tmg";
    const std::vector<std::vector<double>> probes = {{0.1, 0.2, 0.3}, {1.7, 4.1, 2.9}, {5.5, 0.05, 3.3}};
    for (auto name : {AlgebraName::so31, AlgebraName::so22}) {
        const auto alg = src(name);
        const std::string tag = "/" + std::string(to_string(name));
        NumericCheck torsion("torsion" + tag);
        NumericCheck cs("CS_TMG" + tag);
        NumericCheck two("TWO_CS_TMG" + tag);
        IdentityOptions io;
        io.grid = o.grid;
        io.tolerance = o.tolerance;
        for (auto seed = o.seed_begin; seed < o.seed_end; ++seed) {
            const auto at = where(name, seed);
            try {
                const auto e = perturbed_identity_coframe(alg, seed);
                const auto lc = levi_civita_connection(e, o.grid);
                for (const auto& x : probes) torsion.add(torsion_residual(e, lc, x), o.torsion_tolerance, at);
                CouplingConstants c;
                c.c0 = 2;
                cs.add(identity_residual(IdentityId::CS_TMG, alg, seed, c, io).numeric_residual, o.tolerance, at);
                two.add(identity_residual(IdentityId::TWO_CS_TMG, alg, seed, c, io).numeric_residual, o.tolerance, at);
            } catch (const std::exception& ex) {
                for (auto* ch : {&torsion, &cs, &two}) ch->add(INFINITY, 0, at + ": " + ex.what());
            }
        }
        suite.checks.push_back(torsion.done());
        suite.checks.push_back(cs.done());
        suite.checks.push_back(two.done());

        if (!o.convergence_grids.empty()) {
            CheckResult conv;
            conv.name = "grid_refinement" + tag;
            try {
                const auto e = perturbed_identity_coframe(alg, o.seed_begin);
                const Rational mu = 5;
                auto value = [&](int g) {
                    const auto t = tmg_terms(e, 1 / mu, -1, g);
                    return -t.palatini + t.cs_omega / to_double(mu);
                };
                const double ref = value(2 * o.convergence_grids.back());
                const double floor = 1e-13 * std::abs(ref);
                double prev = -1;
                std::ostringstream errs;
                errs.precision(3);
                errs << std::scientific;
                for (int g : o.convergence_grids) {
                    const double err = std::abs(value(g) - ref);
                    errs << (prev < 0 ? "" : " ") << err;
                    if (prev >= 0) {
                        ++conv.cases;
                        if (!(err <= prev / 2 || err < floor)) {
                            if (conv.failures++ == 0) conv.first_failure = "grid " + std::to_string(g);
                        }
                    }
                    prev = err;
                }
                conv.worst = errs.str();
            } catch (const std::exception& ex) {
                conv.cases = 1;
                conv.failures = 1;
                conv.first_failure = ex.what();
            }
            suite.checks.push_back(conv);
        }
    }
    suite.seconds = timer.seconds();
    return suite;
}

// ---------------------------------------------------------------------------

SuiteResult geometry_suite(const GeometrySuiteOptions& o, const AlgebraSource& src)
{
    Timer timer;
    SuiteResult suite;
    suite.name = "geometry";
    for (const auto& chart : bundled_charts()) {
        NumericCheck c("flatness/" + chart.name);
        const auto alg = src(chart.algebra);
        const int n = static_cast<int>(chart.generators.size());
        const auto report = flatness(maurer_cartan_field(alg, chart.generators), box_points(n, o.box_samples, o.box_half_width));
        c.add(report.max_curvature, o.flatness_tolerance, chart.name);
        c.add(maurer_cartan_remainder(alg, chart.generators, o.box_half_width), o.flatness_tolerance, "series tail");
        suite.checks.push_back(c.done());
    }
    {
        // a non-flat perturbation must be detected
        CheckResult c;
        c.name = "flatness_detects_curvature";
        c.cases = 1;
        const auto alg = src(AlgebraName::so31);
        const auto mc = maurer_cartan_field(alg, {3, 4, 5});
        const Eigen::MatrixXd j = to_eigen(alg->basis[0]);
        ConnectionField bent = [&](std::span<const double> x) {
            auto a = mc(x);
            a[1] += 0.1 * x[0] * j;
            return a;
        };
        const double f = flatness(bent, box_points(3, o.box_samples, o.box_half_width)).max_curvature;
        std::ostringstream os;
        os.precision(3);
        os << std::scientific << f;
        c.worst = os.str();
        if (!(f > 1e-3)) {
            c.failures = 1;
            c.first_failure = "perturbed connection looks flat";
        }
        suite.checks.push_back(c);
    }
    const auto so3 = build_algebra(AlgebraName::so3);
    {
        NumericCheck c("sphere_square_angle");
        const auto h = holonomy(sphere_model(), square_loop(2, {0.3, 0.1}, 0.2), o.holonomy_steps, *so3);
        c.add(std::abs(rotation_angle(h.matrix) - 0.04), 1e-4, "side 0.2");
        c.add(h.drift, 1e-12, "group drift");
        suite.checks.push_back(c.done());
    }
    {
        // constant connection: the square loop is an exact group commutator
        NumericCheck c("hamster_commutator");
        const Eigen::MatrixXd p0 = to_eigen(so3->basis[1]), p1 = to_eigen(so3->basis[2]);
        const double s = 0.2;
        const Eigen::MatrixXd expected = matrix_exp(s * p1) * matrix_exp(s * p0) * matrix_exp(-s * p1) * matrix_exp(-s * p0);
        const auto h = holonomy(hamster_model(), square_loop(2, {0, 0}, s), 1, *so3);
        c.add((h.matrix - expected).norm(), 1e-13, "side 0.2");
        suite.checks.push_back(c.done());
    }
    {
        CheckResult c;
        c.name = "holonomy_order";
        const double r = 0.5;
        const auto loop = circle_loop(2, {0, 0}, r);
        // Along the circle A(gamma') = e^{tJ} B e^{-tJ} with B = 2 pi r P1 and
        // [J, B] = -2 pi r P0, so H = e^{J} e^{-(J + B)} with J = 2 pi (+-J0).
        const Eigen::MatrixXd j0 = to_eigen(so3->basis[0]), p0 = to_eigen(so3->basis[1]),
                              p1 = to_eigen(so3->basis[2]);
        const double tau = 2 * std::numbers::pi;
        const Eigen::MatrixXd J = ((j0 * p1 - p1 * j0) + p0).norm() < 1e-14 ? Eigen::MatrixXd(tau * j0) : Eigen::MatrixXd(-tau * j0);
        const Eigen::MatrixXd ref = matrix_exp(J) * matrix_exp(-(J + tau * r * p1));
        std::vector<double> errs;
        const std::vector<int> steps = {16, 32, 64, 128};
        for (int k : steps) errs.push_back((holonomy(hamster_model(), loop, k, *so3).matrix - ref).norm());
        // least-squares slope of log error against log step count
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < steps.size(); ++i) {
            const double x = std::log2(steps[i]), y = std::log2(errs[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double m = static_cast<double>(steps.size());
        const double order = -(m * sxy - sx * sy) / (m * sxx - sx * sx);
        std::ostringstream os;
        os.precision(4);
        os << order;
        c.worst = os.str();
        c.cases = 1;
        if (!(order >= 2)) {
            c.failures = 1;
            c.first_failure = "order " + os.str();
        }
        suite.checks.push_back(c);
    }
    suite.seconds = timer.seconds();
    return suite;
}

}  // namespace symcartan
