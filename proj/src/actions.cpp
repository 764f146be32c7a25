#include "symcartan/actions.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace symcartan {

ActionValue ActionValue::exact(const Rational& v, int torus_dim)
{
    ActionValue a;
    a.mode = Mode::exact;
    a.torus_dim = torus_dim;
    a.exact_value = v;
    a.numeric_value = to_double(v);
    return a;
}

std::string ActionValue::display() const
{
    if (mode == Mode::exact && exact_value == 0) return "0";
    std::ostringstream os;
    if (mode == Mode::exact) {
        os << to_string(exact_value);
    } else {
        os.precision(12);
        os << numeric_value;
    }
    os << " x (2pi)^" << torus_dim;
    return os.str();
}

BilinearForm cs_form(const AlgebraDescriptor& alg, const Rational& c0, const Rational& c1)
{
    if (alg.spacetime_dim != 3) throw std::invalid_argument("Chern-Simons forms live on the 3d algebras");
    return invariant_form(alg, c0, c1);
}

namespace {

void require_torus(const LieForm& f, int n, const char* what)
{
    if (f.torus_dim() != n)
        throw std::invalid_argument(std::string(what) + " needs a field on T^" + std::to_string(n));
}

// 1/N closest to the requested step, so perturbed fields keep small denominators.
Rational step_as_rational(double step)
{
    if (!(step > 0) || step > 1) throw std::invalid_argument("finite-difference step must lie in (0, 1]");
    return ratio(1, std::lround(1 / step));
}

const RationalMatrix& twisted(const AlgebraDescriptor& alg)
{
    return alg.star_gram();
}

}  // namespace

Rational cs_value(const LieForm& a, const RationalMatrix& gram)
{
    if (a.degree() != 1) throw std::invalid_argument("Chern-Simons action takes a 1-form");
    return Rational(1, 2) * integrate_pairing(gram, a, exterior_d(a)) +
           Rational(1, 6) * integrate_pairing(gram, a, bracket(a, a));
}

ActionValue cs_action(const LieForm& a, const BilinearForm& beta)
{
    require_torus(a, 3, "Chern-Simons action");
    auto v = ActionValue::exact(cs_value(a, beta.gram), 3);
    v.degenerate_form = beta.degenerate;
    return v;
}

ActionValue palatini_action(const LieForm& omega, const LieForm& e)
{
    require_torus(e, 3, "Palatini action");
    const auto& s = twisted(*e.algebra());
    const auto R = curvature_form(omega);
    return ActionValue::exact(integrate_pairing(s, e, R) + Rational(1, 6) * integrate_pairing(s, e, bracket(e, e)), 3);
}

ActionValue cs_omega_torsion_action(const LieForm& omega, const LieForm& e)
{
    require_torus(e, 3, "Chern-Simons torsion action");
    const auto& k = e.algebra()->killing();
    return ActionValue::exact(cs_value(omega, k) + Rational(1, 2) * integrate_pairing(k, e, covariant_d(omega, e)), 3);
}

ActionValue mm_action(const CartanConnection& a, const BilinearForm& beta_h)
{
    const auto& alg = *a.algebra();
    if (alg.spacetime_dim != 4 || alg.lambda_sign == 0)
        throw std::invalid_argument("MacDowell-Mansouri action needs so41 or so32, got " + std::string(to_string(alg.name)));
    require_torus(a.omega, 4, "MacDowell-Mansouri action");
    const auto F_h = curvature(a).F_h;
    auto v = ActionValue::exact(Rational(-1, 2) * integrate_pairing(beta_h.gram, F_h, F_h), 4);
    v.degenerate_form = beta_h.degenerate;
    return v;
}

int exact_quadrature_grid(const LieForm& a, int polynomial_degree)
{
    return std::max(4, polynomial_degree * std::max(1, a.cutoff()) + 1);
}

double cs_action_quadrature(const LieForm& a, const Eigen::MatrixXd& gram, int grid, Exec exec)
{
    if (grid == 0) grid = exact_quadrature_grid(a, 3);
    const NumericAlgebra num(*a.algebra());
    const int n = a.torus_dim();
    return grid_mean(
        n, grid,
        [&](std::span<const double> x) {
            const auto A = point_value(a, x);
            std::vector<PointForm> partials;
            for (int j = 0; j < n; ++j) partials.push_back(point_partial(a, x, j));
            const auto dA = point_d(partials);
            const auto AA = point_bracket(num, A, A);
            return 0.5 * point_pair(gram, A, dA) + point_pair(gram, A, AA) / 6;
        },
        exec);
}

VariationResult cs_variation(const LieForm& a, const LieForm& delta, const BilinearForm& beta, double step, int grid)
{
    if (a.algebra() != delta.algebra() || delta.degree() != 1) throw std::invalid_argument("variation has the wrong shape");
    VariationResult r;
    r.step = step;
    const auto F = curvature_form(a);
    r.exact = integrate_pairing(beta.gram, delta, F);
    const auto dA = exterior_d(a);
    const auto dd = exterior_d(delta);
    r.expanded = Rational(1, 2) * (integrate_pairing(beta.gram, delta, dA) + integrate_pairing(beta.gram, a, dd)) +
                 Rational(1, 6) * (integrate_pairing(beta.gram, delta, bracket(a, a)) +
                                   integrate_pairing(beta.gram, a, bracket(delta, a)) +
                                   integrate_pairing(beta.gram, a, bracket(a, delta)));
    const auto gram = to_eigen(beta.gram);
    if (grid == 0) grid = std::max(exact_quadrature_grid(a, 3), exact_quadrature_grid(delta, 3));
    const Rational h = step_as_rational(step);
    r.step = to_double(h);
    const double plus = cs_action_quadrature(a + h * delta, gram, grid);
    const double minus = cs_action_quadrature(a - h * delta, gram, grid);
    r.finite_difference = (plus - minus) / (2 * r.step);
    return r;
}

TopologicalTerms topological_terms(const LieForm& omega)
{
    const auto& alg = *omega.algebra();
    require_torus(omega, 4, "topological terms");
    if (!omega.p_part().is_zero()) throw std::invalid_argument("topological terms take an h-valued connection");
    const auto R = curvature_form(omega);
    return {integrate_pairing(alg.killing(), R, R), integrate_pairing(alg.h_star_gram(), R, R)};
}

namespace {

std::pair<double, double> topological_quadrature(const LieForm& omega, int grid)
{
    const auto& alg = *omega.algebra();
    const NumericAlgebra num(alg);
    const Eigen::MatrixXd k = to_eigen(alg.killing());
    const Eigen::MatrixXd s = to_eigen(alg.h_star_gram());
    const int n = omega.torus_dim();
    auto density = [&](std::span<const double> x, bool star) {
        const auto w = point_value(omega, x);
        std::vector<PointForm> partials;
        for (int j = 0; j < n; ++j) partials.push_back(point_partial(omega, x, j));
        const auto R = point_d(partials) + 0.5 * point_bracket(num, w, w);
        return point_pair(star ? s : k, R, R);
    };
    return {grid_mean(n, grid, [&](std::span<const double> x) { return density(x, false); }),
            grid_mean(n, grid, [&](std::span<const double> x) { return density(x, true); })};
}

}  // namespace

TopologicalVariation topological_variation_check(const LieForm& omega, const LieForm& delta, double step, int grid)
{
    TopologicalVariation r;
    r.exact = topological_terms(omega);
    if (grid == 0) grid = std::max(exact_quadrature_grid(omega, 4), exact_quadrature_grid(delta, 4));
    const Rational h = step_as_rational(step);
    step = to_double(h);
    const auto plus = topological_quadrature(omega + h * delta, grid);
    const auto minus = topological_quadrature(omega - h * delta, grid);
    r.d_pontryagin = (plus.first - minus.first) / (2 * step);
    r.d_holst = (plus.second - minus.second) / (2 * step);
    return r;
}

std::pair<Rational, Rational> mm_expansion_coefficients(const Rational& c0, const Rational& c1)
{
    return {c0 / 2, c1 / 2};
}

std::pair<Rational, Rational> immirzi_couplings(const Rational& gamma)
{
    if (gamma == 0) throw std::invalid_argument("Immirzi parameter must be nonzero");
    return {2 / gamma, 2};
}

Rational mm_expansion(const CartanConnection& a, const Rational& c0, const Rational& c1)
{
    const auto& alg = *a.algebra();
    const auto& k = alg.killing();
    const auto& s = alg.h_star_gram();
    const auto R = curvature_form(a.omega);
    const auto ee = bracket(a.coframe, a.coframe);
    const auto [k0, k1] = mm_expansion_coefficients(c0, c1);
    const Rational topological =
        Rational(-1, 2) * (c0 * integrate_pairing(k, R, R) + c1 * integrate_pairing(s, R, R));
    return topological - (k1 * integrate_pairing(s, ee, R) + k1 / 4 * integrate_pairing(s, ee, ee) +
                          k0 * integrate_pairing(k, ee, R));
}

}  // namespace symcartan
