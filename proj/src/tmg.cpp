#include "symcartan/actions.hpp"
#include "symcartan/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace symcartan {

namespace {

LieForm partial(const LieForm& f, int j)
{
    LieForm r(f.algebra(), f.torus_dim(), f.degree());
    for (int a = 0; a < f.algebra()->dim(); ++a)
        for (std::size_t i = 0; i < f.part(a).size(); ++i) r.part(a)[i] = f.part(a)[i].derivative(j);
    return r;
}

void require_tmg_algebra(const AlgebraDescriptor& alg)
{
    if (alg.spacetime_dim != 3 || !alg.has_star())
        throw std::invalid_argument("TMG needs a 3d algebra with a Hodge star, got " + std::string(to_string(alg.name)));
}

// Linear map u -> [omega(u), e] restricted to p and the 2-form components.
Eigen::MatrixXd torsion_operator(const NumericAlgebra& num, const PointForm& e)
{
    const int n = e.n;
    const auto& masks = multi_indices(n, 2);
    const int nm = static_cast<int>(masks.size());
    const int dp = num.dim - num.dim_h;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dp * nm, num.dim_h * n);
    for (const auto& t : num.terms) {
        if (t.a >= num.dim_h || t.b < num.dim_h) continue;
        for (int k = 0; k < nm; ++k) {
            const auto idx = indices_of(masks[k]);
            const int mu = idx[0], nu = idx[1];
            const int row = (t.c - num.dim_h) * nm + k;
            m(row, t.a * n + mu) += t.value * e.at(t.b, nu);
            m(row, t.a * n + nu) -= t.value * e.at(t.b, mu);
        }
    }
    return m;
}

Eigen::VectorXd torsion_rhs(const NumericAlgebra& num, const PointForm& de)
{
    const int nm = static_cast<int>(de.components());
    const int dp = num.dim - num.dim_h;
    Eigen::VectorXd r(dp * nm);
    for (int c = 0; c < dp; ++c)
        for (int k = 0; k < nm; ++k) r(c * nm + k) = -de.at(num.dim_h + c, k);
    return r;
}

PointForm unpack(const Eigen::VectorXd& u, int n, int dim, int dim_h)
{
    PointForm w(n, 1, dim);
    for (int a = 0; a < dim_h; ++a)
        for (int mu = 0; mu < n; ++mu) w.at(a, mu) = u(a * n + mu);
    return w;
}

}  // namespace

LeviCivitaSolver::LeviCivitaSolver(const LieForm& coframe) : e_(coframe), de_(exterior_d(coframe)), num_(*coframe.algebra())
{
    if (coframe.degree() != 1 || !coframe.h_part().is_zero()) throw std::invalid_argument("coframe must be a p-valued 1-form");
    const auto& alg = *coframe.algebra();
    if (alg.dim_p() != coframe.torus_dim()) throw std::invalid_argument("coframe needs torus dimension equal to dim p");
    for (int j = 0; j < coframe.torus_dim(); ++j) {
        e_partials_.push_back(partial(e_, j));
        de_partials_.push_back(partial(de_, j));
    }
}

PointConnection LeviCivitaSolver::at(std::span<const double> x, bool with_partials) const
{
    const int n = e_.torus_dim();
    const auto E = point_value(e_, x);
    const auto DE = point_value(de_, x);
    const Eigen::MatrixXd m = torsion_operator(num_, E);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    if (std::abs(coframe_matrix(e_, x).determinant()) < 1e-12 || !lu.isInvertible())
        throw std::domain_error("coframe is degenerate at a sample point");
    const Eigen::VectorXd u = lu.solve(torsion_rhs(num_, DE));
    PointConnection r;
    r.omega = unpack(u, n, num_.dim, num_.dim_h);
    if (!with_partials) return r;
    for (int j = 0; j < n; ++j) {
        // m d_j u = -d_j(de) - (d_j m) u
        const Eigen::MatrixXd dm = torsion_operator(num_, point_value(e_partials_[j], x));
        const Eigen::VectorXd rhs = torsion_rhs(num_, point_value(de_partials_[j], x)) - dm * u;
        r.partials.push_back(unpack(lu.solve(rhs), n, num_.dim, num_.dim_h));
    }
    return r;
}

SampledConnection levi_civita_connection(const LieForm& coframe, int grid, Exec exec)
{
    if (grid < 2 || grid % 2) throw std::invalid_argument("sampling grid must be even and at least 2");
    const LeviCivitaSolver solver(coframe);
    const int n = coframe.torus_dim();
    SampledConnection s;
    s.torus_dim = n;
    s.grid = grid;
    s.dim = coframe.algebra()->dim();
    const auto total = static_cast<int>(grid_points(n, grid));
    const auto values = indexed_map<std::vector<double>>(
        total,
        [&](int idx) {
            std::vector<double> x(n);
            grid_point(n, grid, idx, x);
            return solver.at(x, false).omega.values;
        },
        exec);
    for (const auto& v : values) s.samples.insert(s.samples.end(), v.begin(), v.end());
    return s;
}

PointForm SampledConnection::evaluate(std::span<const double> x) const
{
    const int N = grid;
    const double h = 2 * std::numbers::pi / N;
    // Periodic cardinal functions for an even number of nodes.
    std::vector<std::vector<double>> w(torus_dim, std::vector<double>(N));
    for (int d = 0; d < torus_dim; ++d)
        for (int j = 0; j < N; ++j) {
            const double t = x[d] - j * h;
            const double half = std::remainder(t, 2 * std::numbers::pi) / 2;
            w[d][j] = std::abs(half) < 1e-14 ? 1.0 : std::sin(N * half) / (N * std::tan(half));
        }
    PointForm r(torus_dim, 1, dim);
    const std::size_t per = r.values.size();
    const auto total = grid_points(torus_dim, N);
    std::vector<int> idx(torus_dim);
    for (std::int64_t p = 0; p < total; ++p) {
        auto k = p;
        double weight = 1;
        for (int d = torus_dim - 1; d >= 0; --d) {
            weight *= w[d][k % N];
            k /= N;
        }
        if (weight == 0) continue;
        const double* v = &samples[static_cast<std::size_t>(p) * per];
        for (std::size_t c = 0; c < per; ++c) r.values[c] += weight * v[c];
    }
    return r;
}

double torsion_residual(const LieForm& coframe, const SampledConnection& omega, std::span<const double> x)
{
    const NumericAlgebra num(*coframe.algebra());
    const auto E = point_value(coframe, x);
    const auto T = point_value(exterior_d(coframe), x) + point_bracket(num, omega.evaluate(x), E);
    double m = 0;
    for (double v : T.values) m = std::max(m, std::abs(v));
    return m;
}

TmgTerms tmg_terms(const LieForm& coframe, const Rational& c0, const Rational& c1, int grid, Exec exec)
{
    const auto& alg = *coframe.algebra();
    require_tmg_algebra(alg);
    const LeviCivitaSolver solver(coframe);
    const NumericAlgebra num(alg);
    const Eigen::MatrixXd K = to_eigen(alg.killing());
    const Eigen::MatrixXd S = to_eigen(alg.star_gram());
    const Eigen::MatrixXd B = to_double(c0) * K + to_double(c1) * S;
    const int n = 3;
    auto cs_density = [&](const Eigen::MatrixXd& g, const PointForm& a, const PointForm& da) {
        return 0.5 * point_pair(g, a, da) + point_pair(g, a, point_bracket(num, a, a)) / 6;
    };
    const auto means = grid_mean_multi(
        n, grid, 5,
        [&](std::span<const double> x, std::span<double> out) {
            const auto lc = solver.at(x);
            const auto E = point_value(coframe, x);
            std::vector<PointForm> de_parts, dw_parts, dA_parts, dAt_parts;
            for (int j = 0; j < n; ++j) {
                de_parts.push_back(point_partial(coframe, x, j));
                dw_parts.push_back(lc.partials[j]);
                dA_parts.push_back(lc.partials[j] + de_parts.back());
                dAt_parts.push_back(lc.partials[j] + (-1.0) * de_parts.back());
            }
            const auto& w = lc.omega;
            const auto dw = point_d(dw_parts);
            const auto dE = point_d(de_parts);
            const auto R = dw + 0.5 * point_bracket(num, w, w);
            out[0] = point_pair(S, E, R) + point_pair(S, E, point_bracket(num, E, E)) / 6;
            out[1] = cs_density(K, w, dw);
            out[2] = 0.5 * point_pair(K, E, dE + point_bracket(num, w, E));
            out[3] = cs_density(B, w + E, point_d(dA_parts));
            out[4] = cs_density(B, w + (-1.0) * E, point_d(dAt_parts));
        },
        exec);
    return {means[0], means[1], means[2], means[3], means[4]};
}

ActionValue tmg_action(const LieForm& coframe, const Rational& mu, int grid, Exec exec)
{
    if (mu == 0) throw std::invalid_argument("topological mass must be nonzero");
    if (grid < 2) throw std::invalid_argument("quadrature grid must be at least 2");
    const auto value = [&](int g) {
        const auto t = tmg_terms(coframe, 1 / mu, -1, g, exec);
        return -t.palatini + t.cs_omega / to_double(mu);
    };
    ActionValue a;
    a.mode = ActionValue::Mode::numeric;
    a.torus_dim = 3;
    a.grid = grid;
    a.numeric_value = value(grid);
    a.refined_value = value(2 * grid);
    a.refinement_error = std::abs(a.refined_value - a.numeric_value);
    return a;
}

LieForm perturbed_identity_coframe(const AlgebraPtr& alg, std::uint64_t seed)
{
    const int n = alg->dim_p();
    LieForm e(alg, n, 1);
    SeededRng rng(seed);
    for (int a = 0; a < n; ++a)
        for (int mu = 0; mu < n; ++mu) {
            Frequency k{};
            for (int i = 0; i < n; ++i) k[i] = rng.uniform(-1, 1);
            // |re|, |im| <= 4/40
            auto f = TrigPoly::mode(n, k, rng.small_rational() / 40, rng.small_rational() / 40);
            if (a == mu) f += TrigPoly::constant(n, 1);
            e.part(alg->dim_h() + a)[static_cast<std::size_t>(mu)] = f;
        }
    return e;
}

}  // namespace symcartan
