#include "symcartan/numeric.hpp"

#include <stdexcept>

namespace symcartan {

NumericAlgebra::NumericAlgebra(const AlgebraDescriptor& alg) : dim(alg.dim()), dim_h(alg.dim_h())
{
    structure.assign(static_cast<std::size_t>(dim) * dim * dim, 0.0);
    for (const auto& t : alg.structure_terms()) {
        const double v = to_double(t.value);
        structure[(static_cast<std::size_t>(t.c) * dim + t.a) * dim + t.b] = v;
        terms.push_back({t.a, t.b, t.c, v});
    }
}

Eigen::MatrixXd to_eigen(const RationalMatrix& m)
{
    Eigen::MatrixXd r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = to_double(m(i, j));
    return r;
}

PointForm::PointForm(int torus_dim, int p, int algebra_dim) : n(torus_dim), degree(p), dim(algebra_dim)
{
    values.assign(static_cast<std::size_t>(algebra_dim) * multi_indices(torus_dim, p).size(), 0.0);
}

PointForm& PointForm::operator+=(const PointForm& o)
{
    if (o.n != n || o.degree != degree || o.dim != dim) throw std::invalid_argument("point form shape mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
}

PointForm& PointForm::operator*=(double s)
{
    for (auto& v : values) v *= s;
    return *this;
}

PointForm point_value(const LieForm& f, std::span<const double> x)
{
    PointForm r(f.torus_dim(), f.degree(), f.algebra()->dim());
    for (int a = 0; a < r.dim; ++a)
        for (std::size_t i = 0; i < r.components(); ++i) {
            const auto& poly = f.part(a)[i];
            if (!poly.is_zero()) r.at(a, i) = poly.evaluate(x);
        }
    return r;
}

PointForm point_partial(const LieForm& f, std::span<const double> x, int j)
{
    PointForm r(f.torus_dim(), f.degree(), f.algebra()->dim());
    for (int a = 0; a < r.dim; ++a)
        for (std::size_t i = 0; i < r.components(); ++i) {
            const auto& poly = f.part(a)[i];
            if (!poly.is_zero()) r.at(a, i) = poly.evaluate_derivative(x, j);
        }
    return r;
}

PointForm point_d(const std::vector<PointForm>& partials)
{
    const auto& first = partials.at(0);
    if (first.degree != 1) throw std::invalid_argument("point_d expects a 1-form");
    const int n = first.n;
    PointForm r(n, 2, first.dim);
    const auto& masks = multi_indices(n, 2);
    for (std::size_t m = 0; m < masks.size(); ++m) {
        const auto idx = indices_of(masks[m]);
        const int mu = idx[0], nu = idx[1];
        for (int a = 0; a < first.dim; ++a) r.at(a, m) = partials[mu].at(a, nu) - partials[nu].at(a, mu);
    }
    return r;
}

PointForm point_bracket(const NumericAlgebra& alg, const PointForm& a, const PointForm& b)
{
    const int n = a.n;
    PointForm r(n, a.degree + b.degree, a.dim);
    const auto& ma = multi_indices(n, a.degree);
    const auto& mb = multi_indices(n, b.degree);
    for (const auto& t : alg.terms)
        for (std::size_t i = 0; i < ma.size(); ++i) {
            const double x = a.at(t.a, i);
            if (x == 0) continue;
            for (std::size_t j = 0; j < mb.size(); ++j) {
                const int s = wedge_sign(ma[i], mb[j]);
                if (s == 0) continue;
                r.at(t.c, static_cast<std::size_t>(multi_index_position(n, ma[i] | mb[j]))) += s * t.value * x * b.at(t.b, j);
            }
        }
    return r;
}

double point_pair(const Eigen::MatrixXd& gram, const PointForm& a, const PointForm& b)
{
    const int n = a.n;
    if (a.degree + b.degree != n) throw std::invalid_argument("pairing is not a top form");
    const auto& ma = multi_indices(n, a.degree);
    const unsigned full = (1u << n) - 1;
    double s = 0;
    for (std::size_t i = 0; i < ma.size(); ++i) {
        const unsigned comp = full & ~ma[i];
        const auto j = static_cast<std::size_t>(multi_index_position(n, comp));
        const int sign = wedge_sign(ma[i], comp);
        for (int x = 0; x < a.dim; ++x) {
            const double av = a.at(x, i);
            if (av == 0) continue;
            for (int y = 0; y < b.dim; ++y)
                if (gram(x, y) != 0) s += sign * gram(x, y) * av * b.at(y, j);
        }
    }
    return s;
}

}  // namespace symcartan
