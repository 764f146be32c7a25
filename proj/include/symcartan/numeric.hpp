#pragma once

// Floating-point mirror of the form algebra at a single point: a p-form valued
// in an algebra is stored as values[a * C(n,p) + i] for basis index a and
// multi-index position i.

#include "symcartan/forms.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace symcartan {

struct NumericAlgebra {
    int dim = 0;
    int dim_h = 0;
    std::vector<double> structure;  // C^c_ab at (c * dim + a) * dim + b
    struct Term {
        int a, b, c;
        double value;
    };
    std::vector<Term> terms;

    explicit NumericAlgebra(const AlgebraDescriptor& alg);
};

Eigen::MatrixXd to_eigen(const RationalMatrix& m);

struct PointForm {
    int n = 0;
    int degree = 0;
    int dim = 0;
    std::vector<double> values;

    PointForm() = default;
    PointForm(int torus_dim, int p, int algebra_dim);
    std::size_t components() const { return multi_indices(n, degree).size(); }
    double& at(int a, std::size_t i) { return values[static_cast<std::size_t>(a) * components() + i]; }
    double at(int a, std::size_t i) const { return values[static_cast<std::size_t>(a) * components() + i]; }

    PointForm& operator+=(const PointForm& o);
    PointForm& operator*=(double s);
    friend PointForm operator+(PointForm a, const PointForm& b) { return a += b; }
    friend PointForm operator*(double s, PointForm a) { return a *= s; }
};

PointForm point_value(const LieForm& f, std::span<const double> x);
/// d/dx_j of every component.
PointForm point_partial(const LieForm& f, std::span<const double> x, int j);
/// Exterior derivative of a 1-form from its partials (partials[j] = d_j a).
PointForm point_d(const std::vector<PointForm>& partials);
PointForm point_bracket(const NumericAlgebra& alg, const PointForm& a, const PointForm& b);
/// Coefficient of the top form beta(a ^ b).
double point_pair(const Eigen::MatrixXd& gram, const PointForm& a, const PointForm& b);

}  // namespace symcartan
