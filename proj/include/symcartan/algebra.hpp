#pragma once

// Gauge Lie algebras of the de Sitter / Minkowski / anti de Sitter models in
// their fundamental matrix representation, with exact structure constants.
//
// Basis convention (frozen; structure constants depend on it):
//   * the fundamental representation has size N = n + 1 for spacetime
//     dimension n; indices 0..n-1 are spacetime, index n is the extra slot;
//   * the invariant metric is G = diag(eta_0, ..., eta_{n-1}, eps) where eta is
//     the spacetime metric and eps = sgn(Lambda) (0 for the Poincare /
//     Euclidean contractions);
//   * M_IJ has entries (I,J) = G_JJ and (J,I) = -G_II;
//   * h-generators come first. For n = 3 they are the dual rotations
//     J0 = M_21, J1 = M_02, J2 = M_10; for n = 4 they are M_01, M_02, M_03,
//     M_12, M_13, M_23; for n = 2 the single generator M_10;
//   * p-generators follow: P_a = E_{a,n} - eps * eta_a * E_{n,a}, so that the
//     upper-right column of a connection matrix carries e^a and the bottom
//     row carries -eps * e_a.
//
// The Killing form is the raw double contraction K_ab = C^c_ad C^d_bc with no
// rescaling.

#include "symcartan/exact_matrix.hpp"
#include "symcartan/rational.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace symcartan {

enum class AlgebraName { so31, iso21, so22, so41, iso31, so32, so4, iso3, so3 };

/// Sign of the star square chosen for the Wigner contractions iso21 and iso3.
enum class ContractionStar { plus, minus };

std::string_view to_string(AlgebraName name);
AlgebraName parse_algebra_name(std::string_view text);
const std::vector<AlgebraName>& all_algebra_names();

/// Raised when an operation needs structure the algebra does not carry
/// (no Hodge star, no real self-dual splitting, ...).
class UnsupportedOperation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// [v_a, v_b] = value * v_c
struct StructureTerm {
    int a = 0;
    int b = 0;
    int c = 0;
    Rational value;
};

class AlgebraDescriptor {
public:
    AlgebraName name{};
    int matrix_dim = 0;
    int spacetime_dim = 0;
    int lambda_sign = 0;
    std::vector<int> metric;  // diagonal of G
    std::vector<RationalMatrix> basis;
    std::vector<std::string> labels;

    int dim() const { return static_cast<int>(basis.size()); }
    int dim_h() const { return dim_h_; }
    int dim_p() const { return dim() - dim_h_; }
    bool in_h(int index) const { return index < dim_h_; }

    /// C^c_{ab}
    const Rational& structure_constant(int c, int a, int b) const
    {
        return structure_[(static_cast<std::size_t>(c) * dim() + a) * dim() + b];
    }
    /// Nonzero entries over all ordered pairs (a, b).
    const std::vector<StructureTerm>& structure_terms() const { return terms_; }

    bool has_star() const { return star_.has_value(); }
    int star_square() const { return star_square_; }
    /// Column a holds the coordinates of *v_a.
    const RationalMatrix& star_matrix() const;

    /// Star on the h = so(3,1) block of the four-dimensional algebras.
    bool has_h_star() const { return h_star_.has_value(); }
    const RationalMatrix& h_star_matrix() const;

    const RationalMatrix& killing() const { return killing_; }
    /// tr(X * Y): the Killing form twisted by the star. For the contractions
    /// this is the limit of the parent algebra's twisted form.
    const RationalMatrix& star_gram() const;
    /// K(X, *_h Y) on h, zero elsewhere.
    const RationalMatrix& h_star_gram() const;

    /// Exact coordinates of a matrix in the span of the basis.
    std::vector<Rational> coordinates(const RationalMatrix& m) const;
    RationalMatrix matrix_of(const std::vector<Rational>& coeffs) const;

private:
    friend std::shared_ptr<const AlgebraDescriptor> build_algebra(AlgebraName, ContractionStar);
    friend std::shared_ptr<const AlgebraDescriptor> with_structure_constant(const AlgebraDescriptor&, int, int, int,
                                                                             const Rational&);
    void set_structure(std::vector<Rational> structure);

    int dim_h_ = 0;
    std::vector<Rational> structure_;
    std::vector<StructureTerm> terms_;
    RationalMatrix killing_;
    std::optional<RationalMatrix> star_;
    std::optional<RationalMatrix> star_gram_;
    int star_square_ = 0;
    std::optional<RationalMatrix> h_star_;
    std::optional<RationalMatrix> h_star_gram_;
};

using AlgebraPtr = std::shared_ptr<const AlgebraDescriptor>;

AlgebraPtr build_algebra(AlgebraName name, ContractionStar contraction = ContractionStar::plus);

/// Copy of an algebra with one structure constant overwritten; the Killing
/// form and sparse terms are recomputed from the altered constants. Used to
/// exercise failure paths.
AlgebraPtr with_structure_constant(const AlgebraDescriptor& alg, int c, int a, int b, const Rational& value);

class AlgebraElement {
public:
    AlgebraElement() = default;
    AlgebraElement(AlgebraPtr alg, std::vector<Rational> coeffs);
    static AlgebraElement zero(AlgebraPtr alg);
    static AlgebraElement basis_vector(AlgebraPtr alg, int index);

    const AlgebraPtr& algebra() const { return alg_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    const Rational& operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
    bool is_zero() const;
    RationalMatrix matrix() const { return alg_->matrix_of(coeffs_); }

    AlgebraElement h_part() const;
    AlgebraElement p_part() const;

    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    AlgebraElement& operator*=(const Rational& s);
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(const Rational& s, AlgebraElement a) { return a *= s; }
    friend AlgebraElement operator-(AlgebraElement a) { return a *= Rational(-1); }
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

private:
    AlgebraPtr alg_;
    std::vector<Rational> coeffs_;
};

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement hodge_star(const AlgebraElement& x);
/// Star of the h-component (four-dimensional algebras); p-components map to 0.
AlgebraElement h_star(const AlgebraElement& x);
/// X_h - X_p
AlgebraElement involution(const AlgebraElement& x);

RationalMatrix killing_gram(const AlgebraDescriptor& alg);
Rational pair(const RationalMatrix& gram, const AlgebraElement& x, const AlgebraElement& y);

/// beta(X, Y) = tr(X (c0 + c1 *) Y).
struct BilinearForm {
    Rational c0;
    Rational c1;
    RationalMatrix gram;
    bool degenerate = false;
    /// Gram supported on h only (forms built from the h-star); degeneracy
    /// then refers to the h block.
    bool h_block = false;
};

BilinearForm invariant_form(const AlgebraDescriptor& alg, const Rational& c0, const Rational& c1);
BilinearForm h_invariant_form(const AlgebraDescriptor& alg, const Rational& c0, const Rational& c1);
/// Plain Killing form, available on every algebra.
BilinearForm killing_form(const AlgebraDescriptor& alg);

/// Basis of the symmetric ad-invariant bilinear forms, found as the exact
/// nullspace of the invariance equations.
std::vector<RationalMatrix> invariant_form_space(const AlgebraDescriptor& alg);

/// Residual array of the Jacobi identity on structure constants; zero iff
/// the constants define a Lie algebra.
std::vector<Rational> jacobi_residuals(const AlgebraDescriptor& alg);

std::pair<AlgebraElement, AlgebraElement> selfdual_split(const AlgebraElement& x);

struct Sl2Factors {
    std::vector<AlgebraElement> self_dual;       // 3 elements
    std::vector<AlgebraElement> anti_self_dual;  // 3 elements
    /// [f_a, f_b] = sum_c constants[(c*3+a)*3+b] f_c, the same for both factors
    std::vector<Rational> plus_constants;
    std::vector<Rational> minus_constants;
    RationalMatrix plus_killing;
    RationalMatrix minus_killing;
};

/// Self-dual / anti-self-dual decomposition of so(2,2) (and so(4)).
Sl2Factors sl2_isomorphism(const AlgebraPtr& alg);

}  // namespace symcartan
