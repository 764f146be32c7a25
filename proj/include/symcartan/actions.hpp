#pragma once

// Gravity action functionals on T^3 and T^4. Exact values are rationals in
// units of (2 pi)^n; numeric values use the same unit.
//
// Conventions (all fixed by expansion oracles in the tests):
//   S_CS^beta(A)      = 1/2 int beta(A ^ dA + 1/3 A ^ [A, A])
//   S_CS(omega)       = S_CS^K(omega), K the Killing form
//   S_Pal(omega, e)   = int tr(e ^ *R + 1/6 e ^ *[e, e]),  tr(X *Y) = star_gram
//   S_CST(omega, e)   = S_CS(omega) + 1/2 int tr(e ^ d_omega e)
//   S_TMG(e)          = -S_Pal(omega(e), e) + (1/mu) S_CS(omega(e))
//   S_MM^beta(A)      = -1/2 int beta(F_h ^ F_h), beta on h = so(3,1)

#include "symcartan/cartan.hpp"
#include "symcartan/numeric.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace symcartan {

struct ActionValue {
    enum class Mode { exact, numeric } mode = Mode::exact;
    int torus_dim = 3;
    Rational exact_value;
    double numeric_value = 0;
    int grid = 0;
    /// Value on the 2x refined grid and the difference to it (numeric mode).
    double refined_value = 0;
    double refinement_error = 0;
    bool degenerate_form = false;

    static ActionValue exact(const Rational& v, int torus_dim);
    /// "p/q x (2pi)^n" or the float in the same unit; exact zero prints "0".
    std::string display() const;
};

/// beta(X, Y) = tr(X (c0 + c1 *) Y) on a star-bearing 3d algebra.
BilinearForm cs_form(const AlgebraDescriptor& alg, const Rational& c0, const Rational& c1);

ActionValue cs_action(const LieForm& a, const BilinearForm& beta);
Rational cs_value(const LieForm& a, const RationalMatrix& gram);
ActionValue palatini_action(const LieForm& omega, const LieForm& e);
ActionValue cs_omega_torsion_action(const LieForm& omega, const LieForm& e);
/// -1/2 int beta(F_h ^ F_h) with beta built on the h block.
ActionValue mm_action(const CartanConnection& a, const BilinearForm& beta_h);

struct VariationResult {
    Rational exact;                  // int beta(dA ^ F)
    Rational expanded;               // direct first-order expansion, no integration by parts
    double finite_difference = 0;    // (S(A + h dA) - S(A - h dA)) / 2h by quadrature
    double step = 1e-5;
};

VariationResult cs_variation(const LieForm& a, const LieForm& delta, const BilinearForm& beta, double step = 1e-5,
                             int grid = 0);

/// Numeric S_CS^beta by trapezoidal quadrature on a grid^n grid (grid = 0 picks
/// one large enough to integrate the trigonometric integrand exactly).
double cs_action_quadrature(const LieForm& a, const Eigen::MatrixXd& gram, int grid = 0, Exec exec = Exec::parallel);
int exact_quadrature_grid(const LieForm& a, int polynomial_degree);

struct TopologicalTerms {
    Rational pontryagin;  // int tr(R ^ R)
    Rational holst;       // int tr(R ^ *R)
};
TopologicalTerms topological_terms(const LieForm& omega);

struct TopologicalVariation {
    TopologicalTerms exact;
    double d_pontryagin = 0;  // central differences by quadrature
    double d_holst = 0;
};
TopologicalVariation topological_variation_check(const LieForm& omega, const LieForm& delta, double step = 1e-3,
                                                 int grid = 0);

/// Right-hand side of the MM expansion: topological terms plus
/// -int (k1 tr([e,e] ^ *R) + k1/4 tr([e,e] ^ *[e,e]) + k0 tr([e,e] ^ R)).
Rational mm_expansion(const CartanConnection& a, const Rational& c0, const Rational& c1);
/// (k0, k1) realised by the expansion for the form (c0, c1).
std::pair<Rational, Rational> mm_expansion_coefficients(const Rational& c0, const Rational& c1);
/// Couplings (c0, c1) realising the displayed Immirzi action for gamma.
std::pair<Rational, Rational> immirzi_couplings(const Rational& gamma);

// ---------------------------------------------------------------------------
// Torsion-free spin connection and TMG.

/// omega(e) at one point and its first partial derivatives.
struct PointConnection {
    PointForm omega;
    std::vector<PointForm> partials;
};

class LeviCivitaSolver {
public:
    explicit LeviCivitaSolver(const LieForm& coframe);
    /// Exact pointwise solve of de + [omega, e] = 0; throws std::domain_error
    /// when the coframe degenerates at x.
    PointConnection at(std::span<const double> x, bool with_partials = true) const;
    const LieForm& coframe() const { return e_; }

private:
    LieForm e_;
    LieForm de_;
    std::vector<LieForm> e_partials_;
    std::vector<LieForm> de_partials_;
    NumericAlgebra num_;
};

/// omega(e) sampled on a uniform grid, evaluated elsewhere by trigonometric
/// interpolation.
struct SampledConnection {
    int torus_dim = 3;
    int grid = 0;
    int dim = 0;
    std::vector<double> samples;  // point-major, PointForm layout per point

    PointForm evaluate(std::span<const double> x) const;
};

SampledConnection levi_civita_connection(const LieForm& coframe, int grid, Exec exec = Exec::parallel);
/// max |de + [omega, e]| at x with omega from the sampled connection.
double torsion_residual(const LieForm& coframe, const SampledConnection& omega, std::span<const double> x);

/// Numeric S_TMG at grid^3 plus a 2x refinement.
ActionValue tmg_action(const LieForm& coframe, const Rational& mu, int grid = 32, Exec exec = Exec::parallel);

struct TmgTerms {
    double palatini = 0;      // S_Pal(omega(e), e)
    double cs_omega = 0;      // S_CS(omega(e))
    double torsion_term = 0;  // 1/2 int tr(e ^ d_omega e)
    double cs_beta = 0;       // S_CS^beta(A(e)) for the requested beta
    double cs_beta_tilde = 0; // same for the involuted connection
};
/// All TMG-related integrals from one quadrature pass with beta = c0 K + c1 S.
TmgTerms tmg_terms(const LieForm& coframe, const Rational& c0, const Rational& c1, int grid, Exec exec = Exec::parallel);

/// Identity plus a seeded perturbation with coefficients of size <= 1/10 and
/// frequencies |k_i| <= 1.
LieForm perturbed_identity_coframe(const AlgebraPtr& alg, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Identity reports.

enum class IdentityId { CS_NULL, CS_PERP, EINSTEIN_CS, TWO_CS_SUM, TWO_CS_DIFF, QUARTIC_ZERO, MM_EXPANSION, CS_TMG, TWO_CS_TMG };

std::string_view to_string(IdentityId id);
IdentityId parse_identity(std::string_view text);
const std::vector<IdentityId>& all_identities();
bool is_exact_identity(IdentityId id);

struct CouplingConstants {
    Rational c0 = 1;
    Rational c1 = 1;
    Rational mu = 5;
    Rational gamma = 1;
};

struct IdentityOptions {
    int cutoff = 2;   // 3d fields; 4d fields use 1
    int terms = 2;
    int grid = 32;    // TMG quadrature
    double tolerance = 1e-8;
};

struct IdentityReport {
    IdentityId id{};
    AlgebraName algebra{};
    std::uint64_t seed = 0;
    CouplingConstants couplings;
    bool exact = true;
    Rational residual;
    double numeric_residual = 0;
    double tolerance = 0;
    bool passed = false;
    bool degenerate_form = false;
    std::string inputs_digest;
};

/// Throws std::invalid_argument when the identity does not apply to the
/// algebra or couplings.
void validate_identity(IdentityId id, const AlgebraDescriptor& alg, const CouplingConstants& c);
IdentityReport identity_residual(IdentityId id, const AlgebraPtr& alg, std::uint64_t seed, const CouplingConstants& c,
                                 const IdentityOptions& options = {});

/// Seeded random Cartan connection used by the identity suites.
CartanConnection random_connection(const AlgebraPtr& alg, std::uint64_t seed, int torus_dim, int cutoff, int terms);

}  // namespace symcartan
