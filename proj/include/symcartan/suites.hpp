#pragma once

// Verification suites shared by the CLI and the acceptance runner. Each suite
// returns named checks with case and failure counts; exact checks count a
// failure for every nonzero residual.

#include "symcartan/actions.hpp"

#include <functional>
#include <string>
#include <vector>

namespace symcartan {

/// Where suites obtain their algebras (tests substitute corrupted ones).
using AlgebraSource = std::function<AlgebraPtr(AlgebraName)>;
AlgebraSource default_algebras();

struct CheckResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    /// Worst residual seen, rational text for exact checks.
    std::string worst;
    /// First failing case, empty when none failed.
    std::string first_failure;

    bool passed() const { return cases > 0 && failures == 0; }
};

struct SuiteResult {
    std::string name;
    std::vector<CheckResult> checks;
    double seconds = 0;

    bool passed() const;
};

struct FormsSuiteOptions {
    int cases = 200;   // per identity and torus
    int cutoff3 = 2;   // frequency cutoff on T^3
    int cutoff4 = 1;   // and on T^4
    int terms = 1;
};
/// Graded bracket, derivation and integration-by-parts identities for
/// random Lie-valued forms on T^3 and T^4.
SuiteResult forms_suite(const FormsSuiteOptions& o = {}, const AlgebraSource& src = default_algebras());

struct StarSuiteOptions {
    int random_pairs = 100;
    std::uint64_t seed = 1;
};
/// Hodge star, self-dual split and involution identities over all basis
/// tuples plus random pairs.
SuiteResult star_suite(const StarSuiteOptions& o = {}, const AlgebraSource& src = default_algebras());

/// Dimension of the invariant symmetric form space for each algebra.
SuiteResult invariant_forms_suite(const AlgebraSource& src = default_algebras());

struct IdentitySuiteOptions {
    std::uint64_t seed_begin = 0;
    std::uint64_t seed_end = 20;
    IdentityOptions identity;
};
/// CS_NULL, CS_PERP, EINSTEIN_CS, TWO_CS_SUM, TWO_CS_DIFF over so31, iso21,
/// so22 and three couplings each (one degenerate).
SuiteResult chern_simons_suite(const IdentitySuiteOptions& o = {}, const AlgebraSource& src = default_algebras());

struct CouplingSet {
    Rational c0, c1;
};
/// The coupling triples used per identity and algebra.
std::vector<CouplingSet> suite_couplings(IdentityId id, AlgebraName alg);

struct MmSuiteOptions {
    std::uint64_t seed_begin = 0;
    std::uint64_t seed_end = 20;
    int topological_fields = 50;
    int variation_fields = 3;
    double variation_tolerance = 1e-8;
    /// Both terms vanish identically, so the step only scales roundoff.
    double variation_step = 1e-3;
};
SuiteResult mm_suite(const MmSuiteOptions& o = {}, const AlgebraSource& src = default_algebras());

struct VariationSuiteOptions {
    int seeds = 10;
    int directions = 10;
    double tolerance = 1e-6;
    double step = 1e-5;
};
/// Exact first variation of S_CS against central differences.
SuiteResult variation_suite(const VariationSuiteOptions& o = {}, const AlgebraSource& src = default_algebras());

struct TmgSuiteOptions {
    std::uint64_t seed_begin = 0;
    std::uint64_t seed_end = 2;
    int grid = 32;
    double tolerance = 1e-8;
    double torsion_tolerance = 1e-7;
    /// Grids checked for error halving against the finest grid doubled;
    /// empty skips the convergence check.
    std::vector<int> convergence_grids = {8, 16, 32};
};
SuiteResult tmg_suite(const TmgSuiteOptions& o = {}, const AlgebraSource& src = default_algebras());

struct GeometrySuiteOptions {
    double flatness_tolerance = 1e-9;
    double box_half_width = 0.5;
    int box_samples = 3;
    int holonomy_steps = 64;
};
/// Maurer-Cartan flatness on the bundled charts and holonomy checks.
SuiteResult geometry_suite(const GeometrySuiteOptions& o = {}, const AlgebraSource& src = default_algebras());

}  // namespace symcartan
