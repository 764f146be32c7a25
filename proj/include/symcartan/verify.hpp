#pragma once

// The `verify` run: a JSON config selects identity reports and property
// suites; the result is one deterministic JSON report.

#include "symcartan/io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace symcartan {

struct VerifyConfig {
    /// Identity ids (CS_NULL, ...) and suite names (forms, star,
    /// invariant_forms, variation, macdowell_mansouri, tmg, geometry).
    std::vector<std::string> suites;
    /// Algebras for identity entries; empty picks the defaults per identity.
    std::vector<AlgebraName> algebras;
    std::uint64_t seed_first = 0;
    std::uint64_t seed_last = 19;  // inclusive
    /// Explicit couplings; empty picks the defaults per identity and algebra.
    std::vector<CouplingConstants> couplings;
    IdentityOptions identity;
    FormsSuiteOptions forms;
    StarSuiteOptions star;
    VariationSuiteOptions variation;
    MmSuiteOptions mm;
    TmgSuiteOptions tmg;
    GeometrySuiteOptions geometry;
    std::string out;
};

/// Known suite names besides the identity ids.
const std::vector<std::string>& property_suite_names();

/// "a..b" (inclusive) into (a, b).
std::pair<std::uint64_t, std::uint64_t> parse_seed_range(std::string_view text);

/// Throws FormatError on unknown keys or malformed values and
/// std::invalid_argument when an identity does not apply to an algebra or
/// coupling.
VerifyConfig parse_verify_config(const Json& j);
/// The configuration used when no file is given.
Json default_verify_config();

struct IdentityEntry {
    IdentityId id;
    AlgebraName algebra;
    CouplingConstants couplings;
    std::uint64_t seed;
};
/// Expanded and validated identity entries in report order.
std::vector<IdentityEntry> identity_entries(const VerifyConfig& c);

struct VerifyOutcome {
    Json report;
    bool passed = true;
    /// One line per failed identity report or suite check.
    std::vector<std::string> failures;
};

VerifyOutcome run_verify(const VerifyConfig& c, const AlgebraSource& src = default_algebras(), bool timings = false);

/// Algebra source with one structure constant of `target` shifted by one.
AlgebraSource corrupted_algebras(AlgebraName target);

}  // namespace symcartan
