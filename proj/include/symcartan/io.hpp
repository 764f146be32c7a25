#pragma once

// JSON documents: algebra descriptors, field files, path specs and reports.
// Rationals travel as "p/q" strings. Objects use sorted keys, so dumps are
// byte-stable.

#include "symcartan/random.hpp"
#include "symcartan/suites.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace symcartan {

using Json = nlohmann::json;

/// Raised for malformed input documents.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json algebra_to_json(const AlgebraDescriptor& alg);

// ---------------------------------------------------------------------------
// Field files
//
// {torus_dim, algebra, forms: [{name, degree, support, components:
//   [{lie_index, multi_index, coeffs: [{k: [..], re: "p/q", im: "p/q"}]}]}]}
//
// Each coefficient entry adds c e^{ik.x} + conj(c) e^{-ik.x} (only re for
// k = 0), so a real field lists one frequency of every +-k pair.

struct NamedForm {
    std::string name;
    Support support = Support::full;
    LieForm form;
};

struct FieldFile {
    AlgebraPtr algebra;
    int torus_dim = 3;
    std::vector<NamedForm> forms;

    const LieForm* find(std::string_view name) const;
    const LieForm& get(std::string_view name) const;
};

Json form_to_json(const NamedForm& f);
Json field_file_to_json(const FieldFile& f);
FieldFile field_file_from_json(const Json& j, const AlgebraSource& src = default_algebras());
FieldFile read_field_file(const std::string& path, const AlgebraSource& src = default_algebras());

// ---------------------------------------------------------------------------
// Paths
//
// {dim, segments: [{type: "line", from: [..], to: [..]} |
//                  {type: "arc", center: [..], radius, plane: [i, j], start, end}]}

Path path_from_json(const Json& j);
Json path_to_json(const Path& p);

// ---------------------------------------------------------------------------
// Reports

Json identity_report_to_json(const IdentityReport& r, std::optional<double> wall_time_ms = {});
Json suite_to_json(const SuiteResult& s, bool timings = false);
Json action_value_to_json(const ActionValue& v);
Json couplings_to_json(const CouplingConstants& c);

Json read_json_file(const std::string& path);
/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace symcartan
