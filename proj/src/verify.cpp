#include "symcartan/verify.hpp"

#include <chrono>
#include <set>

namespace symcartan {

const std::vector<std::string>& property_suite_names()
{
    static const std::vector<std::string> names = {"forms", "star", "invariant_forms", "variation",
                                                   "macdowell_mansouri", "tmg", "geometry"};
    return names;
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(std::string_view text)
{
    const auto dots = text.find("..");
    auto number = [&](std::string_view s) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos)
            throw FormatError("seed range must look like a..b, got '" + std::string(text) + "'");
        return std::stoull(std::string(s));
    };
    if (dots == std::string_view::npos) {
        const auto v = number(text);
        return {v, v};
    }
    const auto a = number(text.substr(0, dots)), b = number(text.substr(dots + 2));
    if (b < a) throw FormatError("empty seed range '" + std::string(text) + "'");
    return {a, b};
}

namespace {

std::vector<AlgebraName> default_algebras_for(IdentityId id)
{
    switch (id) {
    case IdentityId::QUARTIC_ZERO:
    case IdentityId::MM_EXPANSION: return {AlgebraName::so41, AlgebraName::so32};
    case IdentityId::CS_TMG:
    case IdentityId::TWO_CS_TMG: return {AlgebraName::so31, AlgebraName::so22};
    default: return {AlgebraName::so31, AlgebraName::iso21, AlgebraName::so22};
    }
}

std::vector<CouplingConstants> default_couplings_for(IdentityId id, AlgebraName alg)
{
    std::vector<CouplingConstants> out;
    auto add = [&](const Rational& c0, const Rational& c1) {
        CouplingConstants c;
        c.c0 = c0;
        c.c1 = c1;
        out.push_back(c);
    };
    switch (id) {
    case IdentityId::QUARTIC_ZERO: add(1, 1); break;
    case IdentityId::MM_EXPANSION: {
        add(2, 3);
        add(Rational(-1, 2), Rational(5, 3));
        const auto [c0, c1] = immirzi_couplings(Rational(1, 3));
        add(c0, c1);
        break;
    }
    case IdentityId::CS_TMG:
    case IdentityId::TWO_CS_TMG: add(2, 1); break;
    default:
        for (const auto& c : suite_couplings(id, alg)) add(c.c0, c.c1);
    }
    return out;
}

const std::set<std::string> kKeys = {"suites",          "algebras",      "seeds",        "couplings",
                                     "cutoff",          "terms",         "grid",         "tolerance",
                                     "forms_cases",     "star_pairs",    "variation_seeds", "variation_directions",
                                     "topological_fields", "convergence_grids", "out"};

template <class T>
T get(const Json& j, const char* key, T fallback)
{
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw FormatError(std::string("config field '") + key + "' has the wrong type");
    }
}

Rational coupling(const Json& j, const char* key, const Rational& fallback)
{
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_string()) throw FormatError(std::string("coupling '") + key + "' must be a \"p/q\" string");
    try {
        return parse_rational(j.at(key).get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

bool is_identity_name(const std::string& s)
{
    for (auto id : all_identities())
        if (to_string(id) == s) return true;
    return false;
}

}  // namespace

VerifyConfig parse_verify_config(const Json& j)
{
    if (!j.is_object()) throw FormatError("config must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!kKeys.contains(key)) throw FormatError("unknown config field '" + key + "'");
    VerifyConfig c;
    c.suites = get<std::vector<std::string>>(j, "suites", {});
    for (const auto& s : c.suites) {
        const auto& names = property_suite_names();
        if (!is_identity_name(s) && std::find(names.begin(), names.end(), s) == names.end())
            throw FormatError("unknown suite '" + s + "'");
    }
    for (const auto& a : get<std::vector<std::string>>(j, "algebras", {})) {
        try {
            c.algebras.push_back(parse_algebra_name(a));
        } catch (const std::invalid_argument& e) {
            throw FormatError(e.what());
        }
    }
    if (j.contains("seeds")) {
        const auto& s = j.at("seeds");
        if (!s.is_string()) throw FormatError("config field 'seeds' must be a string like \"0..19\"");
        std::tie(c.seed_first, c.seed_last) = parse_seed_range(s.get<std::string>());
    }
    if (j.contains("couplings")) {
        if (!j.at("couplings").is_array()) throw FormatError("config field 'couplings' must be an array");
        for (const auto& jc : j.at("couplings")) {
            if (!jc.is_object()) throw FormatError("each coupling must be an object");
            CouplingConstants cc;
            cc.c0 = coupling(jc, "c0", cc.c0);
            cc.c1 = coupling(jc, "c1", cc.c1);
            cc.mu = coupling(jc, "mu", cc.mu);
            cc.gamma = coupling(jc, "gamma", cc.gamma);
            c.couplings.push_back(cc);
        }
    }
    c.identity.cutoff = get(j, "cutoff", c.identity.cutoff);
    c.identity.terms = get(j, "terms", c.identity.terms);
    c.identity.grid = get(j, "grid", c.identity.grid);
    c.identity.tolerance = get(j, "tolerance", c.identity.tolerance);
    if (c.identity.cutoff < 1 || c.identity.terms < 1 || c.identity.grid < 2 || c.identity.grid % 2)
        throw FormatError("cutoff and terms must be positive and grid even and at least 2");
    c.forms.cases = get(j, "forms_cases", c.forms.cases);
    c.star.random_pairs = get(j, "star_pairs", c.star.random_pairs);
    c.variation.seeds = get(j, "variation_seeds", c.variation.seeds);
    c.variation.directions = get(j, "variation_directions", c.variation.directions);
    c.mm.topological_fields = get(j, "topological_fields", c.mm.topological_fields);
    c.mm.seed_begin = c.seed_first;
    c.mm.seed_end = c.seed_last + 1;
    c.tmg.grid = c.identity.grid;
    c.tmg.tolerance = c.identity.tolerance;
    c.tmg.convergence_grids = get(j, "convergence_grids", c.tmg.convergence_grids);
    c.out = get<std::string>(j, "out", "");
    // surface precondition errors before any work
    identity_entries(c);
    return c;
}

Json default_verify_config()
{
    return Json{{"suites",
                 {"CS_NULL", "CS_PERP", "EINSTEIN_CS", "TWO_CS_SUM", "TWO_CS_DIFF", "forms", "star", "invariant_forms"}},
                {"seeds", "0..19"},
                {"cutoff", 2},
                {"terms", 2},
                {"forms_cases", 40},
                {"star_pairs", 100}};
}

std::vector<IdentityEntry> identity_entries(const VerifyConfig& c)
{
    std::vector<IdentityEntry> out;
    for (const auto& s : c.suites) {
        if (!is_identity_name(s)) continue;
        const auto id = parse_identity(s);
        const auto algebras = c.algebras.empty() ? default_algebras_for(id) : c.algebras;
        for (auto name : algebras) {
            const auto alg = build_algebra(name);
            const auto couplings = c.couplings.empty() ? default_couplings_for(id, name) : c.couplings;
            for (const auto& cc : couplings) {
                validate_identity(id, *alg, cc);
                for (auto seed = c.seed_first; seed <= c.seed_last; ++seed) out.push_back({id, name, cc, seed});
            }
        }
    }
    return out;
}

VerifyOutcome run_verify(const VerifyConfig& c, const AlgebraSource& src, bool timings)
{
    VerifyOutcome o;
    const auto entries = identity_entries(c);
    std::map<AlgebraName, AlgebraPtr> algebras;
    for (const auto& e : entries)
        if (!algebras.contains(e.algebra)) algebras[e.algebra] = src(e.algebra);

    struct Done {
        IdentityReport report;
        std::string error;
        double ms = 0;
    };
    const auto done = indexed_map<Done>(static_cast<int>(entries.size()), [&](int i) {
        const auto& e = entries[static_cast<std::size_t>(i)];
        const auto start = std::chrono::steady_clock::now();
        Done d;
        try {
            d.report = identity_residual(e.id, algebras.at(e.algebra), e.seed, e.couplings, c.identity);
        } catch (const std::exception& ex) {
            d.report.id = e.id;
            d.report.algebra = e.algebra;
            d.report.seed = e.seed;
            d.report.couplings = e.couplings;
            d.report.passed = false;
            d.error = ex.what();
        }
        d.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return d;
    });

    Json identities = Json::array();
    for (const auto& d : done) {
        auto j = identity_report_to_json(d.report, timings ? std::optional<double>(d.ms) : std::nullopt);
        if (!d.error.empty()) j["error"] = d.error;
        identities.push_back(j);
        if (!d.report.passed) {
            o.passed = false;
            o.failures.push_back("FAIL " + (d.report.inputs_digest.empty() ? std::string(to_string(d.report.id))
                                                                              : d.report.inputs_digest) +
                                 (d.error.empty() ? "" : ": " + d.error));
        }
    }

    Json suites = Json::array();
    int checks = 0, failed_checks = 0;
    for (const auto& s : c.suites) {
        if (is_identity_name(s)) continue;
        SuiteResult r;
        if (s == "forms") r = forms_suite(c.forms, src);
        else if (s == "star") r = star_suite(c.star, src);
        else if (s == "invariant_forms") r = invariant_forms_suite(src);
        else if (s == "variation") r = variation_suite(c.variation, src);
        else if (s == "macdowell_mansouri") r = mm_suite(c.mm, src);
        else if (s == "tmg") r = tmg_suite(c.tmg, src);
        else if (s == "geometry") r = geometry_suite(c.geometry, src);
        suites.push_back(suite_to_json(r, timings));
        for (const auto& ch : r.checks) {
            ++checks;
            if (!ch.passed()) {
                ++failed_checks;
                o.passed = false;
                o.failures.push_back("FAIL " + r.name + "/" + ch.name + ": " + ch.first_failure);
            }
        }
    }
    const auto failed_reports = std::count_if(done.begin(), done.end(), [](const Done& d) { return !d.report.passed; });
    o.report = Json{{"schema", 1},
                    {"passed", o.passed},
                    {"identities", identities},
                    {"suites", suites},
                    {"summary",
                     {{"identity_reports", done.size()},
                      {"identity_failures", failed_reports},
                      {"suite_checks", checks},
                      {"suite_failures", failed_checks}}}};
    return o;
}

AlgebraSource corrupted_algebras(AlgebraName target)
{
    return [target](AlgebraName name) {
        auto alg = build_algebra(name);
        if (name != target) return alg;
        return with_structure_constant(*alg, 2, 0, 1, alg->structure_constant(2, 0, 1) + 1);
    };
}

}  // namespace symcartan
