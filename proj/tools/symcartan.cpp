// symcartan: verify | eval | holonomy
//
// Exit codes: 0 success, 1 a check failed, 2 bad usage or input.

#include "symcartan/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>

using namespace symcartan;

namespace {

constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --out wins, then the config, then $SYMCARTAN_OUT_DIR/<fallback>; empty means stdout.
std::string output_path(const std::string& explicit_out, const std::string& fallback)
{
    if (!explicit_out.empty()) return explicit_out;
    if (const char* dir = std::getenv("SYMCARTAN_OUT_DIR"); dir && *dir) {
        std::filesystem::create_directories(dir);
        return (std::filesystem::path(dir) / fallback).string();
    }
    return {};
}

void emit(const Json& j, const std::string& path)
{
    if (path.empty())
        std::cout << dump(j);
    else
        write_text_file(path, dump(j));
}

Rational rational_option(const std::string& text, const char* name)
{
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument&) {
        throw UsageError(std::string("--") + name + " expects p/q, got '" + text + "'");
    }
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string config, seeds, out, corrupt;
    bool timings = false;
};

int run_verify_command(const VerifyArgs& a)
{
    Json cj = a.config.empty() ? default_verify_config() : read_json_file(a.config);
    if (!a.seeds.empty()) {
        if (!cj.is_object()) throw FormatError("config must be a JSON object");
        cj["seeds"] = a.seeds;
    }
    const auto config = parse_verify_config(cj);
    AlgebraSource src = default_algebras();
    if (!a.corrupt.empty()) src = corrupted_algebras(parse_algebra_name(a.corrupt));

    const auto outcome = run_verify(config, src, a.timings);
    emit(outcome.report, output_path(a.out.empty() ? config.out : a.out, "verify_report.json"));

    const auto& s = outcome.report["summary"];
    for (const auto& line : outcome.failures) std::cerr << line << "\n";
    std::cerr << "verify: " << s["identity_reports"].get<int>() << " identity reports ("
              << s["identity_failures"].get<int>() << " failed), " << s["suite_checks"].get<int>() << " suite checks ("
              << s["suite_failures"].get<int>() << " failed): " << (outcome.passed ? "PASS" : "FAIL") << "\n";
    return outcome.passed ? 0 : kFailed;
}

// ---------------------------------------------------------------------------

struct EvalArgs {
    std::string fields, action, out;
    std::string c0 = "1", c1 = "1", mu = "5", gamma = "1";
    int grid = 32;
};

const std::vector<std::string> kActions = {"cs_action",  "palatini_action", "cs_torsion_action", "tmg_action",
                                           "mm_action",  "immirzi_action",  "pontryagin",        "holst"};

CartanConnection connection_from(const FieldFile& f)
{
    if (const auto* a = f.find("A")) return split_connection(*a);
    const auto& omega = f.get("omega");
    if (const auto* e = f.find("e")) return make_connection(omega, *e);
    return make_connection(omega, LieForm(f.algebra, f.torus_dim, 1));
}

int run_eval_command(const EvalArgs& a)
{
    const auto f = read_field_file(a.fields);
    const auto& alg = *f.algebra;
    CouplingConstants c;
    c.c0 = rational_option(a.c0, "c0");
    c.c1 = rational_option(a.c1, "c1");
    c.mu = rational_option(a.mu, "mu");
    c.gamma = rational_option(a.gamma, "gamma");

    ActionValue v;
    if (a.action == "cs_action") {
        const LieForm& A = f.find("A") ? f.get("A") : connection_from(f).combined();
        v = cs_action(A, invariant_form(alg, c.c0, c.c1));
    } else if (a.action == "palatini_action" || a.action == "cs_torsion_action") {
        const auto conn = connection_from(f);
        v = a.action == "palatini_action" ? palatini_action(conn.omega, conn.coframe)
                                          : cs_omega_torsion_action(conn.omega, conn.coframe);
    } else if (a.action == "tmg_action") {
        if (c.mu == 0) throw UsageError("--mu must be nonzero");
        v = tmg_action(f.get("e"), c.mu, a.grid);
    } else if (a.action == "mm_action" || a.action == "immirzi_action") {
        if (a.action == "immirzi_action") {
            if (c.gamma == 0) throw UsageError("--gamma must be nonzero");
            std::tie(c.c0, c.c1) = immirzi_couplings(c.gamma);
        }
        const auto beta = h_invariant_form(alg, c.c0, c.c1);
        v = mm_action(connection_from(f), beta);
        v.degenerate_form = beta.degenerate;
    } else {
        const auto t = topological_terms(connection_from(f).omega);
        v = ActionValue::exact(a.action == "pontryagin" ? t.pontryagin : t.holst, f.torus_dim);
    }

    Json j{{"action", a.action},
           {"algebra", std::string(to_string(alg.name))},
           {"couplings", couplings_to_json(c)},
           {"result", action_value_to_json(v)}};
    emit(j, output_path(a.out, "eval.json"));
    std::cerr << a.action << " = " << v.display() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------

struct HolonomyArgs {
    std::string model, path, out;
    int steps = 64;
};

double round12(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    const double r = std::strtod(buf, nullptr);
    return r == 0 ? 0.0 : r;
}

int run_holonomy_command(const HolonomyArgs& a)
{
    if (a.steps < 1) throw UsageError("--steps must be at least 1");
    ConnectionField field;
    AlgebraPtr alg;
    int dim = 2;
    if (a.model == "sphere" || a.model == "hamster") {
        alg = build_algebra(AlgebraName::so3);
        field = a.model == "sphere" ? sphere_model() : hamster_model();
    } else {
        for (const auto& chart : bundled_charts())
            if (chart.name == a.model) {
                alg = build_algebra(chart.algebra);
                field = maurer_cartan_field(alg, chart.generators);
                dim = static_cast<int>(chart.generators.size());
            }
        if (!alg) throw UsageError("unknown model '" + a.model + "'");
    }
    const auto path = path_from_json(read_json_file(a.path));
    if (path.dim != dim)
        throw FormatError("path dimension " + std::to_string(path.dim) + " does not match model dimension " +
                          std::to_string(dim));

    const auto h = holonomy(field, path, a.steps, *alg);
    Json rows = Json::array();
    for (int r = 0; r < h.matrix.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < h.matrix.cols(); ++c) row.push_back(round12(h.matrix(r, c)));
        rows.push_back(row);
    }
    Json j{{"model", a.model},
           {"algebra", std::string(to_string(alg->name))},
           {"steps", a.steps},
           {"segments", path.segments.size()},
           {"matrix", rows},
           {"drift", round12(h.drift)}};
    if (alg->name == AlgebraName::so3) j["rotation_angle"] = round12(rotation_angle(h.matrix));
    emit(j, output_path(a.out, "holonomy.json"));
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact Cartan connection and gravity action engine"};
    app.require_subcommand(1);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run identity reports and property suites");
    verify->add_option("--config", va.config, "JSON run configuration")->check(CLI::ExistingFile);
    verify->add_option("--seeds", va.seeds, "Inclusive seed range a..b");
    verify->add_option("--out", va.out, "Report path");
    verify->add_flag("--timings", va.timings, "Include wall times in the report");
    verify->add_option("--corrupt", va.corrupt)->group("");

    EvalArgs ea;
    auto* eval = app.add_subcommand("eval", "Evaluate an action on a field file");
    eval->add_option("--fields", ea.fields, "Field file")->required()->check(CLI::ExistingFile);
    eval->add_option("--action", ea.action, "Action name")->required()->check(CLI::IsMember(kActions));
    eval->add_option("--c0", ea.c0, "Coupling c0 (p/q)");
    eval->add_option("--c1", ea.c1, "Coupling c1 (p/q)");
    eval->add_option("--mu", ea.mu, "TMG coupling (p/q)");
    eval->add_option("--gamma", ea.gamma, "Immirzi parameter (p/q)");
    eval->add_option("--grid", ea.grid, "Quadrature grid for numeric actions");
    eval->add_option("--out", ea.out, "Output path");

    HolonomyArgs ha;
    auto* hol = app.add_subcommand("holonomy", "Holonomy of a bundled connection along a path");
    hol->add_option("--model", ha.model, "sphere, hamster or a chart name")->required();
    hol->add_option("--path", ha.path, "Path file")->required()->check(CLI::ExistingFile);
    hol->add_option("--steps", ha.steps, "Steps per segment");
    hol->add_option("--out", ha.out, "Output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*verify) return run_verify_command(va);
        if (*eval) return run_eval_command(ea);
        return run_holonomy_command(ha);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const FormatError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
}
