// Full-size acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance <symcartan-cli> <data-dir> <scratch-dir>

#include "symcartan/verify.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace symcartan;

namespace {

struct Criterion {
    int number;
    std::string title;
    bool passed = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& note)
    {
        if (!ok) {
            passed = false;
            notes.push_back(note);
        }
    }
    void suite(const SuiteResult& s, double time_limit = 0)
    {
        require(s.passed(), s.name + " suite failed");
        for (const auto& c : s.checks)
            if (!c.passed()) notes.push_back("  " + c.name + ": " + c.first_failure + " (worst " + c.worst + ")");
        if (time_limit > 0) {
            std::ostringstream t;
            t << s.name << " took " << s.seconds << " s, limit " << time_limit << " s";
            require(s.seconds < time_limit, t.str());
        }
    }
};

int exit_status(const std::string& cmd)
{
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

int main(int argc, char** argv)
{
    if (argc != 4) {
        std::cerr << "usage: acceptance <symcartan-cli> <data-dir> <scratch-dir>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const std::filesystem::path data = argv[2], scratch = argv[3];
    std::filesystem::create_directories(scratch);

    std::vector<Criterion> out;
    auto run = [&](int n, const std::string& title, auto&& body) {
        Criterion c{n, title};
        const auto start = std::chrono::steady_clock::now();
        try {
            body(c);
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << "criterion " << n << ": " << (c.passed ? "PASS" : "FAIL") << "  " << title << " ["
                  << std::fixed << std::setprecision(1) << secs << " s]" << std::endl;
        for (const auto& note : c.notes) std::cout << "    " << note << "\n";
        out.push_back(c);
    };

    run(1, "graded form identities on T3 (K=2) and T4 (K=1), 200 cases each",
        [](Criterion& c) { c.suite(forms_suite({}), 60); });
    run(2, "Hodge star identities over basis tuples and random pairs", [](Criterion& c) { c.suite(star_suite({})); });
    run(3, "invariant-form nullspace dimensions", [](Criterion& c) { c.suite(invariant_forms_suite(), 5); });
    run(4, "Chern-Simons identities, 20 seeds x 3 algebras x 3 couplings",
        [](Criterion& c) { c.suite(chern_simons_suite({}), 120); });
    run(5, "MacDowell-Mansouri expansion and topological terms", [](Criterion& c) { c.suite(mm_suite({})); });
    run(6, "Chern-Simons variation against central differences", [](Criterion& c) { c.suite(variation_suite({})); });
    run(7, "TMG torsion, identities and grid refinement", [](Criterion& c) { c.suite(tmg_suite({})); });
    run(8, "Maurer-Cartan flatness and holonomy", [](Criterion& c) { c.suite(geometry_suite({})); });
    run(9, "CLI verify: exit status, determinism, golden report, corruption", [&](Criterion& c) {
        const auto a = scratch / "acceptance_a.json", b = scratch / "acceptance_b.json";
        const std::string quiet = " 2>/dev/null";
        c.require(exit_status(cli + " verify --out " + a.string() + quiet) == 0, "default verify did not exit 0");
        c.require(exit_status(cli + " verify --out " + b.string() + quiet) == 0, "second verify did not exit 0");
        const auto first = slurp(a);
        c.require(!first.empty() && first == slurp(b), "reports of two runs differ");
        c.require(first == slurp(data / "golden" / "verify_default.json"), "report differs from the golden file");
        const int corrupt = exit_status(cli + " verify --config " + (data / "verify_small.json").string() +
                                        " --corrupt so22 >/dev/null" + quiet);
        c.require(corrupt == 1, "corrupted structure constant gave exit " + std::to_string(corrupt));
    });

    const bool all = std::all_of(out.begin(), out.end(), [](const Criterion& c) { return c.passed; });
    std::cout << (all ? "all criteria pass" : "some criteria FAIL") << "\n";
    return all ? 0 : 1;
}
