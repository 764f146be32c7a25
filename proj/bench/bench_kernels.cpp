// Serial vs OpenMP timings for the grid kernels. Every parallel result must
// match the serial one bit for bit; any mismatch exits 1.

#include "symcartan/actions.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstring>
#include <iomanip>
#include <iostream>

using namespace symcartan;

namespace {

template <class F>
double best_seconds(int repeat, F&& f)
{
    double best = INFINITY;
    for (int i = 0; i < repeat; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b)
{
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"kernel benchmark"};
    int repeat = 3;
    int grid = 24;
    app.add_option("--repeat", repeat, "Runs per variant (best is reported)")->check(CLI::PositiveNumber);
    app.add_option("--grid", grid, "Quadrature grid")->check(CLI::Range(4, 128));
    CLI11_PARSE(app, argc, argv);

    const auto so31 = build_algebra(AlgebraName::so31);
    const auto conn = random_connection(so31, 3, 3, 2, 2);
    const auto a = conn.combined();
    const auto gram = to_eigen(invariant_form(*so31, 2, 3).gram);
    const auto e = perturbed_identity_coframe(so31, 1);

    struct Row {
        std::string name;
        std::function<std::vector<double>(Exec)> run;
    };
    const std::vector<Row> rows = {
        {"grid_mean", [&](Exec x) {
             return std::vector<double>{grid_mean(3, 2 * grid, [](std::span<const double> p) {
                                                       return std::sin(p[0]) * std::cos(2 * p[1]) + p[2] * p[2];
                                                   }, x)};
         }},
        {"cs_action_quadrature", [&](Exec x) { return std::vector<double>{cs_action_quadrature(a, gram, grid, x)}; }},
        {"levi_civita_connection", [&](Exec x) { return levi_civita_connection(e, grid, x).samples; }},
        {"tmg_terms", [&](Exec x) {
             const auto t = tmg_terms(e, 1, 1, grid, x);
             return std::vector<double>{t.palatini, t.cs_omega, t.torsion_term, t.cs_beta, t.cs_beta_tilde};
         }},
        {"identity_residuals", [&](Exec x) {
             return indexed_map<double>(12, [&](int i) {
                 CouplingConstants c;
                 c.c0 = 2;
                 c.c1 = 3;
                 return to_double(identity_residual(IdentityId::EINSTEIN_CS, so31, i, c).residual);
             }, x);
         }},
    };

    std::cout << "threads " << worker_threads() << ", grid " << grid << ", best of " << repeat << "\n";
    std::cout << std::left << std::setw(26) << "kernel" << std::right << std::setw(12) << "serial s" << std::setw(12)
              << "parallel s" << std::setw(10) << "speedup" << "  bitwise\n";
    bool all_same = true;
    for (const auto& r : rows) {
        std::vector<double> s, p;
        const double ts = best_seconds(repeat, [&] { s = r.run(Exec::serial); });
        const double tp = best_seconds(repeat, [&] { p = r.run(Exec::parallel); });
        const bool same = same_bits(s, p);
        all_same = all_same && same;
        std::cout << std::left << std::setw(26) << r.name << std::right << std::fixed << std::setprecision(4)
                  << std::setw(12) << ts << std::setw(12) << tp << std::setprecision(2) << std::setw(10) << ts / tp
                  << "  " << (same ? "identical" : "MISMATCH") << "\n";
    }
    return all_same ? 0 : 1;
}
