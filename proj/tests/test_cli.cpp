#include "symcartan/verify.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <sys/wait.h>

using namespace symcartan;

namespace {

const std::string kCli = SYMCARTAN_CLI;
const std::string kData = SYMCARTAN_DATA;

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args)
{
    Run r;
    FILE* p = popen((kCli + " " + args + " 2>/dev/null").c_str(), "r");
    if (!p) return r;
    char buf[4096];
    while (const auto n = std::fread(buf, 1, sizeof buf, p)) r.out.append(buf, n);
    const int raw = pclose(p);
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

}  // namespace

TEST(Cli, SamplePalatiniMatchesLibrary)
{
    const auto f = read_field_file(kData + "/sample_field.json");
    const auto expected = palatini_action(f.get("omega"), f.get("e"));
    const auto r = run("eval --fields " + kData + "/sample_field.json --action palatini_action");
    ASSERT_EQ(r.code, 0);
    const auto j = Json::parse(r.out);
    EXPECT_EQ(j["result"], action_value_to_json(expected));
}

TEST(Cli, SampleCsTorsionAndMmMatchLibrary)
{
    const auto f = read_field_file(kData + "/sample_field.json");
    const auto r = run("eval --fields " + kData + "/sample_field.json --action cs_torsion_action");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(Json::parse(r.out)["result"], action_value_to_json(cs_omega_torsion_action(f.get("omega"), f.get("e"))));

    const auto g = read_field_file(kData + "/mm_field.json");
    const auto conn = make_connection(g.get("omega"), g.get("e"));
    const auto [c0, c1] = immirzi_couplings(Rational(1, 3));
    auto v = mm_action(conn, h_invariant_form(*g.algebra, c0, c1));
    const auto m = run("eval --fields " + kData + "/mm_field.json --action immirzi_action --gamma 1/3");
    ASSERT_EQ(m.code, 0);
    EXPECT_EQ(Json::parse(m.out)["result"]["value"], to_string(v.exact_value));
}

TEST(Cli, TmgCoframeRefinement)
{
    const auto r = run("eval --fields " + kData + "/tmg_coframe.json --action tmg_action --mu 3 --grid 32");
    ASSERT_EQ(r.code, 0);
    const auto res = Json::parse(r.out)["result"];
    EXPECT_EQ(res["grid"], 32);
    EXPECT_EQ(res["refined_grid"], 64);
    const double v = res["value"], w = res["refined_value"];
    EXPECT_LT(std::abs(v - w), 1e-8 * std::abs(w));
}

TEST(Cli, FineStepSphereHolonomy)
{
    const auto r = run("holonomy --model sphere --path " + kData + "/square_path.json --steps 10000");
    ASSERT_EQ(r.code, 0);
    const auto j = Json::parse(r.out);
    EXPECT_NEAR(j["rotation_angle"].get<double>(), 0.04, 1e-4);
    EXPECT_LT(j["drift"].get<double>(), 1e-10);
}

TEST(Cli, ReportRoundTripsUnchanged)
{
    const auto r = run("verify --config " + kData + "/verify_small.json");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(dump(Json::parse(r.out)), r.out);
}

TEST(Cli, FailingReportCarriesDigest)
{
    const auto r = run("verify --config " + kData + "/verify_small.json --corrupt so22");
    EXPECT_EQ(r.code, 1);
    const auto j = Json::parse(r.out);
    EXPECT_FALSE(j["passed"].get<bool>());
    bool found = false;
    for (const auto& e : j["identities"])
        if (!e["passed"].get<bool>()) {
            found = true;
            EXPECT_NE(e["inputs_digest"].get<std::string>().find("seed="), std::string::npos);
        }
    EXPECT_TRUE(found);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run("eval --fields " + kData + "/sample_field.json --action nope").code, 2);
    EXPECT_EQ(run("eval --fields " + kData + "/sample_field.json --action tmg_action --mu 0").code, 2);
    EXPECT_EQ(run("verify --seeds 9..3").code, 2);
    EXPECT_EQ(run("holonomy --model klein --path " + kData + "/square_path.json").code, 2);
    EXPECT_EQ(run("--help").code, 0);
}
