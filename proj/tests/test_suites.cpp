#include "symcartan/suites.hpp"

#include <gtest/gtest.h>

using namespace symcartan;

namespace {

AlgebraSource corrupted(AlgebraName target)
{
    return [target](AlgebraName name) {
        auto alg = build_algebra(name);
        if (name != target) return alg;
        // [v_0, v_1] picks up a spurious component
        return with_structure_constant(*alg, 2, 0, 1, alg->structure_constant(2, 0, 1) + 1);
    };
}

void expect_all_pass(const SuiteResult& s)
{
    EXPECT_TRUE(s.passed()) << s.name;
    for (const auto& c : s.checks) EXPECT_TRUE(c.passed()) << s.name << " " << c.name << " " << c.first_failure;
}

}  // namespace

TEST(Suites, SmallRunsPass)
{
    FormsSuiteOptions f;
    f.cases = 12;
    expect_all_pass(forms_suite(f));
    StarSuiteOptions s;
    s.random_pairs = 10;
    expect_all_pass(star_suite(s));
    expect_all_pass(invariant_forms_suite());
    IdentitySuiteOptions i;
    i.seed_end = 2;
    expect_all_pass(chern_simons_suite(i));
    MmSuiteOptions m;
    m.seed_end = 2;
    m.topological_fields = 2;
    m.variation_fields = 1;
    expect_all_pass(mm_suite(m));
    VariationSuiteOptions v;
    v.seeds = 3;
    v.directions = 2;
    expect_all_pass(variation_suite(v));
    expect_all_pass(geometry_suite());
}

TEST(Suites, SmallTmgRunPasses)
{
    TmgSuiteOptions t;
    t.seed_end = 1;
    t.grid = 24;
    t.convergence_grids = {4, 8};
    expect_all_pass(tmg_suite(t));
}

TEST(Suites, CheckCountsCoverEveryCase)
{
    FormsSuiteOptions f;
    f.cases = 5;
    const auto s = forms_suite(f);
    ASSERT_EQ(s.checks.size(), 16u);
    for (const auto& c : s.checks) EXPECT_EQ(c.cases, 5);
}

TEST(Suites, CorruptedStructureConstantIsDetected)
{
    FormsSuiteOptions f;
    f.cases = 6;
    EXPECT_FALSE(forms_suite(f, corrupted(AlgebraName::so31)).passed());
    StarSuiteOptions s;
    s.random_pairs = 4;
    EXPECT_FALSE(star_suite(s, corrupted(AlgebraName::so22)).passed());
    EXPECT_FALSE(invariant_forms_suite(corrupted(AlgebraName::so41)).passed());
}

TEST(Suites, EmptySuiteDoesNotPass)
{
    SuiteResult s;
    EXPECT_FALSE(s.passed());
    CheckResult c;
    EXPECT_FALSE(c.passed());
}

TEST(Suites, CouplingSetsHaveOneDegenerateEntry)
{
    for (auto id : {IdentityId::CS_NULL, IdentityId::CS_PERP, IdentityId::EINSTEIN_CS})
        for (auto name : {AlgebraName::so31, AlgebraName::iso21, AlgebraName::so22}) {
            const auto alg = build_algebra(name);
            int degenerate = 0;
            for (const auto& c : suite_couplings(id, name)) degenerate += invariant_form(*alg, c.c0, c.c1).degenerate;
            // the restricted families are degenerate throughout on iso21
            if (id == IdentityId::EINSTEIN_CS)
                EXPECT_EQ(degenerate, 1) << to_string(name);
            else
                EXPECT_GE(degenerate, 1) << to_string(id) << " " << to_string(name);
        }
}
