#include "symcartan/verify.hpp"

#include <gtest/gtest.h>

using namespace symcartan;

TEST(Io, FieldFileRoundTrip)
{
    const auto alg = build_algebra(AlgebraName::so31);
    const auto a = random_connection(alg, 7, 3, 2, 2);
    FieldFile f;
    f.algebra = alg;
    f.torus_dim = 3;
    f.forms.push_back({"omega", Support::h, a.omega});
    f.forms.push_back({"e", Support::p, a.coframe});
    const auto j = field_file_to_json(f);
    const auto back = field_file_from_json(Json::parse(j.dump()), [&](AlgebraName) { return alg; });
    EXPECT_EQ(back.get("omega"), a.omega);
    EXPECT_EQ(back.get("e"), a.coframe);
    EXPECT_EQ(dump(field_file_to_json(back)), dump(j));
}

TEST(Io, TwoFormWithReversedIndicesFlipsSign)
{
    const Json j = R"({"torus_dim": 3, "algebra": "so3", "forms": [
      {"name": "a", "degree": 2, "components": [
        {"lie_index": 0, "multi_index": [0, 1], "coeffs": [{"k": [0, 0, 0], "re": "1/2"}]}]},
      {"name": "b", "degree": 2, "components": [
        {"lie_index": 0, "multi_index": [1, 0], "coeffs": [{"k": [0, 0, 0], "re": "-1/2"}]}]}]})"_json;
    const auto f = field_file_from_json(j);
    EXPECT_EQ(f.get("a"), f.get("b"));
}

TEST(Io, MalformedFieldFilesAreRejected)
{
    auto bad = [](const char* text) { return field_file_from_json(Json::parse(text)); };
    EXPECT_THROW(bad(R"({"algebra": "so31", "forms": []})"), FormatError);
    EXPECT_THROW(bad(R"({"torus_dim": 3, "algebra": "so7", "forms": []})"), FormatError);
    EXPECT_THROW(bad(R"({"torus_dim": 3, "algebra": "so31", "forms": [
      {"name": "w", "degree": 1, "support": "h", "components": [
        {"lie_index": 3, "multi_index": [0], "coeffs": []}]}]})"),
                 FormatError);
    EXPECT_THROW(bad(R"({"torus_dim": 3, "algebra": "so31", "forms": [
      {"name": "w", "degree": 1, "components": [
        {"lie_index": 0, "multi_index": [0], "coeffs": [{"k": [1, 0], "re": "1"}]}]}]})"),
                 FormatError);
    EXPECT_THROW(bad(R"({"torus_dim": 3, "algebra": "so31", "forms": [
      {"name": "w", "degree": 1, "components": [
        {"lie_index": 0, "multi_index": [0], "coeffs": [{"k": [0, 0, 0], "re": "1/0"}]}]}]})"),
                 std::exception);
}

TEST(Io, PathRoundTrip)
{
    const auto p = square_loop(2, {0.1, 0.2}, 0.2);
    const auto q = path_from_json(path_to_json(p));
    ASSERT_EQ(q.segments.size(), 4u);
    EXPECT_EQ(q.segments[2].from, p.segments[2].from);
    const Json arc = R"({"dim": 2, "segments": [
      {"type": "arc", "center": [0, 0], "radius": 0.5, "plane": [0, 1], "start": 0, "end": 6.283185307179586}]})"_json;
    EXPECT_EQ(path_from_json(arc).segments[0].kind, PathSegment::Kind::arc);
    EXPECT_THROW(path_from_json(R"({"dim": 2, "segments": [{"type": "line", "from": [0], "to": [1, 1]}]})"_json),
                 FormatError);
    EXPECT_THROW(path_from_json(R"({"dim": 2, "segments": [{"type": "spiral"}]})"_json), FormatError);
}

TEST(Io, SeedRanges)
{
    EXPECT_EQ(parse_seed_range("0..19"), std::make_pair(std::uint64_t{0}, std::uint64_t{19}));
    EXPECT_EQ(parse_seed_range("4"), std::make_pair(std::uint64_t{4}, std::uint64_t{4}));
    EXPECT_THROW(parse_seed_range("5..2"), FormatError);
    EXPECT_THROW(parse_seed_range("a..b"), FormatError);
    EXPECT_THROW(parse_seed_range("-1..3"), FormatError);
}

TEST(Io, ConfigErrors)
{
    EXPECT_THROW(parse_verify_config(R"({"suits": []})"_json), FormatError);
    EXPECT_THROW(parse_verify_config(R"({"suites": ["NOPE"]})"_json), FormatError);
    EXPECT_THROW(parse_verify_config(R"({"suites": ["CS_NULL"], "algebras": ["so41"]})"_json), std::invalid_argument);
    EXPECT_THROW(parse_verify_config(R"({"couplings": [{"c0": 1}]})"_json), FormatError);
    EXPECT_THROW(parse_verify_config(R"({"grid": 7})"_json), FormatError);
    EXPECT_NO_THROW(parse_verify_config(default_verify_config()));
}

TEST(Io, DefaultEntriesCoverDegenerateCouplings)
{
    auto c = parse_verify_config(default_verify_config());
    const auto entries = identity_entries(c);
    // 5 identities x 3 algebras x 3 couplings x 20 seeds
    EXPECT_EQ(entries.size(), 900u);
}

TEST(Io, SmallVerifyIsDeterministicAndDetectsCorruption)
{
    const auto c = parse_verify_config(
        R"({"suites": ["EINSTEIN_CS", "TWO_CS_SUM", "invariant_forms"], "seeds": "0..1", "cutoff": 1, "terms": 1})"_json);
    const auto a = run_verify(c);
    const auto b = run_verify(c);
    EXPECT_TRUE(a.passed);
    EXPECT_TRUE(a.failures.empty());
    EXPECT_EQ(dump(a.report), dump(b.report));
    EXPECT_EQ(a.report["summary"]["identity_reports"], 2 * 3 * 3 * 2);
    EXPECT_EQ(a.report["identities"][0]["residual"], "0");

    const auto bad = run_verify(c, corrupted_algebras(AlgebraName::so22));
    EXPECT_FALSE(bad.passed);
    EXPECT_FALSE(bad.failures.empty());
}

TEST(Io, EmptyConfigPasses)
{
    const auto o = run_verify(parse_verify_config(Json::object()));
    EXPECT_TRUE(o.passed);
    EXPECT_TRUE(o.report["identities"].empty());
}
