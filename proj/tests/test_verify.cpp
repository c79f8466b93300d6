#include "cobcalc/element_parser.hpp"
#include "cobcalc/verify.hpp"

#include <gtest/gtest.h>

using namespace cobcalc;

namespace {

VerifyConfig quick()
{
    VerifyConfig cfg;
    cfg.primes = {2};
    cfg.W = 4;
    cfg.zcap = 4;
    cfg.maxN = 3;
    return cfg;
}

} // namespace

TEST(Report, JsonShape)
{
    Report rep{"sop", 3, {1, 2}, {}};
    run_case(rep, "P1", [] { return check(true, "unused"); });
    run_case(rep, "z", [] { return check(false, "mismatch", {{"k", 1}}); });
    Json j = to_json(rep);
    EXPECT_EQ(j.dump(),
              R"({"prop":"sop","p":3,"reps":[1,2],"cases":[{"input":"P1","verdict":"pass"},)"
              R"({"input":"z","verdict":"fail","witness":"mismatch","detail":{"k":1}}],"summary":{"pass":1,"fail":1}})");
    EXPECT_EQ(rep.first_failure()->input, "z");
    Report none{"minors", 0, {}, {}};
    EXPECT_TRUE(to_json(none)["p"].is_null());
    EXPECT_TRUE(none.ok());
}

TEST(Report, ExceptionsBecomeFailures)
{
    Report rep{"x", 2, {}, {}};
    run_case(rep, "boom", []() -> Outcome { throw DivisibilityError("no", "b1"); });
    ASSERT_EQ(rep.cases.size(), 1U);
    EXPECT_FALSE(rep.cases[0].pass);
    EXPECT_FALSE(rep.cases[0].witness.empty());
}

TEST(Registry, KnownSuites)
{
    for (const char* name : {"minors", "thmG", "xy", "tomdieck", "sop", "addphi", "multphi", "grad", "uv", "rr", "f1",
                             "il1", "il3", "diagram", "soold", "fglaxioms", "emb", "hypersurface", "morphism"}) {
        EXPECT_TRUE(find_suite(name).has_value()) << name;
    }
    EXPECT_FALSE(find_suite("nope").has_value());
}

TEST(Grid, RepresentativesAreDeduplicated)
{
    VerifyConfig cfg;
    auto g = reps_grid(2, cfg);
    EXPECT_EQ(g.front(), std::vector<long>{1});
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            EXPECT_NE(g[i], g[j]);
        }
    }
    cfg.reps = std::vector<long>{-1};
    EXPECT_EQ(reps_grid(2, cfg), (std::vector<std::vector<long>>{{-1}}));
}

TEST(Suites, QuickConfigurationPasses)
{
    VerifyConfig cfg = quick();
    for (const char* name : {"minors", "sop", "emb", "addphi", "il3", "hypersurface"}) {
        for (const Report& r : (*find_suite(name))(cfg)) {
            EXPECT_TRUE(r.ok()) << name << ": " << (r.first_failure() ? r.first_failure()->witness : "");
            EXPECT_FALSE(r.cases.empty()) << name;
        }
    }
}

TEST(Suites, MinorsSingleComposition)
{
    VerifyConfig cfg;
    cfg.blocks = {2, 1};
    cfg.width = 5;
    auto reps = verify_minors(cfg);
    ASSERT_EQ(reps.size(), 1U);
    ASSERT_EQ(reps[0].cases.size(), 1U);
    EXPECT_EQ(reps[0].cases[0].input, "A(2,1;5)");
    EXPECT_TRUE(reps[0].ok());
    // 1 square determinant + C(4,3) + C(5,3) maximal minors.
    EXPECT_EQ(reps[0].cases[0].detail["checked"], 15);
}

TEST(Suites, Il3PrimeTwoDetail)
{
    VerifyConfig cfg;
    cfg.primes = {2};
    cfg.r = 1;
    auto reps = verify_il3(cfg);
    ASSERT_EQ(reps.size(), 1U);
    const Json& d = reps[0].cases.at(0).detail;
    EXPECT_EQ(d["chi"], "-2");
    EXPECT_EQ(d["binom"], "3");
    EXPECT_EQ(d["binom_mod_p"], 1);
    EXPECT_EQ(d["quotient"], "-1");
    EXPECT_EQ(d["quotient_mod_p"], 1);
}

TEST(Suites, Deterministic)
{
    VerifyConfig cfg = quick();
    cfg.seed = 7;
    auto a = verify_thmG(cfg);
    auto b = verify_thmG(cfg);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(to_json(a[i]).dump(), to_json(b[i]).dump());
    }
}

TEST(ElementParser, Grammar)
{
    RingPtr R = work_ring(2, {4, 2, 4, std::nullopt, false});
    Series P1 = rebase(pn_class(4, 1).ambient, R);
    Series z1 = Series::variable(R, "z1");
    Series z2 = Series::variable(R, "z2");
    EXPECT_EQ(parse_element("P1", R), P1);
    EXPECT_EQ(parse_element(" P1 * z1 ", R), P1 * z1);
    EXPECT_EQ(parse_element("-2*z1^2 + 3 - z2", R), Series::constant(R, -2) * z1 * z1 + Series::constant(R, 3) - z2);
    EXPECT_EQ(parse_element("H(2,2)", R), P1);
    EXPECT_EQ(parse_element("t^-2*P1", R), Series::variable(R, "t", -2) * P1);
    EXPECT_EQ(parse_element("P0", R), Series::constant(R, 1));
}

TEST(ElementParser, Errors)
{
    RingPtr R = work_ring(2, {3, 1, 3, std::nullopt, false});
    for (const char* bad : {"", "P", "P1+", "Q", "z2", "H(1,2)", "H(2,2", "P4", "2**z", "P99999"}) {
        EXPECT_THROW(parse_element(bad, R), ElementParseError) << bad;
    }
}
