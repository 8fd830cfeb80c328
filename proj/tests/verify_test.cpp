#include "opvolterra/bfile.hpp"
#include "opvolterra/serialize.hpp"
#include "opvolterra/verify.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace opvolterra;

namespace {

const std::string kData = OPVOLTERRA_TEST_DATA;

VerifyConfig small_config() {
    VerifyConfig cfg;
    cfg.exact_n_max = 8;
    cfg.numeric_n_max = 3;
    cfg.random_alpha_count = 5;
    return cfg;
}

}  // namespace

TEST(Suites, EveryNamedSuitePassesAtSmallBounds) {
    for (const auto& name : suite_names()) {
        const auto r = run_suite(name, small_config());
        EXPECT_EQ(r.suite_name, name);
        EXPECT_FALSE(r.cases.empty());
        EXPECT_TRUE(r.passed()) << name;
    }
    EXPECT_THROW(run_suite("nope", small_config()), std::invalid_argument);
    EXPECT_EQ(run_suites("all", small_config()).size(), suite_names().size());
}

TEST(Suites, ParallelRunMatchesSerial) {
    auto cfg = small_config();
    const auto serial = run_suite("kernel", cfg);
    cfg.jobs = 4;
    const auto parallel = run_suite("kernel", cfg);
    ASSERT_EQ(serial.cases.size(), parallel.cases.size());
    for (std::size_t i = 0; i < serial.cases.size(); ++i) {
        EXPECT_EQ(serial.cases[i].case_id, parallel.cases[i].case_id);
        EXPECT_EQ(serial.cases[i].passed, parallel.cases[i].passed);
    }
}

TEST(Suites, BesselFaultIsDetected) {
    auto cfg = small_config();
    for (int n = 0; n <= cfg.exact_n_max; ++n) {
        for (int k = 0; k <= n; ++k) {
            cfg.fault = Fault{Fault::Kind::bessel_entry, n, k, 0, 1};
            EXPECT_FALSE(run_suite("bessel", cfg).passed()) << n << "," << k;
        }
    }
}

TEST(Suites, RewriteFaultIsDetected) {
    auto cfg = small_config();
    for (int n = 1; n <= cfg.exact_n_max; ++n) {
        for (const auto& t : expand_xI_closed(n).term_list()) {
            cfg.fault = Fault{Fault::Kind::rewrite_coeff, n, t.x_pow, t.op_pow, 1};
            EXPECT_FALSE(run_suite("theorem1", cfg).passed()) << n;
        }
    }
}

TEST(Suites, CombidenSeesTableFault) {
    auto cfg = small_config();
    cfg.fault = Fault::parse("bessel:5:3");
    const auto r = run_suite("combiden", cfg);
    EXPECT_FALSE(r.passed());
    EXPECT_EQ(r.failures(), 2u);  // rows 5 and 6 both read a(5,3)
}

TEST(Fault, Parse) {
    const auto b = Fault::parse("bessel:4:2");
    EXPECT_EQ(b.kind, Fault::Kind::bessel_entry);
    EXPECT_EQ(b.n, 4);
    EXPECT_EQ(b.k, 2);
    EXPECT_EQ(b.delta, 1);
    const auto r = Fault::parse("rewrite:3:2:4:-5");
    EXPECT_EQ(r.kind, Fault::Kind::rewrite_coeff);
    EXPECT_EQ(r.i_pow, 4);
    EXPECT_EQ(r.delta, -5);
    EXPECT_THROW(Fault::parse("bessel:1"), std::invalid_argument);
    EXPECT_THROW(Fault::parse("other:1:2"), std::invalid_argument);
    EXPECT_THROW(Fault::parse("bessel:1:1:0"), std::invalid_argument);
}

TEST(Json, SuiteResultRoundTrip) {
    const auto r = run_suite("gamma", small_config());
    EXPECT_EQ(suite_result_from_json(Json::parse(to_json(r).dump())), r);
    SuiteResult failing{"x", {{"c1", false, "broken", std::nullopt}, {"c2", true, "", 1.5e-12}}, 0.25};
    EXPECT_EQ(suite_result_from_json(Json::parse(to_json(failing).dump())), failing);
    EXPECT_FALSE(to_json(failing)["passed"].get<bool>());
}

TEST(Json, OperatorSumShapeAndRoundTrip) {
    const OperatorSum s = expand_xI_closed(3);
    const Json j = to_json(s);
    ASSERT_EQ(j.size(), 3u);
    EXPECT_EQ(j[0]["coeff"], "1/1");
    EXPECT_EQ(j[0]["x_pow"], 3);
    EXPECT_EQ(j[0]["i_pow"], 3);
    EXPECT_EQ(j[1]["coeff"], "-3/1");
    EXPECT_EQ(j[2]["i_pow"], 5);
    for (int n = 1; n <= 10; ++n) {
        const auto t = power_by_rewrite(n) * Rational(BigInt(-7), BigInt(3));
        EXPECT_EQ(operator_sum_from_json(Json::parse(to_json(t).dump())), t);
    }
    EXPECT_EQ(term_sum_from_json<DerivativeTag>(to_json(expand_xD(4))), expand_xD(4));
}

TEST(Json, ClosedFormsRoundTrip) {
    const std::vector<ClosedForm> forms{apply_to_monomial(expand_xI_closed(3), 2), apply_exp(4), apply_log1p(3)};
    for (const auto& f : forms) EXPECT_EQ(closed_form_from_json(Json::parse(to_json(f).dump())), f);
    const Json e = to_json(ClosedForm{apply_exp(1)});
    EXPECT_EQ(e["kind"], "exp");
    EXPECT_EQ(e["p"], Json::parse(R"(["0/1","1/1"])"));
    EXPECT_EQ(to_json(ClosedForm{Poly{1}})["q"], Json::array());
    EXPECT_THROW(closed_form_from_json(Json::parse(R"({"kind":"sin","p":[],"q":[]})")), std::invalid_argument);
}

TEST(Json, BesselTriangleNumbersAndBigStrings) {
    const Json j = to_json(bessel_recurrence_table(30));
    EXPECT_EQ(j[6], Json::parse("[1,21,210,1260,4725,10395,10395]"));
    EXPECT_TRUE(j[30][30].is_string());
    EXPECT_EQ(bigint_from_json(j[30][30]), bessel_closed(30, 30));
}

TEST(BFile, ParsesCommentsAndBlankLines) {
    std::istringstream in("# header\n\n0 1\n1   -5  # trailing\n7 123456789012345678901234567890\n");
    const auto b = parse_bfile(in);
    ASSERT_EQ(b.entries.size(), 3u);
    EXPECT_EQ(b.entries[1].second, -5);
    EXPECT_EQ(b.entries[2].first, 7);
    EXPECT_EQ(b.entries[2].second, BigInt("123456789012345678901234567890"));
}

TEST(BFile, RejectsMalformed) {
    for (const char* text : {"0 1\n0 2\n", "0\n", "0 1 2\n", "a 1\n", "0 1.5\n", "0 1/2\n", "3 1\n1 1\n"}) {
        std::istringstream in(text);
        EXPECT_THROW(parse_bfile(in), BFileError) << text;
    }
    EXPECT_THROW(load_bfile(kData + "/does_not_exist.txt"), BFileError);
}

TEST(OeisCheck, A001498Prefix) {
    const auto r = oeis_check("A001498", load_bfile(kData + "/b001498_prefix.txt"));
    EXPECT_TRUE(r.passed()) << r.cases[0].detail;
    EXPECT_NE(r.cases[0].detail.find("36 entries"), std::string::npos);
    for (long i = 0; i < 36; ++i) EXPECT_EQ(a001498_at(i), load_bfile(kData + "/b001498_prefix.txt").entries[i].second);
}

TEST(OeisCheck, ShortAndCorrupted) {
    const auto s = oeis_check("A001498", load_bfile(kData + "/b001498_single.txt"));
    EXPECT_TRUE(s.passed());
    EXPECT_NE(s.cases[0].detail.find("short range"), std::string::npos);
    const auto c = oeis_check("A001498", load_bfile(kData + "/b001498_corrupted.txt"));
    EXPECT_FALSE(c.passed());
    EXPECT_NE(c.cases[0].detail.find("first mismatch at index 8"), std::string::npos) << c.cases[0].detail;
}

TEST(OeisCheck, A000806Mappings) {
    const auto id = oeis_check("A000806", load_bfile(kData + "/b000806_prefix.txt"));
    EXPECT_TRUE(id.passed());
    EXPECT_NE(id.cases[0].detail.find("mapping identity"), std::string::npos);

    BFile alt;
    BFile shifted;
    for (int n = 0; n <= 12; ++n) {
        alt.entries.emplace_back(n, n % 2 == 0 ? a000806(n) : BigInt(-a000806(n)));
        shifted.entries.emplace_back(n + 1, a000806(n));
    }
    EXPECT_NE(oeis_check("A000806", alt).cases[0].detail.find("sign-alternation"), std::string::npos);
    EXPECT_NE(oeis_check("A000806", shifted).cases[0].detail.find("index-shift+1"), std::string::npos);

    BFile broken = alt;
    broken.entries[3].second += 1;
    broken.entries[4].second += 1;
    const auto bad = oeis_check("A000806", broken);
    EXPECT_FALSE(bad.passed());
    EXPECT_NE(bad.cases[0].detail.find("first mismatch at index"), std::string::npos);
}

TEST(OeisCheck, EmptyOverlapAndUnknownSequence) {
    BFile far;
    far.entries.emplace_back(5000, 1);
    EXPECT_THROW(oeis_check("A001498", far), BFileError);
    EXPECT_THROW(oeis_check("A000001", far), std::invalid_argument);
}
