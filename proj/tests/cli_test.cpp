// Drives the built opvolterra binary end to end.
#include <json.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

const std::string kCli = OPVOLTERRA_CLI;
const std::string kData = OPVOLTERRA_TEST_DATA;

struct Run {
    std::string out;
    int code = -1;
};

// stderr is folded into out only when merge is set.
Run run(const std::string& args, bool merge = false, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + "'" + kCli + "' " + args + (merge ? " 2>&1" : " 2>/dev/null");
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (p == nullptr) return r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, BesselTableFormats) {
    const auto text = run("bessel-table --n-max 6");
    ASSERT_EQ(text.code, 0);
    EXPECT_TRUE(contains(text.out, "1 21 210 1260 4725 10395 10395\n"));
    const auto csv = run("bessel-table --n-max 6 --format csv");
    EXPECT_TRUE(contains(csv.out, "1,21,210,1260,4725,10395,10395\n"));
    const auto json = run("bessel-table --n-max 6 --format json");
    ASSERT_EQ(json.code, 0);
    const auto j = nlohmann::json::parse(json.out);
    ASSERT_EQ(j.size(), 7u);
    EXPECT_EQ(j[6][6], 10395);
}

TEST(Cli, FormatFromEnvironment) {
    const auto r = run("bessel-table --n-max 2", false, "OPVOLTERRA_FORMAT=json");
    EXPECT_EQ(nlohmann::json::parse(r.out)[2], nlohmann::json::parse("[1,3,3]"));
    const auto flag_wins = run("bessel-table --n-max 2 --format csv", false, "OPVOLTERRA_FORMAT=json");
    EXPECT_EQ(flag_wins.out, "1\n1,1\n1,3,3\n");
    EXPECT_EQ(run("bessel-table --n-max 2", false, "OPVOLTERRA_FORMAT=yaml").code, 2);
}

TEST(Cli, Expand) {
    EXPECT_EQ(run("expand --op xI --n 3").out, "x^3 I^3 - 3 x^2 I^4 + 3 x I^5\n");
    EXPECT_EQ(run("expand --op xD --n 2").out, "x D + x^2 D^2\n");
    const auto j = nlohmann::json::parse(run("expand --op xI --n 2 --format json").out);
    EXPECT_EQ(j["pretty"], "x^2 I^2 - x I^3");
    EXPECT_EQ(j["terms"][1]["coeff"], "-1/1");
    EXPECT_EQ(j["terms"][1]["i_pow"], 3);
}

TEST(Cli, ApplyFamilies) {
    EXPECT_EQ(run("apply --family exp --n 2").out, "(x^2 - x) e^x - x^3/2 + x\n");
    EXPECT_EQ(run("apply --family monomial:0 --n 2").out, "x^4/3\n");
    const auto log = run("apply --family log1p --n 1");
    EXPECT_EQ(log.code, 0);
    EXPECT_TRUE(contains(log.out, "ln(1+x)"));
    const auto j = nlohmann::json::parse(run("apply --family exp --n 3 --at 1.0 --format json").out);
    EXPECT_EQ(j["closed_form"]["kind"], "exp");
    EXPECT_LT(j["abs_diff"].get<double>(), 1e-10);
    EXPECT_EQ(j["oracle"]["method"], "nested");
    const auto pw = nlohmann::json::parse(run("apply --family power:2 --n 2 --at 1.5 --format json").out);
    EXPECT_EQ(pw["closed_form"]["exact_coefficient"], "1/8");  // (xI)^2 t = x^5/8
    EXPECT_LT(pw["abs_diff"].get<double>(), 1e-10);
}

TEST(Cli, VerifyExitCodes) {
    const auto ok = run("verify --suite theorem1 --n-max 8");
    EXPECT_EQ(ok.code, 0);
    EXPECT_TRUE(contains(ok.out, "PASS theorem1"));
    const auto bad = run("verify --suite bessel --n-max 8 --inject-fault bessel:4:2");
    EXPECT_EQ(bad.code, 1);
    EXPECT_TRUE(contains(bad.out, "FAIL bessel"));
    const auto rw = run("verify --suite theorem1 --n-max 6 --inject-fault rewrite:4:3:5 --format json");
    EXPECT_EQ(rw.code, 1);
    EXPECT_FALSE(nlohmann::json::parse(rw.out)["passed"].get<bool>());
}

TEST(Cli, OeisCheck) {
    EXPECT_EQ(run("oeis-check --seq A001498 --bfile '" + kData + "/b001498_prefix.txt'").code, 0);
    EXPECT_EQ(run("oeis-check --seq A000806 --bfile '" + kData + "/b000806_prefix.txt'").code, 0);
    const auto bad = run("oeis-check --seq A001498 --bfile '" + kData + "/b001498_corrupted.txt'");
    EXPECT_EQ(bad.code, 1);
    EXPECT_TRUE(contains(bad.out, "first mismatch at index 8"));
    EXPECT_EQ(run("oeis-check --seq A001498 --bfile '" + kData + "/missing.txt'").code, 2);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("expand --op xQ --n 2").code, 2);
    EXPECT_EQ(run("expand --op xI --n 0").code, 2);
    EXPECT_EQ(run("apply --family power:-1 --n 2").code, 2);
    EXPECT_EQ(run("apply --family exp --n 2 --at -1").code, 2);
    EXPECT_EQ(run("verify --suite nope").code, 2);
    EXPECT_EQ(run("verify --inject-fault bessel:x").code, 2);
    EXPECT_EQ(run("--help").code, 0);
    const auto err = run("expand --op xQ --n 2", true);
    EXPECT_TRUE(contains(err.out, "xQ"));
}
