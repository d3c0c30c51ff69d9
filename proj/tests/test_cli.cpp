#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct Proc {
    int code;
    std::string out;
};

Proc run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + JFV_PATH + std::string(" ") + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

// one-variable coefficient at q^n from a series JSON (keys in units of 1/denom)
std::string coeff(const json& j, int n) {
    const json& s = j.at("series");
    int D = s.at("denom").get<int>();
    for (const auto& t : s.at("terms"))
        if (t[0].get<int>() == n * D && t[1].get<int>() == 0 && t[2].get<int>() == 0) return t[3].get<std::string>();
    return "0";
}

}  // namespace

TEST(Cli, SeriesMatchesGoldenFiles) {
    for (const auto& [name, n] : std::vector<std::pair<std::string, int>>{
             {"theta_A2_deg1", 5}, {"delta", 3}, {"level2.K6", 2}, {"theta_0000", 2}}) {
        Proc r = run("series " + name + " --trunc " + std::to_string(n));
        ASSERT_EQ(r.code, 0) << r.out;
        EXPECT_EQ(r.out, slurp(std::string(GOLDEN_DIR) + "/" + name + "_N" + std::to_string(n) + ".json")) << name;
    }
}

TEST(Cli, SeriesValues) {
    json a = json::parse(run("series theta_A2_deg1 --trunc 5").out);
    std::vector<std::string> want{"1", "6", "0", "6", "6", "0"};
    for (int n = 0; n <= 5; ++n) EXPECT_EQ(coeff(a, n), want[n]) << n;
    json d = json::parse(run("series delta --trunc 3").out);
    EXPECT_EQ(coeff(d, 1), "1");
    EXPECT_EQ(coeff(d, 2), "-24");
    EXPECT_EQ(coeff(d, 3), "252");
    json k = json::parse(run("series level2.K6 --trunc 2").out);
    EXPECT_TRUE(k.at("witt_zero").get<bool>());
    EXPECT_TRUE(k.at("modular_support").get<bool>());
    json x = json::parse(run("series level2.X2 --trunc 2").out);
    EXPECT_FALSE(x.at("witt_zero").get<bool>());
}

TEST(Cli, UnknownSeriesSuggests) {
    Proc r = run("series theta_A2_deg --trunc 2");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("theta_A2_deg1"), std::string::npos) << r.out;
}

TEST(Cli, ConfigErrors) {
    EXPECT_EQ(run("verify --trunc 0").code, 2);
    EXPECT_EQ(run("verify --trunc 9 --ceiling 8").code, 2);
    EXPECT_EQ(run("verify --ceiling 17").code, 2);
    EXPECT_EQ(run("verify --format xml").code, 2);
    EXPECT_EQ(run("verify --group 7").code, 2);
    EXPECT_EQ(run("verify --suite 'no.such.*'").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("dims 3 XI 4").code, 2);
}

TEST(Cli, VerifyWittTablePasses) {
    Proc r = run("verify --suite 'level3.witt.*' --trunc 3");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("level3.witt.a1"), std::string::npos);
}

TEST(Cli, NegativeControlsFailAsRequired) {
    Proc r = run("verify --suite 'negctrl.*' --trunc 3 --format json");
    EXPECT_EQ(r.code, 0) << r.out;
    json j = json::parse(r.out);
    EXPECT_EQ(j.at("results").size(), 3u);
    for (const auto& e : j.at("results")) EXPECT_EQ(e.at("status"), "pass");
}

TEST(Cli, PrintedFormMismatchExitsOne) {
    Proc r = run("verify --suite conflict.level3.rel3 --trunc 3 --format json");
    EXPECT_EQ(r.code, 1);
    json j = json::parse(r.out);
    EXPECT_EQ(j.at("results")[0].at("status"), "fail");
    EXPECT_TRUE(j.at("results")[0].contains("first_mismatch"));
}

TEST(Cli, InconclusiveOnlyExitsThree) {
    Proc r = run("verify --suite level4.00.dims.JI --trunc 1 --ceiling 1");
    EXPECT_EQ(r.code, 3) << r.out;
}

TEST(Cli, ReportIsByteStable) {
    const std::string args = "verify --suite 'level2.slash.*,level2.gen.I.*' --trunc 3 --format json";
    Proc a = run(args + " --jobs 1"), b = run(args + " --jobs 3"), c = run(args + " --jobs 2");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, c.out);
    json j = json::parse(a.out);
    EXPECT_EQ(j.at("schema"), "jfv.report/1");
}

TEST(Cli, EnvironmentOverrides) {
    Proc r = run("verify --format json", "JFV_SUITE=level2.slash.X2.1 JFV_TRUNC=2");
    ASSERT_EQ(r.code, 0) << r.out;
    json j = json::parse(r.out);
    EXPECT_EQ(j.at("config").at("trunc"), 2);
    EXPECT_EQ(j.at("results").size(), 1u);
}

TEST(Cli, OutputFile) {
    const std::string path = testing::TempDir() + "jfv_report.json";
    Proc r = run("verify --suite level2.slash.X2.1 --trunc 2 --format json --out " + path);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(slurp(path)).at("summary").at("pass"), 1);
}

TEST(Cli, DimsTable) {
    Proc r = run("dims 00 JI 6 --format json");
    ASSERT_EQ(r.code, 0) << r.out;
    json j = json::parse(r.out);
    std::vector<long long> want{1, 3, 6, 11, 18, 27};
    ASSERT_EQ(j.at("rows").size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        EXPECT_EQ(j.at("rows")[i].at("predicted"), want[i]);
        EXPECT_EQ(j.at("rows")[i].at("rank"), want[i]);
    }
    Proc e = run("dims 2 JI 0 --format json");
    EXPECT_EQ(e.code, 0);
    EXPECT_TRUE(json::parse(e.out).at("rows").empty());
    Proc t = run("dims 1 JI 12");
    EXPECT_EQ(t.code, 0) << t.out;
}
