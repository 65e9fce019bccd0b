#include "golie/driver.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace golie;

namespace {

const ReproReport& g2_report()
{
    static ReproReport r = [] {
        RunOptions opt;
        auto rep = reproduce_g2(opt);
        attach_recheck(rep);
        return rep;
    }();
    return r;
}

const Step& step(const ReproReport& r, int group)
{
    for (const auto& s : r.steps)
        if (s.group == group) return s;
    throw std::out_of_range("no step " + std::to_string(group));
}

struct CliResult {
    int code;
    std::string out;
};

CliResult run_cli(const std::string& args)
{
    const std::string cmd = std::string(GOLIE_CLI) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, ""};
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path temp_file(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("golie_test_" + std::to_string(::getpid()) + "_" + name);
}

// G2 written by the CLI itself
const std::string& g2_file()
{
    static std::string path = [] {
        auto p = temp_file("g2.json").string();
        run_cli("build --type G2 --out " + p);
        return p;
    }();
    return path;
}

} // namespace

TEST(ReproduceG2, SevenGroupsInOrder)
{
    const auto& r = g2_report();
    ASSERT_EQ(r.steps.size(), 7u);
    for (int i = 0; i < 7; ++i) EXPECT_EQ(r.steps[i].group, i + 1);
    for (int g : {1, 2, 3, 4, 7}) EXPECT_EQ(step(r, g).status, "pass") << g;
}

TEST(ReproduceG2, H1ModuleClaimFails)
{
    const auto& r = g2_report();
    EXPECT_EQ(step(r, 5).status, "fail");
    EXPECT_EQ(step(r, 6).status, "fail");
    EXPECT_FALSE(r.passed());
    EXPECT_EQ(r.to_json()["verdict"], "fail");
}

TEST(ReproduceG2, RecheckPasses)
{
    const auto& r = g2_report();
    ASSERT_TRUE(r.recheck.is_object());
    EXPECT_EQ(r.recheck["status"], "pass");
    EXPECT_GT(r.recheck["certificates_checked"].get<std::size_t>(), 20u);
}

TEST(ReproduceG2, Deterministic)
{
    RunOptions opt;
    opt.jobs = 3;
    auto again = reproduce_g2(opt);
    attach_recheck(again);
    EXPECT_EQ(again.to_json().dump(), g2_report().to_json().dump());
}

TEST(Recheck, TamperedCertificateIsCaught)
{
    json j = json::parse(g2_report().to_json().dump());
    bool tampered = false;
    for (auto& s : j["steps"])
        for (auto& c : s["certificates"])
            if (!tampered && c["kind"] == "normalizer") {
                auto& v = c["basis"][2];
                for (auto& e : v) e = "0";
                v[2] = "1/1"; // a different vector
                tampered = true;
            }
    ASSERT_TRUE(tampered);
    auto res = recheck_report(j);
    EXPECT_FALSE(res.failures.empty());
}

TEST(Recheck, MissingAlgebraIsAFailure)
{
    json j = json::parse(g2_report().to_json().dump());
    j.erase("algebra");
    EXPECT_FALSE(recheck_report(j).failures.empty());
}

TEST(ReproduceG2, CorruptedRecipeFailsClosure)
{
    json cat = read_json_file(default_catalog_path());
    for (auto& e : cat["entries"])
        if (e["name"] == "h1") e["basis"][0] = "sqrt(2)*(F[3a+2b]-F[a])";
    auto path = temp_file("catalog.json");
    write_json_file(path.string(), cat);
    RunOptions opt;
    opt.catalog_path = path.string();
    auto r = reproduce_g2(opt);
    std::filesystem::remove(path);
    ASSERT_EQ(r.steps.size(), 7u);
    EXPECT_EQ(step(r, 2).status, "fail");
    std::string diag;
    for (const auto& d : step(r, 2).diagnostics) diag += d + "\n";
    EXPECT_NE(diag.find("h1"), std::string::npos) << diag;
    for (int g = 3; g <= 7; ++g) EXPECT_EQ(step(r, g).status, "skipped") << g;
}

TEST(ReproduceG2, FieldWithoutSqrt2IsReported)
{
    RunOptions opt;
    opt.field = parse_field_option("sqrt15-only");
    auto r = reproduce_g2(opt);
    ASSERT_EQ(r.steps.size(), 7u);
    EXPECT_EQ(step(r, 2).status, "fail");
    bool mentioned = false;
    for (const auto& d : step(r, 2).diagnostics) mentioned = mentioned || d.find("field-coverage") != std::string::npos;
    EXPECT_TRUE(mentioned);
}

TEST(ReproduceSpn, Sp3Passes)
{
    RunOptions opt;
    auto r = reproduce_spn(1, 1, 1, opt);
    attach_recheck(r);
    ASSERT_EQ(r.steps.size(), 7u);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.steps.back().summary["survivors"], json({"lambda1", "lambda2", "lambda3", "mu"}));
}

TEST(ReproduceSpn, InputGuards)
{
    RunOptions opt;
    EXPECT_THROW(reproduce_spn(1, 1, 0, opt), std::invalid_argument);
    EXPECT_THROW(reproduce_spn(2, 1, 1, opt), std::invalid_argument);
    EXPECT_THROW(reproduce_spn(2, 2, 1, opt), std::invalid_argument);
}

TEST(FieldOption, Parsing)
{
    EXPECT_EQ(parse_field_option("standard"), ScalarField::standard());
    EXPECT_EQ(parse_field_option("rationals"), ScalarField::rationals());
    EXPECT_EQ(parse_field_option("2,3,5"), ScalarField::standard());
    EXPECT_EQ(parse_field_option("sqrt2-only"), ScalarField::create({2}));
    EXPECT_THROW(parse_field_option("sqrt-only"), std::exception);
    EXPECT_THROW(parse_field_option("2,x"), std::exception);
}

TEST(Cli, BuildAndExitCodes)
{
    auto b = run_cli("build --type G2");
    EXPECT_EQ(b.code, 0) << b.out;
    EXPECT_NE(b.out.find("\"dimension\""), std::string::npos);
    EXPECT_EQ(run_cli("build --type X9").code, 2);
    EXPECT_EQ(run_cli("reproduce spn --n1 1 --n2 1 --n3 0").code, 2);
    EXPECT_EQ(run_cli("reproduce spn --n1 1 --n2 1 --n3 1 --recheck").code, 0);
    EXPECT_EQ(run_cli("reproduce g2").code, 1);
}

TEST(Cli, GoCheck)
{
    auto ok = run_cli("go-check --algebra " + g2_file() + R"( --subalgebra h1 --metric '{"lambda":5,"mu":2}' --recheck)");
    EXPECT_EQ(ok.code, 0) << ok.out;
    auto bad = run_cli("go-check --algebra " + g2_file() + R"( --subalgebra cartan --metric '{"mu":[1,2,1,1,1,1]}')");
    // a certified refutation is a passing check
    EXPECT_EQ(bad.code, 0) << bad.out;
    EXPECT_NE(bad.out.find("\"refuted\""), std::string::npos);
}

TEST(Cli, OutWritesFile)
{
    auto path = temp_file("out.json");
    auto r = run_cli("--seed 3 analyze --algebra " + g2_file() + " --subalgebra h2 --out " + path.string());
    EXPECT_EQ(r.code, 0) << r.out;
    json j = read_json_file(path.string());
    std::filesystem::remove(path);
    EXPECT_EQ(j["seed"], 3);
    EXPECT_EQ(j["tool"], "golie");
}
