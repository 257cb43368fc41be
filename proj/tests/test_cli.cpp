#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <random>
#include <string>

#include "thetacrystal/verify.hpp"

using namespace tc;

namespace {

struct RunResult {
    int code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(THETA_CRYSTAL_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

json without_timings(json j) {
    for (auto& c : j["claims"]) c.erase("ms");
    return j;
}

const json* find_claim(const json& j, const std::string& id) {
    for (const auto& c : j["claims"])
        if (c["id"] == id) return &c;
    return nullptr;
}

}  // namespace

TEST(Report, JsonRoundTripProperty) {
    std::mt19937_64 g(17);
    for (int t = 0; t < 50; ++t) {
        VerificationReport r;
        r.command = "cmd" + std::to_string(t);
        r.params = json{{"degree", int(g() % 10)}, {"cutoff", "7/2"}};
        for (int i = 0; i < int(g() % 5); ++i) {
            Claim c;
            c.id = "id." + std::to_string(g() % 1000);
            c.anchor = "anchor \xce\xb3";
            c.status = Status(g() % 3);
            c.computed = json::array({int(g() % 7), "x"});
            c.expected = complex_json(ApproxComplex::exact(Rational(int(g() % 9) + 1, 7)));
            c.tol = "1e-20";
            c.ms = double(g() % 100000) / 8;
            r.claims.push_back(c);
        }
        EXPECT_EQ(parse_json(emit_json(r)), r);
        EXPECT_EQ(parse_json(emit_json(r, -1)), r);
    }
}

TEST(Report, ExitCodes) {
    VerificationReport r;
    EXPECT_EQ(r.exit_code(), 0);
    r.claims.push_back({"a", "x", Status::Inconclusive, 1, 1, "exact", 0});
    EXPECT_EQ(r.exit_code(), 3);
    r.claims.push_back({"b", "x", Status::Fail, 1, 2, "exact", 0});
    EXPECT_EQ(r.exit_code(), 1);
}

TEST(Report, BuilderTurnsExceptionsIntoFailures) {
    ReportBuilder b("t");
    b.check("boom", "x", "exact", []() -> Outcome { throw std::runtime_error("no"); });
    b.check("ok", "x", "exact", [] { return outcome(true, 1, 1); });
    auto r = b.take();
    EXPECT_EQ(r.claims[0].status, Status::Fail);
    EXPECT_EQ(r.claims[1].status, Status::Pass);
}

TEST(Report, ComplexValuesAsDecimalStrings) {
    PrecisionScope s(212);
    json c = complex_json(ApproxComplex::exact(Rational(1, 3)));
    EXPECT_TRUE(c["re"].is_string());
    EXPECT_EQ(c["re"].get<std::string>().substr(0, 12), "3.3333333333");
    EXPECT_GT(c["re"].get<std::string>().size(), 60u);
    EXPECT_TRUE(c["err"].is_string());
}

TEST(Cli, CharacterDegreeTwoG7Row) {
    auto r = run("character --degree 2 --json");
    EXPECT_EQ(r.code, 0);
    json j = json::parse(r.out);
    const json* c = find_claim(j, "character.k2.g7");
    ASSERT_NE(c, nullptr);
    EXPECT_EQ((*c)["status"], "pass");
    EXPECT_EQ((*c)["computed"], "1");
    EXPECT_EQ((*c)["expected"], "1");
}

TEST(Cli, EhrhartListsInitialValues) {
    auto r = run("ehrhart --max 12 --json");
    EXPECT_EQ(r.code, 0);
    json j = json::parse(r.out);
    const json* c = find_claim(j, "ehrhart.values");
    ASSERT_NE(c, nullptr);
    EXPECT_EQ((*c)["computed"], json({1, 1, 3, 4, 8, 10, 16, 20, 29, 35, 47, 56, 72}));
    EXPECT_EQ((*c)["expected"], (*c)["computed"]);
}

TEST(Cli, DeterministicForFixedFlags) {
    auto a = run("toric --max 12 --json"), b = run("toric --max 12 --json --threads 3");
    EXPECT_EQ(without_timings(json::parse(a.out)), without_timings(json::parse(b.out)));
}

TEST(Cli, JsonOutputParsesBackIntoTheReport) {
    auto r = run("group --json");
    EXPECT_EQ(r.code, 0);
    VerificationReport rep = parse_json(r.out);
    EXPECT_EQ(rep.command, "group");
    EXPECT_EQ(json::parse(emit_json(rep)), json::parse(r.out));
}

TEST(Cli, InvalidArgumentsExitTwo) {
    EXPECT_EQ(run("rep --degree 3").code, 2);
    EXPECT_EQ(run("character --degree abc").code, 2);
    EXPECT_EQ(run("jacobian --cutoff x").code, 2);
    EXPECT_EQ(run("jacobian --precision 5").code, 2);
    EXPECT_EQ(run("ehrhart --max -1").code, 2);
    EXPECT_EQ(run("no-such-command").code, 2);
    EXPECT_EQ(run("").code, 2);
}

TEST(Cli, FailedClaimExitsOne) {
    // the literal homomorphism claim does not hold, see README
    auto r = run("symplectic --json");
    EXPECT_EQ(r.code, 1);
    json j = json::parse(r.out);
    EXPECT_EQ((*find_claim(j, "symplectic.homomorphism"))["status"], "fail");
    EXPECT_EQ((*find_claim(j, "symplectic.anti_homomorphism"))["status"], "pass");
}

TEST(Cli, TextOutputHasSummaryLine) {
    auto r = run("toric");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("8 passed, 0 failed, 0 inconclusive"), std::string::npos);
}

TEST(Cli, HilbertMaxBelowTenRejected) { EXPECT_EQ(run("hilbert --max 5").code, 2); }
