#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "akns/cli.hpp"

using namespace akns::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("akns_cli_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig config(const std::string& command, const fs::path& out, json params = json::object()) {
    RunConfig cfg;
    cfg.command = command;
    cfg.outDir = out.string();
    cfg.params = std::move(params);
    return cfg;
}

}  // namespace

TEST(Config, RejectsUnknownKeys) {
    EXPECT_THROW(parseConfig({{"command", "glm"}, {"bogus", 1}}), UsageError);
    EXPECT_THROW(parseConfig({{"command", "glm"}, {"output", {{"path", "x"}}}}), UsageError);
    EXPECT_THROW(parseConfig({{"command", "nope"}}), UsageError);
    EXPECT_THROW(parseConfig({{"command", "glm"}, {"model", "kdv"}}), UsageError);
    EXPECT_THROW(parseConfig({{"command", "glm"}, {"seed", -1}}), UsageError);
    EXPECT_THROW(runCommand(config("glm", scratch("unknown"), {{"windw", 4}})), UsageError);
    // keys that belong to another family are rejected too
    EXPECT_THROW(runCommand(config("soliton", scratch("inapplicable"), {{"family", "type1"}, {"c", 0.4}})),
                 UsageError);
}

TEST(Config, RoundTrip) {
    const RunConfig cfg = parseConfig(
        {{"command", "evolve"}, {"model", "al"}, {"seed", 9}, {"tolerance_scale", 2.0}, {"threads", 3}});
    const RunConfig back = parseConfig(toJson(cfg));
    EXPECT_EQ(back.command, "evolve");
    EXPECT_EQ(back.model, "al");
    EXPECT_EQ(back.seed, 9U);
    EXPECT_EQ(back.toleranceScale, 2.0);
    EXPECT_EQ(back.threads, 3U);
}

TEST(Commands, PeriodicityViolation) {
    const fs::path out = scratch("periodic");
    const RunOutcome o = runCommand(config("soliton", out, {{"family", "type1"}, {"periodic", true}, {"xi", {0.9, 0.3}}}));
    EXPECT_EQ(o.status, kStatusToleranceFailure);
    EXPECT_EQ(o.report["error"]["type"], "PeriodicityViolation");
    const json failure = json::parse(slurp(out / "failure_report.json"));
    EXPECT_EQ(failure["error"]["type"], "PeriodicityViolation");
    EXPECT_EQ(failure["config"]["command"], "soliton");
}

TEST(Commands, GlmSymmetricSingleMode) {
    const fs::path out = scratch("glm");
    const RunOutcome o = runCommand(config("glm", out, {{"scheme", "symmetric"}, {"modes", 1}}));
    EXPECT_EQ(o.status, kStatusPass);
    bool sawClosedForm = false;
    for (const auto& c : o.report["checks"])
        if (c["label"] == "closed-form delta for B and C") {
            sawClosedForm = true;
            EXPECT_LT(c["value"].get<double>(), 1e-10);
        }
    EXPECT_TRUE(sawClosedForm);
    const std::string csv = slurp(out / "glm_bc.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "i,j,block,row,col,re,im");
    EXPECT_EQ(json::parse(slurp(out / "report.json"))["config"]["params"]["window"], 12);
}

TEST(Commands, Deterministic) {
    for (const std::string model : {"dnls", "al"}) {
        std::string first;
        for (int k = 0; k < 2; ++k) {
            const fs::path out = scratch("det_" + model + std::to_string(k));
            RunConfig cfg = config("evolve", out, {{"steps", 200}, {"sample_every", 50}});
            cfg.model = model;
            cfg.seed = 1234;
            ASSERT_EQ(runCommand(cfg).status, kStatusPass);
            const std::string csv = slurp(out / "trajectory.csv") + slurp(out / "conservation.csv");
            if (k == 0)
                first = csv;
            else
                EXPECT_EQ(csv, first);
        }
    }
}

TEST(Commands, ArtifactsCarryHeadersAndConfig) {
    for (const std::string command : {"soliton", "charges", "burgers", "continuum"}) {
        const fs::path out = scratch("artifacts_" + command);
        json params = command == "burgers" ? json{{"truncation", false}} : json::object();
        const RunOutcome o = runCommand(config(command, out, params));
        EXPECT_EQ(o.status, kStatusPass) << command;
        for (const auto& a : o.artifacts) {
            const fs::path p(a);
            const std::string text = slurp(p);
            if (p.extension() == ".csv") {
                const std::string header = text.substr(0, text.find('\n'));
                EXPECT_NE(header.find(','), std::string::npos) << a;
                EXPECT_EQ(header.find_first_of("0123456789."), std::string::npos) << a;
            } else {
                EXPECT_TRUE(json::parse(text).contains("config")) << a;
            }
        }
    }
}

TEST(Commands, ToleranceScale) {
    // a bound scaled far below round-off turns a passing check into a status-1 failure
    RunConfig cfg = config("glm", scratch("tolscale"));
    cfg.toleranceScale = 1e-12;
    const RunOutcome o = runCommand(cfg);
    EXPECT_EQ(o.status, kStatusToleranceFailure);
    EXPECT_FALSE(o.report["failure"]["failed_checks"].empty());
}

TEST(Front, ExitStatus) {
    const std::string out = scratch("front").string();
    std::vector<std::string> args{"lattice-akns", "glm", "--scheme", "symmetric", "--modes", "1", "--out", out};
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    EXPECT_EQ(runCli(static_cast<int>(argv.size()), argv.data()), kStatusPass);
    std::vector<std::string> bad{"lattice-akns", "glm", "--set", "bogus=1", "--out", out};
    argv.clear();
    for (auto& a : bad) argv.push_back(a.data());
    EXPECT_EQ(runCli(static_cast<int>(argv.size()), argv.data()), kStatusUsage);
}
