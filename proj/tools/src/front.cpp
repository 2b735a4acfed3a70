#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "akns/errors.hpp"
#include "run.hpp"

namespace akns::cli {

namespace {

const std::vector<std::string> kCommands{"soliton", "evolve", "charges", "glm", "burgers", "continuum", "verify-all"};
const std::vector<std::string> kTopKeys{"command", "model", "params", "output", "seed", "tolerance_scale", "threads"};

bool oneOf(const std::string& v, const std::vector<std::string>& allowed) {
    return std::find(allowed.begin(), allowed.end(), v) != allowed.end();
}

void validate(const RunConfig& cfg) {
    if (!oneOf(cfg.command, kCommands)) throw UsageError("unknown command '" + cfg.command + "'");
    if (cfg.model != "dnls" && cfg.model != "al") throw UsageError("model must be dnls or al");
    if (!cfg.params.is_object()) throw UsageError("params must be a JSON object");
    if (!(cfg.toleranceScale > 0.0) || !std::isfinite(cfg.toleranceScale))
        throw UsageError("tolerance_scale must be a positive number");
    if (cfg.threads == 0) throw UsageError("threads must be at least 1");
}

bool nonNegativeInteger(const json& j) {
    return j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0);
}

// "Name: detail" or "Name at site n: detail"
std::string errorType(const std::string& what) {
    const auto end = what.find_first_of(" :");
    return what.substr(0, end);
}

}  // namespace

RunConfig parseConfig(const json& doc) {
    if (!doc.is_object()) throw UsageError("the config must be a JSON object");
    for (const auto& [key, value] : doc.items())
        if (!oneOf(key, kTopKeys)) throw UsageError("unknown config key '" + key + "'");
    RunConfig cfg;
    if (!doc.contains("command") || !doc["command"].is_string()) throw UsageError("config needs a string 'command'");
    cfg.command = doc["command"].get<std::string>();
    if (doc.contains("model")) {
        if (!doc["model"].is_string()) throw UsageError("model must be a string");
        cfg.model = doc["model"].get<std::string>();
    }
    if (doc.contains("params")) cfg.params = doc["params"];
    if (doc.contains("output")) {
        const json& out = doc["output"];
        if (!out.is_object()) throw UsageError("output must be an object");
        for (const auto& [key, value] : out.items())
            if (key != "dir") throw UsageError("unknown config key 'output." + key + "'");
        if (out.contains("dir")) {
            if (!out["dir"].is_string()) throw UsageError("output.dir must be a string");
            cfg.outDir = out["dir"].get<std::string>();
        }
    }
    if (doc.contains("seed")) {
        if (!nonNegativeInteger(doc["seed"])) throw UsageError("seed must be a non-negative integer");
        cfg.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("tolerance_scale")) {
        if (!doc["tolerance_scale"].is_number()) throw UsageError("tolerance_scale must be a number");
        cfg.toleranceScale = doc["tolerance_scale"].get<double>();
    }
    if (doc.contains("threads")) {
        if (!nonNegativeInteger(doc["threads"])) throw UsageError("threads must be a positive integer");
        cfg.threads = doc["threads"].get<unsigned>();
    }
    validate(cfg);
    return cfg;
}

json toJson(const RunConfig& cfg) {
    return {{"command", cfg.command},
            {"model", cfg.model},
            {"params", cfg.params},
            {"output", {{"dir", cfg.outDir}}},
            {"seed", cfg.seed},
            {"tolerance_scale", cfg.toleranceScale},
            {"threads", cfg.threads}};
}

RunOutcome runCommand(const RunConfig& cfg) {
    validate(cfg);
    Run run(cfg);
    try {
        if (cfg.command == "soliton") return runSoliton(run);
        if (cfg.command == "evolve") return runEvolve(run);
        if (cfg.command == "charges") return runCharges(run);
        if (cfg.command == "glm") return runGlm(run);
        if (cfg.command == "burgers") return runBurgers(run);
        if (cfg.command == "continuum") return runContinuum(run);
        return runVerifyAll(run);
    } catch (const Error& e) {
        return run.finish(errorType(e.what()), e.what());
    }
}

int runCli(int argc, char** argv) {
    CLI::App app{"Integrable lattice solutions: construction, evolution and verification"};
    std::string command, configPath, outDir, model, family, scheme;
    std::optional<std::uint64_t> seed;
    std::optional<double> tolScale;
    std::optional<long> modes;
    bool periodic = false;
    std::vector<std::string> sets;
    app.add_option("command", command, "soliton | evolve | charges | glm | burgers | continuum | verify-all");
    app.add_option("--config", configPath, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--out", outDir, "output directory");
    app.add_option("--seed", seed, "64-bit seed for random instances");
    app.add_option("--tolerance-scale", tolScale, "multiplies every default tolerance");
    app.add_option("--model", model, "dnls | al");
    app.add_option("--family", family, "soliton family (params.family)");
    app.add_option("--scheme", scheme, "GLM scheme (params.scheme)");
    app.add_option("--modes", modes, "GLM mode count (params.modes)");
    app.add_flag("--periodic", periodic, "demand a periodic window (params.periodic)");
    app.add_option("--set", sets, "params override KEY=JSON, repeatable");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kStatusPass : kStatusUsage;
    }

    try {
        json doc = json::object();
        if (!configPath.empty()) {
            std::ifstream in(configPath);
            try {
                doc = json::parse(in);
            } catch (const json::parse_error& e) {
                throw UsageError(configPath + ": " + e.what());
            }
            if (!doc.is_object()) throw UsageError(configPath + ": the config must be a JSON object");
        }
        if (!command.empty()) doc["command"] = command;
        if (!model.empty()) doc["model"] = model;
        if (!outDir.empty()) doc["output"]["dir"] = outDir;
        if (seed) doc["seed"] = *seed;
        if (tolScale) doc["tolerance_scale"] = *tolScale;
        json& params = doc["params"];
        if (params.is_null()) params = json::object();
        if (!params.is_object()) throw UsageError("params must be a JSON object");
        if (!family.empty()) params["family"] = family;
        if (!scheme.empty()) params["scheme"] = scheme;
        if (modes) params["modes"] = *modes;
        if (periodic) params["periodic"] = true;
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos || eq == 0) throw UsageError("--set expects KEY=JSON, got '" + s + "'");
            try {
                params[s.substr(0, eq)] = json::parse(s.substr(eq + 1));
            } catch (const json::parse_error&) {
                params[s.substr(0, eq)] = s.substr(eq + 1);  // bare strings need no quotes
            }
        }
        if (const char* env = std::getenv("LATTICE_AKNS_THREADS")) {
            char* end = nullptr;
            const long n = std::strtol(env, &end, 10);
            if (end == env || *end != '\0' || n < 1) throw UsageError("LATTICE_AKNS_THREADS must be a positive integer");
            doc["threads"] = static_cast<unsigned>(n);
        }

        const RunOutcome out = runCommand(parseConfig(doc));
        if (out.report.contains("notes"))
            for (const auto& n : out.report["notes"]) std::cout << n.get<std::string>() << '\n';
        // verify-all already printed one summary line per suite as notes
        if (out.report["command"] != "verify-all")
            for (const auto& c : out.report["checks"])
                std::cout << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["label"].get<std::string>() << ": "
                          << c["value"].dump() << '\n';
        if (out.report.contains("failure")) std::cout << out.report["failure"].dump(2) << '\n';
        std::cout << "status " << out.status << ", " << out.artifacts.size() << " artifacts in "
                  << out.report["config"]["output"]["dir"].get<std::string>() << '\n';
        return out.status;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kStatusUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kStatusToleranceFailure;
    }
}

}  // namespace akns::cli
