#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace akns::cli {

using nlohmann::json;

// Schema violations and bad flags; the CLI maps these to exit status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kStatusPass = 0;
inline constexpr int kStatusToleranceFailure = 1;
inline constexpr int kStatusUsage = 2;

struct RunConfig {
    std::string command;        // soliton, evolve, charges, glm, burgers, continuum, verify-all
    std::string model = "dnls";  // dnls or al
    json params = json::object();
    std::string outDir = ".";
    std::uint64_t seed = 42;
    double toleranceScale = 1.0;
    unsigned threads = 1;
};

// Validates the top-level layout of a config document. Per-command parameters are
// checked when the command starts, before anything runs.
RunConfig parseConfig(const json& doc);
json toJson(const RunConfig& cfg);

struct RunOutcome {
    int status = kStatusPass;
    std::vector<std::string> artifacts;  // paths, in write order
    json report;                         // also written to <out>/report.json
};

// Runs one command and writes its artifacts. Library failures and missed tolerances
// give status 1 and a failure_report.json; throws UsageError for schema violations.
RunOutcome runCommand(const RunConfig& cfg);

// argv front end: flags, config file, environment. Returns the process exit status.
int runCli(int argc, char** argv);

}  // namespace akns::cli
