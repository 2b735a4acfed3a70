#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "akns/al.hpp"
#include "akns/dnls.hpp"
#include "params.hpp"

namespace akns::cli {

// State shared by one command invocation: judged checks, notes and artifacts.
class Run {
public:
    explicit Run(const RunConfig& cfg);

    const RunConfig& config() const noexcept { return cfg_; }
    double scale() const noexcept { return cfg_.toleranceScale; }

    // resolved parameters replace the raw block in every embedded config
    void setResolved(json params) { resolved_ = std::move(params); }
    json embeddedConfig() const;

    void below(const std::string& label, double value, double tol);
    void inRange(const std::string& label, double value, double lo, double hi);
    // a check judged elsewhere
    void verdict(const std::string& label, bool pass, double value);
    void note(const std::string& text) { notes_.push_back(text); }
    void add(const std::string& key, json value) { extra_[key] = std::move(value); }

    // registers out/name as an artifact and returns its path
    std::filesystem::path artifact(const std::string& name);
    void writeJson(const std::string& name, json body);

    bool failed() const noexcept { return failed_; }
    json checks() const { return checks_; }
    RunOutcome finish(const std::string& errorType = {}, const std::string& errorMessage = {});

private:
    const RunConfig& cfg_;
    std::filesystem::path out_;
    json resolved_;
    json checks_ = json::array();
    json extra_ = json::object();
    std::vector<std::string> notes_;
    std::vector<std::string> artifacts_;
    bool failed_ = false;
};

// long-format rows t,site,field,row,col,re,im
void writeStateRows(CsvWriter& csv, double t, long firstSite, const DnlsState& s);
void writeStateRows(CsvWriter& csv, double t, long firstSite, const AlState& s);
json stateJson(const DnlsState& s, long firstSite);
json stateJson(const AlState& s, long firstSite);

RunOutcome runSoliton(Run& run);
RunOutcome runEvolve(Run& run);
RunOutcome runCharges(Run& run);
RunOutcome runGlm(Run& run);
RunOutcome runBurgers(Run& run);
RunOutcome runContinuum(Run& run);
RunOutcome runVerifyAll(Run& run);

}  // namespace akns::cli
