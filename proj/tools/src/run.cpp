#include "run.hpp"

#include <cmath>

namespace akns::cli {

namespace fs = std::filesystem;

Run::Run(const RunConfig& cfg) : cfg_(cfg), out_(cfg.outDir), resolved_(cfg.params) {}

json Run::embeddedConfig() const {
    RunConfig c = cfg_;
    c.params = resolved_;
    return toJson(c);
}

void Run::below(const std::string& label, double value, double tol) {
    const double bound = tol * cfg_.toleranceScale;
    const bool pass = std::isfinite(value) && value < bound;
    failed_ = failed_ || !pass;
    checks_.push_back({{"label", label}, {"value", value}, {"upper", bound}, {"pass", pass}});
}

void Run::inRange(const std::string& label, double value, double lo, double hi) {
    const bool pass = std::isfinite(value) && value >= lo && value <= hi;
    failed_ = failed_ || !pass;
    checks_.push_back({{"label", label}, {"value", value}, {"lower", lo}, {"upper", hi}, {"pass", pass}});
}

void Run::verdict(const std::string& label, bool pass, double value) {
    failed_ = failed_ || !pass;
    checks_.push_back({{"label", label}, {"value", value}, {"pass", pass}});
}

fs::path Run::artifact(const std::string& name) {
    fs::create_directories(out_);
    const fs::path p = out_ / name;
    artifacts_.push_back(p.string());
    return p;
}

void Run::writeJson(const std::string& name, json body) {
    body["config"] = embeddedConfig();
    std::ofstream f(artifact(name));
    if (!f) throw std::runtime_error("cannot write " + (out_ / name).string());
    f << body.dump(2) << '\n';
}

RunOutcome Run::finish(const std::string& errorType, const std::string& errorMessage) {
    RunOutcome o;
    o.status = (failed_ || !errorType.empty()) ? kStatusToleranceFailure : kStatusPass;
    json report = {{"command", cfg_.command}, {"model", cfg_.model}, {"status", o.status}, {"checks", checks_}};
    if (!notes_.empty()) report["notes"] = notes_;
    for (const auto& [k, v] : extra_.items()) report[k] = v;
    if (!errorType.empty()) report["error"] = {{"type", errorType}, {"message", errorMessage}};
    report["artifacts"] = artifacts_;
    writeJson("report.json", report);

    if (o.status != kStatusPass) {
        json failure = {{"command", cfg_.command}, {"status", o.status}};
        if (!errorType.empty()) failure["error"] = report["error"];
        json failedChecks = json::array();
        for (const auto& c : checks_)
            if (!c["pass"].get<bool>()) failedChecks.push_back(c);
        failure["failed_checks"] = failedChecks;
        writeJson("failure_report.json", failure);
        report["failure"] = failure;
    } else {
        fs::remove(out_ / "failure_report.json");  // left by an earlier run into the same directory
    }
    report["artifacts"] = artifacts_;
    report["config"] = embeddedConfig();
    o.artifacts = artifacts_;
    o.report = std::move(report);
    return o;
}

namespace {

void blockRows(CsvWriter& csv, double t, long site, const char* field, const CMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            csv.cell(t).cell(site).cell(std::string(field));
            csv.cell(static_cast<long>(i)).cell(static_cast<long>(j)).cell(m(i, j));
            csv.endRow();
        }
}

json matrixJson(const CMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

json fieldJson(const std::vector<CMatrix>& f) {
    json out = json::array();
    for (const auto& m : f) out.push_back(matrixJson(m));
    return out;
}

}  // namespace

void writeStateRows(CsvWriter& csv, double t, long firstSite, const DnlsState& s) {
    for (std::size_t n = 0; n < s.nSites(); ++n) {
        const long site = firstSite + static_cast<long>(n);
        blockRows(csv, t, site, "x", s.x[n]);
        blockRows(csv, t, site, "y", s.y[n]);
    }
}

void writeStateRows(CsvWriter& csv, double t, long firstSite, const AlState& s) {
    for (std::size_t n = 0; n < s.nSites(); ++n) {
        const long site = firstSite + static_cast<long>(n);
        blockRows(csv, t, site, "bhat", s.bHat[n]);
        blockRows(csv, t, site, "b", s.b[n]);
    }
}

// matrix entries are [re, im] pairs
json stateJson(const DnlsState& s, long firstSite) {
    return {{"model", "dnls"},     {"first_site", firstSite},   {"sites", s.nSites()}, {"n_dim", s.nDim},
            {"m_dim", s.mDim},     {"theta", complexJson(s.theta)}, {"x", fieldJson(s.x)}, {"y", fieldJson(s.y)}};
}

json stateJson(const AlState& s, long firstSite) {
    return {{"model", "al"},
            {"first_site", firstSite},
            {"sites", s.nSites()},
            {"n_dim", s.nDim},
            {"m_dim", s.mDim},
            {"boundary", s.boundary == AlBoundary::Periodic ? "periodic" : "vanishing"},
            {"bhat", fieldJson(s.bHat)},
            {"b", fieldJson(s.b)}};
}

}  // namespace akns::cli
