#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace akns::suites {

// One measured quantity and the bound it must meet. Upper bounds scale with the
// tolerance factor; two-sided ranges (convergence ratios) do not.
struct Check {
    std::string label;
    double value = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    bool ranged = false;
    bool pass = false;
    std::string error;  // set when the check could not be evaluated
};

struct SuiteResult {
    int id = 0;
    std::string name;
    std::vector<Check> checks;
    std::vector<std::string> notes;  // informational measurements, not judged

    bool pass() const;
    // largest value among the upper-bound checks
    double maxResidual() const;
};

struct SuiteOptions {
    std::uint64_t seed = 42;
    double toleranceScale = 1.0;
};

using SuiteFn = std::function<SuiteResult(const SuiteOptions&)>;

struct SuiteEntry {
    int id;
    const char* key;
    SuiteFn run;
};

SuiteResult zeroCurvature(const SuiteOptions& opt);
SuiteResult conservation(const SuiteOptions& opt);
SuiteResult closedFormRecursion(const SuiteOptions& opt);
SuiteResult dressingConsistency(const SuiteOptions& opt);
SuiteResult todaReduction(const SuiteOptions& opt);
SuiteResult bianchiPermutability(const SuiteOptions& opt);
SuiteResult glmFactorization(const SuiteOptions& opt);
SuiteResult coleHopf(const SuiteOptions& opt);
SuiteResult continuumLimit(const SuiteOptions& opt);
SuiteResult integratorOrder(const SuiteOptions& opt);

// the ten suites in order
const std::vector<SuiteEntry>& registry();

// runs suites on up to `threads` workers; results come back in registry order
std::vector<SuiteResult> runAll(const SuiteOptions& opt, unsigned threads = 1);

// "PASS 3 closed-form vs recursion: ..." style line
std::string summaryLine(const SuiteResult& r);

}  // namespace akns::suites
