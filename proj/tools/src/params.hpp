#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <set>
#include <string>
#include <vector>

#include "akns/algebra.hpp"
#include "akns/cli.hpp"

namespace akns::cli {

// Reads one parameter object with defaults. Every key read is recorded (with its
// resolved value) so finish() can reject whatever the command never asked for.
class Params {
public:
    Params(const json& obj, std::string scope);

    double real(const std::string& key, double def);
    long integer(const std::string& key, long def, long lo, long hi);
    bool flag(const std::string& key, bool def);
    cplx complex(const std::string& key, cplx def);
    std::string choice(const std::string& key, const std::string& def, std::initializer_list<const char*> allowed);
    std::vector<double> reals(const std::string& key, std::vector<double> def);
    std::vector<cplx> complexes(const std::string& key, std::vector<cplx> def);
    // list of [a, b] pairs of complex numbers
    std::vector<std::pair<cplx, cplx>> complexPairs(const std::string& key, std::vector<std::pair<cplx, cplx>> def);

    // throws UsageError naming unread keys
    void finish() const;
    const json& resolved() const noexcept { return resolved_; }

private:
    const json* find(const std::string& key);
    [[noreturn]] void bad(const std::string& key, const std::string& what) const;

    json obj_;
    std::string scope_;
    std::set<std::string> seen_;
    json resolved_ = json::object();
};

json complexJson(cplx z);
std::string num(double v);

// CSV with a header row; numbers are written with 17 significant digits.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, std::initializer_list<const char*> header);
    CsvWriter& cell(const std::string& s);
    CsvWriter& cell(double v);
    CsvWriter& cell(long v);
    CsvWriter& cell(cplx z);  // two cells, re and im
    void endRow();

private:
    std::ofstream out_;
    bool first_ = true;
};

}  // namespace akns::cli
