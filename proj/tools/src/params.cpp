#include "params.hpp"

#include <cmath>
#include <cstdio>

namespace akns::cli {

Params::Params(const json& obj, std::string scope) : obj_(obj.is_null() ? json::object() : obj), scope_(std::move(scope)) {
    if (!obj_.is_object()) throw UsageError(scope_ + " must be a JSON object");
}

const json* Params::find(const std::string& key) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
}

void Params::bad(const std::string& key, const std::string& what) const {
    throw UsageError(scope_ + "." + key + ": " + what);
}

namespace {

bool isComplex(const json& j) {
    return j.is_number() || (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number());
}

cplx toComplex(const json& j) {
    if (j.is_number()) return j.get<double>();
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

double Params::real(const std::string& key, double def) {
    const json* j = find(key);
    if (j && !j->is_number()) bad(key, "expected a number");
    const double v = j ? j->get<double>() : def;
    if (!std::isfinite(v)) bad(key, "must be finite");
    resolved_[key] = v;
    return v;
}

long Params::integer(const std::string& key, long def, long lo, long hi) {
    const json* j = find(key);
    if (j && !j->is_number_integer()) bad(key, "expected an integer");
    const long v = j ? j->get<long>() : def;
    if (v < lo || v > hi) bad(key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    resolved_[key] = v;
    return v;
}

bool Params::flag(const std::string& key, bool def) {
    const json* j = find(key);
    if (j && !j->is_boolean()) bad(key, "expected true or false");
    const bool v = j ? j->get<bool>() : def;
    resolved_[key] = v;
    return v;
}

cplx Params::complex(const std::string& key, cplx def) {
    const json* j = find(key);
    if (j && !isComplex(*j)) bad(key, "expected a number or [re, im]");
    const cplx v = j ? toComplex(*j) : def;
    resolved_[key] = complexJson(v);
    return v;
}

std::string Params::choice(const std::string& key, const std::string& def, std::initializer_list<const char*> allowed) {
    const json* j = find(key);
    if (j && !j->is_string()) bad(key, "expected a string");
    const std::string v = j ? j->get<std::string>() : def;
    std::string list;
    for (const char* a : allowed) {
        if (v == a) {
            resolved_[key] = v;
            return v;
        }
        list += list.empty() ? a : std::string(", ") + a;
    }
    bad(key, "'" + v + "' is not one of " + list);
}

std::vector<double> Params::reals(const std::string& key, std::vector<double> def) {
    const json* j = find(key);
    if (j) {
        if (!j->is_array() || j->empty()) bad(key, "expected a non-empty array of numbers");
        def.clear();
        for (const auto& e : *j) {
            if (!e.is_number()) bad(key, "expected a non-empty array of numbers");
            def.push_back(e.get<double>());
        }
    }
    resolved_[key] = def;
    return def;
}

std::vector<cplx> Params::complexes(const std::string& key, std::vector<cplx> def) {
    const json* j = find(key);
    if (j) {
        if (!j->is_array() || j->empty()) bad(key, "expected a non-empty array");
        def.clear();
        for (const auto& e : *j) {
            if (!isComplex(e)) bad(key, "entries must be numbers or [re, im]");
            def.push_back(toComplex(e));
        }
    }
    json out = json::array();
    for (const cplx z : def) out.push_back(complexJson(z));
    resolved_[key] = out;
    return def;
}

std::vector<std::pair<cplx, cplx>> Params::complexPairs(const std::string& key,
                                                       std::vector<std::pair<cplx, cplx>> def) {
    const json* j = find(key);
    if (j) {
        if (!j->is_array() || j->empty()) bad(key, "expected a non-empty array of pairs");
        def.clear();
        for (const auto& e : *j) {
            if (!e.is_array() || e.size() != 2 || !isComplex(e[0]) || !isComplex(e[1]))
                bad(key, "entries must be [a, b] with a, b numbers or [re, im]");
            def.emplace_back(toComplex(e[0]), toComplex(e[1]));
        }
    }
    json out = json::array();
    for (const auto& [a, b] : def) out.push_back({complexJson(a), complexJson(b)});
    resolved_[key] = out;
    return def;
}

void Params::finish() const {
    std::string unknown;
    for (const auto& [key, value] : obj_.items())
        if (!seen_.count(key)) unknown += unknown.empty() ? key : ", " + key;
    if (!unknown.empty()) throw UsageError(scope_ + ": unknown or inapplicable keys: " + unknown);
}

json complexJson(cplx z) {
    if (z.imag() == 0.0) return z.real();
    return json::array({z.real(), z.imag()});
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::initializer_list<const char*> header) : out_(path) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    for (const char* h : header) cell(std::string(h));
    endRow();
}

CsvWriter& CsvWriter::cell(const std::string& s) {
    if (!first_) out_ << ',';
    out_ << s;
    first_ = false;
    return *this;
}

CsvWriter& CsvWriter::cell(double v) { return cell(num(v)); }
CsvWriter& CsvWriter::cell(long v) { return cell(std::to_string(v)); }
CsvWriter& CsvWriter::cell(cplx z) { return cell(z.real()).cell(z.imag()); }

void CsvWriter::endRow() {
    out_ << '\n';
    first_ = true;
}

}  // namespace akns::cli
