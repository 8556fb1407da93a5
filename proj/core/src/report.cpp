#include "toda/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace toda {

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

CheckResult CheckResult::of(const std::string& name, double measured, double tolerance,
                            bool smaller_is_pass) {
    CheckResult c;
    c.name = name;
    c.measured = measured;
    c.tolerance = tolerance;
    const bool ok = smaller_is_pass ? measured < tolerance : measured > tolerance;
    c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
    return c;
}

CheckResult CheckResult::boolean(const std::string& name, bool ok, const std::string& details) {
    CheckResult c;
    c.name = name;
    c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
    c.measured = ok ? 1.0 : 0.0;
    c.tolerance = 1.0;
    c.details = details;
    return c;
}

bool Report::all_passed() const {
    for (const auto& c : checks)
        if (c.status == CheckStatus::Fail) return false;
    return true;
}

int Report::failures() const {
    int n = 0;
    for (const auto& c : checks)
        if (c.status == CheckStatus::Fail) ++n;
    return n;
}

std::string Report::to_json() const {
    nlohmann::json j;
    j["config"] = config;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json jc;
        jc["name"] = c.name;
        jc["status"] = to_string(c.status);
        jc["measured"] = c.measured;
        jc["tolerance"] = c.tolerance;
        if (!c.details.empty()) jc["details"] = c.details;
        j["checks"].push_back(jc);
    }
    j["all_passed"] = all_passed();
    return j.dump(2);
}

std::string Report::to_text() const {
    std::string out;
    char buf[512];
    for (const auto& c : checks) {
        const char* tag = c.status == CheckStatus::Pass
                              ? "PASS"
                              : (c.status == CheckStatus::Fail ? "FAIL" : "INCONCLUSIVE");
        std::snprintf(buf, sizeof(buf), "[%s] %-58s measured=%.6g tol=%.6g %s\n", tag,
                      c.name.c_str(), c.measured, c.tolerance, c.details.c_str());
        out += buf;
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << content;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CsvWriter::Impl {
    std::ofstream os;
};

CsvWriter::CsvWriter(std::string path) : impl_(new Impl) {
    impl_->os.open(path);
    if (!impl_->os) {
        delete impl_;
        throw std::runtime_error("cannot open for writing: " + path);
    }
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::header(const std::vector<std::string>& names) { raw_row(names); }

void CsvWriter::row(const std::vector<double>& values) {
    std::vector<std::string> fields;
    fields.reserve(values.size());
    for (double v : values) fields.push_back(fmt_double(v));
    raw_row(fields);
}

void CsvWriter::raw_row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) impl_->os << ',';
        impl_->os << fields[i];
    }
    impl_->os << '\n';
}

}  // namespace toda
