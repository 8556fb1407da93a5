#pragma once

#include <map>
#include <string>
#include <vector>

namespace toda {

enum class CheckStatus { Pass, Fail, Inconclusive };

std::string to_string(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Fail;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string details;

    static CheckResult of(const std::string& name, double measured, double tolerance,
                          bool smaller_is_pass = true);
    static CheckResult boolean(const std::string& name, bool ok, const std::string& details = "");
};

struct Report {
    std::map<std::string, std::string> config;  // full resolved configuration
    std::vector<CheckResult> checks;

    void add(CheckResult c) { checks.push_back(std::move(c)); }
    bool all_passed() const;
    int failures() const;
    std::string to_json() const;
    // one line per check: "[PASS] name measured=... tol=..."
    std::string to_text() const;
};

void write_text_file(const std::string& path, const std::string& content);

// Round-trip-exact float formatting for the CSV emitters.
std::string fmt_double(double v);

struct CsvWriter {
    explicit CsvWriter(std::string path);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;
    void header(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);
    void raw_row(const std::vector<std::string>& fields);

  private:
    struct Impl;
    Impl* impl_;
};

}  // namespace toda
