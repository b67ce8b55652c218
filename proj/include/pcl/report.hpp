#pragma once

// JSON and CSV serialization of case reports and identity-suite reports.
// Output is byte-stable: fixed key order, sorted cases, trailing newline.

#include "pcl/identities.hpp"
#include "pcl/verifier.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace pcl {

enum class ReportFormat { Json, Csv };

struct IoError : Error {
    using Error::Error;
};

struct EmitOptions {
    bool include_timing = false;  // elapsed_ms is written as 0 unless set
};

inline nlohmann::ordered_json case_to_json(const CaseReport& c, const EmitOptions& opts = {}) {
    nlohmann::ordered_json j;
    j["statement"] = statement_name(c.statement);
    j["p"] = c.p;
    j["r"] = c.r;
    j["target"] = c.target;
    if (c.valuation.is_infinite())
        j["valuation"] = "inf";
    else
        j["valuation"] = c.valuation.value();
    j["at_least"] = c.at_least;
    j["verdict"] = verdict_name(c.verdict);
    j["elapsed_ms"] = opts.include_timing ? c.elapsed_ms : 0L;
    return j;
}

inline std::string render_report(std::vector<CaseReport> cases, ReportFormat format, const EmitOptions& opts = {}) {
    std::sort(cases.begin(), cases.end());
    std::ostringstream out;
    if (format == ReportFormat::Json) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& c : cases) arr.push_back(case_to_json(c, opts));
        out << arr.dump(2) << '\n';
    } else {
        out << "statement,p,r,target,valuation,at_least,verdict,elapsed_ms\n";
        for (const auto& c : cases) {
            out << statement_name(c.statement) << ',' << c.p << ',' << c.r << ',' << c.target << ','
                << c.valuation.to_string() << ',' << (c.at_least ? "true" : "false") << ',' << verdict_name(c.verdict)
                << ',' << (opts.include_timing ? c.elapsed_ms : 0L) << '\n';
        }
    }
    return out.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("write to " + path.string() + " failed");
}

inline void emit_report(const std::vector<CaseReport>& cases, ReportFormat format, const std::filesystem::path& path,
                        const EmitOptions& opts = {}) {
    write_text(path, render_report(cases, format, opts));
}

inline nlohmann::ordered_json suite_to_json(const SuiteReport& s) {
    nlohmann::ordered_json j;
    j["identity"] = identity_name(s.identity);
    j["samples"] = s.samples;
    j["passed"] = s.passed;
    j["failed"] = s.failed;
    j["failed_params"] = s.failed_params;
    j["skipped_poles"] = s.skipped_poles;
    j["verdict"] = s.ok() ? "HOLDS" : "FAILS";
    return j;
}

inline std::string render_suites(const std::vector<SuiteReport>& suites) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& s : suites) arr.push_back(suite_to_json(s));
    return arr.dump(2) + "\n";
}

}  // namespace pcl
