#pragma once
// Analysis reports and their json / markdown / text renderings.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kosq/lints.hpp"
#include "kosq/metrics.hpp"
#include "kosq/overlap.hpp"
#include "kosq/survey.hpp"

namespace kosq {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr std::string_view kToolVersion = "0.1.0";

struct CoverageReport {
    CorpusCoverage coverage;
    CompletenessEstimate completeness;

    friend bool operator==(const CoverageReport&, const CoverageReport&) = default;
};

struct AnalysisReport {
    std::string command;  // analyze | compare | completeness | survey
    std::string kos_name;
    std::optional<StructureReport> structure;
    std::vector<LintFinding> findings;
    std::optional<CoverageReport> completeness;
    std::optional<OverlapReport> overlap;
    std::optional<QScoreReport> survey;
    std::string tool_version{kToolVersion};
    std::optional<std::string> timestamp;

    friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

enum class OutputFormat { Json, Markdown, Text };

std::optional<OutputFormat> parse_output_format(std::string_view s);

// Severity first (errors on top), then check, then first concept id.
void sort_report_findings(std::vector<LintFinding>& findings);

// Warnings become errors (--strict).
void promote_warnings(std::vector<LintFinding>& findings);

// 1 when any finding has error severity, else 0.
int exit_code_for(const std::vector<LintFinding>& findings);

std::string render(const AnalysisReport& report, OutputFormat format);

// Inverse of render(report, Json). Throws KosError on malformed input.
AnalysisReport report_from_json(std::string_view json);

// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

}  // namespace kosq
