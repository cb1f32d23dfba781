#pragma once

// Run reports: per-step and per-scenario outcomes, an aggregate line,
// and two writers — a human-readable form and machine-readable JSON
// lines that parse back losslessly.

#include <cstdint>
#include <string>
#include <vector>

#include "scenweave/gherkin.hpp"

namespace scenweave {

enum class StepStatus { Passed, Failed, Pending, Skipped };

const char* to_string(StepStatus status);
StepStatus step_status_from_string(const std::string& text);

struct StepResult {
    StepKind kind = StepKind::Given;
    std::string text;
    StepStatus status = StepStatus::Passed;
    std::string diagnostic;

    friend bool operator==(const StepResult&, const StepResult&) = default;
};

struct ScenarioResult {
    std::string feature;
    std::string name;
    std::vector<StepResult> steps;
    /// Canonical event lines of the engine trace for this scenario.
    std::vector<std::string> trace;

    /// A scenario fails when any step failed or lacked a binding.
    bool failed() const;

    friend bool operator==(const ScenarioResult&, const ScenarioResult&) = default;
};

struct TestReport {
    std::vector<ScenarioResult> scenarios;
    std::int64_t wall_ms = 0;

    struct Totals {
        int scenarios = 0;
        int passed = 0;
        int failed = 0;
    };
    Totals totals() const;

    /// Round-trip equality deliberately ignores wall time.
    friend bool operator==(const TestReport& a, const TestReport& b) {
        return a.scenarios == b.scenarios;
    }
};

enum class ReportFormat { Pretty, JsonLines };

/// Renders the report. The pretty form shows one check/cross line per
/// scenario and step plus diagnostics for anything that did not pass;
/// the JSON-lines form emits one object per step, per scenario, and a
/// final summary, with sorted keys. Wall time appears only in the
/// summary and can be omitted for byte-stable output.
std::string write_report(const TestReport& report, ReportFormat format,
                         bool include_wall_time = true);

/// Parses the JSON-lines form back. parse_report(write_report(r,
/// JsonLines)) == r.
TestReport parse_report(const std::string& json_lines);

/// 0 when every scenario passed, 1 otherwise.
int exit_code(const TestReport& report);

} // namespace scenweave
