#include "scenweave/report.hpp"

#include <json.hpp>

namespace scenweave {

const char* to_string(StepStatus status) {
    switch (status) {
        case StepStatus::Passed: return "passed";
        case StepStatus::Failed: return "failed";
        case StepStatus::Pending: return "pending";
        case StepStatus::Skipped: return "skipped";
    }
    return "";
}

StepStatus step_status_from_string(const std::string& text) {
    if (text == "passed") return StepStatus::Passed;
    if (text == "failed") return StepStatus::Failed;
    if (text == "pending") return StepStatus::Pending;
    if (text == "skipped") return StepStatus::Skipped;
    throw PreconditionError("unknown step status: " + text);
}

bool ScenarioResult::failed() const {
    for (const auto& step : steps)
        if (step.status == StepStatus::Failed || step.status == StepStatus::Pending) return true;
    return false;
}

TestReport::Totals TestReport::totals() const {
    Totals totals;
    totals.scenarios = static_cast<int>(scenarios.size());
    for (const auto& scenario : scenarios) {
        if (scenario.failed())
            ++totals.failed;
        else
            ++totals.passed;
    }
    return totals;
}

int exit_code(const TestReport& report) { return report.totals().failed == 0 ? 0 : 1; }

namespace {

const char* step_glyph(StepStatus status) {
    switch (status) {
        case StepStatus::Passed: return "✓";
        case StepStatus::Failed: return "✗";
        case StepStatus::Pending: return "?";
        case StepStatus::Skipped: return "-";
    }
    return "?";
}

std::string indent_block(const std::string& text, const std::string& prefix) {
    std::string out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        const std::string line =
            nl == std::string::npos ? text.substr(start) : text.substr(start, nl - start);
        if (!line.empty()) out += prefix + line + "\n";
        if (nl == std::string::npos) break;
        start = nl + 1;
    }
    return out;
}

std::string aggregate_line(const TestReport::Totals& totals) {
    std::string out = std::to_string(totals.scenarios) +
                      (totals.scenarios == 1 ? " scenario (" : " scenarios (");
    out += std::to_string(totals.passed) + " passed";
    if (totals.failed > 0) out += ", " + std::to_string(totals.failed) + " failed";
    out += ")";
    return out;
}

std::string write_pretty(const TestReport& report, bool include_wall_time) {
    std::string out;
    std::string current_feature;
    bool first = true;
    for (const auto& scenario : report.scenarios) {
        if (first || scenario.feature != current_feature) {
            if (!first) out += "\n";
            out += "Feature: " + scenario.feature + "\n";
            current_feature = scenario.feature;
            first = false;
        }
        out += std::string("  ") + (scenario.failed() ? "✗" : "✓") +
               " Scenario: " + scenario.name + "\n";
        for (const auto& step : scenario.steps) {
            out += std::string("      ") + step_glyph(step.status) + " " +
                   to_keyword(step.kind) + " " + step.text;
            if (step.status == StepStatus::Pending) out += " (pending: no matching step binding)";
            if (step.status == StepStatus::Skipped) out += " (skipped)";
            out += "\n";
            if (!step.diagnostic.empty() && step.status != StepStatus::Passed)
                out += indent_block(step.diagnostic, "          ");
        }
    }
    out += "\n" + aggregate_line(report.totals()) + "\n";
    if (include_wall_time) out += "took " + std::to_string(report.wall_ms) + " ms\n";
    return out;
}

std::string write_json_lines(const TestReport& report, bool include_wall_time) {
    std::string out;
    for (const auto& scenario : report.scenarios) {
        for (const auto& step : scenario.steps) {
            nlohmann::json record;
            record["type"] = "step";
            record["feature"] = scenario.feature;
            record["scenario"] = scenario.name;
            record["keyword"] = to_keyword(step.kind);
            record["step"] = step.text;
            record["status"] = to_string(step.status);
            record["diagnostic"] = step.diagnostic;
            out += record.dump() + "\n";
        }
        nlohmann::json record;
        record["type"] = "scenario";
        record["feature"] = scenario.feature;
        record["scenario"] = scenario.name;
        record["status"] = scenario.failed() ? "failed" : "passed";
        record["trace"] = scenario.trace;
        out += record.dump() + "\n";
    }
    nlohmann::json summary;
    const auto totals = report.totals();
    summary["type"] = "summary";
    summary["scenarios"] = totals.scenarios;
    summary["passed"] = totals.passed;
    summary["failed"] = totals.failed;
    if (include_wall_time) summary["wall_ms"] = report.wall_ms;
    out += summary.dump() + "\n";
    return out;
}

StepKind keyword_to_kind(const std::string& keyword) {
    if (keyword == "Given") return StepKind::Given;
    if (keyword == "When") return StepKind::When;
    if (keyword == "Then") return StepKind::Then;
    throw PreconditionError("unknown step keyword in report: " + keyword);
}

} // namespace

std::string write_report(const TestReport& report, ReportFormat format, bool include_wall_time) {
    if (format == ReportFormat::Pretty) return write_pretty(report, include_wall_time);
    return write_json_lines(report, include_wall_time);
}

TestReport parse_report(const std::string& json_lines) {
    TestReport report;
    std::vector<StepResult> pending_steps;
    std::size_t start = 0;
    while (start < json_lines.size()) {
        std::size_t nl = json_lines.find('\n', start);
        if (nl == std::string::npos) nl = json_lines.size();
        const std::string line = json_lines.substr(start, nl - start);
        start = nl + 1;
        if (line.empty()) continue;

        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw PreconditionError(std::string("bad report line: ") + e.what());
        }
        const std::string type = record.at("type").get<std::string>();
        if (type == "step") {
            StepResult step;
            step.kind = keyword_to_kind(record.at("keyword").get<std::string>());
            step.text = record.at("step").get<std::string>();
            step.status = step_status_from_string(record.at("status").get<std::string>());
            step.diagnostic = record.at("diagnostic").get<std::string>();
            pending_steps.push_back(std::move(step));
        } else if (type == "scenario") {
            ScenarioResult scenario;
            scenario.feature = record.at("feature").get<std::string>();
            scenario.name = record.at("scenario").get<std::string>();
            scenario.steps = std::move(pending_steps);
            pending_steps.clear();
            scenario.trace = record.at("trace").get<std::vector<std::string>>();
            report.scenarios.push_back(std::move(scenario));
        } else if (type == "summary") {
            if (record.contains("wall_ms"))
                report.wall_ms = record.at("wall_ms").get<std::int64_t>();
        } else {
            throw PreconditionError("unknown report record type: " + type);
        }
    }
    return report;
}

} // namespace scenweave
