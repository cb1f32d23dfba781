#pragma once

// A small Gherkin dialect: Feature / Scenario headers, Given / When /
// Then / And steps, @tag lines, # comments, blank lines. Also: printing
// (round-trip safe), step-definition skeleton generation with quoted
// strings lifted into capture groups, step-to-binding matching, and tag
// filtering.

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "scenweave/errors.hpp"

namespace scenweave {

enum class StepKind { Given, When, Then };

const char* to_keyword(StepKind kind);

/// A step with its And-resolution already applied: an And step carries
/// the kind of the nearest preceding explicit keyword.
struct Step {
    StepKind kind = StepKind::Given;
    std::string text;

    friend bool operator==(const Step&, const Step&) = default;
};

struct UsageScenario {
    std::string name;
    std::set<std::string> tags; // with leading '@'
    std::vector<Step> steps;

    friend bool operator==(const UsageScenario&, const UsageScenario&) = default;
};

struct FeatureSpec {
    std::string name;
    std::set<std::string> tags;
    std::vector<UsageScenario> scenarios;

    /// Union of feature-level and scenario-level tags.
    std::set<std::string> effective_tags(const UsageScenario& scenario) const;

    friend bool operator==(const FeatureSpec&, const FeatureSpec&) = default;
};

/// Parses one feature file. Errors carry 1-based line numbers: steps
/// before any Scenario, Scenario before Feature, a second Feature
/// header, And without a preceding step, unrecognized lines, tag lines
/// attached to nothing, features without scenarios.
FeatureSpec parse_feature(const std::string& text);

/// Renders a feature such that parse_feature(print_feature(f)) == f.
std::string print_feature(const FeatureSpec& feature);

/// Anchored regex for a step text; every "quoted" substring becomes a
/// ("([^"]*)") capture group and regex metacharacters are escaped.
std::string step_text_to_pattern(const std::string& step_text);

struct SkeletonStub {
    StepKind kind;
    std::string pattern;

    friend bool operator==(const SkeletonStub&, const SkeletonStub&) = default;
};

/// One stub per distinct (kind, pattern) pair across all steps of the
/// feature, in first-appearance order.
std::vector<SkeletonStub> skeleton_stubs(const FeatureSpec& feature);

/// The stubs rendered as empty step-definition blocks.
std::string generate_skeletons(const FeatureSpec& feature);

class RunContext; // defined by the feature runner

/// A bound step implementation: receives the run context and the
/// pattern's captured strings, throws StepFailure to fail the step.
using StepProcedure = std::function<void(RunContext&, const std::vector<std::string>&)>;

struct StepBinding {
    StepKind kind = StepKind::Given;
    std::string pattern; // anchored ECMAScript regex
    StepProcedure procedure;
};

struct StepMatch {
    const StepBinding* binding = nullptr;
    std::vector<std::string> captures;
};

class StepRegistry {
public:
    /// Validates that the pattern compiles (PreconditionError if not).
    const StepBinding& add(StepBinding binding);

    /// Finds the unique binding of this kind whose pattern matches the
    /// text. Returns nullopt when none does; throws AmbiguousStepError
    /// when more than one does.
    std::optional<StepMatch> match_step(StepKind kind, const std::string& text) const;

    void merge(const StepRegistry& other);
    std::size_t size() const { return bindings_.size(); }

private:
    std::vector<StepBinding> bindings_;
};

/// Keeps the scenarios whose effective tags intersect the expression (a
/// comma-separated list of @tags; an empty expression keeps everything)
/// and drops features left with no scenarios. Order is preserved.
/// Throws TagExpressionError on malformed expressions.
std::vector<FeatureSpec> filter_by_tags(std::vector<FeatureSpec> features,
                                        const std::string& expression);

} // namespace scenweave
