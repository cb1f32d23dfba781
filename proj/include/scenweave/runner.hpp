#pragma once

// Feature execution: each Gherkin scenario runs against a fresh engine;
// Given/When steps inject environment events and drive the engine to
// quiescence, Then steps assert that a matching event eventually shows
// up in the trace at or after a per-scenario checkpoint that advances
// with every successful assertion.

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "scenweave/composition.hpp"
#include "scenweave/report.hpp"

namespace scenweave {

/// What a step procedure may do to the engine under test.
class RunContext {
public:
    RunContext(Engine& engine, int max_steps);

    Engine& engine() { return engine_; }

    /// Injects an environment event and drives the engine until it has
    /// nothing left to select. Throws StepFailure when the step bound
    /// is exhausted first (runaway scenarios).
    void trigger(const Event& event);

    /// Passes iff an event matching the pattern exists at or after the
    /// checkpoint, driving the engine further as needed; on success the
    /// checkpoint moves just past the match, so successive assertions
    /// match at strictly increasing trace positions. On failure throws
    /// StepFailure carrying the unmatched pattern, the engine's
    /// quiescent/stuck state, its unselectable pending requests, and
    /// the tail of the trace.
    void eventually(const EventPattern& pattern);

    std::size_t checkpoint() const { return checkpoint_; }

private:
    Engine& engine_;
    int max_steps_;
    std::size_t checkpoint_ = 0;
};

/// One step parameter of a trigger/eventually template: a fixed value,
/// a reference to a regex capture of the step pattern (1-based), or a
/// match-anything slot (eventually only).
class StepParam {
public:
    enum class Kind { Literal, Capture, Wildcard };

    static StepParam lit(ParamValue value);
    static StepParam lit(const char* text);
    static StepParam capture(int index);
    static StepParam any();

    Kind kind() const { return kind_; }
    const ParamValue& literal() const;
    int capture_index() const;

private:
    StepParam() = default;
    Kind kind_ = Kind::Wildcard;
    std::optional<ParamValue> literal_;
    int capture_ = 0;
};

/// Event (or pattern) template whose params may splice in captures.
struct StepEventTemplate {
    std::string sender;
    std::string receiver;
    Message message;
    std::vector<StepParam> params;
};

/// A Given/When binding that injects the templated event and runs the
/// engine to quiescence. Throws PreconditionError for Then, for
/// wildcard params, or for capture references beyond the pattern's
/// group count.
StepBinding trigger_binding(StepKind kind, std::string pattern, StepEventTemplate event);

/// A Then binding asserting the templated pattern eventually matches.
StepBinding eventually_binding(std::string pattern, StepEventTemplate pattern_template);

/// An arbitrary procedure bound to a step pattern.
StepBinding custom_binding(StepKind kind, std::string pattern, StepProcedure procedure);

struct RunConfig {
    std::vector<std::string> feature_paths;
    std::string tag_filter;
    std::string engine_name;
    int max_steps = 10'000; // >= 1
    bool trace = false;
    ReportFormat format = ReportFormat::Pretty;
};

using EngineFactory = std::function<Engine()>;

/// Runs every scenario of the feature on its own fresh engine. Step
/// texts without a binding come back pending; anything after a failed
/// or pending step is skipped. Throws PreconditionError for a config
/// with max_steps < 1.
std::vector<ScenarioResult> run_feature(const FeatureSpec& feature,
                                        const EngineFactory& engine_factory,
                                        const StepRegistry& registry, const RunConfig& config);

/// Applies the config's tag filter, runs the remaining features in
/// order, and collects one report with wall time.
TestReport run_suite(const std::vector<FeatureSpec>& features, const EngineFactory& engine_factory,
                     const StepRegistry& registry, const RunConfig& config);

/// A named engine setup the command line can select.
struct EngineSetup {
    EngineFactory make_engine;
    std::shared_ptr<const StepRegistry> registry;
};

class EngineCatalog {
public:
    static EngineCatalog& global();

    /// Registers (or replaces) a named setup.
    void register_engine(std::string name, EngineSetup setup);
    const EngineSetup* find(const std::string& name) const;
    std::vector<std::string> names() const;

private:
    std::map<std::string, EngineSetup> setups_;
};

} // namespace scenweave
