#include "scenweave/runner.hpp"

#include <chrono>
#include <regex>
#include <utility>

namespace scenweave {

RunContext::RunContext(Engine& engine, int max_steps)
    : engine_(engine), max_steps_(max_steps) {
    if (max_steps < 1) throw PreconditionError("max_steps must be >= 1");
}

void RunContext::trigger(const Event& event) {
    engine_.inject(event);
    const auto result = engine_.run_to_quiescence(max_steps_);
    if (result.stop == Engine::Stop::BoundExceeded)
        throw StepFailure("step bound of " + std::to_string(engine_.step_bound()) +
                          " events exhausted after injecting " + event.canonical() +
                          " (runaway scenario?)");
}

namespace {

std::string describe_pending(const Engine& engine) {
    const auto pending = engine.pending_requests();
    if (pending.empty()) return "engine quiescent: nothing pending\n";
    std::string out = "engine stuck: " + std::to_string(pending.size()) +
                      (pending.size() == 1 ? " pending request\n" : " pending requests\n");
    for (const auto& request : pending) {
        out += std::string("  [") + (request.delegated ? "delegated" : "blocked") + "] " +
               request.event.canonical() + "  (scenario " + request.scenario_id + ")\n";
    }
    return out;
}

std::string describe_trace_tail(const Engine& engine, std::size_t max_lines) {
    const auto& trace = engine.trace();
    if (trace.empty()) return "trace is empty\n";
    std::string out = "recent trace:\n";
    const std::size_t begin = trace.size() > max_lines ? trace.size() - max_lines : 0;
    for (std::size_t i = begin; i < trace.size(); ++i)
        out += "  " + std::to_string(i + 1) + "  " + trace[i].canonical() + "\n";
    return out;
}

} // namespace

void RunContext::eventually(const EventPattern& pattern) {
    while (true) {
        const auto& trace = engine_.trace();
        for (std::size_t i = checkpoint_; i < trace.size(); ++i) {
            if (matches(engine_.roles(), pattern, trace[i])) {
                checkpoint_ = i + 1;
                return;
            }
        }
        if (!engine_.select_event()) break;
        if (engine_.step_count() >= engine_.step_bound())
            throw StepFailure("step bound of " + std::to_string(engine_.step_bound()) +
                              " events exhausted while waiting for " + pattern.canonical());
        engine_.step();
    }
    throw StepFailure("no event matching " + pattern.canonical() + " at or after trace position " +
                      std::to_string(checkpoint_) + "\n" + describe_pending(engine_) +
                      describe_trace_tail(engine_, 8));
}

StepParam StepParam::lit(ParamValue value) {
    StepParam param;
    param.kind_ = Kind::Literal;
    param.literal_ = std::move(value);
    return param;
}

StepParam StepParam::lit(const char* text) { return lit(ParamValue::text(text)); }

StepParam StepParam::capture(int index) {
    if (index < 1) throw PreconditionError("capture references are 1-based");
    StepParam param;
    param.kind_ = Kind::Capture;
    param.capture_ = index;
    return param;
}

StepParam StepParam::any() { return StepParam(); }

const ParamValue& StepParam::literal() const {
    if (kind_ != Kind::Literal) throw PreconditionError("step param is not a literal");
    return *literal_;
}

int StepParam::capture_index() const {
    if (kind_ != Kind::Capture) throw PreconditionError("step param is not a capture");
    return capture_;
}

namespace {

std::size_t pattern_capture_count(const std::string& pattern) {
    try {
        return std::regex(pattern).mark_count();
    } catch (const std::regex_error& e) {
        throw PreconditionError("step pattern does not compile: " + pattern + " (" + e.what() +
                                ")");
    }
}

void check_template(const std::string& pattern, const StepEventTemplate& tmpl,
                    bool wildcards_allowed) {
    if (tmpl.params.size() != tmpl.message.arity)
        throw PreconditionError("step template for " + tmpl.message.name + " expects " +
                                std::to_string(tmpl.message.arity) + " params, got " +
                                std::to_string(tmpl.params.size()));
    const std::size_t captures = pattern_capture_count(pattern);
    for (const auto& param : tmpl.params) {
        if (param.kind() == StepParam::Kind::Wildcard && !wildcards_allowed)
            throw PreconditionError("trigger templates cannot carry wildcard params");
        if (param.kind() == StepParam::Kind::Capture &&
            static_cast<std::size_t>(param.capture_index()) > captures)
            throw PreconditionError("capture reference " +
                                    std::to_string(param.capture_index()) +
                                    " exceeds the pattern's " + std::to_string(captures) +
                                    " capture group(s)");
    }
}

ParamValue capture_value(const StepParam& param, const std::vector<std::string>& captures) {
    const auto index = static_cast<std::size_t>(param.capture_index());
    if (index > captures.size())
        throw StepFailure("capture " + std::to_string(index) + " not produced by the step text");
    return ParamValue::text(captures[index - 1]);
}

Event build_trigger_event(const StepEventTemplate& tmpl,
                          const std::vector<std::string>& captures) {
    std::vector<ParamValue> params;
    params.reserve(tmpl.params.size());
    for (const auto& param : tmpl.params) {
        if (param.kind() == StepParam::Kind::Literal)
            params.push_back(param.literal());
        else
            params.push_back(capture_value(param, captures));
    }
    return make_event(tmpl.sender, tmpl.receiver, tmpl.message, std::move(params));
}

EventPattern build_assert_pattern(const StepEventTemplate& tmpl,
                                  const std::vector<std::string>& captures) {
    std::vector<std::optional<ParamValue>> params;
    params.reserve(tmpl.params.size());
    for (const auto& param : tmpl.params) {
        switch (param.kind()) {
            case StepParam::Kind::Literal: params.push_back(param.literal()); break;
            case StepParam::Kind::Capture: params.push_back(capture_value(param, captures)); break;
            case StepParam::Kind::Wildcard: params.push_back(std::nullopt); break;
        }
    }
    return make_pattern(tmpl.sender, tmpl.receiver, tmpl.message, std::move(params));
}

} // namespace

StepBinding trigger_binding(StepKind kind, std::string pattern, StepEventTemplate event) {
    if (kind == StepKind::Then)
        throw PreconditionError("trigger steps bind to Given or When, not Then");
    check_template(pattern, event, false);
    StepBinding binding;
    binding.kind = kind;
    binding.pattern = std::move(pattern);
    binding.procedure = [event = std::move(event)](RunContext& context,
                                                   const std::vector<std::string>& captures) {
        context.trigger(build_trigger_event(event, captures));
    };
    return binding;
}

StepBinding eventually_binding(std::string pattern, StepEventTemplate pattern_template) {
    check_template(pattern, pattern_template, true);
    StepBinding binding;
    binding.kind = StepKind::Then;
    binding.pattern = std::move(pattern);
    binding.procedure = [tmpl = std::move(pattern_template)](
                            RunContext& context, const std::vector<std::string>& captures) {
        context.eventually(build_assert_pattern(tmpl, captures));
    };
    return binding;
}

StepBinding custom_binding(StepKind kind, std::string pattern, StepProcedure procedure) {
    pattern_capture_count(pattern); // compile check
    StepBinding binding;
    binding.kind = kind;
    binding.pattern = std::move(pattern);
    binding.procedure = std::move(procedure);
    return binding;
}

std::vector<ScenarioResult> run_feature(const FeatureSpec& feature,
                                        const EngineFactory& engine_factory,
                                        const StepRegistry& registry, const RunConfig& config) {
    if (config.max_steps < 1) throw PreconditionError("max_steps must be >= 1");

    std::vector<ScenarioResult> results;
    for (const auto& scenario : feature.scenarios) {
        Engine engine = engine_factory();
        engine.set_step_bound(config.max_steps);
        RunContext context(engine, config.max_steps);

        ScenarioResult result;
        result.feature = feature.name;
        result.name = scenario.name;
        bool skipping = false;
        for (const auto& step : scenario.steps) {
            StepResult step_result;
            step_result.kind = step.kind;
            step_result.text = step.text;
            if (skipping) {
                step_result.status = StepStatus::Skipped;
                result.steps.push_back(std::move(step_result));
                continue;
            }
            std::optional<StepMatch> match;
            try {
                match = registry.match_step(step.kind, step.text);
            } catch (const AmbiguousStepError& e) {
                step_result.status = StepStatus::Failed;
                step_result.diagnostic = e.what();
                skipping = true;
                result.steps.push_back(std::move(step_result));
                continue;
            }
            if (!match) {
                step_result.status = StepStatus::Pending;
                step_result.diagnostic = "no step binding matches this text";
                skipping = true;
                result.steps.push_back(std::move(step_result));
                continue;
            }
            try {
                match->binding->procedure(context, match->captures);
            } catch (const StepFailure& failure) {
                step_result.status = StepStatus::Failed;
                step_result.diagnostic = failure.what();
                skipping = true;
            } catch (const Error& error) {
                step_result.status = StepStatus::Failed;
                step_result.diagnostic = std::string("error: ") + error.what();
                skipping = true;
            }
            result.steps.push_back(std::move(step_result));
        }
        for (const auto& event : engine.trace()) result.trace.push_back(event.canonical());
        results.push_back(std::move(result));
    }
    return results;
}

TestReport run_suite(const std::vector<FeatureSpec>& features, const EngineFactory& engine_factory,
                     const StepRegistry& registry, const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    TestReport report;
    for (const auto& feature : filter_by_tags(features, config.tag_filter)) {
        auto results = run_feature(feature, engine_factory, registry, config);
        for (auto& result : results) report.scenarios.push_back(std::move(result));
    }
    const auto end = std::chrono::steady_clock::now();
    report.wall_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count();
    return report;
}

EngineCatalog& EngineCatalog::global() {
    static EngineCatalog catalog;
    return catalog;
}

void EngineCatalog::register_engine(std::string name, EngineSetup setup) {
    setups_[std::move(name)] = std::move(setup);
}

const EngineSetup* EngineCatalog::find(const std::string& name) const {
    auto it = setups_.find(name);
    if (it == setups_.end()) return nullptr;
    return &it->second;
}

std::vector<std::string> EngineCatalog::names() const {
    std::vector<std::string> names;
    names.reserve(setups_.size());
    for (const auto& [name, setup] : setups_) names.push_back(name);
    return names;
}

} // namespace scenweave
