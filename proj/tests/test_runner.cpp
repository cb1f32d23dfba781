#include <doctest.h>

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "scenweave/runner.hpp"

using namespace scenweave;

namespace {

Message msg(const char* name, std::size_t arity) { return Message{name, arity}; }

/// poke makes the system emit x twice; go("v") makes it emit val("v");
/// rush makes it emit ten ticks.
ScenarioProgram runner_program() {
    ScenarioProgram program;
    program.roles.register_role("env");
    program.roles.register_role("a");
    program.roles.register_role("b");

    ScenarioBuilder double_x("double-x");
    double_x.triggered_by(pat("env", "a", msg("poke", 0)))
        .request(ev("a", "b", msg("x", 0)))
        .request(ev("a", "b", msg("x", 0)));
    program.definitions.push_back(double_x.build());

    ScenarioBuilder echo_value("echo-value");
    echo_value.triggered_by(pat("env", "a", msg("go", 1)), {"v"})
        .request(ev("a", "b", msg("val", 1), {ParamRef::var("v")}));
    program.definitions.push_back(echo_value.build());

    ScenarioBuilder rush("rush");
    rush.triggered_by(pat("env", "a", msg("rush", 0)));
    for (int i = 0; i < 10; ++i) rush.request(ev("a", "b", msg("tick", 0)));
    program.definitions.push_back(rush.build());

    return program;
}

EngineFactory runner_factory() {
    return [program = runner_program()] { return standalone_engine(program); };
}

StepRegistry runner_registry() {
    StepRegistry registry;
    registry.add(trigger_binding(StepKind::When, "^the environment pokes the system$",
                                 StepEventTemplate{"env", "a", msg("poke", 0), {}}));
    registry.add(trigger_binding(StepKind::When, "^the system is rushed$",
                                 StepEventTemplate{"env", "a", msg("rush", 0), {}}));
    registry.add(trigger_binding(StepKind::When, "^the value \"([^\"]*)\" is sent$",
                                 StepEventTemplate{"env", "a", msg("go", 1),
                                                   {StepParam::capture(1)}}));
    registry.add(eventually_binding("^the system emits x$",
                                    StepEventTemplate{"a", "b", msg("x", 0), {}}));
    registry.add(eventually_binding("^the value \"([^\"]*)\" arrives$",
                                    StepEventTemplate{"a", "b", msg("val", 1),
                                                      {StepParam::capture(1)}}));
    registry.add(eventually_binding("^some value arrives$",
                                    StepEventTemplate{"a", "b", msg("val", 1),
                                                      {StepParam::any()}}));
    registry.add(eventually_binding("^the system goes quiet$",
                                    StepEventTemplate{"a", "b", msg("silence", 0), {}}));
    registry.add(custom_binding(StepKind::Given, "^a rush is queued without running$",
                                [](RunContext& context, const std::vector<std::string>&) {
                                    context.engine().inject(
                                        make_event("env", "a", msg("rush", 0)));
                                }));
    registry.add(custom_binding(StepKind::When, "^the custom step gives up$",
                                [](RunContext&, const std::vector<std::string>&) {
                                    throw StepFailure("deliberate failure");
                                }));
    registry.add(custom_binding(StepKind::When, "^the custom step misbehaves$",
                                [](RunContext&, const std::vector<std::string>&) {
                                    throw ProgramError("internal mistake");
                                }));
    return registry;
}

RunConfig config_with(int max_steps = 10'000) {
    RunConfig config;
    config.max_steps = max_steps;
    return config;
}

FeatureSpec feature_of(const std::string& body) {
    return parse_feature("Feature: Runner\n" + body);
}

const StepResult& step_named(const ScenarioResult& scenario, const std::string& text) {
    for (const auto& step : scenario.steps)
        if (step.text == text) return step;
    REQUIRE(false);
    return scenario.steps.front();
}

} // namespace

TEST_CASE("trigger and assertion bindings validate their templates") {
    CHECK_THROWS_AS(trigger_binding(StepKind::Then, "^x$",
                                    StepEventTemplate{"env", "a", msg("poke", 0), {}}),
                    PreconditionError);
    CHECK_THROWS_AS(trigger_binding(StepKind::When, "^x$",
                                    StepEventTemplate{"env", "a", msg("go", 1),
                                                      {StepParam::any()}}),
                    PreconditionError);
    CHECK_THROWS_AS(trigger_binding(StepKind::When, "^no groups$",
                                    StepEventTemplate{"env", "a", msg("go", 1),
                                                      {StepParam::capture(1)}}),
                    PreconditionError);
    CHECK_THROWS_AS(trigger_binding(StepKind::When, "^x$",
                                    StepEventTemplate{"env", "a", msg("go", 1), {}}),
                    PreconditionError); // arity mismatch
    CHECK_THROWS_AS(StepParam::capture(0), PreconditionError);
    CHECK_NOTHROW(eventually_binding("^anything$", StepEventTemplate{"a", "b", msg("val", 1),
                                                                     {StepParam::any()}}));
    CHECK(eventually_binding("^anything$",
                             StepEventTemplate{"a", "b", msg("val", 1), {StepParam::any()}})
              .kind == StepKind::Then);
}

TEST_CASE("a passing scenario reports every step and the engine trace") {
    const FeatureSpec feature = feature_of(
        "Scenario: Poke\n"
        "    When the environment pokes the system\n"
        "    Then the system emits x\n"
        "    And the system emits x\n");
    const auto results = run_feature(feature, runner_factory(), runner_registry(), config_with());
    REQUIRE(results.size() == 1);
    const ScenarioResult& result = results[0];
    CHECK(result.feature == "Runner");
    CHECK(result.name == "Poke");
    CHECK_FALSE(result.failed());
    REQUIRE(result.steps.size() == 3);
    for (const auto& step : result.steps) CHECK(step.status == StepStatus::Passed);
    CHECK(result.trace ==
          std::vector<std::string>{"env -> a . poke()", "a -> b . x()", "a -> b . x()"});
}

TEST_CASE("each assertion starts looking after the previous match") {
    const FeatureSpec feature = feature_of(
        "Scenario: Too greedy\n"
        "    When the environment pokes the system\n"
        "    Then the system emits x\n"
        "    And the system emits x\n"
        "    And the system emits x\n");
    const auto results = run_feature(feature, runner_factory(), runner_registry(), config_with());
    REQUIRE(results.size() == 1);
    REQUIRE(results[0].steps.size() == 4);
    CHECK(results[0].steps[0].status == StepStatus::Passed);
    CHECK(results[0].steps[1].status == StepStatus::Passed);
    CHECK(results[0].steps[2].status == StepStatus::Passed);
    CHECK(results[0].steps[3].status == StepStatus::Failed);
    CHECK(results[0].steps[3].diagnostic.find(
              "no event matching a -> b . x() at or after trace position 3") !=
          std::string::npos);
    CHECK(results[0].steps[3].diagnostic.find("engine quiescent: nothing pending") !=
          std::string::npos);
    CHECK(results[0].steps[3].diagnostic.find("recent trace:") != std::string::npos);
}

TEST_CASE("captures flow from the step text into events and assertions") {
    SUBCASE("matching value") {
        const FeatureSpec feature = feature_of(
            "Scenario: Echo\n"
            "    When the value \"Dortmund\" is sent\n"
            "    Then the value \"Dortmund\" arrives\n");
        const auto results =
            run_feature(feature, runner_factory(), runner_registry(), config_with());
        REQUIRE(results.size() == 1);
        CHECK_FALSE(results[0].failed());
        CHECK(results[0].trace ==
              std::vector<std::string>{"env -> a . go(\"Dortmund\")",
                                       "a -> b . val(\"Dortmund\")"});
    }
    SUBCASE("mismatched value") {
        const FeatureSpec feature = feature_of(
            "Scenario: Echo\n"
            "    When the value \"Dortmund\" is sent\n"
            "    Then the value \"Berlin\" arrives\n");
        const auto results =
            run_feature(feature, runner_factory(), runner_registry(), config_with());
        REQUIRE(results.size() == 1);
        CHECK(results[0].failed());
        CHECK(results[0].steps[1].diagnostic.find("val(\"Berlin\")") != std::string::npos);
    }
}

TEST_CASE("wildcard assertions cannot pass twice on one event") {
    const FeatureSpec feature = feature_of(
        "Scenario: Double dip\n"
        "    When the value \"Dortmund\" is sent\n"
        "    Then some value arrives\n"
        "    And some value arrives\n");
    const auto results = run_feature(feature, runner_factory(), runner_registry(), config_with());
    REQUIRE(results.size() == 1);
    CHECK(results[0].steps[1].status == StepStatus::Passed);
    CHECK(results[0].steps[2].status == StepStatus::Failed);
}

TEST_CASE("unbound steps come back pending and later steps are skipped") {
    const FeatureSpec feature = feature_of(
        "Scenario: Hole\n"
        "    When the environment pokes the system\n"
        "    Then nobody implemented this yet\n"
        "    And the system emits x\n");
    const auto results = run_feature(feature, runner_factory(), runner_registry(), config_with());
    REQUIRE(results.size() == 1);
    const auto& steps = results[0].steps;
    REQUIRE(steps.size() == 3);
    CHECK(steps[0].status == StepStatus::Passed);
    CHECK(steps[1].status == StepStatus::Pending);
    CHECK(steps[1].diagnostic == "no step binding matches this text");
    CHECK(steps[2].status == StepStatus::Skipped);
    CHECK(results[0].failed());
}

TEST_CASE("ambiguous steps fail the scenario with both patterns named") {
    StepRegistry registry = runner_registry();
    registry.add(custom_binding(StepKind::When, "^the environment pokes .*$",
                                [](RunContext&, const std::vector<std::string>&) {}));
    const FeatureSpec feature = feature_of(
        "Scenario: Clash\n"
        "    When the environment pokes the system\n"
        "    Then the system emits x\n");
    const auto results = run_feature(feature, runner_factory(), registry, config_with());
    REQUIRE(results.size() == 1);
    CHECK(results[0].steps[0].status == StepStatus::Failed);
    CHECK(results[0].steps[0].diagnostic.find("more than one binding") != std::string::npos);
    CHECK(results[0].steps[1].status == StepStatus::Skipped);
}

TEST_CASE("failing custom steps carry their message") {
    const FeatureSpec feature = feature_of(
        "Scenario: GivesUp\n"
        "    When the custom step gives up\n"
        "Scenario: Misbehaves\n"
        "    When the custom step misbehaves\n");
    const auto results = run_feature(feature, runner_factory(), runner_registry(), config_with());
    REQUIRE(results.size() == 2);
    CHECK(results[0].steps[0].status == StepStatus::Failed);
    CHECK(results[0].steps[0].diagnostic == "deliberate failure");
    CHECK(results[1].steps[0].status == StepStatus::Failed);
    CHECK(results[1].steps[0].diagnostic == "error: internal mistake");
}

TEST_CASE("every scenario runs on a fresh engine, so order cannot matter") {
    FeatureSpec feature = feature_of(
        "Scenario: Passes\n"
        "    When the environment pokes the system\n"
        "    Then the system emits x\n"
        "    And the system emits x\n"
        "Scenario: Overreaches\n"
        "    When the environment pokes the system\n"
        "    Then the system emits x\n"
        "    And the system emits x\n"
        "    And the system emits x\n");
    const auto forward = run_feature(feature, runner_factory(), runner_registry(), config_with());

    std::reverse(feature.scenarios.begin(), feature.scenarios.end());
    const auto backward = run_feature(feature, runner_factory(), runner_registry(), config_with());

    REQUIRE(forward.size() == 2);
    REQUIRE(backward.size() == 2);
    for (const auto& results : {forward, backward}) {
        for (const auto& result : results) {
            if (result.name == "Passes") {
                CHECK_FALSE(result.failed());
                CHECK(result.trace.size() == 3);
            } else {
                CHECK(result.failed());
                CHECK(result.trace.size() == 3); // same engine history, fresh each time
            }
        }
    }
}

TEST_CASE("a runaway trigger fails with the exhausted bound named") {
    const FeatureSpec feature = feature_of(
        "Scenario: Rush\n"
        "    When the system is rushed\n"
        "    Then the system goes quiet\n");
    const auto results =
        run_feature(feature, runner_factory(), runner_registry(), config_with(5));
    REQUIRE(results.size() == 1);
    CHECK(results[0].steps[0].status == StepStatus::Failed);
    CHECK(results[0].steps[0].diagnostic.find("step bound of 5 events exhausted") !=
          std::string::npos);
    CHECK(results[0].steps[1].status == StepStatus::Skipped);
}

TEST_CASE("an assertion that keeps stepping also respects the bound") {
    const FeatureSpec feature = feature_of(
        "Scenario: Wait forever\n"
        "    Given a rush is queued without running\n"
        "    Then the system goes quiet\n");
    const auto results =
        run_feature(feature, runner_factory(), runner_registry(), config_with(5));
    REQUIRE(results.size() == 1);
    CHECK(results[0].steps[0].status == StepStatus::Passed);
    CHECK(results[0].steps[1].status == StepStatus::Failed);
    CHECK(results[0].steps[1].diagnostic.find("exhausted while waiting for") !=
          std::string::npos);
}

TEST_CASE("run_feature validates its configuration") {
    const FeatureSpec feature = feature_of("Scenario: S\n    When the environment pokes the system\n");
    CHECK_THROWS_AS(run_feature(feature, runner_factory(), runner_registry(), config_with(0)),
                    PreconditionError);
}

TEST_CASE("run_suite filters by tags and aggregates across features") {
    const std::string tagged_text =
        "Feature: Tagged\n"
        "@special\n"
        "Scenario: OnlyThis\n"
        "    When the environment pokes the system\n"
        "    Then the system emits x\n";
    const std::string plain_text =
        "Feature: Plain\n"
        "Scenario: NotThis\n"
        "    When the environment pokes the system\n";
    const std::vector<FeatureSpec> features = {parse_feature(tagged_text),
                                               parse_feature(plain_text)};

    SUBCASE("without a filter, everything runs in order") {
        const TestReport report =
            run_suite(features, runner_factory(), runner_registry(), config_with());
        REQUIRE(report.scenarios.size() == 2);
        CHECK(report.scenarios[0].name == "OnlyThis");
        CHECK(report.scenarios[1].name == "NotThis");
        CHECK(report.wall_ms >= 0);
        CHECK(exit_code(report) == 0);
    }
    SUBCASE("a tag filter narrows the run") {
        RunConfig config = config_with();
        config.tag_filter = "@special";
        const TestReport report =
            run_suite(features, runner_factory(), runner_registry(), config);
        REQUIRE(report.scenarios.size() == 1);
        CHECK(report.scenarios[0].name == "OnlyThis");
    }
    SUBCASE("a malformed tag filter is an error") {
        RunConfig config = config_with();
        config.tag_filter = "special";
        CHECK_THROWS_AS(run_suite(features, runner_factory(), runner_registry(), config),
                        TagExpressionError);
    }
    SUBCASE("an empty suite succeeds with zero scenarios") {
        const TestReport report =
            run_suite({}, runner_factory(), runner_registry(), config_with());
        CHECK(report.scenarios.empty());
        CHECK(exit_code(report) == 0);
    }
}

TEST_CASE("the engine catalog holds named setups") {
    EngineCatalog catalog;
    CHECK(catalog.find("anything") == nullptr);
    CHECK(catalog.names().empty());

    auto registry = std::make_shared<const StepRegistry>(runner_registry());
    catalog.register_engine("beta", EngineSetup{runner_factory(), registry});
    catalog.register_engine("alpha", EngineSetup{runner_factory(), registry});
    CHECK(catalog.names() == std::vector<std::string>{"alpha", "beta"});
    REQUIRE(catalog.find("alpha") != nullptr);
    CHECK(catalog.find("alpha")->registry == registry);
    CHECK(catalog.find("gamma") == nullptr);

    SUBCASE("re-registration replaces the setup") {
        auto replacement = std::make_shared<const StepRegistry>();
        catalog.register_engine("alpha", EngineSetup{runner_factory(), replacement});
        CHECK(catalog.find("alpha")->registry == replacement);
        CHECK(catalog.names() == std::vector<std::string>{"alpha", "beta"});
    }
}
