#include "scenweave/emobility.hpp"

namespace scenweave::emobility {

Message msg_add_travel_preferences() { return Message{"addTravelPreferences", 2}; }
Message msg_calculate_route() { return Message{"calculateRoute", 2}; }
Message msg_calculate_route_response() { return Message{"calculateRouteResponse", 1}; }
Message msg_optimize_route() { return Message{"optimizeRoute", 0}; }
Message msg_show_map_with_optimized_route() { return Message{"showMapWithOptimizedRoute", 0}; }
Message msg_charging_station_gps_request() { return Message{"chargingStationGpsDataRequest", 0}; }
Message msg_consider_charging_stations() {
    return Message{"considerChargingStationLocations", 1};
}
Message msg_get_locations() { return Message{"getLocations", 2}; }
Message msg_locations() { return Message{"locations", 2}; }
Message msg_calculated_route() { return Message{"calculatedRoute", 1}; }

namespace {

void register_sos_roles(RoleRegistry& roles) {
    roles.register_role("user");
    // The app answers route requests, so it exposes the requester
    // interface the rps knows its caller by.
    roles.register_role("app", {"routeRequester"});
    roles.register_role("rps");
    roles.register_role("csos");
    roles.register_role("bhs");
    roles.register_role("eis");
}

void register_rps_roles(RoleRegistry& roles) {
    roles.register_role("routeRequester");
    roles.register_role("rps");
    roles.register_role("rpsController");
    roles.register_role("gpsService");
    roles.register_role("routePlaner");
}

ScenarioDefinition sos_display_route_scenario() {
    ScenarioBuilder builder("sos-display-optimized-route");
    builder
        .triggered_by(pat("user", "app", msg_add_travel_preferences()), {"fromLoc", "toLoc"})
        .request(ev("app", "rps", msg_calculate_route(),
                    {ParamRef::var("fromLoc"), ParamRef::var("toLoc")}))
        .request_flexible(ev("rps", "app", msg_calculate_route_response(),
                             {ParamRef::lit(ParamValue::mock("route"))}))
        .request(ev("app", "app", msg_optimize_route()))
        .request(ev("app", "user", msg_show_map_with_optimized_route()));
    return builder.build();
}

ScenarioDefinition sos_charging_stations_scenario() {
    ScenarioBuilder builder("sos-consider-charging-stations");
    builder.triggered_by(pat("user", "app", msg_add_travel_preferences()))
        .before(pat("app", "app", msg_optimize_route()), [](ScenarioBuilder& body) {
            body.request(ev("app", "csos", msg_charging_station_gps_request()))
                .request_flexible(
                    ev("csos", "app", msg_consider_charging_stations(),
                       {ParamRef::lit(ParamValue::mock("chargingStationsList"))}));
        });
    return builder.build();
}

ScenarioDefinition rps_calculate_route_scenario() {
    ScenarioBuilder builder("rps-calculate-route");
    builder
        .triggered_by(pat("routeRequester", "rps", msg_calculate_route()),
                      {"fromLocString", "toLocString"})
        .request(ev("rpsController", "gpsService", msg_get_locations(),
                    {ParamRef::var("fromLocString"), ParamRef::var("toLocString")}))
        .request(ev("gpsService", "rpsController", msg_locations(),
                    {ParamRef::derived_mock("loc", {"fromLocString"}),
                     ParamRef::derived_mock("loc", {"toLocString"})}))
        .request(ev("rpsController", "routePlaner", msg_calculate_route(),
                    {ParamRef::derived_mock("loc", {"fromLocString"}),
                     ParamRef::derived_mock("loc", {"toLocString"})}))
        .request(ev("routePlaner", "rpsController", msg_calculated_route(),
                    {ParamRef::derived_mock("route", {"fromLocString", "toLocString"})}))
        .request(ev("rps", "routeRequester", msg_calculate_route_response(),
                    {ParamRef::derived_mock("route", {"fromLocString", "toLocString"})}));
    return builder.build();
}

} // namespace

ScenarioProgram build_sos_program() {
    ScenarioProgram program;
    program.level = Level::Inter;
    register_sos_roles(program.roles);
    program.definitions.push_back(sos_display_route_scenario());
    program.definitions.push_back(sos_charging_stations_scenario());
    return program;
}

ScenarioProgram build_empty_sos_program() {
    ScenarioProgram program;
    program.level = Level::Inter;
    register_sos_roles(program.roles);
    return program;
}

ScenarioProgram build_rps_program() {
    ScenarioProgram program;
    program.level = Level::Intra;
    register_rps_roles(program.roles);
    program.definitions.push_back(rps_calculate_route_scenario());
    return program;
}

ScenarioProgram build_empty_rps_program() {
    ScenarioProgram program;
    program.level = Level::Intra;
    register_rps_roles(program.roles);
    return program;
}

Composition build_composition() {
    Composition composition;
    composition.inter = build_sos_program();
    composition.intras.push_back(Composition::Intra{build_rps_program(), "rps"});
    composition.bindings.push_back(RoleBinding{"routeRequester", "app", 0});
    return composition;
}

Composition build_unrefined_composition() {
    Composition composition;
    composition.inter = build_sos_program();
    composition.intras.push_back(Composition::Intra{build_empty_rps_program(), "rps"});
    composition.bindings.push_back(RoleBinding{"routeRequester", "app", 0});
    return composition;
}

std::shared_ptr<const StepRegistry> sos_step_registry() {
    auto registry = std::make_shared<StepRegistry>();
    registry->add(trigger_binding(
        StepKind::When, "^the SoS user adds travel preferences to the app$",
        StepEventTemplate{"user", "app", msg_add_travel_preferences(),
                          {StepParam::lit("Dortmund"), StepParam::lit("Paderborn")}}));
    registry->add(eventually_binding(
        "^the app displays a set of optimized routes$",
        StepEventTemplate{"app", "user", msg_show_map_with_optimized_route(), {}}));
    return registry;
}

std::shared_ptr<const StepRegistry> rps_step_registry() {
    auto registry = std::make_shared<StepRegistry>();
    registry->add(trigger_binding(
        StepKind::When, "^the app sends travel preferences to the rps$",
        StepEventTemplate{"routeRequester", "rps", msg_calculate_route(),
                          {StepParam::lit("Dortmund"), StepParam::lit("Paderborn")}}));
    registry->add(eventually_binding(
        "^the rps responds route information including gps data$",
        StepEventTemplate{"rps", "routeRequester", msg_calculate_route_response(),
                          {StepParam::any()}}));
    return registry;
}

const std::string& sos_feature_text() {
    static const std::string text =
        "Feature: Retrieve travel preferences and display optimized route\n"
        "\n"
        "    Scenario: Add travel preferences to the app\n"
        "        When the SoS user adds travel preferences to the app\n"
        "        Then the app displays a set of optimized routes\n";
    return text;
}

const std::string& rps_feature_text() {
    static const std::string text =
        "Feature: Calculate route - RPS\n"
        "\n"
        "    @RpsSystem\n"
        "    Scenario: Calculate route based on user travel preferences\n"
        "        When the app sends travel preferences to the rps\n"
        "        Then the rps responds route information including gps data\n";
    return text;
}

void register_engines(EngineCatalog& catalog) {
    auto sos_registry = sos_step_registry();
    auto rps_registry = rps_step_registry();
    auto merged = std::make_shared<StepRegistry>();
    merged->merge(*sos_registry);
    merged->merge(*rps_registry);

    catalog.register_engine(
        "sos", EngineSetup{[] { return standalone_engine(build_sos_program()); }, sos_registry});
    catalog.register_engine(
        "sos-empty",
        EngineSetup{[] { return standalone_engine(build_empty_sos_program()); }, sos_registry});
    catalog.register_engine(
        "rps", EngineSetup{[] { return standalone_engine(build_rps_program()); }, rps_registry});
    catalog.register_engine("composed",
                            EngineSetup{[] { return compose(build_composition()); }, merged});
    catalog.register_engine(
        "composed-empty-rps",
        EngineSetup{[] { return compose(build_unrefined_composition()); }, merged});
}

} // namespace scenweave::emobility
