#pragma once

// E-mobility case study: an electric-vehicle navigation app that plans
// charging-aware routes with a route-planning system (rps), a charging
// station operating system (csos), and further back-end systems. Ships
// the cross-system scenario program, the rps-internal program, feature
// files for both, their step bindings, and ready-made engine setups.

#include "scenweave/runner.hpp"

namespace scenweave::emobility {

// Message vocabulary shared by both levels.
Message msg_add_travel_preferences();          // addTravelPreferences/2
Message msg_calculate_route();                 // calculateRoute/2
Message msg_calculate_route_response();        // calculateRouteResponse/1
Message msg_optimize_route();                  // optimizeRoute/0
Message msg_show_map_with_optimized_route();   // showMapWithOptimizedRoute/0
Message msg_charging_station_gps_request();    // chargingStationGpsDataRequest/0
Message msg_consider_charging_stations();      // considerChargingStationLocations/1
Message msg_get_locations();                   // getLocations/2
Message msg_locations();                       // locations/2
Message msg_calculated_route();                // calculatedRoute/1

/// Cross-system program: route display plus charging-station handling,
/// the latter ordered in front of route optimization.
ScenarioProgram build_sos_program();

/// Same roles, no scenarios yet: the red starting point.
ScenarioProgram build_empty_sos_program();

/// The route-planning system's internal flow, from receiving travel
/// preferences on its requester interface to answering with a route.
ScenarioProgram build_rps_program();

/// rps roles without behavior.
ScenarioProgram build_empty_rps_program();

/// Cross-system program plus rps internals, with the rps's requester
/// interface bound to the navigation app.
Composition build_composition();

/// Composition whose rps program has no scenarios yet: delegated route
/// responses can never be satisfied.
Composition build_unrefined_composition();

std::shared_ptr<const StepRegistry> sos_step_registry();
std::shared_ptr<const StepRegistry> rps_step_registry();

const std::string& sos_feature_text();
const std::string& rps_feature_text();

/// Registers the engine setups `sos`, `sos-empty`, `rps`, `composed`,
/// and `composed-empty-rps`. Idempotent.
void register_engines(EngineCatalog& catalog = EngineCatalog::global());

} // namespace scenweave::emobility
