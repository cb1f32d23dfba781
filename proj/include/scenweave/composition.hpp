#pragma once

// Composition of one inter-level program with the intra-level programs
// of its constituent systems. The merged engine runs both levels over
// one shared event stream: events selected at either level are visible
// to triggers and waits at both, and inter-level flexible requests
// touching a bound system are delegated to that system's own scenarios.

#include "scenweave/engine.hpp"

namespace scenweave {

struct Composition {
    struct Intra {
        ScenarioProgram program;
        /// The inter-level role this program describes from within.
        std::string system_role;
    };

    ScenarioProgram inter;
    std::vector<Intra> intras;
    std::vector<RoleBinding> bindings;
};

/// Validates a composition and merges it into executable form.
///
/// Checks: the inter program is inter-level and every intra program is
/// intra-level; each system role exists in both its own program and the
/// inter program; role namespaces are disjoint except for system roles
/// and bound interface names; every binding names an existing intra
/// program, an interface the concrete role implements, and an interface
/// known to the owning intra program. Throws CompositionError.
///
/// Activation order of the merged definitions: inter-level scenarios
/// first, then each intra program's, in declaration order.
ComposedProgram flatten(const Composition& composition);

/// flatten + engine construction.
Engine compose(const Composition& composition, Engine::Options options = {});

} // namespace scenweave
