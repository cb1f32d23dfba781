#include "scenweave/composition.hpp"

namespace scenweave {

ComposedProgram flatten(const Composition& composition) {
    if (composition.inter.level != Level::Inter)
        throw CompositionError("the root program of a composition must be inter-level");

    ComposedProgram out;
    for (const auto& role : composition.inter.roles.roles())
        out.roles.register_role(role.name, role.interfaces);

    for (std::size_t idx = 0; idx < composition.intras.size(); ++idx) {
        const auto& intra = composition.intras[idx];
        if (intra.program.level != Level::Intra)
            throw CompositionError("composed system programs must be intra-level");
        if (!composition.inter.roles.has_role(intra.system_role))
            throw CompositionError("bound system role '" + intra.system_role +
                                   "' is not an inter-level role");
        if (!intra.program.roles.has_role(intra.system_role))
            throw CompositionError("intra program does not define its own system role '" +
                                   intra.system_role + "'");
        out.bound_systems.insert(intra.system_role);

        std::set<std::string> shared_names = {intra.system_role};
        for (const auto& binding : composition.bindings)
            if (binding.intra_index == static_cast<int>(idx))
                shared_names.insert(binding.interface_name);

        for (const auto& role : intra.program.roles.roles()) {
            if (out.roles.has_role(role.name)) {
                if (shared_names.count(role.name) == 0)
                    throw CompositionError("role name collision between levels: " + role.name);
                continue; // keep the inter-level entry
            }
            out.roles.register_role(role.name, role.interfaces);
        }
    }

    for (const auto& binding : composition.bindings) {
        if (binding.intra_index < 0 ||
            binding.intra_index >= static_cast<int>(composition.intras.size()))
            throw CompositionError("binding for interface '" + binding.interface_name +
                                   "' references an unknown system program");
        if (!out.roles.has_role(binding.concrete_role))
            throw CompositionError("binding to unknown role '" + binding.concrete_role + "'");
        if (!out.roles.implements(binding.concrete_role, binding.interface_name))
            throw CompositionError("role '" + binding.concrete_role +
                                   "' does not implement interface '" + binding.interface_name +
                                   "'");
        const auto& owner = composition.intras[static_cast<std::size_t>(binding.intra_index)];
        if (!owner.program.roles.known_name(binding.interface_name))
            throw CompositionError("interface '" + binding.interface_name +
                                   "' is unknown to the bound system program");
        out.bindings.push_back(binding);
    }

    for (const auto& def : composition.inter.definitions)
        out.definitions.push_back(ComposedProgram::Definition{def, Level::Inter, -1});
    for (std::size_t idx = 0; idx < composition.intras.size(); ++idx) {
        for (const auto& def : composition.intras[idx].program.definitions)
            out.definitions.push_back(
                ComposedProgram::Definition{def, Level::Intra, static_cast<int>(idx)});
    }
    return out;
}

Engine compose(const Composition& composition, Engine::Options options) {
    return Engine(flatten(composition), options);
}

} // namespace scenweave
