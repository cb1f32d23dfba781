#include "scenweave/engine.hpp"

#include <utility>

namespace scenweave {

namespace {

bool endpoint_unifies(const std::string& a, const std::string& b,
                      const std::vector<RoleBinding>& bindings) {
    if (a == b) return true;
    for (const auto& binding : bindings) {
        if ((a == binding.interface_name && b == binding.concrete_role) ||
            (a == binding.concrete_role && b == binding.interface_name))
            return true;
    }
    return false;
}

} // namespace

std::optional<Event> unify(const Event& flexible, const Event& concrete,
                           const std::vector<RoleBinding>& bindings) {
    if (flexible.message != concrete.message) return std::nullopt;
    if (!endpoint_unifies(flexible.sender, concrete.sender, bindings)) return std::nullopt;
    if (!endpoint_unifies(flexible.receiver, concrete.receiver, bindings)) return std::nullopt;
    return make_event(flexible.sender, flexible.receiver, flexible.message, concrete.params,
                      true);
}

Engine::Engine(ComposedProgram program) : Engine(std::move(program), Options{}) {}

Engine::Engine(ComposedProgram program, Options options)
    : program_(std::move(program)), options_(options) {
    if (options_.step_bound < 1) throw PreconditionError("step bound must be >= 1");

    std::set<std::string> ids;
    for (const auto& def : program_.definitions) {
        if (!ids.insert(def.scenario.id).second)
            throw DuplicateNameError("duplicate scenario id: " + def.scenario.id);
        validate_definition(def.scenario, program_.roles);
    }
    for (std::size_t i = 0; i < program_.definitions.size(); ++i) {
        if (!program_.definitions[i].scenario.trigger) spawn(static_cast<int>(i), nullptr);
    }
}

void Engine::set_step_bound(int bound) {
    if (bound < 1) throw PreconditionError("step bound must be >= 1");
    options_.step_bound = bound;
}

void Engine::inject(const Event& event) {
    if (event.flexible)
        throw PreconditionError("injected events must be concrete: " + event.canonical());
    external_.push_back(event);
}

ResolvedRequest Engine::resolve_request(const RequestSpec& spec, const Instance& instance,
                                        Level level) const {
    ResolvedRequest out;
    out.event = resolve_event(spec.event, instance.bindings, spec.flexible);
    out.flexible = spec.flexible;
    // A flexible inter-level request naming a system whose internals
    // are composed in is satisfied by that system's own scenarios, not
    // by its default parameters.
    out.delegated = spec.flexible && level == Level::Inter &&
                    (program_.bound_systems.count(spec.event.sender) > 0 ||
                     program_.bound_systems.count(spec.event.receiver) > 0);
    return out;
}

void Engine::spawn(int def_index, const Event* trigger_event) {
    const auto& def = program_.definitions[static_cast<std::size_t>(def_index)];
    Instance instance;
    instance.def_index = def_index;
    if (trigger_event != nullptr) {
        instance.trigger_values = trigger_event->params;
        for (std::size_t i = 0; i < def.scenario.trigger_params.size(); ++i)
            instance.bindings.emplace(def.scenario.trigger_params[i], trigger_event->params[i]);
    }
    instances_.push_back(std::move(instance));
    advance(instances_.back());
}

void Engine::advance(Instance& instance) {
    const auto& def = program_.definitions[static_cast<std::size_t>(instance.def_index)];
    const auto& body = def.scenario.body;
    instance.requests.reset();
    instance.waits.clear();
    instance.blocks.clear();
    while (instance.pc < body.size()) {
        const Instruction& instruction = body[instance.pc];
        if (const auto* sync = std::get_if<SyncPoint>(&instruction)) {
            std::vector<ResolvedRequest> requests;
            requests.reserve(sync->requests.size());
            for (const auto& spec : sync->requests)
                requests.push_back(resolve_request(spec, instance, def.level));
            instance.requests = std::move(requests);
            for (const auto& w : sync->waits)
                instance.waits.push_back(resolve_pattern(w, instance.bindings));
            for (const auto& b : sync->blocks)
                instance.blocks.push_back(resolve_pattern(b, instance.bindings));
            return;
        }
        if (const auto* begin = std::get_if<BeginBlockRegion>(&instruction)) {
            instance.region_blocks.push_back(resolve_pattern(begin->guard, instance.bindings));
        } else {
            instance.region_blocks.pop_back();
        }
        ++instance.pc;
    }
    instance.terminated = true;
    instance.region_blocks.clear();
}

void Engine::resume(Instance& instance) {
    ++instance.pc;
    advance(instance);
}

void Engine::collect_blocks(std::vector<EventPattern>& out) const {
    for (const auto& instance : instances_) {
        if (!instance.live()) continue;
        for (const auto& p : instance.region_blocks) out.push_back(p);
        for (const auto& p : instance.blocks) out.push_back(p);
    }
}

bool Engine::is_blocked(const Event& event) const {
    for (const auto& instance : instances_) {
        if (!instance.live()) continue;
        for (const auto& p : instance.region_blocks)
            if (matches(program_.roles, p, event)) return true;
        for (const auto& p : instance.blocks)
            if (matches(program_.roles, p, event)) return true;
    }
    return false;
}

std::optional<Engine::Candidate> Engine::select_event() const {
    for (const auto& instance : instances_) {
        if (!instance.live() || !instance.requests) continue;
        for (const auto& request : *instance.requests) {
            if (request.delegated) continue;
            if (!is_blocked(request.event)) return Candidate{request.event, false};
        }
    }
    if (!external_.empty() && !is_blocked(external_.front()))
        return Candidate{external_.front(), true};
    return std::nullopt;
}

Engine::StepOutcome Engine::step() {
    auto candidate = select_event();
    if (!candidate) {
        bool stuck = false;
        for (const auto& instance : instances_)
            if (instance.live() && instance.requests && !instance.requests->empty()) stuck = true;
        return Quiescent{stuck};
    }
    if (step_count_ >= options_.step_bound)
        throw StepBoundError("step bound of " + std::to_string(options_.step_bound) +
                             " events exhausted; next candidate: " +
                             candidate->event.canonical());

    StepRecord record;
    record.selected = candidate->event;
    record.from_external = candidate->from_external;
    if (!external_.empty()) record.external_head = external_.front();
    for (const auto& instance : instances_) {
        if (!instance.live() || !instance.requests) continue;
        for (const auto& request : *instance.requests) record.live_requests.push_back(request);
    }
    collect_blocks(record.active_blocks);
    records_.push_back(std::move(record));

    const Event event = candidate->event;
    if (candidate->from_external) external_.pop_front();
    trace_.push_back(event);

    // Decide all resumptions against the pre-step sync states, then
    // apply them; advancing one instance must not affect another's
    // wake-up decision.
    std::vector<std::size_t> to_resume;
    for (std::size_t i = 0; i < instances_.size(); ++i) {
        const Instance& instance = instances_[i];
        if (!instance.live() || !instance.requests) continue;
        bool hit = false;
        for (const auto& request : *instance.requests) {
            if (request.flexible) {
                if (unify(request.event, event, program_.bindings)) hit = true;
            } else if (request.event == event) {
                hit = true;
            }
            if (hit) break;
        }
        if (!hit) {
            for (const auto& w : instance.waits) {
                if (matches(program_.roles, w, event)) {
                    hit = true;
                    break;
                }
            }
        }
        if (hit) to_resume.push_back(i);
    }
    for (std::size_t i : to_resume) resume(instances_[i]);

    const std::size_t spawned_up_to = program_.definitions.size();
    for (std::size_t d = 0; d < spawned_up_to; ++d) {
        const auto& def = program_.definitions[d];
        if (!def.scenario.trigger) continue;
        EventPattern trigger = resolve_pattern(*def.scenario.trigger, Bindings{});
        if (matches(program_.roles, trigger, event)) spawn(static_cast<int>(d), &event);
    }

    ++step_count_;
    return Selected{event};
}

Engine::RunResult Engine::run_to_quiescence(int max_steps) {
    if (max_steps < 1) throw PreconditionError("max_steps must be >= 1");
    RunResult result;
    for (int i = 0; i < max_steps; ++i) {
        auto candidate = select_event();
        if (!candidate) break;
        if (step_count_ >= options_.step_bound) {
            result.stop = Stop::BoundExceeded;
            return result;
        }
        auto outcome = step();
        result.selected.push_back(std::get<Selected>(outcome).event);
    }
    auto candidate = select_event();
    if (candidate) {
        result.stop = Stop::BoundExceeded;
        return result;
    }
    auto outcome = step(); // quiescent: reports stuckness, selects nothing
    result.stop = std::get<Quiescent>(outcome).stuck ? Stop::Stuck : Stop::Quiescent;
    return result;
}

std::size_t Engine::live_instance_count() const {
    std::size_t count = 0;
    for (const auto& instance : instances_)
        if (instance.live()) ++count;
    return count;
}

std::vector<PendingRequest> Engine::pending_requests() const {
    std::vector<PendingRequest> pending;
    for (const auto& instance : instances_) {
        if (!instance.live() || !instance.requests) continue;
        const auto& def = program_.definitions[static_cast<std::size_t>(instance.def_index)];
        for (const auto& request : *instance.requests)
            pending.push_back(PendingRequest{request.event, def.scenario.id, request.delegated});
    }
    return pending;
}

Engine standalone_engine(const ScenarioProgram& program, Engine::Options options) {
    ComposedProgram composed;
    for (const auto& role : program.roles.roles())
        composed.roles.register_role(role.name, role.interfaces);
    for (const auto& def : program.definitions)
        composed.definitions.push_back(ComposedProgram::Definition{def, program.level, -1});
    return Engine(std::move(composed), options);
}

} // namespace scenweave
