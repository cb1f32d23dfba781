#include "scenweave/scenario.hpp"

#include <set>
#include <utility>

namespace scenweave {

ParamRef ParamRef::lit(ParamValue value) {
    ParamRef ref;
    ref.kind_ = Kind::Literal;
    ref.literal_ = std::move(value);
    return ref;
}

ParamRef ParamRef::lit(const char* text) { return lit(ParamValue::text(text)); }

ParamRef ParamRef::lit(std::int64_t value) { return lit(ParamValue::integer(value)); }

ParamRef ParamRef::var(std::string name) {
    ParamRef ref;
    ref.kind_ = Kind::Var;
    ref.name_ = std::move(name);
    return ref;
}

ParamRef ParamRef::derived_mock(std::string prefix, std::vector<std::string> vars) {
    ParamRef ref;
    ref.kind_ = Kind::DerivedMock;
    ref.name_ = std::move(prefix);
    ref.vars_ = std::move(vars);
    return ref;
}

ParamRef ParamRef::any() { return ParamRef(); }

const ParamValue& ParamRef::literal() const {
    if (kind_ != Kind::Literal) throw PreconditionError("param ref is not a literal");
    return *literal_;
}

const std::string& ParamRef::var_name() const {
    if (kind_ != Kind::Var) throw PreconditionError("param ref is not a var");
    return name_;
}

const std::string& ParamRef::mock_prefix() const {
    if (kind_ != Kind::DerivedMock) throw PreconditionError("param ref is not a derived mock");
    return name_;
}

const std::vector<std::string>& ParamRef::mock_vars() const {
    if (kind_ != Kind::DerivedMock) throw PreconditionError("param ref is not a derived mock");
    return vars_;
}

ScenarioBuilder::ScenarioBuilder(std::string id) { def_.id = std::move(id); }

ScenarioBuilder& ScenarioBuilder::triggered_by(PatternTemplate trigger,
                                               std::vector<std::string> param_names) {
    def_.trigger = std::move(trigger);
    def_.trigger_params = std::move(param_names);
    return *this;
}

ScenarioBuilder& ScenarioBuilder::request(EventTemplate event) {
    SyncPoint point;
    point.requests.push_back(RequestSpec{std::move(event), false});
    def_.body.emplace_back(std::move(point));
    return *this;
}

ScenarioBuilder& ScenarioBuilder::request_flexible(EventTemplate event) {
    SyncPoint point;
    point.requests.push_back(RequestSpec{std::move(event), true});
    def_.body.emplace_back(std::move(point));
    return *this;
}

ScenarioBuilder& ScenarioBuilder::wait_for(PatternTemplate pattern) {
    SyncPoint point;
    point.waits.push_back(std::move(pattern));
    def_.body.emplace_back(std::move(point));
    return *this;
}

ScenarioBuilder& ScenarioBuilder::sync(SyncPoint point) {
    def_.body.emplace_back(std::move(point));
    return *this;
}

ScenarioBuilder& ScenarioBuilder::before(PatternTemplate guard,
                                         const std::function<void(ScenarioBuilder&)>& body) {
    def_.body.emplace_back(BeginBlockRegion{std::move(guard)});
    body(*this);
    def_.body.emplace_back(EndBlockRegion{});
    return *this;
}

ScenarioDefinition ScenarioBuilder::build() { return std::move(def_); }

EventTemplate ev(std::string sender, std::string receiver, Message message,
                 std::vector<ParamRef> params) {
    return EventTemplate{std::move(sender), std::move(receiver), std::move(message),
                         std::move(params)};
}

PatternTemplate pat(std::string sender, std::string receiver, Message message,
                    std::vector<ParamRef> params) {
    if (params.empty()) {
        params.reserve(message.arity);
        for (std::size_t i = 0; i < message.arity; ++i) params.push_back(ParamRef::any());
    }
    return PatternTemplate{std::move(sender), std::move(receiver), std::move(message),
                           std::move(params)};
}

namespace {

void check_endpoint(const std::string& ctx, const std::string& name, const RoleRegistry& roles,
                    bool wildcard_ok) {
    if (name == kWildcard) {
        if (!wildcard_ok) throw ProgramError(ctx + ": wildcard endpoint not allowed here");
        return;
    }
    if (!roles.known_name(name))
        throw ProgramError(ctx + ": unknown role or interface '" + name + "'");
}

void check_params(const std::string& ctx, const std::vector<ParamRef>& params,
                  const Message& message, const std::set<std::string>& vars,
                  bool wildcard_ok) {
    if (params.size() != message.arity)
        throw ProgramError(ctx + ": " + message.name + " expects " +
                           std::to_string(message.arity) + " params, got " +
                           std::to_string(params.size()));
    for (const auto& p : params) {
        switch (p.kind()) {
            case ParamRef::Kind::Literal:
                break;
            case ParamRef::Kind::Wildcard:
                if (!wildcard_ok)
                    throw ProgramError(ctx + ": wildcard param not allowed in a request");
                break;
            case ParamRef::Kind::Var:
                if (vars.count(p.var_name()) == 0)
                    throw ProgramError(ctx + ": unbound variable '" + p.var_name() + "'");
                break;
            case ParamRef::Kind::DerivedMock:
                for (const auto& v : p.mock_vars())
                    if (vars.count(v) == 0)
                        throw ProgramError(ctx + ": unbound variable '" + v +
                                           "' in derived mock");
                break;
        }
    }
}

void check_pattern(const std::string& ctx, const PatternTemplate& pattern,
                   const RoleRegistry& roles, const std::set<std::string>& vars) {
    check_endpoint(ctx, pattern.sender, roles, true);
    check_endpoint(ctx, pattern.receiver, roles, true);
    check_params(ctx, pattern.params, pattern.message, vars, true);
}

} // namespace

void validate_definition(const ScenarioDefinition& def, const RoleRegistry& roles) {
    const std::string where = "scenario '" + def.id + "'";
    if (def.id.empty()) throw ProgramError("scenario id must be non-empty");

    std::set<std::string> vars(def.trigger_params.begin(), def.trigger_params.end());
    if (vars.size() != def.trigger_params.size())
        throw ProgramError(where + ": duplicate trigger parameter name");

    if (def.trigger) {
        if (def.trigger_params.size() > def.trigger->message.arity)
            throw ProgramError(where + ": more trigger parameter names than message params");
        // Trigger patterns run before any binding exists, so variable
        // slots are meaningless there.
        for (const auto& p : def.trigger->params)
            if (p.kind() == ParamRef::Kind::Var || p.kind() == ParamRef::Kind::DerivedMock)
                throw ProgramError(where + ": trigger pattern params must be literal or wildcard");
        check_pattern(where + " trigger", *def.trigger, roles, vars);
    } else if (!def.trigger_params.empty()) {
        throw ProgramError(where + ": trigger parameter names without a trigger");
    }

    int region_depth = 0;
    for (const auto& instruction : def.body) {
        if (const auto* sync = std::get_if<SyncPoint>(&instruction)) {
            if (sync->requests.empty() && sync->waits.empty() && sync->blocks.empty())
                throw ProgramError(where + ": sync point with all three sets empty");
            for (const auto& req : sync->requests) {
                check_endpoint(where + " request", req.event.sender, roles, false);
                check_endpoint(where + " request", req.event.receiver, roles, false);
                check_params(where + " request", req.event.params, req.event.message, vars,
                             false);
            }
            for (const auto& w : sync->waits) check_pattern(where + " wait", w, roles, vars);
            for (const auto& b : sync->blocks) check_pattern(where + " block", b, roles, vars);
        } else if (const auto* begin = std::get_if<BeginBlockRegion>(&instruction)) {
            check_pattern(where + " region guard", begin->guard, roles, vars);
            ++region_depth;
        } else {
            if (region_depth == 0)
                throw ProgramError(where + ": region end without matching begin");
            --region_depth;
        }
    }
    if (region_depth != 0) throw ProgramError(where + ": unclosed blocking region");
}

void validate_program(const ScenarioProgram& program) {
    std::set<std::string> ids;
    for (const auto& def : program.definitions) {
        if (!ids.insert(def.id).second)
            throw DuplicateNameError("duplicate scenario id: " + def.id);
        validate_definition(def, program.roles);
    }
}

ParamValue resolve_param(const ParamRef& ref, const Bindings& bindings) {
    switch (ref.kind()) {
        case ParamRef::Kind::Literal:
            return ref.literal();
        case ParamRef::Kind::Var: {
            auto it = bindings.find(ref.var_name());
            if (it == bindings.end())
                throw ProgramError("unbound variable '" + ref.var_name() + "'");
            return it->second;
        }
        case ParamRef::Kind::DerivedMock: {
            std::string label = ref.mock_prefix();
            for (const auto& v : ref.mock_vars()) {
                auto it = bindings.find(v);
                if (it == bindings.end())
                    throw ProgramError("unbound variable '" + v + "' in derived mock");
                label += "-" + it->second.raw();
            }
            return ParamValue::mock(label);
        }
        case ParamRef::Kind::Wildcard:
            throw ProgramError("wildcard param cannot resolve to a value");
    }
    throw ProgramError("unreachable param kind");
}

Event resolve_event(const EventTemplate& tmpl, const Bindings& bindings, bool flexible) {
    std::vector<ParamValue> params;
    params.reserve(tmpl.params.size());
    for (const auto& p : tmpl.params) params.push_back(resolve_param(p, bindings));
    return make_event(tmpl.sender, tmpl.receiver, tmpl.message, std::move(params), flexible);
}

EventPattern resolve_pattern(const PatternTemplate& tmpl, const Bindings& bindings) {
    std::vector<std::optional<ParamValue>> params;
    params.reserve(tmpl.params.size());
    for (const auto& p : tmpl.params) {
        if (p.kind() == ParamRef::Kind::Wildcard)
            params.push_back(std::nullopt);
        else
            params.push_back(resolve_param(p, bindings));
    }
    return make_pattern(tmpl.sender, tmpl.receiver, tmpl.message, std::move(params));
}

} // namespace scenweave
