#pragma once

// Scenario definitions as explicit resumable step programs. A body is a
// list of instructions; executing one either yields a sync point (the
// instance suspends there, declaring requested / waited / blocked event
// sets) or opens/closes a blocking region. Parameter slots in a body are
// templates resolved against the values bound when the scenario's
// trigger fired.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scenweave/events.hpp"

namespace scenweave {

/// Template parameter slot inside a scenario body.
class ParamRef {
public:
    enum class Kind { Literal, Var, DerivedMock, Wildcard };

    static ParamRef lit(ParamValue value);
    static ParamRef lit(const char* text);
    static ParamRef lit(std::int64_t value);
    /// Named value bound from the trigger event.
    static ParamRef var(std::string name);
    /// Mock whose label is derived from bound values:
    /// prefix-<raw v1>-<raw v2>-...
    static ParamRef derived_mock(std::string prefix, std::vector<std::string> vars);
    /// Match-anything slot; only meaningful inside patterns.
    static ParamRef any();

    Kind kind() const { return kind_; }
    const ParamValue& literal() const;
    const std::string& var_name() const;
    const std::string& mock_prefix() const;
    const std::vector<std::string>& mock_vars() const;

private:
    ParamRef() = default;

    Kind kind_ = Kind::Wildcard;
    std::optional<ParamValue> literal_;
    std::string name_;
    std::vector<std::string> vars_;
};

/// A concrete interaction to be requested, with template params.
struct EventTemplate {
    std::string sender;
    std::string receiver;
    Message message;
    std::vector<ParamRef> params;
};

/// An event matcher with template params; sender/receiver may also be
/// "*" or an interface name.
struct PatternTemplate {
    std::string sender = kWildcard;
    std::string receiver = kWildcard;
    Message message;
    std::vector<ParamRef> params;
};

struct RequestSpec {
    EventTemplate event;
    /// A flexible request is satisfied by any event with the same
    /// sender, receiver, and signature; its own params are defaults.
    bool flexible = false;
};

/// One sync point. The instance suspends here until a requested event
/// is selected (directly or by unification, for flexible requests) or a
/// waited pattern matches a selected event. Blocked patterns hold for
/// the whole suspension. At least one of the three lists is non-empty.
struct SyncPoint {
    std::vector<RequestSpec> requests;
    std::vector<PatternTemplate> waits;
    std::vector<PatternTemplate> blocks;
};

/// Opens a region during which the guard pattern is blocked: anything
/// matching the guard is deferred until the region's end. Regions nest.
struct BeginBlockRegion {
    PatternTemplate guard;
};

struct EndBlockRegion {};

using Instruction = std::variant<SyncPoint, BeginBlockRegion, EndBlockRegion>;

struct ScenarioDefinition {
    std::string id;
    /// Absent means the scenario is active from engine start; present
    /// means a fresh instance spawns for every matching selected event.
    std::optional<PatternTemplate> trigger;
    /// Names bound positionally from the trigger event's params; usable
    /// as ParamRef::var references throughout the body.
    std::vector<std::string> trigger_params;
    std::vector<Instruction> body;
};

/// Whether a program describes interactions between systems or the
/// inner behavior of one system.
enum class Level { Inter, Intra };

struct ScenarioProgram {
    Level level = Level::Inter;
    RoleRegistry roles;
    std::vector<ScenarioDefinition> definitions;
};

/// Fluent assembly of one scenario definition.
class ScenarioBuilder {
public:
    explicit ScenarioBuilder(std::string id);

    ScenarioBuilder& triggered_by(PatternTemplate trigger,
                                  std::vector<std::string> param_names = {});
    ScenarioBuilder& request(EventTemplate event);
    ScenarioBuilder& request_flexible(EventTemplate event);
    ScenarioBuilder& wait_for(PatternTemplate pattern);
    ScenarioBuilder& sync(SyncPoint point);
    /// Brackets the instructions added by `body` in a region blocking
    /// `guard` until the region completes.
    ScenarioBuilder& before(PatternTemplate guard,
                            const std::function<void(ScenarioBuilder&)>& body);

    ScenarioDefinition build();

private:
    ScenarioDefinition def_;
};

// Convenience constructors for templates.
EventTemplate ev(std::string sender, std::string receiver, Message message,
                 std::vector<ParamRef> params = {});
PatternTemplate pat(std::string sender, std::string receiver, Message message,
                    std::vector<ParamRef> params = {});

/// Structural validation of one program: unique scenario ids, balanced
/// blocking regions, sync points with at least one non-empty list,
/// endpoint names known to the given registry, parameter counts equal
/// to message arities, variable references covered by trigger_params,
/// and trigger patterns free of variables. Throws ProgramError or
/// DuplicateNameError.
void validate_program(const ScenarioProgram& program);
void validate_definition(const ScenarioDefinition& def, const RoleRegistry& roles);

/// Values bound at trigger time, by name.
using Bindings = std::map<std::string, ParamValue>;

/// Resolves one template slot. Throws ProgramError for unbound vars or
/// a Wildcard slot (callers resolving event templates must not pass
/// wildcards).
ParamValue resolve_param(const ParamRef& ref, const Bindings& bindings);

/// Instantiates a request template; the result carries `flexible`.
Event resolve_event(const EventTemplate& tmpl, const Bindings& bindings, bool flexible);

/// Instantiates a pattern template; Wildcard slots stay wildcards.
EventPattern resolve_pattern(const PatternTemplate& tmpl, const Bindings& bindings);

} // namespace scenweave
