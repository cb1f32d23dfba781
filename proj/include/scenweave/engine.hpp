#pragma once

// Deterministic behavioral engine over a (possibly composed) set of
// scenario programs. One engine instance is single-threaded; distinct
// instances share nothing.
//
// Selection policy, in order:
//   1. live instances are scanned in activation order, their requests
//      in declaration order; the first unblocked request wins —
//      delegated flexible requests are never independently selectable;
//   2. with no internal candidate, the external queue head is selected
//      iff unblocked; a blocked head stays queued;
//   3. otherwise the engine is quiescent (stuck iff some live instance
//      still has pending requests).
//
// Selecting an event resumes every live instance whose sync requested
// it (directly or by flexible unification) or waits for it, and spawns
// a fresh instance of every triggered definition whose trigger matches.

#include <deque>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "scenweave/scenario.hpp"

namespace scenweave {

/// Binds an abstract role (interface) used by an intra-level program to
/// the inter-level role implementing it.
struct RoleBinding {
    std::string interface_name;
    std::string concrete_role;
    /// Index of the owning intra program, in composition order.
    int intra_index = 0;
};

/// A validated, flattened composition: the form the engine executes.
struct ComposedProgram {
    struct Definition {
        ScenarioDefinition scenario;
        Level level = Level::Inter;
        /// -1 for the inter-level program, otherwise the intra index.
        int program_index = -1;
    };

    RoleRegistry roles;
    /// Activation order: inter-level definitions first, then each intra
    /// program's, in declaration order.
    std::vector<Definition> definitions;
    std::vector<RoleBinding> bindings;
    /// Inter-level roles that have a bound intra program. Flexible
    /// requests at inter level touching one of these are delegated.
    std::set<std::string> bound_systems;
};

/// Flexible/concrete unification. Succeeds iff sender and receiver are
/// each identical or an (interface, concrete) pair from `bindings`, and
/// the message signatures are equal. The concrete event's parameter
/// values win over the flexible defaults; the result keeps the flexible
/// event's sender/receiver spelling.
std::optional<Event> unify(const Event& flexible, const Event& concrete,
                           const std::vector<RoleBinding>& bindings);

/// A request as it stands at a live sync point, params resolved.
struct ResolvedRequest {
    Event event;
    bool flexible = false;
    /// Delegated requests wait for the bound system's intra program to
    /// produce a unifiable event; they are not selectable themselves.
    bool delegated = false;
};

/// A request that could not be selected at quiescence, for diagnostics.
struct PendingRequest {
    Event event;
    std::string scenario_id;
    bool delegated = false; // false: blocked by an active pattern
};

/// Snapshot taken at each step for after-the-fact trace replay checks.
struct StepRecord {
    Event selected;
    bool from_external = false;
    std::optional<Event> external_head;
    std::vector<ResolvedRequest> live_requests;
    std::vector<EventPattern> active_blocks;
};

class Engine {
public:
    struct Options {
        /// Cumulative cap on selected events; step() past it throws.
        int step_bound = 10'000;
    };

    /// Validates and loads the program (throws ProgramError,
    /// DuplicateNameError). Trigger-less definitions come alive
    /// immediately, advanced to their first sync point; triggered ones
    /// lie dormant. The trace starts empty.
    explicit Engine(ComposedProgram program);
    Engine(ComposedProgram program, Options options);

    /// Queues an event from outside the scenario programs (FIFO).
    /// Throws PreconditionError if the event is marked flexible.
    void inject(const Event& event);

    struct Candidate {
        Event event;
        bool from_external = false;
    };

    /// The event step() would select now, if any. Pure.
    std::optional<Candidate> select_event() const;

    struct Selected {
        Event event;
    };
    struct Quiescent {
        bool stuck = false;
    };
    using StepOutcome = std::variant<Selected, Quiescent>;

    /// Selects one event and advances instances/triggers, or reports
    /// quiescence. Throws StepBoundError when a selectable event exists
    /// but the cumulative step bound is exhausted.
    StepOutcome step();

    enum class Stop { Quiescent, Stuck, BoundExceeded };
    struct RunResult {
        Stop stop = Stop::Quiescent;
        /// Events selected during this call, in order.
        std::vector<Event> selected;
    };

    /// Steps until quiescent or `max_steps` selections made by this
    /// call (or the cumulative bound is reached), whichever is first.
    /// Requires max_steps >= 1 (PreconditionError).
    RunResult run_to_quiescence(int max_steps);

    const std::vector<Event>& trace() const { return trace_; }
    const std::vector<StepRecord>& step_records() const { return records_; }
    const RoleRegistry& roles() const { return program_.roles; }
    const ComposedProgram& program() const { return program_; }

    int step_count() const { return step_count_; }
    int step_bound() const { return options_.step_bound; }
    void set_step_bound(int bound);

    std::size_t live_instance_count() const;
    std::size_t external_queue_size() const { return external_.size(); }

    /// Requests pending at the current state, with the reason they are
    /// not selectable. Meaningful at quiescence.
    std::vector<PendingRequest> pending_requests() const;

private:
    struct Instance {
        int def_index = 0;
        Bindings bindings;
        std::vector<ParamValue> trigger_values;
        std::size_t pc = 0;
        std::vector<EventPattern> region_blocks;
        std::optional<std::vector<ResolvedRequest>> requests;
        std::vector<EventPattern> waits;
        std::vector<EventPattern> blocks;
        bool terminated = false;

        bool live() const { return !terminated; }
    };

    void spawn(int def_index, const Event* trigger_event);
    /// Runs the body from pc until it yields a sync point or ends.
    void advance(Instance& instance);
    void resume(Instance& instance);
    bool is_blocked(const Event& event) const;
    void collect_blocks(std::vector<EventPattern>& out) const;
    ResolvedRequest resolve_request(const RequestSpec& spec, const Instance& instance,
                                    Level level) const;

    ComposedProgram program_;
    Options options_;
    std::vector<Instance> instances_; // activation order
    std::deque<Event> external_;
    std::vector<Event> trace_;
    std::vector<StepRecord> records_;
    int step_count_ = 0;
};

/// Wraps a single program as a trivial composition (no bindings, no
/// delegation) and builds an engine for it.
Engine standalone_engine(const ScenarioProgram& program, Engine::Options options = {});

} // namespace scenweave
