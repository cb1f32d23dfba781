#pragma once

// Reference semantics for composed scenario programs, written
// independently of the engine: it shares only the program data model
// and re-implements template resolution, pattern matching, flexible
// unification, body stepping, and candidate selection on its own.
// Instead of applying the engine's deterministic pick, it exposes the
// full set of legal selections at each state, so engine traces can be
// checked for membership and whole legal-trace sets can be enumerated
// for small programs.

#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "scenweave/engine.hpp"

namespace scenweave::testsupport {

/// Pattern matching re-implemented from the matching rules.
bool ref_matches(const RoleRegistry& roles, const EventPattern& pattern, const Event& event);

/// Flexible/concrete unification re-implemented from the rules.
bool ref_unifies(const Event& flexible, const Event& concrete,
                 const std::vector<RoleBinding>& bindings);

struct RefInstance {
    int def = 0;
    std::map<std::string, ParamValue> bound;
    std::size_t at = 0; // instruction index
    std::vector<EventPattern> region;
    bool done = false;

    bool at_sync = false;
    std::vector<Event> req_events;
    std::vector<bool> req_flexible;
    std::vector<bool> req_delegated;
    std::vector<EventPattern> wait_pats;
    std::vector<EventPattern> block_pats;
};

struct RefState {
    std::vector<RefInstance> instances;
    std::deque<Event> queue;
    std::vector<Event> trace;
};

/// One legal selection: the event plus whether it comes off the queue.
struct RefCandidate {
    Event event;
    bool from_external = false;
};

class RefSemantics {
public:
    explicit RefSemantics(ComposedProgram program);

    RefState start(const std::vector<Event>& injections) const;

    /// All legal selections at this state, deduplicated by event value.
    /// Internal requested events first; the queue head only when no
    /// internal selection is legal.
    std::vector<RefCandidate> candidates(const RefState& state) const;

    /// The unique successor state for a legal selection.
    RefState next(const RefState& state, const Event& event, bool from_external) const;

    /// Quiescent-with-pending-requests.
    bool stuck(const RefState& state) const;

    const ComposedProgram& program() const { return program_; }

private:
    void settle(RefInstance& instance) const;
    bool blocked(const RefState& state, const Event& event) const;

    ComposedProgram program_;
};

std::string trace_key(const std::vector<Event>& trace);
std::string trace_key(const std::vector<std::string>& canonical_lines);

struct Enumeration {
    /// Keys of traces that end quiescent.
    std::set<std::string> complete;
    /// Keys of trace prefixes cut off at the depth bound.
    std::set<std::string> cut;
    std::size_t visited = 0;
    bool budget_exhausted = false;

    bool contains(const std::string& key) const {
        return complete.count(key) > 0 || cut.count(key) > 0;
    }
};

/// Exhaustive DFS over all legal selections, to `max_depth` events,
/// giving up (budget_exhausted) after `node_budget` visited states.
Enumeration enumerate_traces(const ComposedProgram& program, const std::vector<Event>& injections,
                             std::size_t max_depth, std::size_t node_budget);

struct PathCheck {
    bool ok = true;
    std::string detail;
};

/// Walks the engine's own recorded run and confirms that every selected
/// event was a legal candidate of the reference semantics at the
/// corresponding reference state (and that the external/internal origin
/// agrees), and that the run's final quiescence/continuation matches.
PathCheck check_engine_path(const Engine& engine, const std::vector<Event>& injections);

} // namespace scenweave::testsupport
