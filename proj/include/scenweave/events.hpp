#pragma once

// Event vocabulary: roles, messages, parameter values, concrete events,
// and event patterns. Everything here is immutable value data; matching
// is a total, side-effect-free function over it.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "scenweave/errors.hpp"

namespace scenweave {

/// Wildcard marker accepted in pattern sender/receiver positions.
inline constexpr const char* kWildcard = "*";

/// A parameter value carried by an event: free text, an integer, or a
/// labeled mock standing in for a value whose real content does not
/// matter yet. Mocks with equal labels compare equal.
class ParamValue {
public:
    enum class Kind { Text, Integer, Mock };

    static ParamValue text(std::string value);
    static ParamValue integer(std::int64_t value);
    static ParamValue mock(std::string label);

    Kind kind() const { return kind_; }
    const std::string& text_value() const;
    std::int64_t integer_value() const;
    const std::string& mock_label() const;

    /// Display form: "Dortmund" for text, 42 for integers, mock:route
    /// for mocks.
    std::string render() const;

    /// Unquoted payload: the text itself, the digits, or the mock label.
    /// Used when deriving mock labels from bound values.
    std::string raw() const;

    friend bool operator==(const ParamValue&, const ParamValue&) = default;

private:
    ParamValue(Kind kind, std::string text, std::int64_t number)
        : kind_(kind), text_(std::move(text)), number_(number) {}

    Kind kind_ = Kind::Text;
    std::string text_;
    std::int64_t number_ = 0;
};

/// A message signature: name plus parameter count.
struct Message {
    std::string name;
    std::size_t arity = 0;

    friend bool operator==(const Message&, const Message&) = default;
};

/// A named object participating in interactions, plus the interface
/// names it implements.
struct Role {
    std::string name;
    std::set<std::string> interfaces;

    bool implements(const std::string& interface_name) const {
        return interfaces.count(interface_name) > 0;
    }
};

/// The roles known to one scenario program (or to a composition of
/// programs). Interface names share the namespace with role names: a
/// pattern field may name either. Built once, then read-only; safe for
/// concurrent reads.
class RoleRegistry {
public:
    /// Adds a role. Throws DuplicateNameError if the name is taken.
    /// A role's interface set is fixed at registration.
    const Role& register_role(std::string name, std::set<std::string> interfaces = {});

    bool has_role(const std::string& name) const;
    const Role* find_role(const std::string& name) const;

    /// True iff `role_name` names a role that implements `interface_name`.
    bool implements(const std::string& role_name, const std::string& interface_name) const;

    /// True iff some registered role implements an interface of this name.
    bool is_interface(const std::string& name) const;

    /// True iff the name is a registered role or a known interface.
    bool known_name(const std::string& name) const;

    /// Roles in registration order.
    const std::vector<Role>& roles() const { return roles_; }

private:
    std::vector<Role> roles_;
    std::map<std::string, std::size_t> index_;
    std::set<std::string> interfaces_;
};

/// One interaction occurrence: sender hands receiver a message with
/// parameter values. Equality is structural over sender, receiver,
/// message, and params; the flexible flag only records that the event
/// was produced by a flexible request and never affects equality.
struct Event {
    std::string sender;
    std::string receiver;
    Message message;
    std::vector<ParamValue> params;
    bool flexible = false;

    /// Canonical text form: sender -> receiver . message(p1, p2).
    std::string canonical() const;

    friend bool operator==(const Event& a, const Event& b) {
        return a.sender == b.sender && a.receiver == b.receiver &&
               a.message == b.message && a.params == b.params;
    }
};

/// Builds an event, checking that the parameter count matches the
/// message arity. Throws PreconditionError otherwise.
Event make_event(std::string sender, std::string receiver, Message message,
                 std::vector<ParamValue> params = {}, bool flexible = false);

/// Matcher over events. Sender and receiver may each be a role name, an
/// interface name, or "*"; each parameter is either a required value or
/// a wildcard (nullopt). The message signature is always constrained.
struct EventPattern {
    std::string sender = kWildcard;
    std::string receiver = kWildcard;
    Message message;
    std::vector<std::optional<ParamValue>> params;

    /// Same canonical form as events, with * in wildcard positions.
    std::string canonical() const;
};

/// Builds a pattern; omitted params default to all-wildcard. Throws
/// PreconditionError if a params list is given whose size differs from
/// the message arity.
EventPattern make_pattern(std::string sender, std::string receiver, Message message,
                          std::vector<std::optional<ParamValue>> params = {});

/// True iff the pattern matches the event: the message signatures are
/// equal, every bound parameter compares equal positionally, and each
/// endpoint field is "*", the event's role name, or the name of an
/// interface that role implements (one level; interface implementation
/// is not transitive). Unknown names simply fail to match.
bool matches(const RoleRegistry& roles, const EventPattern& pattern, const Event& event);

} // namespace scenweave
