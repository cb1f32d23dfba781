#include "scenweave/events.hpp"

#include <utility>

namespace scenweave {

namespace {

std::string quote_text(const std::string& value) {
    std::string out = "\"";
    for (char c : value) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

} // namespace

ParamValue ParamValue::text(std::string value) {
    return ParamValue(Kind::Text, std::move(value), 0);
}

ParamValue ParamValue::integer(std::int64_t value) {
    return ParamValue(Kind::Integer, std::string(), value);
}

ParamValue ParamValue::mock(std::string label) {
    return ParamValue(Kind::Mock, std::move(label), 0);
}

const std::string& ParamValue::text_value() const {
    if (kind_ != Kind::Text) throw PreconditionError("param value is not text");
    return text_;
}

std::int64_t ParamValue::integer_value() const {
    if (kind_ != Kind::Integer) throw PreconditionError("param value is not an integer");
    return number_;
}

const std::string& ParamValue::mock_label() const {
    if (kind_ != Kind::Mock) throw PreconditionError("param value is not a mock");
    return text_;
}

std::string ParamValue::render() const {
    switch (kind_) {
        case Kind::Text: return quote_text(text_);
        case Kind::Integer: return std::to_string(number_);
        case Kind::Mock: return "mock:" + text_;
    }
    return {};
}

std::string ParamValue::raw() const {
    if (kind_ == Kind::Integer) return std::to_string(number_);
    return text_;
}

const Role& RoleRegistry::register_role(std::string name, std::set<std::string> interfaces) {
    if (name.empty()) throw PreconditionError("role name must be non-empty");
    if (index_.count(name) > 0) throw DuplicateNameError("role already registered: " + name);
    for (const auto& iface : interfaces) interfaces_.insert(iface);
    index_.emplace(name, roles_.size());
    roles_.push_back(Role{std::move(name), std::move(interfaces)});
    return roles_.back();
}

bool RoleRegistry::has_role(const std::string& name) const {
    return index_.count(name) > 0;
}

const Role* RoleRegistry::find_role(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return nullptr;
    return &roles_[it->second];
}

bool RoleRegistry::implements(const std::string& role_name, const std::string& interface_name) const {
    const Role* role = find_role(role_name);
    return role != nullptr && role->implements(interface_name);
}

bool RoleRegistry::is_interface(const std::string& name) const {
    return interfaces_.count(name) > 0;
}

bool RoleRegistry::known_name(const std::string& name) const {
    return has_role(name) || is_interface(name);
}

namespace {

std::string render_call(const std::string& sender, const std::string& receiver,
                        const std::string& message, const std::vector<std::string>& args) {
    std::string out = sender + " -> " + receiver + " . " + message + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i > 0) out += ", ";
        out += args[i];
    }
    out += ")";
    return out;
}

/// Endpoint check shared by both pattern positions: exact role name,
/// or an interface the event's role implements.
bool endpoint_matches(const RoleRegistry& roles, const std::string& field,
                      const std::string& event_role) {
    if (field == kWildcard) return true;
    if (field == event_role) return true;
    return roles.implements(event_role, field);
}

} // namespace

std::string Event::canonical() const {
    std::vector<std::string> args;
    args.reserve(params.size());
    for (const auto& p : params) args.push_back(p.render());
    return render_call(sender, receiver, message.name, args);
}

Event make_event(std::string sender, std::string receiver, Message message,
                 std::vector<ParamValue> params, bool flexible) {
    if (params.size() != message.arity)
        throw PreconditionError("event " + message.name + " expects " +
                                std::to_string(message.arity) + " params, got " +
                                std::to_string(params.size()));
    return Event{std::move(sender), std::move(receiver), std::move(message),
                 std::move(params), flexible};
}

std::string EventPattern::canonical() const {
    std::vector<std::string> args;
    args.reserve(params.size());
    for (const auto& p : params) args.push_back(p ? p->render() : std::string(kWildcard));
    return render_call(sender, receiver, message.name, args);
}

EventPattern make_pattern(std::string sender, std::string receiver, Message message,
                          std::vector<std::optional<ParamValue>> params) {
    if (params.empty()) params.resize(message.arity);
    if (params.size() != message.arity)
        throw PreconditionError("pattern " + message.name + " expects " +
                                std::to_string(message.arity) + " params, got " +
                                std::to_string(params.size()));
    return EventPattern{std::move(sender), std::move(receiver), std::move(message),
                        std::move(params)};
}

bool matches(const RoleRegistry& roles, const EventPattern& pattern, const Event& event) {
    if (pattern.message != event.message) return false;
    if (pattern.params.size() != event.params.size()) return false;
    if (!endpoint_matches(roles, pattern.sender, event.sender)) return false;
    if (!endpoint_matches(roles, pattern.receiver, event.receiver)) return false;
    for (std::size_t i = 0; i < pattern.params.size(); ++i) {
        if (pattern.params[i] && !(*pattern.params[i] == event.params[i])) return false;
    }
    return true;
}

} // namespace scenweave
