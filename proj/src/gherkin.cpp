#include "scenweave/gherkin.hpp"

#include <regex>
#include <sstream>
#include <utility>

namespace scenweave {

const char* to_keyword(StepKind kind) {
    switch (kind) {
        case StepKind::Given: return "Given";
        case StepKind::When: return "When";
        case StepKind::Then: return "Then";
    }
    return "";
}

std::set<std::string> FeatureSpec::effective_tags(const UsageScenario& scenario) const {
    std::set<std::string> all = tags;
    all.insert(scenario.tags.begin(), scenario.tags.end());
    return all;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    std::size_t end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

bool starts_with(const std::string& s, const char* prefix) {
    return s.rfind(prefix, 0) == 0;
}

const std::regex& tag_token_regex() {
    static const std::regex re(R"(@[A-Za-z0-9_][A-Za-z0-9_-]*)");
    return re;
}

std::optional<StepKind> parse_keyword(const std::string& word) {
    if (word == "Given") return StepKind::Given;
    if (word == "When") return StepKind::When;
    if (word == "Then") return StepKind::Then;
    return std::nullopt;
}

} // namespace

FeatureSpec parse_feature(const std::string& text) {
    FeatureSpec feature;
    bool feature_seen = false;
    bool in_scenario = false;
    std::set<std::string> pending_tags;
    int pending_tag_line = 0;

    std::istringstream stream(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;

        if (line[0] == '@') {
            std::istringstream words(line);
            std::string token;
            while (words >> token) {
                if (!std::regex_match(token, tag_token_regex()))
                    throw ParseError("malformed tag '" + token + "'", line_no);
                pending_tags.insert(token);
            }
            pending_tag_line = line_no;
            continue;
        }

        if (starts_with(line, "Feature:")) {
            if (feature_seen) throw ParseError("more than one Feature header", line_no);
            feature_seen = true;
            feature.name = trim(line.substr(8));
            feature.tags = std::exchange(pending_tags, {});
            continue;
        }

        if (starts_with(line, "Scenario:")) {
            if (!feature_seen)
                throw ParseError("Scenario header before the Feature header", line_no);
            UsageScenario scenario;
            scenario.name = trim(line.substr(9));
            scenario.tags = std::exchange(pending_tags, {});
            feature.scenarios.push_back(std::move(scenario));
            in_scenario = true;
            continue;
        }

        const std::size_t space = line.find(' ');
        const std::string word = space == std::string::npos ? line : line.substr(0, space);
        const bool is_and = word == "And";
        const auto kind = parse_keyword(word);
        if (kind || is_and) {
            if (!pending_tags.empty())
                throw ParseError("tags must precede a Feature or Scenario header",
                                 pending_tag_line);
            if (!in_scenario) throw ParseError("step before any Scenario", line_no);
            const std::string step_text =
                space == std::string::npos ? std::string() : trim(line.substr(space + 1));
            if (step_text.empty()) throw ParseError("step with empty text", line_no);
            auto& steps = feature.scenarios.back().steps;
            if (is_and) {
                if (steps.empty())
                    throw ParseError("And step without a preceding step", line_no);
                steps.push_back(Step{steps.back().kind, step_text});
            } else {
                steps.push_back(Step{*kind, step_text});
            }
            continue;
        }

        throw ParseError("unrecognized line: " + line, line_no);
    }

    if (!pending_tags.empty())
        throw ParseError("tags must precede a Feature or Scenario header", pending_tag_line);
    if (!feature_seen) throw ParseError("missing Feature header", line_no == 0 ? 1 : line_no);
    if (feature.scenarios.empty())
        throw ParseError("feature has no scenarios", line_no == 0 ? 1 : line_no);
    return feature;
}

namespace {

std::string join_tags(const std::set<std::string>& tags) {
    std::string out;
    for (const auto& tag : tags) {
        if (!out.empty()) out += " ";
        out += tag;
    }
    return out;
}

} // namespace

std::string print_feature(const FeatureSpec& feature) {
    std::string out;
    if (!feature.tags.empty()) out += join_tags(feature.tags) + "\n";
    out += "Feature: " + feature.name + "\n";
    for (const auto& scenario : feature.scenarios) {
        out += "\n";
        if (!scenario.tags.empty()) out += "    " + join_tags(scenario.tags) + "\n";
        out += "    Scenario: " + scenario.name + "\n";
        for (const auto& step : scenario.steps)
            out += "        " + std::string(to_keyword(step.kind)) + " " + step.text + "\n";
    }
    return out;
}

std::string step_text_to_pattern(const std::string& step_text) {
    static const std::string meta = R"(\^$.|?*+()[]{})";
    std::string pattern = "^";
    std::size_t i = 0;
    while (i < step_text.size()) {
        const char c = step_text[i];
        if (c == '"') {
            const std::size_t close = step_text.find('"', i + 1);
            if (close != std::string::npos) {
                pattern += "\"([^\"]*)\"";
                i = close + 1;
                continue;
            }
        }
        if (meta.find(c) != std::string::npos) pattern += '\\';
        pattern += c;
        ++i;
    }
    pattern += "$";
    return pattern;
}

std::vector<SkeletonStub> skeleton_stubs(const FeatureSpec& feature) {
    std::vector<SkeletonStub> stubs;
    for (const auto& scenario : feature.scenarios) {
        for (const auto& step : scenario.steps) {
            SkeletonStub stub{step.kind, step_text_to_pattern(step.text)};
            bool seen = false;
            for (const auto& existing : stubs)
                if (existing == stub) {
                    seen = true;
                    break;
                }
            if (!seen) stubs.push_back(std::move(stub));
        }
    }
    return stubs;
}

std::string generate_skeletons(const FeatureSpec& feature) {
    std::string out;
    for (const auto& stub : skeleton_stubs(feature)) {
        if (!out.empty()) out += "\n";
        out += std::string(to_keyword(stub.kind)) + "(\"" + stub.pattern + "\") {\n";
        out += "    //implement here\n";
        out += "}\n";
    }
    return out;
}

const StepBinding& StepRegistry::add(StepBinding binding) {
    try {
        std::regex probe(binding.pattern);
    } catch (const std::regex_error& e) {
        throw PreconditionError("step pattern does not compile: " + binding.pattern + " (" +
                                e.what() + ")");
    }
    bindings_.push_back(std::move(binding));
    return bindings_.back();
}

std::optional<StepMatch> StepRegistry::match_step(StepKind kind, const std::string& text) const {
    std::optional<StepMatch> found;
    for (const auto& binding : bindings_) {
        if (binding.kind != kind) continue;
        std::smatch m;
        if (!std::regex_match(text, m, std::regex(binding.pattern))) continue;
        if (found)
            throw AmbiguousStepError("step text matches more than one binding: '" + text +
                                     "' (patterns " + found->binding->pattern + " and " +
                                     binding.pattern + ")");
        StepMatch match;
        match.binding = &binding;
        for (std::size_t i = 1; i < m.size(); ++i) match.captures.push_back(m[i].str());
        found = std::move(match);
    }
    return found;
}

void StepRegistry::merge(const StepRegistry& other) {
    for (const auto& binding : other.bindings_) bindings_.push_back(binding);
}

std::vector<FeatureSpec> filter_by_tags(std::vector<FeatureSpec> features,
                                        const std::string& expression) {
    if (trim(expression).empty()) return features;

    std::set<std::string> wanted;
    std::size_t start = 0;
    while (start <= expression.size()) {
        const std::size_t comma = expression.find(',', start);
        const std::string token =
            trim(comma == std::string::npos ? expression.substr(start)
                                            : expression.substr(start, comma - start));
        if (token.empty() || !std::regex_match(token, tag_token_regex()))
            throw TagExpressionError("malformed tag expression: '" + expression + "'");
        wanted.insert(token);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }

    std::vector<FeatureSpec> kept;
    for (auto& feature : features) {
        std::vector<UsageScenario> scenarios;
        for (auto& scenario : feature.scenarios) {
            const auto tags = feature.effective_tags(scenario);
            bool hit = false;
            for (const auto& tag : tags)
                if (wanted.count(tag) > 0) {
                    hit = true;
                    break;
                }
            if (hit) scenarios.push_back(std::move(scenario));
        }
        if (!scenarios.empty()) {
            feature.scenarios = std::move(scenarios);
            kept.push_back(std::move(feature));
        }
    }
    return kept;
}

} // namespace scenweave
