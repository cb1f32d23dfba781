#include "scenweave/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "scenweave/emobility.hpp"
#include "scenweave/runner.hpp"

namespace scenweave {

namespace {

/// Input problems that should end the run with exit code 2.
struct CliError {
    std::string message;
};

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{"cannot open " + path.string()};
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

/// Expands each path: files are taken as-is, directories contribute
/// their *.feature files recursively in sorted order.
std::vector<std::filesystem::path> expand_feature_paths(const std::vector<std::string>& paths) {
    std::vector<std::filesystem::path> files;
    for (const auto& raw : paths) {
        std::filesystem::path path(raw);
        std::error_code ec;
        if (std::filesystem::is_directory(path, ec)) {
            std::vector<std::filesystem::path> found;
            for (const auto& entry : std::filesystem::recursive_directory_iterator(path)) {
                if (entry.is_regular_file() && entry.path().extension() == ".feature")
                    found.push_back(entry.path());
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else if (std::filesystem::exists(path, ec)) {
            files.push_back(path);
        } else {
            throw CliError{"no such file or directory: " + raw};
        }
    }
    return files;
}

std::vector<FeatureSpec> load_features(const std::vector<std::string>& paths) {
    std::vector<FeatureSpec> features;
    for (const auto& file : expand_feature_paths(paths)) {
        try {
            features.push_back(parse_feature(read_file(file)));
        } catch (const ParseError& e) {
            throw CliError{file.string() + ": " + e.what()};
        }
    }
    return features;
}

std::string known_engines(const EngineCatalog& catalog) {
    std::string out;
    for (const auto& name : catalog.names()) {
        if (!out.empty()) out += ", ";
        out += name;
    }
    return out;
}

} // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Runs Gherkin feature files against executable scenario programs."};
    app.name("scenweave");

    RunConfig config;
    std::string format = "pretty";
    bool skeletons = false;
    bool list_engines = false;
    app.add_option("--features", config.feature_paths,
                   "Feature files or directories (directories are searched for *.feature)");
    app.add_option("--engine", config.engine_name, "Engine setup to run the features against");
    app.add_option("--tags", config.tag_filter,
                   "Keep only scenarios carrying one of these comma-separated @tags");
    app.add_option("--max-steps", config.max_steps, "Event budget per scenario")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_flag("--trace", config.trace, "Print each scenario's event trace");
    app.add_option("--format", format, "Report format")
        ->capture_default_str()
        ->check(CLI::IsMember({"pretty", "json-lines"}));
    app.add_flag("--generate-skeletons", skeletons,
                 "Print step-definition skeletons for the features and exit");
    app.add_flag("--list-engines", list_engines, "Print the registered engine names and exit");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }
    config.format = format == "pretty" ? ReportFormat::Pretty : ReportFormat::JsonLines;

    emobility::register_engines();
    auto& catalog = EngineCatalog::global();

    try {
        if (list_engines) {
            for (const auto& name : catalog.names()) out << name << "\n";
            return 0;
        }

        if (config.feature_paths.empty()) {
            err << "error: --features is required\n\n" << app.help();
            return 2;
        }

        const auto features = load_features(config.feature_paths);

        if (skeletons) {
            bool first = true;
            for (const auto& feature : features) {
                if (!first) out << "\n";
                out << generate_skeletons(feature);
                first = false;
            }
            return 0;
        }

        if (config.engine_name.empty()) {
            err << "error: --engine is required (one of: " << known_engines(catalog) << ")\n";
            return 2;
        }
        const EngineSetup* setup = catalog.find(config.engine_name);
        if (setup == nullptr) {
            err << "error: unknown engine '" << config.engine_name
                << "' (one of: " << known_engines(catalog) << ")\n";
            return 2;
        }

        TestReport report;
        try {
            report = run_suite(features, setup->make_engine, *setup->registry, config);
        } catch (const TagExpressionError& e) {
            throw CliError{e.what()};
        }
        out << write_report(report, config.format);
        if (config.trace && config.format == ReportFormat::Pretty) {
            for (const auto& scenario : report.scenarios) {
                out << "\nTrace of " << scenario.feature << " / " << scenario.name << ":\n";
                for (std::size_t i = 0; i < scenario.trace.size(); ++i)
                    out << "  " << (i + 1) << "  " << scenario.trace[i] << "\n";
            }
        }
        return exit_code(report);
    } catch (const CliError& e) {
        err << "error: " << e.message << "\n";
        return 2;
    }
}

} // namespace scenweave
