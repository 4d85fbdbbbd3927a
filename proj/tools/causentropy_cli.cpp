#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "causentropy/scenario.hpp"

namespace ce = causentropy;

namespace {

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;
    std::optional<std::string> output;
    std::optional<std::string> format;
    bool timing = false;
    unsigned threads = 0;
};

ce::Json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ce::Error(ce::ErrorCode::IoError, "cannot open " + path);
    }
    try {
        return ce::Json::parse(in);
    } catch (const ce::Json::parse_error& e) {
        throw ce::Error(ce::ErrorCode::ConfigInvalid, path + ": " + e.what());
    }
}

ce::ScenarioConfig load(const std::string& path, const Overrides& o)
{
    ce::Json j = read_json(path);
    if (o.seed) {
        j["seed"] = *o.seed;
    }
    if (o.tolerance) {
        j["tolerance"] = *o.tolerance;
    }
    if (o.output || o.format) {
        ce::Json out = j.contains("output") ? j["output"] : ce::Json::object();
        if (o.output) {
            out["path"] = *o.output;
        }
        if (o.format) {
            out["format"] = *o.format;
        }
        if (!out.contains("path")) {
            out["path"] = "-";
        }
        j["output"] = out;
    }
    return ce::parse_config(j);
}

void deliver(const ce::ScenarioConfig& config, const std::string& text)
{
    if (!config.output_path || *config.output_path == "-") {
        std::cout << text;
    } else {
        ce::write_text_file(*config.output_path, text);
    }
}

std::string curve_path(const std::string& path)
{
    const auto dot = path.find_last_of('.');
    const auto slash = path.find_last_of('/');
    const std::string stem = (dot != std::string::npos && (slash == std::string::npos || dot > slash))
                                 ? path.substr(0, dot)
                                 : path;
    return stem + "_curve.csv";
}

int report_failures(const std::vector<std::string>& failures)
{
    for (const auto& f : failures) {
        std::cerr << "FAIL " << f << "\n";
    }
    return failures.empty() ? 0 : 1;
}

int run(const std::string& path, const Overrides& o)
{
    const ce::ScenarioConfig config = load(path, o);
    const ce::Report report = run_scenario(config);
    std::string text = config.format == ce::ReportFormat::Json && o.timing
                           ? ce::canonical_dump(report.to_json(true)) + "\n"
                           : ce::emit_report(report, config.format);
    deliver(config, text);
    const std::string curve = ce::emit_curve_csv(report);
    if (!curve.empty() && config.output_path && *config.output_path != "-") {
        ce::write_text_file(curve_path(*config.output_path), curve);
    }
    return report_failures(report.failures());
}

int sweep(const std::string& path, const Overrides& o)
{
    const ce::ScenarioConfig config = load(path, o);
    const auto points = ce::run_sweep(config, o.threads);
    deliver(config, ce::emit_sweep(config, points, config.format));
    std::vector<std::string> failures;
    for (const auto& p : points) {
        for (const auto& f : p.report.failures()) {
            failures.push_back(ce::canonical_dump(p.assignment) + " " + f);
        }
    }
    return report_failures(failures);
}

int validate(const std::string& path)
{
    const auto diagnostics = ce::config_diagnostics(read_json(path));
    for (const auto& d : diagnostics) {
        std::cerr << d << "\n";
    }
    if (diagnostics.empty()) {
        std::cout << path << ": valid\n";
        return 0;
    }
    return 1;
}

void add_common(CLI::App* cmd, std::string& path, Overrides& o)
{
    cmd->add_option("config", path, "Scenario config (JSON)")->required();
    cmd->add_option("--seed", o.seed, "Override the config seed");
    cmd->add_option("--tolerance", o.tolerance, "Override the residual tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--output", o.output, "Output path ('-' for stdout)");
    cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Entropy-transfer scenarios: state search, transfer, area laws, horizon integrals"};
    app.require_subcommand(1);

    std::string path;
    Overrides o;

    auto* run_cmd = app.add_subcommand("run", "Run one scenario and emit its report");
    add_common(run_cmd, path, o);
    run_cmd->add_flag("--timing", o.timing, "Include wall time in the JSON report");

    auto* sweep_cmd = app.add_subcommand("sweep", "Run the config's parameter grid");
    add_common(sweep_cmd, path, o);
    sweep_cmd->add_option("--threads", o.threads, "Worker threads (default: CAUSENTROPY_THREADS or all cores)");

    auto* validate_cmd = app.add_subcommand("validate", "Check a config against the schema");
    validate_cmd->add_option("config", path, "Scenario config (JSON)")->required();

    app.add_subcommand("version", "Print the version");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            return run(path, o);
        }
        if (*sweep_cmd) {
            return sweep(path, o);
        }
        if (*validate_cmd) {
            return validate(path);
        }
        std::cout << "causentropy " << ce::artifact_version() << "\n";
        return 0;
    } catch (const ce::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}
