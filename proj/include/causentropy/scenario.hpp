#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "causentropy/serialize.hpp"

namespace causentropy {

std::string_view artifact_version();

enum class ScenarioKind { Transfer, StateSearch, Geometry, Horizon, Pipeline };
std::string to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(const std::string& name);

enum class ReportFormat { Json, Csv };
std::string to_string(ReportFormat format);
ReportFormat report_format_from_string(const std::string& name);

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::Transfer;
    std::uint64_t seed = 0;
    double tolerance = 1e-9;
    Json params = Json::object();
    std::optional<std::string> output_path;
    ReportFormat format = ReportFormat::Json;
    Json sweep = Json::object();  // dotted config path -> list of values

    Json to_json() const;
};

/// Field-level diagnostics against the shipped schema; empty when valid.
std::vector<std::string> config_diagnostics(const Json& config);
/// Strict parse: unknown keys and missing fields throw ConfigInvalid listing
/// every diagnostic.
ScenarioConfig parse_config(const Json& config);
ScenarioConfig load_config(const std::string& path);

struct Quantity {
    double value = 0.0;
    std::string unit;
};

struct InvariantCheck {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct Report {
    ScenarioKind kind = ScenarioKind::Transfer;
    Json config_echo = Json::object();
    std::map<std::string, Quantity> outputs;
    Json artifacts = Json::object();
    std::vector<InvariantCheck> checks;
    std::vector<std::string> notes;
    double wall_time_seconds = 0.0;

    bool all_pass() const;
    std::vector<std::string> failures() const;
    /// Wall time is left out unless asked for, so the document is
    /// reproducible.
    Json to_json(bool include_wall_time = false) const;
};

Report report_from_json(const Json& j);

/// Deterministic given (config, seed). Module errors propagate with the
/// scenario kind prepended to the message.
Report run_scenario(const ScenarioConfig& config);

struct SweepPoint {
    Json assignment = Json::object(); // path -> value for this grid point
    Report report;
};

/// Cartesian product over the sweep keys in sorted order, last key varying
/// fastest. No keys (or any empty value list) means an empty grid.
std::vector<Json> sweep_grid(const ScenarioConfig& config);
ScenarioConfig apply_assignment(const ScenarioConfig& config, const Json& assignment);

/// Runs the grid on up to `threads` workers (0: CAUSENTROPY_THREADS or the
/// machine's parallelism). Results come back in grid order.
std::vector<SweepPoint> run_sweep(const ScenarioConfig& config, unsigned threads = 0);
unsigned default_sweep_threads();

std::vector<std::string> csv_columns(ScenarioKind kind);
std::string emit_report(const Report& report, ReportFormat format);
std::string emit_sweep(const ScenarioConfig& config, const std::vector<SweepPoint>& points, ReportFormat format);
/// Entropy-vs-area table of a geometry report with a curve; empty otherwise.
std::string emit_curve_csv(const Report& report);

void write_text_file(const std::string& path, const std::string& content);

} // namespace causentropy
