#include "doctest.h"

#include <cstdlib>
#include <sstream>

#include "causentropy/entropy.hpp"
#include "causentropy/scenario.hpp"
#include "causentropy/schema.hpp"
#include "test_util.hpp"

using namespace causentropy;
using testing::code_of;

namespace {

Json transfer_config()
{
    return Json::parse(R"({
        "kind": "transfer", "seed": 1, "tolerance": 1e-12,
        "params": {"ledger": {"s_g": 1.0, "s_e": 0.9, "s_b": 0.8, "s_e_star": 0.5, "s_b_star": 0.6, "s_0": 0.2}}
    })");
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name)
{
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    FAIL("missing column " << name);
    return 0;
}

class ScopedEnv {
public:
    ScopedEnv(const char* name, const char* value) : name_(name) { ::setenv(name, value, 1); }
    ~ScopedEnv() { ::unsetenv(name_); }
    ScopedEnv(const ScopedEnv&) = delete;
    ScopedEnv& operator=(const ScopedEnv&) = delete;

private:
    const char* name_;
};

} // namespace

TEST_SUITE("scenario") {

TEST_CASE("schema rejects unknown keys and reports field paths")
{
    Json cfg = transfer_config();
    CHECK(config_diagnostics(cfg).empty());
    cfg["params"]["ledger"]["s_gg"] = 1.0;
    cfg["params"]["ledger"].erase("s_0");
    cfg["tolerance"] = -1.0;
    cfg["colour"] = "blue";
    const auto diags = config_diagnostics(cfg);
    const auto mentions = [&](const std::string& text) {
        for (const auto& d : diags) {
            if (d.find(text) != std::string::npos) {
                return true;
            }
        }
        return false;
    };
    CHECK(mentions("params.ledger"));
    CHECK(mentions("s_gg"));
    CHECK(mentions("s_0"));
    CHECK(mentions("tolerance"));
    CHECK(mentions("colour"));
    CHECK(code_of([&] { parse_config(cfg); }) == ErrorCode::ConfigInvalid);
    try {
        parse_config(cfg);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("s_gg") != std::string::npos);
    }
    CHECK(code_of([] { parse_config(Json::parse(R"({"kind": "warp", "seed": 0, "tolerance": 1, "params": {}})")); }) ==
          ErrorCode::ConfigInvalid);
    CHECK(code_of([] { load_config("/nonexistent/config.json"); }) == ErrorCode::IoError);
}

TEST_CASE("schema validator keywords")
{
    const Json schema = Json::parse(R"({
        "type": "object", "additionalProperties": false, "required": ["n"],
        "properties": {
            "n": {"type": "integer", "minimum": 1, "maximum": 3},
            "x": {"type": "number", "exclusiveMinimum": 0},
            "tags": {"type": "array", "minItems": 1, "items": {"enum": ["a", "b"]}},
            "v": {"oneOf": [{"type": "number"}, {"type": "object", "required": ["k"], "properties": {"k": {"const": 2}}}]}
        }
    })");
    CHECK(validate_against_schema(Json::parse(R"({"n": 2, "x": 0.5, "tags": ["a"], "v": {"k": 2}})"), schema).empty());
    CHECK(validate_against_schema(Json::parse(R"({"n": 2.5})"), schema).size() == 1);
    CHECK(validate_against_schema(Json::parse(R"({"n": 4})"), schema).size() == 1);
    CHECK(validate_against_schema(Json::parse(R"({"n": 1, "x": 0})"), schema).size() == 1);
    CHECK(validate_against_schema(Json::parse(R"({"n": 1, "tags": []})"), schema).size() == 1);
    const auto bad_item = validate_against_schema(Json::parse(R"({"n": 1, "tags": ["a", "c"]})"), schema);
    REQUIRE(bad_item.size() == 1);
    CHECK(bad_item[0].rfind("tags[1]:", 0) == 0);
    CHECK_FALSE(validate_against_schema(Json::parse(R"({"n": 1, "v": {"k": 3}})"), schema).empty());
    CHECK_FALSE(validate_against_schema(Json::parse(R"({"n": 1, "w": 0})"), schema).empty());
}

TEST_CASE("transfer scenario worked example")
{
    const Report r = run_scenario(parse_config(transfer_config()));
    CHECK(r.outputs.at("s_g_prime").value == doctest::Approx(1.7).epsilon(1e-14));
    CHECK(r.outputs.at("s_g_prime").unit == "bits");
    CHECK(std::abs(r.outputs.at("conservation_residual").value) <= 1e-12);
    CHECK(r.all_pass());
    CHECK(r.failures().empty());
    for (const auto& [name, q] : r.outputs) {
        CHECK_MESSAGE(!q.unit.empty(), name);
    }
    const Json j = r.to_json();
    CHECK(j.at("version") == std::string(artifact_version()));
    CHECK_FALSE(j.contains("wall_time_seconds"));
    CHECK(r.to_json(true).contains("wall_time_seconds"));
}

TEST_CASE("weak monotonicity and module errors carry the scenario context")
{
    Json cfg = transfer_config();
    cfg["params"]["ledger"]["s_e_star"] = 0.2; // absorbed equals vacuum: E does not shrink
    cfg["params"]["ledger"]["s_b_star"] = 0.3;
    cfg["params"]["ledger"]["s_0"] = 0.2;
    cfg["params"]["strict_monotonicity"] = false;
    const Report r = run_scenario(parse_config(cfg));
    CHECK(r.all_pass());
    cfg["params"]["ledger"]["s_e_star"] = 0.95; // more than E holds
    CHECK(code_of([&] { run_scenario(parse_config(cfg)); }) == ErrorCode::InvalidLedger);
    try {
        run_scenario(parse_config(cfg));
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("transfer scenario") != std::string::npos);
    }
}

TEST_CASE("reports are byte-identical across runs and survive a JSON round trip")
{
    for (const char* text : {R"({"kind": "geometry", "seed": 3, "tolerance": 1e-12,
                                 "params": {"scheme": {"delta": 0.001, "d_ge": 1.0, "d_geom": 1000.0},
                                            "entropies": [0.0, 1.5],
                                            "ledger": {"s_g": 1.0, "s_e": 0.9, "s_b": 0.8, "s_e_star": 0.5, "s_b_star": 0.6, "s_0": 0.2},
                                            "curve": {"s_min": 0.0, "s_max": 2.0, "points": 5}}})",
                             R"({"kind": "horizon", "seed": 0, "tolerance": 1e-9,
                                 "params": {"hamiltonian_diagonal": [0.0, 1.0],
                                            "t00": {"axes": [{"origin": 0, "spacing": 0.25, "count": 5}, {"origin": 0, "spacing": 1, "count": 2}], "profile": "sine"}}})"}) {
        const ScenarioConfig cfg = parse_config(Json::parse(text));
        const std::string a = emit_report(run_scenario(cfg), ReportFormat::Json);
        const std::string b = emit_report(run_scenario(cfg), ReportFormat::Json);
        CHECK(a == b);
        const Report back = report_from_json(Json::parse(a));
        CHECK(canonical_dump(back.to_json()) + "\n" == a);
    }
    const ScenarioConfig t = parse_config(transfer_config());
    const std::string csv = emit_report(run_scenario(t), ReportFormat::Csv);
    const auto rows = parse_csv(csv);
    REQUIRE(rows.size() == 2);
    std::vector<std::string> header = csv_columns(ScenarioKind::Transfer);
    header.push_back("all_pass");
    CHECK(rows[0] == header);
    CHECK(rows[1][column(rows[0], "s_g_prime")] == "1.7");
}

TEST_CASE("geometry curve artifact")
{
    const ScenarioConfig cfg = parse_config(Json::parse(R"({"kind": "geometry", "seed": 0, "tolerance": 1e-12,
        "params": {"scheme": {"delta": 0.5}, "curve": {"s_min": 0.0, "s_max": 4.0, "points": 5}}})"));
    const Report r = run_scenario(cfg);
    const auto rows = parse_csv(emit_curve_csv(r));
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == std::vector<std::string>{"entropy_bits", "area_regulated", "area_geom_scale"});
    CHECK(std::stod(rows[5][0]) == 4.0);
    CHECK(std::stod(rows[5][1]) == doctest::Approx(1.0)); // delta^{d-2} S / c0_tilde
}

TEST_CASE("sweeps")
{
    Json base = transfer_config();
    base["sweep"] = Json::object();
    const ScenarioConfig empty = parse_config(base);
    CHECK(sweep_grid(empty).empty());
    const auto empty_rows = parse_csv(emit_sweep(empty, run_sweep(empty), ReportFormat::Csv));
    REQUIRE(empty_rows.size() == 1);
    CHECK(empty_rows[0].back() == "all_pass");

    base["params"]["ledger"]["s_0"] = 0.1;
    Json values = Json::array();
    for (int i = 0; i < 100; ++i) {
        values.push_back(0.3 + 0.005 * i);
    }
    base["sweep"]["params.ledger.s_e_star"] = values;
    const ScenarioConfig swept = parse_config(base);
    const auto points = run_sweep(swept, 4);
    REQUIRE(points.size() == 100);
    const auto rows = parse_csv(emit_sweep(swept, points, ReportFormat::Csv));
    REQUIRE(rows.size() == 101);
    const std::size_t col = column(rows[0], "s_g_prime");
    CHECK(rows[0][0] == "params.ledger.s_e_star");
    for (std::size_t i = 2; i < rows.size(); ++i) {
        CHECK(std::stod(rows[i][col]) > std::stod(rows[i - 1][col]));
        CHECK(rows[i].back() == "true");
    }
    // parallel and serial runs agree point by point, in grid order
    const auto serial = run_sweep(swept, 1);
    for (std::size_t i = 0; i < points.size(); ++i) {
        CHECK(canonical_dump(points[i].report.to_json()) == canonical_dump(serial[i].report.to_json()));
        CHECK(points[i].assignment == serial[i].assignment);
    }
    CHECK(emit_sweep(swept, points, ReportFormat::Json) == emit_sweep(swept, serial, ReportFormat::Json));

    Json two = transfer_config();
    two["sweep"] = {{"params.ledger.s_e_star", {0.5, 0.6}}, {"params.ledger.s_b_star", {0.4, 0.5, 0.6}}};
    const auto grid = sweep_grid(parse_config(two));
    REQUIRE(grid.size() == 6);
    CHECK(grid[0]["params.ledger.s_b_star"] == 0.4);
    CHECK(grid[0]["params.ledger.s_e_star"] == 0.5);
    CHECK(grid[1]["params.ledger.s_e_star"] == 0.6); // last sorted key fastest

    two["sweep"] = {{"params.ledger.bogus", {1.0}}};
    CHECK(code_of([&] { run_sweep(parse_config(two)); }) == ErrorCode::ConfigInvalid);
}

TEST_CASE("sweep parallelism follows the environment")
{
    {
        ScopedEnv env("CAUSENTROPY_THREADS", "3");
        CHECK(default_sweep_threads() == 3);
    }
    {
        ScopedEnv env("CAUSENTROPY_THREADS", "zero");
        CHECK(code_of([] { default_sweep_threads(); }) == ErrorCode::ConfigInvalid);
    }
    CHECK(default_sweep_threads() >= 1);
}

TEST_CASE("pipeline threads the searched state through the ledger")
{
    const ScenarioConfig cfg = parse_config(Json::parse(R"({
        "kind": "pipeline", "seed": 42, "tolerance": 1e-9,
        "params": {
            "search": {"target_negativity": 0.05, "budget": 100000},
            "transfer": {"star_fraction_e": 0.6, "star_fraction_b": 0.5, "s_0": 0.0},
            "scheme": {"delta": 0.001, "d_ge": 1.0, "d_geom": 1000.0}
        }})"));
    const Report r = run_scenario(cfg);
    CHECK(r.all_pass());
    const DensityMatrix state = density_matrix_from_json(r.artifacts.at("state"));
    CHECK(std::abs(von_neumann_entropy(state.reduced({0})).bits - r.outputs.at("s_g").value) <= 1e-10);
    CHECK(std::abs(von_neumann_entropy(state.reduced({1})).bits - r.outputs.at("s_e").value) <= 1e-10);
    CHECK(std::abs(von_neumann_entropy(state.reduced({2})).bits - r.outputs.at("s_b").value) <= 1e-10);
    CHECK(r.outputs.at("delta_s_g").value > 0.0);
    CHECK(r.outputs.at("area_g_prime").value > r.outputs.at("area_g").value);
}

} // TEST_SUITE
