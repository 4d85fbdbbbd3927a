#include "causentropy/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "causentropy/entropy.hpp"
#include "causentropy/schema.hpp"

namespace causentropy {

namespace {

constexpr double kPptCheckTolerance = 1e-9;
constexpr double kWeightSumTolerance = 1e-9;
constexpr double kLedgerMatchTolerance = 1e-10;

std::string format_double(double x)
{
    if (!std::isfinite(x)) {
        return "";
    }
    char buf[40];
    return std::string(buf, std::to_chars(buf, buf + sizeof buf, x).ptr);
}

std::string area_unit(int d) { return "length^" + std::to_string(d - 2); }

class ReportBuilder {
public:
    explicit ReportBuilder(Report& r, double tolerance) : r_(r), tolerance_(tolerance) {}

    void out(const std::string& name, double value, const std::string& unit) { r_.outputs[name] = {value, unit}; }

    // Residual check against the scenario tolerance.
    void residual(const std::string& name, double residual) { bounded(name, residual, tolerance_); }

    void bounded(const std::string& name, double residual, double tolerance)
    {
        r_.checks.push_back({name, residual, tolerance, residual <= tolerance});
    }

    // Logical check: residual 0 on success, 1 on failure.
    void holds(const std::string& name, bool ok) { r_.checks.push_back({name, ok ? 0.0 : 1.0, 0.0, ok}); }

    void note(std::string text) { r_.notes.push_back(std::move(text)); }

    double tolerance() const { return tolerance_; }
    Report& report() { return r_; }

private:
    Report& r_;
    double tolerance_;
};

// ---------------------------------------------------------------------------
// Transfer

void ledger_outputs(ReportBuilder& b, const EntropyLedger& l)
{
    b.out("s_g", l.s_g, "bits");
    b.out("s_e", l.s_e, "bits");
    b.out("s_b", l.s_b, "bits");
    b.out("s_e_star", l.s_e_star, "bits");
    b.out("s_b_star", l.s_b_star, "bits");
    b.out("s_0", l.s_0, "bits");
}

void transfer_outputs_and_checks(ReportBuilder& b, const TransferOutcome& o)
{
    const EntropyLedger& l = o.ledger;
    ledger_outputs(b, l);
    b.out("s_g_prime", o.s_g_prime, "bits");
    b.out("s_e_prime", o.s_e_prime, "bits");
    b.out("s_b_prime", o.s_b_prime, "bits");
    b.out("delta_s_e_star", o.delta_s_e_star, "bits");
    b.out("delta_s_b_star", o.delta_s_b_star, "bits");
    b.out("delta_s_g", o.delta_s_g, "bits");
    b.out("delta_s_tot", o.delta_s_tot, "bits");
    b.out("conservation_residual", o.conservation_residual, "bits");

    b.residual("entropy_conservation", std::abs(o.conservation_residual));
    b.holds("gravity_entropy_growth", o.s_g_prime > l.s_g);
    b.holds("e_reduction_iff_absorbed_above_vacuum", (o.s_e_prime < l.s_e) == (l.s_e_star > l.s_0));
    b.holds("b_reduction_iff_absorbed_above_vacuum", (o.s_b_prime < l.s_b) == (l.s_b_star > l.s_0));
    b.residual("gravity_delta_identity", std::abs(o.delta_s_g - (o.delta_s_e_star + o.delta_s_b_star)));
    b.residual("total_delta_identity", std::abs(o.delta_s_tot - 2.0 * o.delta_s_g));
}

void thermo_outputs_and_checks(ReportBuilder& b, const TransferOutcome& o, double t_0, double t_e, double t_b,
                               double k_b)
{
    const ThermoRecord rec = build_thermo_record(o, t_0, t_e, t_b, k_b);
    const EnergyConservationReport ec = energy_conservation_check(rec, o, b.tolerance());
    const LocalThermoDeltas local = local_thermo_deltas(rec, o);
    b.out("t_0", rec.t_0, "K");
    b.out("e_e_star", rec.e_e_star, "J");
    b.out("e_b_star", rec.e_b_star, "J");
    b.out("delta_e_g", rec.delta_e_g, "J");
    b.out("thermo_delta_s_tot", local.delta_s_tot_bits, "bits");
    const double e_scale = ec.energy_scale > 0.0 ? ec.energy_scale : 1.0;
    const double s_scale = ec.entropy_scale > 0.0 ? ec.entropy_scale : 1.0;
    b.residual("energy_conservation_relative", ec.energy_residual / e_scale);
    b.residual("thermal_entropy_relative", ec.entropy_residual / s_scale);
    b.report().artifacts["thermo_record"] = to_json(rec);
}

void run_transfer(const ScenarioConfig& c, ReportBuilder& b)
{
    const Json& p = c.params;
    const EntropyLedger ledger = entropy_ledger_from_json(p.at("ledger"));
    const std::string mode = p.value("mode", std::string("apply"));
    TransferOptions options;
    options.strict_monotonicity = p.value("strict_monotonicity", false);
    const TransferOutcome o = mode == "max" ? max_transfer(ledger) : apply_transfer(ledger, options);
    transfer_outputs_and_checks(b, o);
    b.out("total_before", ledger.s_g + ledger.s_e + ledger.s_b, "bits");
    b.out("total_after", o.s_g_prime + o.s_e_prime + o.s_b_prime, "bits");
    if (p.contains("thermo")) {
        const Json& t = p.at("thermo");
        const double t_0 = t.at("t_0").get<double>();
        thermo_outputs_and_checks(b, o, t_0, t.value("t_e_star", t_0), t.value("t_b_star", t_0),
                                  t.value("k_b", PhysicalConstants{}.k_b));
    }
    b.report().artifacts["outcome"] = to_json(o);
    b.note("The conserved total (s_g + s_e + s_b) and delta_s_tot = 2 delta_s_g count different quantities; both "
           "are reported.");
}

// ---------------------------------------------------------------------------
// State search

SearchOptions search_options(const Json& p, std::uint64_t seed)
{
    SearchOptions o;
    o.budget = p.value("budget", o.budget);
    o.noise_floor = p.value("noise_floor", o.noise_floor);
    o.flagged_d_g = p.value("flagged_d_g", o.flagged_d_g);
    o.min_certification_gap = p.value("min_certification_gap", o.min_certification_gap);
    if (p.contains("families")) {
        o.families.clear();
        for (const auto& f : p.at("families")) {
            o.families.push_back(family_kind_from_string(f.get<std::string>()));
        }
    }
    if (p.contains("separability")) {
        const Json& s = p.at("separability");
        o.separability.max_atoms = s.value("max_atoms", o.separability.max_atoms);
        o.separability.tolerance = s.value("tolerance", o.separability.tolerance);
        o.separability.restarts = s.value("restarts", o.separability.restarts);
        o.separability.alternations = s.value("alternations", o.separability.alternations);
    }
    o.separability.seed = seed ^ 0x9e3779b97f4a7c15ULL;
    return o;
}

struct Entropies {
    double s_g, s_e, s_b;
};

Entropies partition_entropies(const DensityMatrix& rho)
{
    return {von_neumann_entropy(rho.reduced({0})).bits, von_neumann_entropy(rho.reduced({1})).bits,
            von_neumann_entropy(rho.reduced({2})).bits};
}

// Checks a certificate against a state parsed back from its serialized form:
// witnesses are recomputed and every stored decomposition is rebuilt and
// compared in trace norm.
void certificate_checks(ReportBuilder& b, const SearchResult& res, double target, double separability_tolerance)
{
    const PartitionCertificate& cert = res.certificate;
    b.bounded("negativity_reaches_target", std::max(0.0, target - cert.negativity_g_vs_eb), 0.0);
    b.bounded("e_cut_ppt", std::max(0.0, -cert.ppt_gap_e_cut), kPptCheckTolerance);
    b.bounded("b_cut_ppt", std::max(0.0, -cert.ppt_gap_b_cut), kPptCheckTolerance);
    b.holds("decompositions_present",
            cert.separable_decomposition_e_cut.has_value() && cert.separable_decomposition_b_cut.has_value());
    b.bounded("decomposition_reconstruction", cert.reconstruction_error_trace_norm, separability_tolerance);

    const DensityMatrix parsed = density_matrix_from_json(Json::parse(canonical_dump(to_json(res.state))));
    const PartitionCertificate reparsed = partition_certificate_from_json(
        Json::parse(canonical_dump(to_json(cert))));
    const double witness_residual = std::max({std::abs(negativity(parsed, 0) - reparsed.negativity_g_vs_eb),
                                              std::abs(ppt_gap(parsed, 1) - reparsed.ppt_gap_e_cut),
                                              std::abs(ppt_gap(parsed, 2) - reparsed.ppt_gap_b_cut)});
    b.bounded("recertified_witnesses", witness_residual, kPptCheckTolerance);

    double rebuild = 0.0;
    double weight_defect = 0.0;
    for (const auto* d : {&reparsed.separable_decomposition_e_cut, &reparsed.separable_decomposition_b_cut}) {
        if (!d->has_value()) {
            continue;
        }
        rebuild = std::max(rebuild, trace_norm((*d)->reconstruct(parsed.dims()) - parsed.matrix()));
        double sum = 0.0;
        bool positive = true;
        for (const auto& term : (*d)->terms) {
            sum += term.weight;
            positive = positive && term.weight > 0.0;
        }
        weight_defect = std::max(weight_defect, positive ? std::abs(sum - 1.0) : 1.0);
    }
    b.bounded("recertified_reconstruction", rebuild, separability_tolerance);
    b.bounded("decomposition_weights_normalized", weight_defect, kWeightSumTolerance);
}

void search_outputs(ReportBuilder& b, const SearchResult& res)
{
    const PartitionCertificate& cert = res.certificate;
    b.out("found", 1.0, "1");
    b.out("negativity_g_vs_eb", cert.negativity_g_vs_eb, "1");
    b.out("ppt_gap_e_cut", cert.ppt_gap_e_cut, "1");
    b.out("ppt_gap_b_cut", cert.ppt_gap_b_cut, "1");
    b.out("reconstruction_error_trace_norm", cert.reconstruction_error_trace_norm, "1");
    b.out("evaluations", static_cast<double>(res.frontier.evaluations), "count");
    b.out("ppt_admissible", static_cast<double>(res.frontier.ppt_admissible), "count");
    b.out("best_negativity", res.frontier.best_negativity, "1");
    b.out("certification_attempts", static_cast<double>(res.frontier.certification_attempts), "count");
    Json& a = b.report().artifacts;
    a["state"] = to_json(res.state);
    a["certificate"] = to_json(cert);
    a["member"] = to_json(res.member);
    a["frontier"] = to_json(res.frontier);
}

void run_state_search(const ScenarioConfig& c, ReportBuilder& b)
{
    const Json& p = c.params;
    const double target = p.at("target_negativity").get<double>();
    const SearchOptions options = search_options(p, c.seed);
    b.out("target_negativity", target, "1");
    try {
        const SearchResult res = search_gravity_state(target, c.seed, options);
        search_outputs(b, res);
        const Entropies s = partition_entropies(res.state);
        b.out("s_g", s.s_g, "bits");
        b.out("s_e", s.s_e, "bits");
        b.out("s_b", s.s_b, "bits");
        certificate_checks(b, res, target, options.separability.tolerance);
    } catch (const SearchExhaustedError& e) {
        const SearchFrontier& f = e.frontier();
        b.out("found", 0.0, "1");
        b.out("evaluations", static_cast<double>(f.evaluations), "count");
        b.out("ppt_admissible", static_cast<double>(f.ppt_admissible), "count");
        b.out("best_negativity", f.best_negativity, "1");
        b.out("certification_attempts", static_cast<double>(f.certification_attempts), "count");
        b.report().artifacts["frontier"] = to_json(f);
        b.bounded("negativity_reaches_target", target - f.best_negativity, 0.0);
        b.note(std::string("search exhausted: ") + e.detail());
    }
}

// ---------------------------------------------------------------------------
// Geometry

void regulator_outputs(ReportBuilder& b, const RegulatorScheme& scheme)
{
    const RegulatorReport rr = validate_regulators(scheme);
    b.out("cutoff_ratio", rr.cutoff_ratio, "1");
    b.out("geometry_ratio", rr.geometry_ratio, "1");
    b.holds("regulator_separation", rr.pass);
    b.report().artifacts["regulators"] = to_json(rr);
}

void geometry_outputs(ReportBuilder& b, const CauchyGeometry& g, int d)
{
    const std::string unit = area_unit(d);
    b.out("area_g", g.area_g, unit);
    b.out("area_g_prime", g.area_g_prime, unit);
    b.out("horizon_l", g.horizon_l, unit);
    b.out("horizon_l_prime", g.horizon_l_prime, unit);
    b.out("delta_area", g.delta_area(), unit);
    b.holds("cauchy_area_grows", g.area_g_prime > g.area_g);
    b.holds("horizon_area_grows", g.horizon_l_prime > g.horizon_l);
    b.holds("entangling_surface_grows", g.entangling_sigma_prime > g.entangling_sigma);
    b.report().artifacts["geometry"] = to_json(g);
}

// Susskind-Uglum, Bekenstein-Hawking with 1/G := c0_tilde / delta^{d-2}, and the
// leading series term c0 (tau/delta)^{d-2} with tau^{d-2} = A.
double bridge_residual(double area, const RegulatorScheme& scheme)
{
    const double su = susskind_uglum_entropy(area, scheme);
    const double bh = bekenstein_hawking_delta(area, 1.0 / inverse_newton_increment(scheme));
    RegulatorScheme series = scheme;
    series.c2 = 0.0;
    series.tau = std::pow(area, 1.0 / static_cast<double>(scheme.d - 2));
    const double leading = area > 0.0 ? geometric_entropy_series(series) : 0.0;
    return std::max(std::abs(su - bh), std::abs(su - leading)) / std::max(1.0, std::abs(su));
}

bool bridge_applies(const RegulatorScheme& s) { return std::abs(s.c0_tilde - 4.0 * s.c0) <= 1e-12 * s.c0_tilde; }

void run_geometry(const ScenarioConfig& c, ReportBuilder& b)
{
    const Json& p = c.params;
    const RegulatorScheme scheme = regulator_scheme_from_json(p.at("scheme"));
    regulator_outputs(b, scheme);
    b.out("planck_scale", planck_scale(scheme.d), "m^2");
    if (!planck_scale_consistent(scheme.d)) {
        b.note("planck_scale uses 8 pi G hbar / c^3 as written, which is dimensionally consistent only for d = 4");
    }
    b.out("series_entropy", geometric_entropy_series(scheme), "bits");
    b.note("area laws keep leading terms only; series keeps the c0 and c2 terms");

    if (p.contains("entropies")) {
        std::vector<double> s = p.at("entropies").get<std::vector<double>>();
        double worst = 0.0;
        for (double x : s) {
            for (AreaRegime regime : {AreaRegime::Regulated, AreaRegime::GeomScale}) {
                const double back = entropy_from_area(area_from_entropy(x, scheme, regime), scheme, regime);
                worst = std::max(worst, std::abs(back - x) / std::max(1.0, x));
            }
        }
        b.out("round_trip_error", worst, "1");
        b.residual("area_entropy_round_trip", worst);
        std::sort(s.begin(), s.end());
        bool monotone = true;
        for (std::size_t i = 1; i < s.size(); ++i) {
            if (s[i] > s[i - 1]) {
                for (AreaRegime regime : {AreaRegime::Regulated, AreaRegime::GeomScale}) {
                    monotone = monotone && area_from_entropy(s[i], scheme, regime) >
                                               area_from_entropy(s[i - 1], scheme, regime);
                }
            }
        }
        b.holds("area_monotone_in_entropy", monotone);
        if (bridge_applies(scheme)) {
            double bridge = 0.0;
            for (double x : s) {
                bridge = std::max(bridge, bridge_residual(susskind_uglum_area(x, scheme), scheme));
            }
            b.residual("susskind_uglum_bekenstein_hawking_bridge", bridge);
        }
    }

    if (p.contains("ledger")) {
        const TransferOutcome o = apply_transfer(entropy_ledger_from_json(p.at("ledger")));
        b.out("delta_s_g", o.delta_s_g, "bits");
        const CauchyGeometry g = expansion_delta(o, scheme);
        geometry_outputs(b, g, scheme.d);
    }

    if (p.contains("curve")) {
        const Json& cv = p.at("curve");
        const double lo = cv.at("s_min").get<double>();
        const double hi = cv.at("s_max").get<double>();
        const long n = cv.at("points").get<long>();
        Json rows = Json::array();
        for (long i = 0; i < n; ++i) {
            const double s = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
            rows.push_back(Json::array({s, area_from_entropy(s, scheme, AreaRegime::Regulated),
                                        area_from_entropy(s, scheme, AreaRegime::GeomScale)}));
        }
        b.report().artifacts["curve"] =
            Json{{"columns", Json::array({"entropy_bits", "area_regulated", "area_geom_scale"})},
                 {"unit", area_unit(scheme.d)},
                 {"rows", std::move(rows)}};
    }
}

// ---------------------------------------------------------------------------
// Horizon

SampledField field_from_json(const Json& j)
{
    if (j.contains("csv")) {
        return read_sampled_field_csv(j.at("csv").get<std::string>());
    }
    if (j.contains("profile")) {
        std::vector<GridAxis> axes;
        for (const auto& a : j.at("axes")) {
            axes.push_back(GridAxis{a.at("origin").get<double>(), a.at("spacing").get<double>(),
                                    a.at("count").get<long>()});
        }
        const std::string profile = j.at("profile").get<std::string>();
        const double amp = j.value("amplitude", 1.0);
        const double width = j.value("width", 1.0);
        return SampledField::from_function(std::move(axes), [&](std::span<const double> x) {
            if (profile == "constant") {
                return amp;
            }
            if (profile == "linear") {
                return amp * x[0];
            }
            if (profile == "gaussian") {
                const double u = x[0] / width;
                return amp * std::exp(-u * u);
            }
            return amp * std::sin(x[0] / width);
        });
    }
    return sampled_field_from_json(j);
}

HorizonKinematics kinematics_from_json(const Json& p)
{
    HorizonKinematics k;
    if (p.contains("kinematics")) {
        const Json& j = p.at("kinematics");
        k.kappa = j.value("kappa", k.kappa);
        k.lambda_affine = j.value("lambda_affine", k.lambda_affine);
        k.area_element_gamma = j.value("area_element_gamma", k.area_element_gamma);
        k.proportionality_c = j.value("proportionality_c", k.proportionality_c);
        k.newton_g = j.value("newton_g", k.newton_g);
    }
    return k;
}

bool nonnegative(const SampledField& f)
{
    return std::all_of(f.values().begin(), f.values().end(), [](double v) { return v >= 0.0; });
}

void run_horizon(const ScenarioConfig& c, ReportBuilder& b)
{
    const Json& p = c.params;
    const HorizonKinematics kin = kinematics_from_json(p);
    const TruncationPolicy policy{p.value("require_decay", true)};
    b.out("unruh_temperature", unruh_kappa_temperature(kin.kappa), "K");
    b.out("proportionality_c", kin.proportionality_c, "bits/area");
    b.note("the proportionality constant C has no stated units; it is reported as bits per area");

    if (p.contains("t00")) {
        const SampledField f = field_from_json(p.at("t00"));
        b.out("boost_integral", boost_integral(f), "field x length^" + std::to_string(f.rank() + 1));
    }
    if (p.contains("hamiltonian_diagonal")) {
        const auto diag = p.at("hamiltonian_diagonal").get<std::vector<double>>();
        ComplexMatrix h = ComplexMatrix::Zero(static_cast<Eigen::Index>(diag.size()),
                                              static_cast<Eigen::Index>(diag.size()));
        for (std::size_t i = 0; i < diag.size(); ++i) {
            h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag[i];
        }
        const double cst = unit_trace_constant(h);
        b.out("unit_trace_constant", cst, "nats");
        double trace = 0.0;
        for (double e : diag) {
            trace += std::exp(-(e + cst));
        }
        b.residual("unit_trace", std::abs(trace - 1.0));
    }
    if (p.contains("energy_flux")) {
        const SampledField f = field_from_json(p.at("energy_flux"));
        const double de = horizon_energy_flux(f, kin);
        b.out("energy_flux", de, "energy");
        if (nonnegative(f)) {
            b.holds("energy_flux_sign", kin.lambda_affine < 0.0 || de <= 0.0);
        }
    }
    if (p.contains("ricci")) {
        const SampledField f = field_from_json(p.at("ricci"));
        const double dd = ricci_area_change(f, kin.lambda_affine);
        b.out("ricci_area_change", dd, "area");
        b.out("ricci_entropy_change", entropy_from_area_change(dd, kin.proportionality_c), "bits");
        const double de = horizon_energy_flux(f, kin);
        b.residual("flux_ricci_kernel_consistency",
                   std::abs(de - kin.kappa * kin.area_element_gamma * dd) / std::max(1.0, std::abs(de)));
    }
    if (p.contains("perturbation")) {
        const double l0 = p.value("l0", 0.0);
        const SampledField f = field_from_json(p.at("perturbation"));
        const double l = perturbed_horizon_area(l0, f, kin.newton_g, policy);
        b.out("perturbed_area", l, "area");
        b.out("perturbation_area_change", l - l0, "area");
    }
    if (p.contains("flat_flux")) {
        const SampledField f = field_from_json(p.at("flat_flux"));
        const double dd = flat_flux_area_change(f, kin.newton_g, policy);
        const double ds = entropy_from_area_change(dd, kin.proportionality_c);
        b.out("flat_flux_area_change", dd, "area");
        b.out("flux_entropy_change", ds, "bits");
        if (nonnegative(f)) {
            b.holds("flat_flux_sign", dd >= 0.0 && (kin.proportionality_c <= 0.0 || ds >= 0.0));
        }
    }
}

// ---------------------------------------------------------------------------
// Pipeline

void run_pipeline(const ScenarioConfig& c, ReportBuilder& b)
{
    const Json& p = c.params;
    const Json& sp = p.at("search");
    const double target = sp.at("target_negativity").get<double>();
    const SearchOptions options = search_options(sp, c.seed);
    const SearchResult res = search_gravity_state(target, c.seed, options);
    b.out("target_negativity", target, "1");
    search_outputs(b, res);
    certificate_checks(b, res, target, options.separability.tolerance);

    const Entropies s = partition_entropies(res.state);
    const Json& tp = p.at("transfer");
    double s_0 = 0.0;
    std::optional<double> t_0;
    if (tp.at("s_0").is_number()) {
        s_0 = tp.at("s_0").get<double>();
    } else {
        const auto diag = tp.at("s_0").at("h0_diagonal").get<std::vector<double>>();
        ComplexMatrix h0 = ComplexMatrix::Zero(static_cast<Eigen::Index>(diag.size()),
                                               static_cast<Eigen::Index>(diag.size()));
        for (std::size_t i = 0; i < diag.size(); ++i) {
            h0(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag[i];
        }
        const RindlerVacuum vac = rindler_vacuum(h0, tp.at("s_0").at("acceleration").get<double>());
        s_0 = von_neumann_entropy(vac.state).bits;
        t_0 = vac.temperature;
    }

    EntropyLedger ledger{s.s_g, s.s_e, s.s_b, s.s_e, s.s_b, s_0};
    const std::string mode = tp.value("mode", std::string("fractions"));
    TransferOutcome o;
    if (mode == "max") {
        o = max_transfer(ledger);
    } else {
        ledger.s_e_star = tp.value("star_fraction_e", 1.0) * s.s_e;
        ledger.s_b_star = tp.value("star_fraction_b", 1.0) * s.s_b;
        TransferOptions topt;
        topt.strict_monotonicity = tp.value("strict_monotonicity", false);
        o = apply_transfer(ledger, topt);
    }
    transfer_outputs_and_checks(b, o);
    b.report().artifacts["outcome"] = to_json(o);

    // Entropies recomputed from the serialized state must match the ledger.
    const DensityMatrix parsed = density_matrix_from_json(Json::parse(canonical_dump(to_json(res.state))));
    const Entropies again = partition_entropies(parsed);
    b.bounded("ledger_matches_state",
              std::max({std::abs(again.s_g - o.ledger.s_g), std::abs(again.s_e - o.ledger.s_e),
                        std::abs(again.s_b - o.ledger.s_b)}),
              kLedgerMatchTolerance);

    if (t_0) {
        thermo_outputs_and_checks(b, o, *t_0, *t_0, *t_0, PhysicalConstants{}.k_b);
    }

    const RegulatorScheme scheme = regulator_scheme_from_json(p.at("scheme"));
    regulator_outputs(b, scheme);
    const CauchyGeometry g = expansion_delta(o, scheme);
    geometry_outputs(b, g, scheme.d);

    if (p.contains("horizon")) {
        const Json& hp = p.at("horizon");
        const HorizonKinematics kin = kinematics_from_json(hp);
        const TruncationPolicy policy{hp.value("require_decay", true)};
        const double dd = flat_flux_area_change(field_from_json(hp.at("flat_flux")), kin.newton_g, policy);
        b.out("flat_flux_area_change", dd, "area");
        if (dd != 0.0) {
            const double cst = o.delta_s_g / dd;
            b.out("proportionality_c", cst, "bits/area");
            b.residual("area_entropy_closure",
                       std::abs(entropy_from_area_change(dd, cst) - o.delta_s_g) / std::max(1.0, o.delta_s_g));
        } else {
            b.note("flux integral vanished; proportionality constant undefined");
        }
    }
}

// ---------------------------------------------------------------------------

void set_path(Json& root, const std::string& path, const Json& value)
{
    Json* node = &root;
    std::stringstream ss(path);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) {
        if (part.empty()) {
            throw Error(ErrorCode::ConfigInvalid, "sweep path '" + path + "' has an empty component");
        }
        parts.push_back(part);
    }
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        Json& next = (*node)[parts[i]];
        if (next.is_null()) {
            next = Json::object();
        }
        if (!next.is_object()) {
            throw Error(ErrorCode::ConfigInvalid, "sweep path '" + path + "' crosses a non-object");
        }
        node = &next;
    }
    (*node)[parts.back()] = value;
}

std::string csv_cell(const Json& v)
{
    if (v.is_number_float()) {
        return format_double(v.get<double>());
    }
    if (v.is_string()) {
        return v.get<std::string>();
    }
    return canonical_dump(v);
}

std::string csv_row(const Report& r, const std::vector<std::string>& prefix)
{
    std::string line;
    for (const auto& cell : prefix) {
        line += cell + ",";
    }
    for (const auto& col : csv_columns(r.kind)) {
        const auto it = r.outputs.find(col);
        if (it != r.outputs.end()) {
            line += format_double(it->second.value);
        }
        line += ",";
    }
    line += r.all_pass() ? "true" : "false";
    return line + "\n";
}

std::string csv_header(ScenarioKind kind, const std::vector<std::string>& prefix)
{
    std::string line;
    for (const auto& p : prefix) {
        line += p + ",";
    }
    for (const auto& col : csv_columns(kind)) {
        line += col + ",";
    }
    return line + "all_pass\n";
}

} // namespace

std::string_view artifact_version() { return "0.1.0"; }

std::string to_string(ScenarioKind kind)
{
    switch (kind) {
    case ScenarioKind::Transfer: return "transfer";
    case ScenarioKind::StateSearch: return "state_search";
    case ScenarioKind::Geometry: return "geometry";
    case ScenarioKind::Horizon: return "horizon";
    case ScenarioKind::Pipeline: return "pipeline";
    }
    return "transfer";
}

ScenarioKind scenario_kind_from_string(const std::string& name)
{
    for (auto k : {ScenarioKind::Transfer, ScenarioKind::StateSearch, ScenarioKind::Geometry, ScenarioKind::Horizon,
                   ScenarioKind::Pipeline}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw Error(ErrorCode::ConfigInvalid, "kind: unknown scenario kind '" + name + "'");
}

std::string to_string(ReportFormat format) { return format == ReportFormat::Json ? "json" : "csv"; }

ReportFormat report_format_from_string(const std::string& name)
{
    if (name == "json") {
        return ReportFormat::Json;
    }
    if (name == "csv") {
        return ReportFormat::Csv;
    }
    throw Error(ErrorCode::ConfigInvalid, "format: expected json or csv, got '" + name + "'");
}

Json ScenarioConfig::to_json() const
{
    Json j{{"kind", to_string(kind)}, {"seed", seed}, {"tolerance", tolerance}, {"params", params}};
    if (output_path || format != ReportFormat::Json) {
        j["output"] = Json{{"format", to_string(format)}};
        if (output_path) {
            j["output"]["path"] = *output_path;
        }
    }
    if (!sweep.empty()) {
        j["sweep"] = sweep;
    }
    return j;
}

std::vector<std::string> config_diagnostics(const Json& config)
{
    return validate_against_schema(config, scenario_schema());
}

ScenarioConfig parse_config(const Json& config)
{
    const auto diagnostics = config_diagnostics(config);
    if (!diagnostics.empty()) {
        std::string message = "invalid scenario config";
        for (const auto& d : diagnostics) {
            message += "\n  " + d;
        }
        throw Error(ErrorCode::ConfigInvalid, message);
    }
    ScenarioConfig c;
    c.kind = scenario_kind_from_string(config.at("kind").get<std::string>());
    c.seed = config.at("seed").get<std::uint64_t>();
    c.tolerance = config.at("tolerance").get<double>();
    c.params = config.at("params");
    if (config.contains("output")) {
        if (config.at("output").contains("path")) {
            c.output_path = config.at("output").at("path").get<std::string>();
        }
        c.format = report_format_from_string(config.at("output").value("format", std::string("json")));
    }
    if (config.contains("sweep")) {
        c.sweep = config.at("sweep");
    }
    return c;
}

ScenarioConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open " + path);
    }
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::ConfigInvalid, path + ": " + e.what());
    }
    return parse_config(j);
}

bool Report::all_pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const InvariantCheck& c) { return c.pass; });
}

std::vector<std::string> Report::failures() const
{
    std::vector<std::string> out;
    for (const auto& c : checks) {
        if (!c.pass) {
            out.push_back(c.name + ": residual " + format_double(c.residual) + " exceeds tolerance " +
                          format_double(c.tolerance));
        }
    }
    return out;
}

Json Report::to_json(bool include_wall_time) const
{
    Json outs = Json::object();
    for (const auto& [name, q] : outputs) {
        outs[name] = Json{{"value", q.value}, {"unit", q.unit}};
    }
    Json cks = Json::array();
    for (const auto& c : checks) {
        cks.push_back(Json{{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    }
    Json j{{"version", std::string(artifact_version())},
           {"kind", to_string(kind)},
           {"config_echo", config_echo},
           {"outputs", std::move(outs)},
           {"artifacts", artifacts},
           {"checks", std::move(cks)},
           {"notes", notes},
           {"all_pass", all_pass()}};
    if (include_wall_time) {
        j["wall_time_seconds"] = wall_time_seconds;
    }
    return j;
}

Report report_from_json(const Json& j)
{
    Report r;
    r.kind = scenario_kind_from_string(j.at("kind").get<std::string>());
    r.config_echo = j.at("config_echo");
    for (const auto& [name, q] : j.at("outputs").items()) {
        r.outputs[name] = {q.at("value").is_null() ? std::nan("") : q.at("value").get<double>(),
                           q.at("unit").get<std::string>()};
    }
    r.artifacts = j.at("artifacts");
    for (const auto& c : j.at("checks")) {
        r.checks.push_back({c.at("name").get<std::string>(), c.at("residual").get<double>(),
                            c.at("tolerance").get<double>(), c.at("pass").get<bool>()});
    }
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.wall_time_seconds = j.value("wall_time_seconds", 0.0);
    return r;
}

Report run_scenario(const ScenarioConfig& config)
{
    const auto start = std::chrono::steady_clock::now();
    Report report;
    report.kind = config.kind;
    report.config_echo = config.to_json();
    ReportBuilder b(report, config.tolerance);
    try {
        switch (config.kind) {
        case ScenarioKind::Transfer: run_transfer(config, b); break;
        case ScenarioKind::StateSearch: run_state_search(config, b); break;
        case ScenarioKind::Geometry: run_geometry(config, b); break;
        case ScenarioKind::Horizon: run_horizon(config, b); break;
        case ScenarioKind::Pipeline: run_pipeline(config, b); break;
        }
    } catch (const Error& e) {
        throw e.with_context(to_string(config.kind) + " scenario");
    }
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::vector<Json> sweep_grid(const ScenarioConfig& config)
{
    std::vector<std::string> keys;
    for (const auto& [key, values] : config.sweep.items()) {
        keys.push_back(key);
    }
    std::sort(keys.begin(), keys.end());
    std::vector<Json> grid;
    if (keys.empty()) {
        return grid;
    }
    std::size_t total = 1;
    for (const auto& k : keys) {
        total *= config.sweep.at(k).size();
    }
    for (std::size_t flat = 0; flat < total; ++flat) {
        Json assignment = Json::object();
        std::size_t rem = flat;
        for (std::size_t i = keys.size(); i-- > 0;) {
            const Json& values = config.sweep.at(keys[i]);
            assignment[keys[i]] = values[rem % values.size()];
            rem /= values.size();
        }
        grid.push_back(std::move(assignment));
    }
    return grid;
}

ScenarioConfig apply_assignment(const ScenarioConfig& config, const Json& assignment)
{
    Json j = config.to_json();
    j.erase("sweep");
    for (const auto& [path, value] : assignment.items()) {
        set_path(j, path, value);
    }
    try {
        return parse_config(j);
    } catch (const Error& e) {
        throw e.with_context("sweep point " + canonical_dump(assignment));
    }
}

unsigned default_sweep_threads()
{
    if (const char* env = std::getenv("CAUSENTROPY_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) {
            return static_cast<unsigned>(n);
        }
        throw Error(ErrorCode::ConfigInvalid, "CAUSENTROPY_THREADS must be a positive integer");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SweepPoint> run_sweep(const ScenarioConfig& config, unsigned threads)
{
    const std::vector<Json> grid = sweep_grid(config);
    std::vector<ScenarioConfig> configs;
    configs.reserve(grid.size());
    for (const auto& a : grid) {
        configs.push_back(apply_assignment(config, a));
    }
    std::vector<std::optional<Report>> reports(grid.size());
    std::vector<std::exception_ptr> errors(grid.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            try {
                reports[i] = run_scenario(configs[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n_threads =
        static_cast<unsigned>(std::min<std::size_t>(threads ? threads : default_sweep_threads(),
                                                    std::max<std::size_t>(grid.size(), 1)));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n_threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    pool.clear();

    std::vector<SweepPoint> points;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (errors[i]) {
            std::rethrow_exception(errors[i]);
        }
        points.push_back({grid[i], std::move(*reports[i])});
    }
    return points;
}

std::vector<std::string> csv_columns(ScenarioKind kind)
{
    switch (kind) {
    case ScenarioKind::Transfer:
        return {"s_g", "s_e", "s_b", "s_e_star", "s_b_star", "s_0", "s_g_prime", "s_e_prime", "s_b_prime",
                "delta_s_e_star", "delta_s_b_star", "delta_s_g", "delta_s_tot", "conservation_residual",
                "e_e_star", "e_b_star", "delta_e_g"};
    case ScenarioKind::StateSearch:
        return {"target_negativity", "found", "negativity_g_vs_eb", "ppt_gap_e_cut", "ppt_gap_b_cut",
                "reconstruction_error_trace_norm", "evaluations", "ppt_admissible", "best_negativity",
                "certification_attempts", "s_g", "s_e", "s_b"};
    case ScenarioKind::Geometry:
        return {"cutoff_ratio", "geometry_ratio", "planck_scale", "series_entropy", "round_trip_error", "delta_s_g",
                "area_g", "area_g_prime", "horizon_l", "horizon_l_prime", "delta_area"};
    case ScenarioKind::Horizon:
        return {"boost_integral", "unit_trace_constant", "energy_flux", "ricci_area_change", "ricci_entropy_change",
                "perturbed_area", "perturbation_area_change", "flat_flux_area_change", "flux_entropy_change",
                "unruh_temperature"};
    case ScenarioKind::Pipeline:
        return {"negativity_g_vs_eb", "s_g", "s_e", "s_b", "s_e_star", "s_b_star", "s_0", "s_g_prime", "s_e_prime",
                "s_b_prime", "delta_s_g", "delta_s_tot", "conservation_residual", "area_g", "area_g_prime",
                "delta_area", "flat_flux_area_change", "proportionality_c"};
    }
    return {};
}

std::string emit_report(const Report& report, ReportFormat format)
{
    if (format == ReportFormat::Json) {
        return canonical_dump(report.to_json()) + "\n";
    }
    return csv_header(report.kind, {}) + csv_row(report, {});
}

std::string emit_sweep(const ScenarioConfig& config, const std::vector<SweepPoint>& points, ReportFormat format)
{
    std::vector<std::string> keys;
    for (const auto& [key, values] : config.sweep.items()) {
        keys.push_back(key);
    }
    std::sort(keys.begin(), keys.end());
    if (format == ReportFormat::Json) {
        Json reports = Json::array();
        for (const auto& p : points) {
            reports.push_back(Json{{"assignment", p.assignment}, {"report", p.report.to_json()}});
        }
        return canonical_dump(Json{{"version", std::string(artifact_version())},
                                   {"config_echo", config.to_json()},
                                   {"points", std::move(reports)}}) +
               "\n";
    }
    std::string out = csv_header(config.kind, keys);
    for (const auto& p : points) {
        std::vector<std::string> prefix;
        for (const auto& k : keys) {
            prefix.push_back(csv_cell(p.assignment.at(k)));
        }
        out += csv_row(p.report, prefix);
    }
    return out;
}

std::string emit_curve_csv(const Report& report)
{
    if (!report.artifacts.contains("curve")) {
        return {};
    }
    const Json& curve = report.artifacts.at("curve");
    std::string out;
    const auto& cols = curve.at("columns");
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out += (i ? "," : "") + cols[i].get<std::string>();
    }
    out += "\n";
    for (const auto& row : curve.at("rows")) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += (i ? "," : "") + format_double(row[i].get<double>());
        }
        out += "\n";
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot write " + path);
    }
    out << content;
    if (!out) {
        throw Error(ErrorCode::IoError, "write failed for " + path);
    }
}

} // namespace causentropy
