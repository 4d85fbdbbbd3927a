#include "causentropy/serialize.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "causentropy/error.hpp"

namespace causentropy {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); }

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        bad(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

double number(const Json& j, const char* key)
{
    const Json& v = field(j, key);
    if (!v.is_number()) {
        bad(std::string("field '") + key + "' must be a number");
    }
    return v.get<double>();
}

double number_or(const Json& j, const char* key, double fallback)
{
    return j.contains(key) ? number(j, key) : fallback;
}

Json rows(const Eigen::MatrixXd& m)
{
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c));
        }
        out.push_back(std::move(row));
    }
    return out;
}

Eigen::MatrixXd real_rows(const Json& j, const char* what)
{
    if (!j.is_array() || j.empty()) {
        bad(std::string(what) + " must be a non-empty array of rows");
    }
    const auto n_rows = static_cast<Eigen::Index>(j.size());
    const auto n_cols = static_cast<Eigen::Index>(j.front().size());
    Eigen::MatrixXd m(n_rows, n_cols);
    for (Eigen::Index r = 0; r < n_rows; ++r) {
        const Json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n_cols) {
            bad(std::string(what) + " rows must have equal length");
        }
        for (Eigen::Index c = 0; c < n_cols; ++c) {
            m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
        }
    }
    return m;
}

void dump_number(double x, std::string& out)
{
    if (!std::isfinite(x)) {
        out += "null";
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos) {
        s += ".0";
    }
    out += s;
}

void dump(const Json& j, std::string& out)
{
    switch (j.type()) {
    case Json::value_t::object: {
        out += '{';
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            if (!first) {
                out += ',';
            }
            first = false;
            out += Json(key).dump();
            out += ':';
            dump(value, out);
        }
        out += '}';
        break;
    }
    case Json::value_t::array: {
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) {
                out += ',';
            }
            dump(j[i], out);
        }
        out += ']';
        break;
    }
    case Json::value_t::number_float:
        dump_number(j.get<double>(), out);
        break;
    default:
        out += j.dump();
    }
}

} // namespace

Json to_json(const ComplexMatrix& m)
{
    return Json{{"re", rows(m.real())}, {"im", rows(m.imag())}};
}

ComplexMatrix complex_matrix_from_json(const Json& j)
{
    const Eigen::MatrixXd re = real_rows(field(j, "re"), "re");
    const Eigen::MatrixXd im = real_rows(field(j, "im"), "im");
    if (re.rows() != im.rows() || re.cols() != im.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "re and im parts differ in shape");
    }
    ComplexMatrix m(re.rows(), re.cols());
    m.real() = re;
    m.imag() = im;
    return m;
}

Json to_json(const DensityMatrix& rho)
{
    Json j = to_json(rho.matrix());
    j["dims"] = rho.dims().values();
    j["labels"] = rho.labels();
    return j;
}

DensityMatrix density_matrix_from_json(const Json& j)
{
    const auto dims = field(j, "dims").get<std::vector<int>>();
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        labels = j.at("labels").get<std::vector<std::string>>();
    }
    return DensityMatrix(complex_matrix_from_json(j), Dims(dims), std::move(labels));
}

Json to_json(const FamilyMember& member)
{
    return Json{{"kind", to_string(member.kind)},
                {"theta", member.theta},
                {"weights", member.weights},
                {"noise", member.noise},
                {"d_g", member.d_g}};
}

FamilyMember family_member_from_json(const Json& j)
{
    FamilyMember member;
    member.kind = family_kind_from_string(field(j, "kind").get<std::string>());
    member.theta = number_or(j, "theta", 0.0);
    member.weights = field(j, "weights").get<std::vector<double>>();
    member.noise = number(j, "noise");
    member.d_g = j.contains("d_g") ? j.at("d_g").get<int>() : (member.kind == FamilyKind::Flagged ? 2 : 4);
    return member;
}

Json to_json(const SeparableDecomposition& decomposition)
{
    Json terms = Json::array();
    for (const auto& term : decomposition.terms) {
        terms.push_back(Json{{"weight", term.weight}, {"local", to_json(term.local)}, {"rest", to_json(term.rest)}});
    }
    return Json{{"cut", decomposition.cut},
                {"terms", std::move(terms)},
                {"trace_norm_error", decomposition.trace_norm_error},
                {"iterations", decomposition.iterations},
                {"converged", decomposition.converged}};
}

SeparableDecomposition separable_decomposition_from_json(const Json& j)
{
    SeparableDecomposition d;
    d.cut = field(j, "cut").get<int>();
    for (const auto& term : field(j, "terms")) {
        d.terms.push_back(DecompositionTerm{number(term, "weight"), complex_matrix_from_json(field(term, "local")),
                                            complex_matrix_from_json(field(term, "rest"))});
    }
    d.trace_norm_error = number(j, "trace_norm_error");
    d.iterations = field(j, "iterations").get<int>();
    d.converged = field(j, "converged").get<bool>();
    return d;
}

Json to_json(const PartitionCertificate& certificate)
{
    Json j{{"negativity_g_vs_eb", certificate.negativity_g_vs_eb},
           {"ppt_gap_e_cut", certificate.ppt_gap_e_cut},
           {"ppt_gap_b_cut", certificate.ppt_gap_b_cut},
           {"reconstruction_error_trace_norm", certificate.reconstruction_error_trace_norm}};
    j["separable_decomposition_e_cut"] =
        certificate.separable_decomposition_e_cut ? to_json(*certificate.separable_decomposition_e_cut) : Json();
    j["separable_decomposition_b_cut"] =
        certificate.separable_decomposition_b_cut ? to_json(*certificate.separable_decomposition_b_cut) : Json();
    return j;
}

PartitionCertificate partition_certificate_from_json(const Json& j)
{
    PartitionCertificate c;
    c.negativity_g_vs_eb = number(j, "negativity_g_vs_eb");
    c.ppt_gap_e_cut = number(j, "ppt_gap_e_cut");
    c.ppt_gap_b_cut = number(j, "ppt_gap_b_cut");
    c.reconstruction_error_trace_norm = number(j, "reconstruction_error_trace_norm");
    if (j.contains("separable_decomposition_e_cut") && !j.at("separable_decomposition_e_cut").is_null()) {
        c.separable_decomposition_e_cut = separable_decomposition_from_json(j.at("separable_decomposition_e_cut"));
    }
    if (j.contains("separable_decomposition_b_cut") && !j.at("separable_decomposition_b_cut").is_null()) {
        c.separable_decomposition_b_cut = separable_decomposition_from_json(j.at("separable_decomposition_b_cut"));
    }
    return c;
}

Json to_json(const SearchFrontier& frontier)
{
    return Json{{"evaluations", frontier.evaluations},
                {"ppt_admissible", frontier.ppt_admissible},
                {"best_negativity", frontier.best_negativity},
                {"best_member", frontier.best_member ? to_json(*frontier.best_member) : Json()},
                {"certification_attempts", frontier.certification_attempts}};
}

Json to_json(const EntropyLedger& ledger)
{
    return Json{{"s_g", ledger.s_g},           {"s_e", ledger.s_e},           {"s_b", ledger.s_b},
                {"s_e_star", ledger.s_e_star}, {"s_b_star", ledger.s_b_star}, {"s_0", ledger.s_0}};
}

EntropyLedger entropy_ledger_from_json(const Json& j)
{
    return EntropyLedger{number(j, "s_g"),      number(j, "s_e"),      number(j, "s_b"),
                         number(j, "s_e_star"), number(j, "s_b_star"), number(j, "s_0")};
}

Json to_json(const TransferOutcome& o)
{
    return Json{{"ledger", to_json(o.ledger)},
                {"s_g_prime", o.s_g_prime},
                {"s_e_prime", o.s_e_prime},
                {"s_b_prime", o.s_b_prime},
                {"delta_s_e_star", o.delta_s_e_star},
                {"delta_s_b_star", o.delta_s_b_star},
                {"delta_s_g", o.delta_s_g},
                {"delta_s_tot", o.delta_s_tot},
                {"conservation_residual", o.conservation_residual}};
}

Json to_json(const ThermoRecord& r)
{
    return Json{{"t_0", r.t_0},         {"t_e_star", r.t_e_star}, {"t_b_star", r.t_b_star},
                {"t_g", r.t_g},         {"e_e_star", r.e_e_star}, {"e_b_star", r.e_b_star},
                {"delta_e_g", r.delta_e_g}, {"k_b", r.k_b}};
}

Json to_json(const RegulatorScheme& s)
{
    return Json{{"d", s.d},
                {"delta", s.delta},
                {"d_ge", s.d_ge},
                {"d_geom", s.d_geom},
                {"c0_tilde", s.c0_tilde},
                {"c0", s.c0},
                {"c2", s.c2},
                {"tau", s.tau},
                {"planck_factor", s.planck_factor},
                {"separation_factor", s.separation_factor}};
}

RegulatorScheme regulator_scheme_from_json(const Json& j)
{
    RegulatorScheme s;
    if (j.contains("d")) {
        s.d = j.at("d").get<int>();
    }
    s.delta = number_or(j, "delta", s.delta);
    s.d_ge = number_or(j, "d_ge", s.d_ge);
    s.d_geom = number_or(j, "d_geom", s.d_geom);
    s.c0_tilde = number_or(j, "c0_tilde", s.c0_tilde);
    s.c0 = number_or(j, "c0", s.c0);
    s.c2 = number_or(j, "c2", s.c2);
    s.tau = number_or(j, "tau", s.tau);
    s.planck_factor = number_or(j, "planck_factor", s.planck_factor);
    s.separation_factor = number_or(j, "separation_factor", s.separation_factor);
    return s;
}

Json to_json(const RegulatorReport& r)
{
    return Json{{"pass", r.pass},
                {"cutoff_separated", r.cutoff_separated},
                {"geometry_separated", r.geometry_separated},
                {"cutoff_ratio", r.cutoff_ratio},
                {"geometry_ratio", r.geometry_ratio},
                {"separation_factor", r.separation_factor}};
}

Json to_json(const CauchyGeometry& g)
{
    return Json{{"area_g", g.area_g},
                {"area_g_prime", g.area_g_prime},
                {"horizon_l", g.horizon_l},
                {"horizon_l_prime", g.horizon_l_prime},
                {"entangling_sigma", g.entangling_sigma},
                {"entangling_sigma_prime", g.entangling_sigma_prime},
                {"regime", to_string(g.regime)}};
}

Json to_json(const SampledField& field)
{
    Json axes = Json::array();
    for (const auto& axis : field.axes()) {
        axes.push_back(Json{{"origin", axis.origin}, {"spacing", axis.spacing}, {"count", axis.count}});
    }
    return Json{{"axes", std::move(axes)}, {"values", field.values()}};
}

SampledField sampled_field_from_json(const Json& j)
{
    std::vector<GridAxis> axes;
    const Json& axes_json = field(j, "axes");
    if (!axes_json.is_array()) {
        bad("'axes' must be an array");
    }
    for (const auto& a : axes_json) {
        const Json& count = field(a, "count");
        if (!count.is_number_integer()) {
            bad("axis 'count' must be an integer");
        }
        axes.push_back(GridAxis{number(a, "origin"), number(a, "spacing"), count.get<long>()});
    }
    return SampledField(std::move(axes), field(j, "values").get<std::vector<double>>());
}

SampledField sampled_field_from_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorCode::BadGrid, "CSV field is empty");
    }
    const auto n_columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
    if (n_columns < 2) {
        throw Error(ErrorCode::BadGrid, "CSV field needs at least one axis column and a value column");
    }
    const std::size_t rank = n_columns - 1;

    std::vector<std::vector<double>> records;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw Error(ErrorCode::BadGrid, "unparseable CSV cell '" + cell + "'");
            }
        }
        if (row.size() != n_columns) {
            throw Error(ErrorCode::BadGrid, "CSV row has " + std::to_string(row.size()) + " cells, expected " +
                                                std::to_string(n_columns));
        }
        records.push_back(std::move(row));
    }

    std::vector<GridAxis> axes(rank);
    std::vector<std::vector<double>> coordinates(rank);
    for (std::size_t a = 0; a < rank; ++a) {
        std::set<double> distinct;
        for (const auto& r : records) {
            distinct.insert(r[a]);
        }
        coordinates[a].assign(distinct.begin(), distinct.end());
        const auto& c = coordinates[a];
        if (c.size() < 2) {
            throw Error(ErrorCode::BadGrid, "CSV axis " + std::to_string(a) + " has fewer than 2 points");
        }
        const double spacing = (c.back() - c.front()) / static_cast<double>(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) {
            if (std::abs((c[i] - c[i - 1]) - spacing) > 1e-9 * std::max(1.0, std::abs(spacing))) {
                throw Error(ErrorCode::BadGrid, "CSV axis " + std::to_string(a) + " is not uniformly spaced");
            }
        }
        axes[a] = GridAxis{c.front(), spacing, static_cast<long>(c.size())};
    }

    std::size_t total = 1;
    for (const auto& axis : axes) {
        total *= static_cast<std::size_t>(axis.count);
    }
    if (records.size() != total) {
        throw Error(ErrorCode::BadGrid, "CSV grid is incomplete: " + std::to_string(records.size()) + " of " +
                                            std::to_string(total) + " points");
    }
    std::vector<double> values(total);
    std::vector<char> seen(total, 0);
    for (const auto& r : records) {
        std::size_t flat = 0;
        for (std::size_t a = 0; a < rank; ++a) {
            const auto& c = coordinates[a];
            const auto idx = static_cast<std::size_t>(std::lower_bound(c.begin(), c.end(), r[a]) - c.begin());
            flat = flat * static_cast<std::size_t>(axes[a].count) + idx;
        }
        if (seen[flat]) {
            throw Error(ErrorCode::BadGrid, "CSV grid point repeated");
        }
        seen[flat] = 1;
        values[flat] = r[rank];
    }
    return SampledField(std::move(axes), std::move(values));
}

SampledField read_sampled_field_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open " + path);
    }
    return sampled_field_from_csv(in);
}

std::string canonical_dump(const Json& j)
{
    std::string out;
    dump(j, out);
    return out;
}

} // namespace causentropy
