#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "causentropy/entropy.hpp"
#include "causentropy/geometry.hpp"
#include "causentropy/horizon.hpp"
#include "causentropy/scenario.hpp"
#include "causentropy/schema.hpp"
#include "causentropy/serialize.hpp"
#include "causentropy/states.hpp"
#include "causentropy/transfer.hpp"

namespace py = pybind11;
namespace ce = causentropy;

namespace {

// JSON crosses the boundary as text; the Python side loads and dumps it.
ce::Json parse(const std::string& text) { return ce::Json::parse(text); }

std::string dump(const ce::Json& j) { return ce::canonical_dump(j); }

ce::DensityMatrix state(const ce::ComplexMatrix& m, const std::vector<int>& dims)
{
    return ce::DensityMatrix(m, ce::Dims(dims));
}

ce::SampledField field(const py::array_t<double, py::array::c_style | py::array::forcecast>& values,
                       const std::vector<double>& origins, const std::vector<double>& spacings)
{
    const auto rank = static_cast<std::size_t>(values.ndim());
    if (origins.size() != rank || spacings.size() != rank) {
        throw ce::Error(ce::ErrorCode::BadGrid, "one origin and one spacing per array axis required");
    }
    std::vector<ce::GridAxis> axes;
    for (std::size_t a = 0; a < rank; ++a) {
        axes.push_back(ce::GridAxis{origins[a], spacings[a], static_cast<long>(values.shape(static_cast<py::ssize_t>(a)))});
    }
    return ce::SampledField(std::move(axes), std::vector<double>(values.data(), values.data() + values.size()));
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Native core of causentropy.";

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
    error_type.call_once_and_store_result(
        [&]() { return py::object(py::exception<ce::Error>(m, "Error", PyExc_RuntimeError)); });
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const ce::Error& e) {
            const py::tuple args = py::make_tuple(std::string(ce::to_string(e.code())), e.detail());
            PyErr_SetObject(error_type.get_stored().ptr(), args.ptr());
        } catch (const ce::Json::exception& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def("version", [] { return std::string(ce::artifact_version()); });
    m.def("scenario_schema", [] { return dump(ce::scenario_schema()); });
    m.def("config_diagnostics", [](const std::string& config) { return ce::config_diagnostics(parse(config)); });
    m.def(
        "run_scenario",
        [](const std::string& config) {
            const ce::ScenarioConfig c = ce::parse_config(parse(config));
            py::gil_scoped_release release;
            return dump(ce::run_scenario(c).to_json());
        },
        py::arg("config"));
    m.def(
        "run_sweep",
        [](const std::string& config, unsigned threads) {
            const ce::ScenarioConfig c = ce::parse_config(parse(config));
            py::gil_scoped_release release;
            ce::Json out = ce::Json::array();
            for (const auto& point : ce::run_sweep(c, threads)) {
                out.push_back({{"assignment", point.assignment}, {"report", point.report.to_json()}});
            }
            return dump(out);
        },
        py::arg("config"), py::arg("threads") = 0);
    m.def(
        "emit_report",
        [](const std::string& report, const std::string& format) {
            return ce::emit_report(ce::report_from_json(parse(report)), ce::report_format_from_string(format));
        },
        py::arg("report"), py::arg("format") = "json");

    m.def(
        "apply_transfer",
        [](double s_g, double s_e, double s_b, double s_e_star, double s_b_star, double s_0, bool strict) {
            return dump(ce::to_json(ce::apply_transfer({s_g, s_e, s_b, s_e_star, s_b_star, s_0}, {strict})));
        },
        py::arg("s_g"), py::arg("s_e"), py::arg("s_b"), py::arg("s_e_star"), py::arg("s_b_star"), py::arg("s_0"),
        py::arg("strict_monotonicity") = false);

    m.def(
        "von_neumann_entropy",
        [](const ce::ComplexMatrix& rho, const std::vector<int>& dims) {
            return ce::von_neumann_entropy(state(rho, dims)).bits;
        },
        py::arg("rho"), py::arg("dims"));
    m.def(
        "reduced_state",
        [](const ce::ComplexMatrix& rho, const std::vector<int>& dims, const std::vector<int>& keep) {
            return state(rho, dims).reduced(keep).matrix();
        },
        py::arg("rho"), py::arg("dims"), py::arg("keep"));
    m.def(
        "negativity",
        [](const ce::ComplexMatrix& rho, const std::vector<int>& dims, int cut) {
            return ce::negativity(state(rho, dims), cut);
        },
        py::arg("rho"), py::arg("dims"), py::arg("cut"));
    m.def(
        "ppt_gap",
        [](const ce::ComplexMatrix& rho, const std::vector<int>& dims, int cut) {
            return ce::ppt_gap(state(rho, dims), cut);
        },
        py::arg("rho"), py::arg("dims"), py::arg("cut"));
    m.def(
        "ssa_gap",
        [](const ce::ComplexMatrix& rho, const std::vector<int>& dims, const std::vector<int>& region1,
           const std::vector<int>& region2) { return ce::ssa_gap(state(rho, dims), region1, region2); },
        py::arg("rho"), py::arg("dims"), py::arg("region1"), py::arg("region2"));
    m.def(
        "certify_partitions",
        [](const ce::ComplexMatrix& rho, const std::vector<int>& dims, std::uint64_t seed) {
            ce::SeparabilityOptions options;
            options.seed = seed;
            const ce::DensityMatrix s = state(rho, dims);
            py::gil_scoped_release release;
            return dump(ce::to_json(ce::certify_partitions(s, options)));
        },
        py::arg("rho"), py::arg("dims"), py::arg("seed") = ce::SeparabilityOptions{}.seed);

    m.def(
        "area_from_entropy",
        [](double s_bits, const std::string& scheme, const std::string& regime) {
            return ce::area_from_entropy(s_bits, ce::regulator_scheme_from_json(parse(scheme)),
                                         ce::area_regime_from_string(regime));
        },
        py::arg("s_bits"), py::arg("scheme"), py::arg("regime") = "regulated");
    m.def(
        "entropy_from_area",
        [](double area, const std::string& scheme, const std::string& regime) {
            return ce::entropy_from_area(area, ce::regulator_scheme_from_json(parse(scheme)),
                                         ce::area_regime_from_string(regime));
        },
        py::arg("area"), py::arg("scheme"), py::arg("regime") = "regulated");

    m.def("trapezoid", [](const py::array_t<double, py::array::c_style | py::array::forcecast>& values,
                          const std::vector<double>& origins,
                          const std::vector<double>& spacings) { return ce::trapezoid(field(values, origins, spacings)); },
          py::arg("values"), py::arg("origins"), py::arg("spacings"));
    m.def("boost_integral", [](const py::array_t<double, py::array::c_style | py::array::forcecast>& values,
                               const std::vector<double>& origins, const std::vector<double>& spacings) {
        return ce::boost_integral(field(values, origins, spacings));
    }, py::arg("values"), py::arg("origins"), py::arg("spacings"));
    m.def("unit_trace_constant", &ce::unit_trace_constant, py::arg("h"));
}
