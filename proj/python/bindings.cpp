#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hcran/experiment.hpp"

namespace py = pybind11;

namespace {

hcran::ExperimentConfig build_config(const std::string& experiment, const std::string& text,
                                     const std::vector<std::string>& overrides) {
    const auto kind = hcran::parse_experiment_kind(experiment);
    if (!kind) throw py::value_error("unknown experiment '" + experiment + "'");
    auto cfg = hcran::parse_config(text, *kind);
    for (const auto& o : overrides) hcran::apply_override(cfg, o);
    return cfg;
}

py::dict table_dict(const hcran::ResultTable& t) {
    py::dict meta;
    for (const auto& [k, v] : t.metadata) meta[py::str(k)] = v;
    py::dict out;
    out["header"] = t.header;
    out["rows"] = t.rows;
    out["metadata"] = meta;
    out["csv"] = t.to_csv();
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Native core of the hcran toolkit";
    m.attr("__version__") = std::string(hcran::toolkit_version());

    py::register_exception<hcran::ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def(
        "resolve_config",
        [](const std::string& experiment, const std::string& text, const std::vector<std::string>& overrides) {
            return hcran::emit_config(build_config(experiment, text, overrides));
        },
        py::arg("experiment"), py::arg("text") = "", py::arg("overrides") = std::vector<std::string>{},
        "Parse and validate a scenario; returns every key as `key = value` lines.");

    m.def("config_keys", [](const std::string& experiment) {
        const auto kind = hcran::parse_experiment_kind(experiment);
        if (!kind) throw py::value_error("unknown experiment '" + experiment + "'");
        return hcran::config_keys(*kind);
    });

    m.def(
        "run_experiment",
        [](const std::string& experiment, const std::string& text, const std::vector<std::string>& overrides) {
            const auto cfg = build_config(experiment, text, overrides);
            hcran::ResultTable table;
            {
                py::gil_scoped_release release;
                table = hcran::run_experiment(cfg);
            }
            return table_dict(table);
        },
        py::arg("experiment"), py::arg("text") = "", py::arg("overrides") = std::vector<std::string>{},
        "Run one experiment; returns header, rows, metadata, and the CSV text.");

    m.def(
        "total_power",
        [](const std::string& ap, double p_tx) {
            const auto model = hcran::PowerModel::planning_defaults();
            if (ap == "mbs") return hcran::total_power(model, hcran::ApClass::mbs, p_tx);
            if (ap == "sbs") return hcran::total_power(model, hcran::ApClass::sbs, p_tx);
            throw py::value_error("ap must be 'mbs' or 'sbs'");
        },
        py::arg("ap"), py::arg("p_tx"), "Consumed power with the deployment-planning constants.");

    m.def("jain_index", [](const std::vector<double>& values) { return hcran::jain_index(values); });
}
