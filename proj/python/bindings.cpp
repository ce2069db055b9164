#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coarse_ends/builtin.hpp"
#include "coarse_ends/component_tree.hpp"
#include "coarse_ends/config.hpp"
#include "coarse_ends/errors.hpp"
#include "coarse_ends/report.hpp"

namespace py = pybind11;
namespace ce = coarse_ends;

namespace {

// Reports cross the boundary as JSON text; the Python side decodes them.
py::tuple command(const std::string& name, const std::string& config_json) {
    ce::RunConfig cfg = ce::parse_config(config_json.empty() ? "{}" : config_json);
    cfg.command = name;
    ce::validate(cfg);
    ce::CommandResult r = ce::run_command(cfg);
    return py::make_tuple(ce::dump_report(r.report), r.exit_code, r.dot);
}

py::dict classify(const std::string& group, const std::vector<ce::Norm>& radii, double horizon_factor,
                  std::size_t window_w) {
    auto tree = ce::build_component_tree(ce::make_group(group), radii, horizon_factor);
    auto v = ce::classify_ends(tree, window_w);
    py::dict d;
    d["classification"] = v.to_string();
    d["count"] = v.count;
    d["rule"] = v.rule;
    d["per_level_counts"] = v.per_level_counts;
    d["horizon"] = tree.window->radius();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite-window estimators for ends of groups and coarse spaces";
    py::register_exception<ce::Error>(m, "Error", PyExc_RuntimeError);
    m.def("command", &command, py::arg("name"), py::arg("config_json") = "{}",
          "Run a subcommand; returns (report_json, exit_code, dot).");
    m.def("classify", &classify, py::arg("group"), py::arg("radii"), py::arg("horizon_factor") = 3.0,
          py::arg("window_w") = 5);
    m.def("builtin_groups", [] {
        std::vector<std::string> names;
        for (const auto& g : ce::builtin_groups()) names.push_back(g.name);
        return names;
    });
    m.def("word_norm", [](const std::string& group, const std::string& element, ce::Norm cap) {
        ce::Group g = ce::make_group(group);
        auto r = ce::word_norm(g.law().parse(element), g, cap);
        return r.value ? py::object(py::int_(*r.value)) : py::object(py::none());
    }, py::arg("group"), py::arg("element"), py::arg("cap") = 1000);
}
