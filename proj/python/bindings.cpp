#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "critprm/constants.hpp"
#include "critprm/experiments.hpp"
#include "critprm/planners.hpp"
#include "critprm/rgg.hpp"
#include "critprm/sampling.hpp"
#include "critprm/scenario.hpp"

namespace py = pybind11;
using namespace critprm;

namespace {

py::array_t<double> to_array(const PointSet& pts) {
  py::array_t<double> out({pts.size(), pts.dim()});
  std::copy(pts.data().begin(), pts.data().end(), out.mutable_data());
  return out;
}

PointSet from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw std::invalid_argument("points must be a 2-D array");
  const auto dim = static_cast<std::size_t>(a.shape(1));
  return PointSet(dim, std::vector<double>(a.data(), a.data() + a.size()));
}

py::dict plan_to_dict(const PlanResult& r) {
  py::dict out;
  out["success"] = r.success();
  out["cost"] = r.cost;
  out["bottleneck_cost"] = r.bottleneck_cost ? py::cast(*r.bottleneck_cost) : py::none();
  out["vertex_count"] = r.stats.vertex_count;
  out["edge_count"] = r.stats.edge_count;
  out["samples_drawn"] = r.stats.samples_drawn;
  if (r.path) {
    PointSet pts(r.path->dim());
    for (const auto& p : r.path->waypoints()) pts.push_back(p);
    out["path"] = to_array(pts);
  } else {
    out["path"] = py::none();
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "critical-radius motion planning core";

  py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("gamma_star", &gamma_star, py::arg("d"));
  m.def("p_star", &p_star, py::arg("d"));
  m.def("critical_radius", &critical_radius, py::arg("d"), py::arg("n"));
  m.def("r_prm_star", &r_prm_star, py::arg("d"), py::arg("n"));
  m.def("r_fmt_star", &r_fmt_star, py::arg("d"), py::arg("n"), py::arg("free_volume") = 1.0);

  m.def(
      "sample_ppp",
      [](double density, std::size_t d, std::uint64_t seed) {
        return to_array(sample_ppp(density, Box::unit(d), seed).points);
      },
      py::arg("density"), py::arg("d"), py::arg("seed"));

  m.def(
      "component_sizes",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& points, double radius) {
        return radius_components(from_array(points), radius).sizes;
      },
      py::arg("points"), py::arg("radius"));

  m.def(
      "plan",
      [](const std::string& scenario, const std::string& planner, double n, double r_n, double r_st,
         std::uint64_t seed, const std::string& cost_map) {
        const auto scn = load_scenario(scenario);
        if (planner == "prm") return plan_to_dict(plan_prm(scn, n, r_n, r_st, seed));
        if (planner == "fmt") return plan_to_dict(fmt_star(scn, n, r_n, r_st, seed));
        if (planner == "btt") return plan_to_dict(btt(scn, n, r_n, r_st, CostMap::parse(cost_map, scn), seed));
        throw std::invalid_argument("planner must be prm, fmt or btt");
      },
      py::arg("scenario"), py::arg("planner"), py::arg("n"), py::arg("r_n"), py::arg("r_st"), py::arg("seed"),
      py::arg("cost_map") = "coord:1:0.5");

  m.def(
      "component_table",
      [](const std::vector<std::size_t>& d_list, const std::vector<double>& n_list,
         const std::vector<std::string>& labels, std::size_t trials, std::uint64_t seed) {
        py::list rows;
        for (const auto& c : component_table(d_list, n_list, labels, trials, seed).cells) {
          py::dict row;
          row["d"] = c.d;
          row["n"] = c.n;
          row["radius_label"] = c.radius_label;
          row["radius"] = c.radius;
          row["trials"] = c.trials;
          row["largest_fraction_mean"] = c.largest_fraction_mean;
          row["second_fraction_mean"] = c.second_fraction_mean;
          rows.append(row);
        }
        return rows;
      },
      py::arg("d_list"), py::arg("n_list"), py::arg("radius_labels"), py::arg("trials"), py::arg("seed"));

  m.attr("RECORDS_CSV_HEADER") = kRecordsCsvHeader;
  m.attr("AGGREGATES_CSV_HEADER") = kAggregatesCsvHeader;
  m.attr("COMPONENT_TABLE_CSV_HEADER") = kComponentTableCsvHeader;
}
