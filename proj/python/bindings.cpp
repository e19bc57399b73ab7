#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "flexsched/analysis/random_case.hpp"
#include "flexsched/analysis/report.hpp"
#include "flexsched/errors.hpp"
#include "flexsched/milp/branch_and_bound.hpp"
#include "flexsched/milp/lp_format.hpp"
#include "flexsched/milp/lp_solver.hpp"
#include "flexsched/model/io.hpp"

namespace py = pybind11;
using namespace flexsched;

namespace {

milp::Sense parse_sense(const std::string& s) {
  if (s == "<=") return milp::Sense::kLessEqual;
  if (s == ">=") return milp::Sense::kGreaterEqual;
  if (s == "=" || s == "==") return milp::Sense::kEqual;
  throw InputError("row sense must be <=, >= or =, got '" + s + "'");
}

// Dense helper for small programs: rows are (coefficients, sense, rhs).
py::dict solve_dense(const std::vector<double>& cost,
                     const std::vector<std::tuple<std::vector<double>, std::string, double>>& rows,
                     std::vector<double> lower, std::vector<double> upper, const std::vector<int>& binaries,
                     bool maximize) {
  const size_t n = cost.size();
  if (lower.empty()) lower.assign(n, 0.0);
  if (upper.empty()) upper.assign(n, milp::kInf);
  if (lower.size() != n || upper.size() != n) throw InputError("bounds must match the number of columns");
  milp::MilpModel m;
  std::vector<bool> is_bin(n, false);
  for (int b : binaries) {
    if (b < 0 || static_cast<size_t>(b) >= n) throw InputError("binary index out of range");
    is_bin[b] = true;
  }
  std::vector<milp::ColId> cols;
  for (size_t j = 0; j < n; ++j) {
    const std::string name = "x" + std::to_string(j);
    cols.push_back(is_bin[j] ? m.add_binary(name, cost[j]) : m.add_column(name, lower[j], upper[j], cost[j]));
  }
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& [coef, sense, rhs] = rows[i];
    if (coef.size() != n) throw InputError("row " + std::to_string(i) + " has the wrong length");
    std::vector<milp::Term> terms;
    for (size_t j = 0; j < n; ++j) terms.push_back({cols[j], coef[j]});
    m.add_row("r" + std::to_string(i), parse_sense(sense), rhs, std::move(terms));
  }
  m.set_objective_sense(maximize ? milp::ObjectiveSense::kMaximize : milp::ObjectiveSense::kMinimize);
  milp::Solution s = binaries.empty() ? milp::solve_lp(m) : milp::solve_milp(m);
  py::dict out;
  out["status"] = std::string(milp::to_string(s.status));
  out["objective"] = s.objective;
  out["values"] = s.values;
  out["row_duals"] = s.row_duals;
  return out;
}

analysis::CaseReport run(const model::Case& c, double relative_gap, double time_limit, std::optional<int> view) {
  analysis::RunOptions o;
  o.milp.relative_gap = relative_gap;
  o.milp.time_limit_seconds = time_limit;
  o.view_scenario = view;
  py::gil_scoped_release release;
  return analysis::run_case(c, o);
}

template <typename F>
std::string to_text(F&& f) {
  std::ostringstream out;
  f(out);
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_flexsched, m) {
  m.doc() = "Bilevel Disco/microgrid day-ahead scheduling";

  auto input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);
  py::register_exception<model::TopologyError>(m, "TopologyError", input_error.ptr());
  py::register_exception<milp::ModelError>(m, "ModelError", PyExc_RuntimeError);

  py::class_<model::Case>(m, "Case")
      .def_readwrite("name", &model::Case::name)
      .def_property(
          "horizon", [](const model::Case& c) { return c.config.horizon; },
          [](model::Case& c, int T) { c.config.horizon = T; })
      .def_property(
          "flexibility", [](const model::Case& c) { return c.config.flexibility_enabled; },
          [](model::Case& c, bool on) { c.config.flexibility_enabled = on; })
      .def_property_readonly("num_buses", [](const model::Case& c) { return c.network.num_buses(); })
      .def_property_readonly("num_microgrids", [](const model::Case& c) { return c.microgrids.size(); })
      .def_property_readonly("wem_price", [](const model::Case& c) { return c.market.wem_price; })
      .def("copy", [](const model::Case& c) { return model::Case(c); })
      .def("__repr__", [](const model::Case& c) {
        return "<Case " + c.name + " buses=" + std::to_string(c.network.num_buses()) +
               " T=" + std::to_string(c.config.horizon) + ">";
      });

  py::class_<analysis::CaseReport>(m, "Report")
      .def_readonly("case_name", &analysis::CaseReport::case_name)
      .def_readonly("horizon", &analysis::CaseReport::horizon)
      .def_readonly("flexibility", &analysis::CaseReport::flexibility)
      .def_readonly("has_solution", &analysis::CaseReport::has_solution)
      .def_readonly("objective", &analysis::CaseReport::objective)
      .def_readonly("total_purchase", &analysis::CaseReport::total_purchase)
      .def_readonly("expected_il", &analysis::CaseReport::expected_il)
      .def_readonly("expected_dg", &analysis::CaseReport::expected_dg)
      .def_readonly("lem_price", &analysis::CaseReport::lem_price)
      .def_readonly("view_scenario", &analysis::CaseReport::view_scenario)
      .def_property_readonly("status", [](const analysis::CaseReport& r) { return std::string(milp::to_string(r.status)); })
      .def_property_readonly("profit", [](const analysis::CaseReport& r) { return r.profit.total(); })
      .def_property_readonly("purchase", [](const analysis::CaseReport& r) { return r.ramp.purchase; })
      .def_property_readonly("ramp", [](const analysis::CaseReport& r) { return r.ramp.ramp; })
      .def_property_readonly("max_ramp_up", [](const analysis::CaseReport& r) { return r.ramp.max_up; })
      .def_property_readonly("max_ramp_down", [](const analysis::CaseReport& r) { return r.ramp.max_down; })
      .def_property_readonly("max_bus_residual", &analysis::CaseReport::max_bus_residual)
      .def("summary", [](const analysis::CaseReport& r) { return to_text([&](std::ostream& o) { analysis::write_summary(r, o); }); })
      .def("to_json", [](const analysis::CaseReport& r) { return to_text([&](std::ostream& o) { analysis::write_report_json(r, o); }); })
      .def("bus_balance_csv", [](const analysis::CaseReport& r) { return to_text([&](std::ostream& o) { analysis::write_bus_balance(r, o); }); });

  m.def("load_case", [](const std::filesystem::path& dir, const model::KeyValues& overrides) {
    return model::load_case(dir, overrides);
  }, py::arg("directory"), py::arg("overrides") = model::KeyValues{});

  m.def("random_case", [](uint64_t seed, int buses, int microgrids, int horizon) {
    analysis::RandomCaseShape shape;
    shape.buses = buses;
    shape.microgrids = microgrids;
    shape.horizon = horizon;
    return analysis::random_case(seed, shape);
  }, py::arg("seed"), py::arg("buses") = 5, py::arg("microgrids") = 1, py::arg("horizon") = 3);

  m.def("run_case", &run, py::arg("case"), py::arg("relative_gap") = 0.0, py::arg("time_limit") = 1e30,
        py::arg("view_scenario") = std::nullopt);

  m.def("compare", [](const analysis::CaseReport& off, const analysis::CaseReport& on) {
    return to_text([&](std::ostream& o) { analysis::write_comparison(analysis::compare_cases(off, on), o); });
  }, py::arg("without_flex"), py::arg("with_flex"));

  m.def("emit_plot_data", [](const analysis::CaseReport& r, const std::filesystem::path& dir) {
    return analysis::emit_plot_data(r, dir);
  });

  m.def("export_model", [](const model::Case& c, const std::filesystem::path& path) {
    bilevel::BilevelModel bm = bilevel::assemble_milp(c, scenario::make_scenarios(c));
    milp::export_model(bm.milp, path);
    return py::make_tuple(bm.milp.num_cols(), bm.milp.num_rows(), bm.milp.num_binaries());
  });

  m.def("solve_dense", &solve_dense, py::arg("cost"), py::arg("rows"), py::arg("lower") = std::vector<double>{},
        py::arg("upper") = std::vector<double>{}, py::arg("binaries") = std::vector<int>{},
        py::arg("maximize") = false);
}
