// Python bindings over the case generators, the case file format, the
// constraint evaluator, and both solvers. Catalog selections cross the
// boundary as 1-based index lists, matching the case files and result JSON.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "trussopt/casefile.hpp"
#include "trussopt/driver.hpp"
#include "trussopt/evaluation.hpp"
#include "trussopt/generators.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace py = pybind11;

namespace {

using namespace trussopt;

std::vector<int> to_selection(const ChoiceMatrix& b) {
  std::vector<int> selection = b.to_indices();
  for (int& c : selection) ++c;
  return selection;
}

ChoiceMatrix from_selection(int p, const std::vector<int>& selection) {
  std::vector<int> zero_based(selection.size());
  for (size_t i = 0; i < selection.size(); ++i) {
    if (selection[i] < 1 || selection[i] > p) {
      throw std::invalid_argument("selection entries must lie in 1.." + std::to_string(p));
    }
    zero_based[i] = selection[i] - 1;
  }
  return ChoiceMatrix::from_indices(p, zero_based);
}

py::object weight_or_none(double w) {
  if (!std::isfinite(w)) return py::none();
  return py::float_(w);
}

py::list areas_list(const Vec& a) {
  py::list out;
  for (int i = 0; i < a.size(); ++i) out.append(a(i));
  return out;
}

py::dict oa_result_dict(const OaResult& result) {
  py::dict out;
  out["status"] = to_string(result.status);
  out["weight"] = weight_or_none(result.best_weight);
  if (std::isfinite(result.best_weight)) {
    out["selection"] = to_selection(result.best_choice);
    out["areas"] = areas_list(result.best_a);
  } else {
    out["selection"] = py::none();
    out["areas"] = py::none();
  }
  out["iterations"] = result.iterations;
  out["fem_calls"] = result.fem_calls;
  out["nlp_solves"] = result.nlp_solves;
  out["milp_nodes"] = result.milp_nodes;
  out["wall_ms"] = result.wall_ms;
  out["recheck_ok"] = result.recheck_ok;
  py::list history;
  for (const HistoryRow& row : result.history) {
    py::dict r;
    r["k"] = row.k;
    r["U"] = row.u;
    r["U_min"] = weight_or_none(row.u_min);
    r["eta"] = weight_or_none(row.eta);
    r["fem_calls"] = row.fem_calls;
    r["nlp_solves"] = row.nlp_solves;
    r["wall_ms"] = row.wall_ms;
    r["slave_feasible"] = row.slave_feasible;
    r["kkt_residual"] = row.kkt_residual;
    history.append(r);
  }
  out["history"] = history;
  return out;
}

py::dict solve_oa_py(const CaseFile& c, std::optional<double> epsilon,
                     std::optional<int> max_iter) {
  CaseFile local = c;
  if (epsilon) local.epsilon = *epsilon;
  if (max_iter) local.max_iter = *max_iter;
  const CompiledCase compiled = compile_case(local);
  OaOptions options;
  options.epsilon = compiled.epsilon;
  options.max_iter = compiled.max_iter;
  return oa_result_dict(bilevel_oa(compiled.sys, compiled.catalog, compiled.lower,
                                   compiled.upper, compiled.b0, options));
}

py::dict solve_enum_py(const CaseFile& c, int jobs) {
  const CompiledCase compiled = compile_case(c);
  const EnumerateResult result = enumerate_baseline(compiled.sys, compiled.catalog,
                                                    compiled.lower, compiled.upper, {}, jobs);
  py::dict out;
  out["weight"] = weight_or_none(result.weight);
  if (result.feasible) {
    out["selection"] = to_selection(result.choice);
    out["areas"] = areas_list(result.a);
  } else {
    out["selection"] = py::none();
    out["areas"] = py::none();
  }
  out["sized"] = result.sized;
  out["fem_calls"] = result.fem_calls;
  out["wall_ms"] = result.wall_ms;
  return out;
}

py::dict evaluate_py(const CaseFile& c, const std::vector<double>& areas,
                     const std::vector<int>& selection) {
  const CompiledCase compiled = compile_case(c);
  const int n = compiled.sys.num_bars();
  if (static_cast<int>(areas.size()) != n) {
    throw std::invalid_argument("areas must have one entry per bar");
  }
  if (static_cast<int>(selection.size()) != n) {
    throw std::invalid_argument("selection must have one entry per bar");
  }
  Vec a(n);
  for (int i = 0; i < n; ++i) a(i) = areas[static_cast<size_t>(i)];
  const ChoiceMatrix b = from_selection(static_cast<int>(compiled.catalog.size()), selection);
  FemCallCounter counter;
  const Evaluation eval = evaluate(compiled.sys, compiled.catalog, a, b,
                                   /*want_gradients=*/false, counter);
  const ConstraintScaling scaling = default_scaling(compiled.sys);
  double violation = eval.stress.maxCoeff() / scaling.stress_scale;
  for (int r = 0; r < eval.disp.size(); ++r) {
    violation = std::max(violation, eval.disp(r) / scaling.disp_scale(r));
  }
  py::dict out;
  out["weight"] = eval.weight;
  out["feasible"] = violation <= 1e-6;
  out["max_stress_violation"] = eval.max_stress_violation();
  out["max_disp_violation"] = eval.max_disp_violation();
  py::list stress;
  for (int i = 0; i < eval.stress.rows(); ++i) {
    py::list row;
    for (int j = 0; j < eval.stress.cols(); ++j) row.append(eval.stress(i, j));
    stress.append(row);
  }
  out["stress"] = stress;
  py::list disp;
  for (int r = 0; r < eval.disp.size(); ++r) disp.append(eval.disp(r));
  out["disp"] = disp;
  return out;
}

py::dict gradient_check_py(const CaseFile& c, int states, unsigned seed) {
  const CompiledCase compiled = compile_case(c);
  FemCallCounter counter;
  const GradientCheckReport report = gradient_check(compiled.sys, compiled.catalog,
                                                    compiled.lower, compiled.upper, states,
                                                    seed, counter);
  py::dict out;
  out["states"] = report.states;
  out["max_rel_area"] = report.max_rel_area;
  out["max_rel_choice"] = report.max_rel_choice;
  out["fem_calls"] = counter.calls;
  return out;
}

int hamming_py(const std::vector<int>& x, const std::vector<int>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("selection length mismatch");
  int distance = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] != y[i]) ++distance;
  }
  return distance;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "truss weight minimization over catalog selections";

  py::class_<CaseFile>(m, "Case")
      .def_readwrite("name", &CaseFile::name)
      .def_readwrite("epsilon", &CaseFile::epsilon)
      .def_readwrite("max_iter", &CaseFile::max_iter)
      .def_property_readonly("num_bars",
                             [](const CaseFile& c) { return static_cast<int>(c.model.bars.rows()); })
      .def_property_readonly("num_nodes",
                             [](const CaseFile& c) { return static_cast<int>(c.model.nodes.rows()); })
      .def_property_readonly("catalog_size",
                             [](const CaseFile& c) { return static_cast<int>(c.catalog.size()); })
      .def("serialize", [](const CaseFile& c) { return serialize_case(c); })
      .def("save", [](const CaseFile& c, const std::string& path) { save_case(c, path); },
           py::arg("path"));

  m.def("parse_case", &parse_case, py::arg("text"), "parse a case from text");
  m.def("load_case", &load_case, py::arg("path"), "load a case file");
  m.def("make_two_bar", &make_two_bar);
  m.def("make_ten_bar", &make_ten_bar, py::arg("ubar"));
  m.def("make_cantilever", &make_cantilever, py::arg("blocks"));
  m.def("make_catalog_scaling", &make_catalog_scaling, py::arg("p"));
  m.def("make_dome", &make_dome);
  m.def("generate_case", &generate_case, py::arg("name"), py::arg("blocks") = 2,
        py::arg("ubar") = std::numeric_limits<double>::quiet_NaN());
  m.def("solve_oa", &solve_oa_py, py::arg("case"), py::arg("epsilon") = py::none(),
        py::arg("max_iter") = py::none(),
        "outer-approximation solve; returns a result dict with history");
  m.def("solve_enum", &solve_enum_py, py::arg("case"), py::arg("jobs") = 1,
        "exhaustive enumeration baseline");
  m.def("evaluate", &evaluate_py, py::arg("case"), py::arg("areas"), py::arg("selection"),
        "constraint evaluation at given areas and a 1-based selection");
  m.def("gradient_check", &gradient_check_py, py::arg("case"), py::arg("states") = 100,
        py::arg("seed") = 1, "finite-difference check of the analytic gradients");
  m.def("hamming", &hamming_py, py::arg("x"), py::arg("y"),
        "number of differing selection entries");
}
