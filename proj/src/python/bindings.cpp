// Thin pybind11 layer. Structured values cross the boundary as JSON text;
// the Python package decodes them.

#include "stackydeg/blowup.hpp"
#include "stackydeg/engine.hpp"
#include "stackydeg/json_io.hpp"
#include "stackydeg/scenarios.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace stackydeg;

namespace {

std::optional<std::int64_t> to_py(const Valuation& v) {
  if (v.is_infinite()) return std::nullopt;
  return v.value();
}

Mat parse_mat(const std::string& text) { return mat_from_json(json::parse(text)); }

std::string run_degenerate(const std::string& text) {
  DegenerationInput in = input_from_json(json::parse(text));
  try {
    return dump(output_to_json(degenerate(in)));
  } catch (const DegenerationFailure& f) {
    json j = output_to_json(f.partial());
    j["error"] = f.what();
    return dump(j);
  }
}

}  // namespace

PYBIND11_MODULE(_stackydeg, m) {
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<EngineError>(m, "EngineError", PyExc_RuntimeError);

  m.def("ratfunc_canonical", [](const std::string& s) { return to_string(parse_ratfunc(s)); });
  m.def("ratfunc_valuation", [](const std::string& s) { return to_py(val(parse_ratfunc(s))); });
  m.def("ratfunc_add", [](const std::string& a, const std::string& b) {
    return to_string(parse_ratfunc(a) + parse_ratfunc(b));
  });
  m.def("ratfunc_mul", [](const std::string& a, const std::string& b) {
    return to_string(parse_ratfunc(a) * parse_ratfunc(b));
  });
  m.def("ratfunc_inv", [](const std::string& a) { return to_string(inv(parse_ratfunc(a))); });

  m.def("smith_normal_form", [](const std::string& mat) { return dump(snf_to_json(smith_normal_form(parse_mat(mat)))); });
  m.def("valuation_of_det", [](const std::string& mat) { return to_py(valuation_of_det(parse_mat(mat))); });

  m.def("twisted_blowup", [](int mm, int d) {
    BlowupParams p{mm, d};
    return dump(blowup_to_json(p, twisted_blowup(p)));
  });
  m.def("pushforward_contains", [](int mm, int d, int k, int a, int b) {
    return pushforward_contains({mm, d}, k, a, b);
  });
  m.def("resolve_an", [](int a, int mu) { return dump(resolution_to_json(resolve_An({a, mu}))); });
  m.def("contract_singularity", [](int pa, int pmu, int qa, int qmu, int k) {
    AnSing s = contract_singularity({pa, pmu}, {qa, qmu}, k);
    return std::make_pair(s.a, s.mu_order);
  });
  m.def("different_degree", [](int a, int b) { return to_string(different_degree(a, b)); });

  m.def("check_input", [](const std::string& text) { input_from_json(json::parse(text)); });
  m.def("degenerate", &run_degenerate);
  m.def("scenario_names", &scenario_names);
  m.def("scenario_input", [](const std::string& name, std::optional<int> k, std::optional<int> d,
                             std::optional<int> mm, std::optional<int> m2) {
    return dump(input_to_json(builtin_scenario(name, {k, d, mm, m2})));
  });
}
