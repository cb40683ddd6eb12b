#include "pbsym/benchgen.hpp"
#include "pbsym/checker.hpp"
#include "pbsym/symlog.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace pbsym;

namespace {

py::dict counters(const Counters& c) {
  py::dict d;
  d["spec_materializations"] = c.spec_materializations;
  d["rup_calls"] = c.rup_calls;
  d["hinted_rups"] = c.hinted_rups;
  d["pol_steps"] = c.pol_steps;
  d["goals_syntactic"] = c.goals_syntactic;
  d["goals_tautology"] = c.goals_tautology;
  d["goals_rup"] = c.goals_rup;
  d["goals_explicit"] = c.goals_explicit;
  d["propagations"] = c.propagations;
  return d;
}

py::dict check(const std::string& formula, const std::string& proof, bool trace) {
  CheckOutcome r = [&] {
    py::gil_scoped_release nogil;
    return check_text(formula, proof, trace);
  }();
  py::dict d;
  d["verdict"] = verdict_str(r.verdict);
  d["counters"] = counters(r.counters);
  d["trace"] = r.trace;
  return d;
}

py::dict break_symmetries(const std::string& formula, const std::string& symmetries, const std::string& method,
                          bool cp_variant, const std::vector<std::string>& order) {
  VarTable vt;
  Formula f = parse_formula(formula, vt);
  auto syms = parse_symmetries(symmetries, vt);
  BreakOptions opt;
  if (method != "new" && method != "old") throw py::value_error("method must be 'new' or 'old'");
  opt.method = method == "old" ? Method::OLD : Method::NEW;
  opt.cp_variant = cp_variant;
  for (const auto& name : order) {
    auto v = vt.find(name);
    if (!v) throw py::value_error("unknown variable in order: " + name);
    opt.order.push_back(*v);
  }
  std::ostringstream os;
  BreakReport rep = emit_break(os, vt, f, syms, opt);
  py::list breaking, fragments;
  for (const auto& c : rep.breaking) breaking.append(format_constraint(c, vt));
  for (const auto& fr : rep.fragments) {
    py::dict d;
    d["support"] = fr.support;
    d["lines"] = fr.lines;
    d["bytes"] = fr.bytes;
    fragments.append(d);
  }
  py::dict d;
  d["proof"] = os.str();
  d["breaking"] = breaking;
  d["fragments"] = fragments;
  d["order_lines"] = rep.order_lines;
  d["order_bytes"] = rep.order_bytes;
  d["lines"] = rep.lines;
  d["bytes"] = rep.bytes;
  return d;
}

py::dict generate_instance(const std::string& family, const std::vector<int>& params) {
  Instance in = generate(parse_family(family), params);
  py::dict d;
  d["cnf"] = to_dimacs(in);
  d["symmetries"] = symmetry_text(in);
  d["sidecar"] = sidecar_json(in);
  d["num_vars"] = in.num_vars;
  d["num_clauses"] = in.clauses.size();
  return d;
}

}  // namespace

PYBIND11_MODULE(_pbsym, m) {
  m.doc() = "Pseudo-Boolean proof checking and certified symmetry breaking";
  auto base = py::register_exception<Error>(m, "PbsymError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<Rejection>(m, "Rejection", base.ptr());
  m.def("check", &check, py::arg("formula"), py::arg("proof"), py::arg("trace") = false,
        "Check a proof (text) against a formula (OPB or DIMACS text).");
  m.def("break_symmetries", &break_symmetries, py::arg("formula"), py::arg("symmetries"), py::arg("method") = "new",
        py::arg("cp_variant") = false, py::arg("order") = std::vector<std::string>{},
        "Emit breaking constraints and their proof.");
  m.def("generate", &generate_instance, py::arg("family"), py::arg("params"),
        "Generate a crafted instance with its known symmetries.");
  m.def("oracle_lex", &oracle_lex, py::arg("alpha"), py::arg("beta"));
}
