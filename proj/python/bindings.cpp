#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "confdec/confluence.hpp"
#include "confdec/cops.hpp"
#include "confdec/curry.hpp"
#include "confdec/decompose.hpp"
#include "confdec/error.hpp"
#include "confdec/report.hpp"
#include "confdec/sorts.hpp"

namespace py = pybind11;
using namespace confdec;

namespace {

Trs parse(const std::string& text) { return parse_trs(text, ParseOptions{true}); }

py::dict check(const std::string& text, const std::string& method, unsigned join_depth, unsigned peak_depth) {
  DecideOptions options;
  auto m = parse_method(method);
  if (!m) throw py::value_error("unknown method " + method);
  options.method = *m;
  options.join_depth = join_depth;
  options.peak_depth = peak_depth;
  ProblemFile problem = parse_problem(text, "<python>", ParseOptions{true});
  if (problem.attachment_text) options.attachment = parse_attachment(*problem.attachment_text);
  Verdict v = decide(problem.trs, options);
  py::dict out;
  out["answer"] = to_string(v.answer);
  out["report"] = report_json("<python>", v, options, 0.0).dump();
  std::string reason;
  out["verified"] = verify_trace(v.trace, &reason);
  return out;
}

std::vector<std::vector<std::size_t>> modular_components(const std::string& text) {
  std::vector<std::vector<std::size_t>> out;
  for (const Component& c : modular_split(parse(text)).components) {
    std::vector<std::size_t> rules;
    for (std::size_t i : c.rules) rules.push_back(i + 1);
    out.push_back(std::move(rules));
  }
  return out;
}

std::string curry_text(const std::string& text) { return print_trs(curry_trs(parse_trs(text))); }
std::string pp_text(const std::string& text) { return print_trs(partial_parametrization(parse_trs(text))); }
std::string uncurry_text(const std::string& text) { return print_trs(uncurry_rules(parse_trs(text).signature())); }

std::string u_normal_form_text(const std::string& trs_text, const std::string& term_text) {
  Trs trs = parse_trs(trs_text);
  Term t = parse_term(term_text, variable_predicate(trs));
  return u_normal_form(trs.signature(), t).to_string();
}

std::string sorts_text(const std::string& text, bool ordered, bool strong) {
  Trs trs = parse(text);
  if (!ordered) return print_attachment(infer_many_sorted(trs));
  auto s = infer_order_sorted(trs, strong);
  if (!s) throw py::value_error("no order-sorted attachment found");
  return print_attachment(*s);
}

}  // namespace

PYBIND11_MODULE(_confdec, m) {
  m.doc() = "Confluence analysis for first-order term rewrite systems";
  py::register_exception<Error>(m, "ConfdecError", PyExc_ValueError);

  m.def("normalize", [](const std::string& text) { return print_trs(parse(text)); },
        "Parse a COPS problem and print it canonically.");
  m.def("check", &check, py::arg("text"), py::arg("method") = "auto", py::arg("join_depth") = 8,
        py::arg("peak_depth") = 6, "Decide confluence; returns answer, JSON report and trace check.");
  m.def("modular_components", &modular_components, "Rule numbers of the modular components.");
  m.def("curry", &curry_text);
  m.def("partial_parametrization", &pp_text);
  m.def("uncurry_rules", &uncurry_text);
  m.def("u_normal_form", &u_normal_form_text, py::arg("trs"), py::arg("term"));
  m.def("infer_sorts", &sorts_text, py::arg("text"), py::arg("ordered") = false, py::arg("strong") = false);
  m.attr("__version__") = kToolVersion;
}
