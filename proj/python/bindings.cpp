#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pretzelkh/diagram.hpp"
#include "pretzelkh/formulas.hpp"
#include "pretzelkh/khcube.hpp"
#include "pretzelkh/pd_io.hpp"
#include "pretzelkh/poly.hpp"
#include "pretzelkh/report.hpp"
#include "pretzelkh/twist.hpp"

namespace py = pybind11;
using namespace pretzelkh;

namespace {

std::optional<OrientationPattern> pattern_arg(const std::optional<std::string>& text) {
  if (!text) return std::nullopt;
  return parse_pattern(*text);
}

ComputeOptions options_arg(const std::string& method, int max_crossings) {
  ComputeOptions o;
  o.methods = parse_methods(method);
  o.max_crossings = max_crossings;
  return o;
}

std::map<std::pair<int, int>, int> ranks(const HomologyTable& t) {
  std::map<std::pair<int, int>, int> out;
  for (const auto& [key, cell] : t) {
    if (!cell.torsion.empty()) throw IntegrityError("table has torsion; use compute() for the full report");
    out[key] = cell.free_rank;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Reduced Khovanov homology of pretzel links P(k1,k2,k3)";

  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<IntegrityError>(m, "IntegrityError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def(
      "compute_json",
      [](int k1, int k2, int k3, std::optional<std::string> orientation, const std::string& method,
         int max_crossings) {
        return to_json(compute_pretzel({k1, k2, k3}, pattern_arg(orientation),
                                       options_arg(method, max_crossings)));
      },
      py::arg("k1"), py::arg("k2"), py::arg("k3"), py::arg("orientation") = py::none(),
      py::arg("method") = "all", py::arg("max_crossings") = kDefaultCrossingCap,
      "Full report for P(k1,k2,k3) as a JSON string.");

  m.def(
      "compute_pd_json",
      [](const std::string& text, const std::string& method, int max_crossings) {
        const LinkInput in = parse_link(text);
        const auto options = options_arg(method, max_crossings);
        return to_json(in.pretzel ? compute_pretzel(*in.pretzel, in.orientation, options)
                                  : compute_diagram(*in.diagram, options));
      },
      py::arg("text"), py::arg("method") = "all", py::arg("max_crossings") = kDefaultCrossingCap,
      "Report for a PD code or pretzel shorthand, as a JSON string.");

  m.def(
      "fast_homology",
      [](int p, int q, int r, std::optional<std::string> orientation) {
        return ranks(fast_homology(PretzelParams{-p, q, r}, pattern_arg(orientation)));
      },
      py::arg("p"), py::arg("q"), py::arg("r"), py::arg("orientation") = py::none(),
      "{(h, q): rank} for P(-p,q,r) by the twist-cube route.");

  m.def(
      "theorem2_delta",
      [](int p, int q, int r, const std::string& orientation) {
        return theorem2_delta(p, q, r, parse_pattern(orientation));
      },
      py::arg("p"), py::arg("q"), py::arg("r"), py::arg("orientation"),
      "Closed-form {2delta: rank} for P(-p,q,r).");

  m.def(
      "theorem3_bigraded",
      [](int p, int q, int r, const std::string& orientation) {
        return ranks(formula_table(p, q, r, parse_pattern(orientation)));
      },
      py::arg("p"), py::arg("q"), py::arg("r"), py::arg("orientation"),
      "Closed-form {(h, q): rank} for P(-p,q,r).");

  m.def(
      "classify", [](int p, int q, int r) { return to_string(classify(p, q, r)); }, py::arg("p"),
      py::arg("q"), py::arg("r"), "QuasiAlternating, ThinNonQA or ThickNonQA.");

  m.def(
      "orientation_patterns",
      [](int p, int q, int r) {
        std::vector<std::string> out;
        for (auto pat : valid_orientation_patterns(p, q, r)) out.push_back(to_string(pat));
        return out;
      },
      py::arg("p"), py::arg("q"), py::arg("r"), "Valid orientation patterns of P(-p,q,r).");

  m.def(
      "crossing_counts",
      [](int p, int q, int r, const std::string& orientation) {
        const auto c = crossing_counts(parse_pattern(orientation), p, q, r);
        return std::make_pair(c.n_plus, c.n_minus);
      },
      py::arg("p"), py::arg("q"), py::arg("r"), py::arg("orientation"), "(n_plus, n_minus).");

  m.def(
      "pd_code",
      [](int k1, int k2, int k3, std::optional<std::string> orientation) {
        return print_pd(build_pretzel_pd({k1, k2, k3}, pattern_arg(orientation)));
      },
      py::arg("k1"), py::arg("k2"), py::arg("k3"), py::arg("orientation") = py::none(),
      "PD text of the standard pretzel diagram.");
}
