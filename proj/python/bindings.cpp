// Python bindings for the averaging library.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wordavg/experiments.hpp"

namespace py = pybind11;
using namespace wordavg;

namespace {

ModelParams make_params(double A, double B, double nu, double omega, double z0) {
  ModelParams p;
  p.A = A;
  p.B = B;
  p.nu = nu;
  p.omega = omega;
  p.z0 = z0;
  p.validate();
  return p;
}

}  // namespace

PYBIND11_MODULE(_wordavg, m) {
  m.doc() = "Word-series averaging of a vibrated bistable oscillator";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def(
      "census",
      [](std::size_t n_max, bool exact, unsigned threads) {
        py::list out;
        for (const auto& r : run_census(ModelParams{}, n_max, exact ? CensusMode::exact : CensusMode::floating, threads)) {
          out.append(py::make_tuple(r.n, r.count));
        }
        return out;
      },
      py::arg("n_max") = 5, py::arg("exact") = true, py::arg("threads") = 1,
      "List of (n, count) pairs of nonzero basis functions");

  m.def(
      "averaged_text", [](std::size_t n) { return to_canonical_text(build_averaged_exact(build_exact_model(), n)); },
      py::arg("n"), "Canonical text of the exact averaged system up to word length n");

  m.def(
      "errors",
      [](std::size_t letters, std::vector<double> B_list, double T) {
        ExperimentConfig cfg;
        cfg.letters = letters;
        cfg.B_list = std::move(B_list);
        cfg.T = T;
        cfg.validate();
        const ErrorTable t = run_errors(cfg);
        py::dict out;
        out["B"] = t.B;
        out["n"] = t.n;
        out["count"] = t.count;
        out["error"] = t.error;
        out["max_imag_residue"] = t.max_imag_residue;
        return out;
      },
      py::arg("letters") = 4, py::arg("B_list") = std::vector<double>{0.52, 0.53}, py::arg("T") = 400.0,
      "Max error of the averaged solutions against the reference integration");

  m.def(
      "potential",
      [](double B, int order, double A, double nu, double omega) {
        const WellReport w = well_analysis(effective_potential(make_params(A, B, nu, omega, -1.0), order));
        py::list points;
        for (const auto& c : w.points) {
          py::dict d;
          d["y"] = c.y;
          d["type"] = to_string(c.type);
          d["value"] = c.value;
          d["curvature"] = c.curvature;
          d["depth"] = c.depth;
          points.append(d);
        }
        return py::make_tuple(points, w.merged());
      },
      py::arg("B"), py::arg("order") = 1, py::arg("A") = 0.2, py::arg("nu") = 0.1, py::arg("omega") = 5.0,
      "Critical points of the effective potential and whether the wells merged");

  m.def(
      "beta_bar", [](const std::string& word, double t0, double omega) { return beta_bar(Word::parse(word), t0, omega); },
      py::arg("word"), py::arg("t0") = 0.0, py::arg("omega") = 5.0, "Floating beta_bar for a dotted word like '1.-1'");

  m.def(
      "coefficients",
      [](const std::string& word, double t0, double omega) { return coefficient_report(Word::parse(word), t0, omega); },
      py::arg("word"), py::arg("t0") = 0.0, py::arg("omega") = 5.0, "Exact and floating beta_bar as text");
}
