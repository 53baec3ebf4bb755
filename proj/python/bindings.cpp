#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "sextic/borel.hpp"
#include "sextic/errors.hpp"
#include "sextic/fits.hpp"
#include "sextic/hvpt.hpp"
#include "sextic/pade.hpp"
#include "sextic/potential.hpp"
#include "sextic/runner.hpp"
#include "sextic/scan.hpp"
#include "sextic/special_functions.hpp"
#include "sextic/variational.hpp"
#include "sextic/version.hpp"

namespace py = pybind11;

namespace {

using namespace sextic;

std::vector<std::string> series_strings(const PerturbationSeries& s) {
  std::vector<std::string> out;
  out.reserve(s.coefficients.size());
  for (const Rational& c : s.coefficients) out.push_back(to_fraction_string(c));
  return out;
}

py::dict fit_dict(const FitResult& fit) {
  py::dict d;
  d["parameters"] = fit.parameters;
  d["residual_rms"] = fit.residual_rms;
  d["window"] = py::make_tuple(fit.window.lo, fit.window.hi);
  d["condition_estimate"] = fit.condition_estimate;
  d["rejected_samples"] = fit.rejected_samples;
  return d;
}

py::dict borel_dict(const BorelSumResult& r) {
  py::dict d;
  d["value_real"] = r.value_real;
  d["value_imag"] = r.value_imag;
  d["method"] = std::string(to_string(r.method));
  d["quadrature_nodes"] = r.quadrature_nodes;
  d["asymptotic_regime"] = r.asymptotic_regime;
  std::vector<std::pair<double, double>> poles;
  for (const auto& p : r.borel_poles) poles.emplace_back(p.real(), p.imag());
  d["borel_poles"] = poles;
  return d;
}

py::dict state_dict(const EigenPair& s) {
  py::dict d;
  d["n"] = s.level_index;
  d["parity"] = to_string(s.parity);
  d["energy"] = s.energy;
  d["x2"] = s.x2_expectation;
  return d;
}

GridSpec make_grid(double lambda_min, double lambda_max, int count, bool log_spaced) {
  GridSpec g;
  g.lambda_min = lambda_min;
  g.lambda_max = lambda_max;
  g.count = count;
  g.log_spaced = log_spaced;
  return g;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sextic anharmonic-oscillator laboratory: exact perturbation series, "
            "resummation, variational spectra and avoided-crossing scans.";
  m.attr("__version__") = version_string;

  py::register_exception<Error>(m, "SexticError", PyExc_RuntimeError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  // ---- potential ----
  m.def("evaluate_potential", &evaluate_potential, py::arg("lam"), py::arg("x"));
  m.def("potential_derivative", &potential_derivative, py::arg("lam"), py::arg("x"));
  m.def(
      "classify_potential",
      [](double lam) {
        const PotentialShape s = classify_potential(lam);
        py::dict d;
        d["regime"] = std::string(to_string(s.regime));
        d["curvature_origin"] = s.curvature_origin;
        if (s.x_m_sq) d["x_m_sq"] = *s.x_m_sq;
        if (s.x_M_sq) d["x_M_sq"] = *s.x_M_sq;
        if (s.v_at_xm) d["v_at_xm"] = *s.v_at_xm;
        if (s.v_at_xM) d["v_at_xM"] = *s.v_at_xM;
        if (s.curvature_xm) d["curvature_xm"] = *s.curvature_xm;
        if (s.curvature_xM) d["curvature_xM"] = *s.curvature_xM;
        return d;
      },
      py::arg("lam"));
  m.def("exact_ground_state_value", &exact_ground_state_value, py::arg("lam"), py::arg("x"));
  m.def("exact_ground_state_norm_sq", &exact_ground_state_norm_sq, py::arg("lam"));

  // ---- perturbation series ----
  m.def(
      "energy_series",
      [](int n, int order) { return series_strings(generate_series(n, order).energy); },
      py::arg("n"), py::arg("order"),
      "Exact energy coefficients E_n^{(p)} as fraction strings, p = 0..order.");
  m.def(
      "moment_series",
      [](int n, int order, int power) {
        return series_strings(generate_series(n, order).moments.moment_series(power));
      },
      py::arg("n"), py::arg("order"), py::arg("power") = 1,
      "Exact <x^{2 power}> coefficients as fraction strings.");
  m.def(
      "energy_partial_sum",
      [](int n, int order, double lam) {
        const HvptResult r = generate_series(n, order);
        return evaluate_partial_sum(r.energy, lam, order);
      },
      py::arg("n"), py::arg("order"), py::arg("lam"));

  // ---- resummation ----
  py::class_<PadeApproximant>(m, "PadeApproximant")
      .def_readonly("m", &PadeApproximant::m)
      .def_readonly("n", &PadeApproximant::n)
      .def_readonly("numerator", &PadeApproximant::numerator)
      .def_readonly("denominator", &PadeApproximant::denominator)
      .def("__call__", [](const PadeApproximant& a, double lam) { return pade_eval(a, lam); });
  m.def(
      "pade_fit",
      [](const std::vector<double>& coeffs, int mm, int nn) {
        return pade_fit(coeffs, mm, nn);
      },
      py::arg("coeffs"), py::arg("m"), py::arg("n"));
  m.def(
      "borel_pade_sum",
      [](const std::vector<double>& coeffs, int mm, int nn, double lam) {
        return borel_dict(borel_pade_sum(coeffs, mm, nn, lam));
      },
      py::arg("coeffs"), py::arg("m"), py::arg("n"), py::arg("lam"));
  m.def(
      "leading_borel_closed_form",
      [](double lam, double f0) { return borel_dict(leading_borel_closed_form(lam, f0)); },
      py::arg("lam"), py::arg("f0"));
  m.def("shi", &shi, py::arg("x"));
  m.def("chi", &chi, py::arg("x"));

  // ---- large-order fits ----
  m.def(
      "fit_large_order",
      [](int order, int j_min, int j_max, int terms) {
        const PerturbationSeries x1 = generate_series(0, order).moments.moment_series(1);
        return fit_dict(fit_large_order_moments(x1, j_min, j_max, terms));
      },
      py::arg("order"), py::arg("j_min"), py::arg("j_max"), py::arg("terms"));
  m.def(
      "fit_splitting",
      [](double lambda_min, double lambda_max, int count, int dim, bool constrain_b,
         bool leading_correction) {
        const SplittingSampleSet set =
            splitting_samples(make_grid(lambda_min, lambda_max, count, false), dim);
        return fit_dict(fit_splitting(set.samples, constrain_b, leading_correction));
      },
      py::arg("lambda_min") = -0.030, py::arg("lambda_max") = -0.012, py::arg("count") = 10,
      py::arg("dim") = 500, py::arg("constrain_b") = false,
      py::arg("leading_correction") = false);

  // ---- variational ----
  m.def(
      "solve_spectrum",
      [](double lam, int dim, int levels) {
        py::list out;
        for (const EigenPair& s : solve_spectrum(lam, dim, levels)) out.append(state_dict(s));
        return out;
      },
      py::arg("lam"), py::arg("dim") = 500, py::arg("levels") = 6);
  m.def(
      "ground_state_overlap",
      [](double lam, int dim) {
        const std::vector<EigenPair> s = solve_eigen(lam, Parity::even, dim, 1);
        return overlap_with_exact(s.front(), lam);
      },
      py::arg("lam"), py::arg("dim") = 400,
      "Squared overlap of the variational ground state with the closed form, lam >= 0.");

  // ---- scans ----
  m.def(
      "scan_spectrum",
      [](double lambda_min, double lambda_max, int count, bool log_spaced, int levels,
         int dim) {
        const ScanTable t =
            scan_spectrum(make_grid(lambda_min, lambda_max, count, log_spaced), levels, dim);
        py::list out;
        for (const ScanRow& r : t.rows) {
          py::dict d;
          d["lambda"] = r.lambda;
          d["level"] = r.level;
          d["parity"] = to_string(r.parity);
          d["energy"] = r.energy;
          d["delta_x"] = r.delta_x;
          out.append(d);
        }
        return out;
      },
      py::arg("lambda_min") = -0.03, py::arg("lambda_max") = -0.002, py::arg("count") = 60,
      py::arg("log_spaced") = true, py::arg("levels") = 10, py::arg("dim") = 250);
  m.def(
      "detect_avoided_crossings",
      [](double lambda_min, double lambda_max, int count, bool log_spaced, int levels,
         int dim) {
        const ScanTable t =
            scan_spectrum(make_grid(lambda_min, lambda_max, count, log_spaced), levels, dim);
        py::list out;
        for (const AvoidedCrossing& c : detect_avoided_crossings(t)) {
          py::dict d;
          d["pair"] = py::make_tuple(c.n_low, c.n_high);
          d["parity"] = to_string(c.parity);
          d["lambda_star"] = c.lambda_star;
          d["min_gap"] = c.min_gap;
          d["refined"] = c.refined;
          out.append(d);
        }
        return out;
      },
      py::arg("lambda_min") = -0.03, py::arg("lambda_max") = -0.002, py::arg("count") = 60,
      py::arg("log_spaced") = true, py::arg("levels") = 10, py::arg("dim") = 250);
  m.def(
      "track_delta_x",
      [](int level, double lambda_min, double lambda_max, int count, bool log_spaced,
         int levels, int dim, double threshold_factor) {
        const ScanTable t =
            scan_spectrum(make_grid(lambda_min, lambda_max, count, log_spaced), levels, dim);
        const DeltaXTrace trace = track_delta_x(t, level, threshold_factor);
        py::dict d;
        d["level"] = trace.level;
        d["median_step"] = trace.median_step;
        py::list pts;
        for (const DeltaXPoint& p : trace.points)
          pts.append(py::make_tuple(p.lambda, p.delta_x));
        d["points"] = pts;
        py::list jumps;
        for (const DeltaXJump& j : trace.jumps) {
          py::dict jd;
          jd["lambda_before"] = j.lambda_before;
          jd["lambda_after"] = j.lambda_after;
          jd["change"] = j.change;
          jd["upward"] = j.upward;
          jumps.append(jd);
        }
        d["jumps"] = jumps;
        return d;
      },
      py::arg("level"), py::arg("lambda_min") = -0.03, py::arg("lambda_max") = -0.002,
      py::arg("count") = 60, py::arg("log_spaced") = true, py::arg("levels") = 10,
      py::arg("dim") = 250, py::arg("threshold_factor") = 3.0);

  // ---- runner ----
  m.def(
      "run",
      [](const std::string& command, const std::map<std::string, std::string>& params,
         bool emit_timestamp) {
        RunConfig cfg;
        cfg.command = parse_command(command);
        cfg.params = params;
        cfg.emit_timestamp = emit_timestamp;
        const RunOutput out = run(cfg);
        py::dict d;
        d["files"] = out.files;
        d["message"] = out.message;
        return d;
      },
      py::arg("command"), py::arg("params") = std::map<std::string, std::string>{},
      py::arg("emit_timestamp") = true,
      "Dispatch one CLI-equivalent command; returns the files written.");
  m.def(
      "parse_output_metadata",
      [](const std::string& path) {
        const RunConfig cfg = parse_output_metadata(path);
        py::dict d;
        d["command"] = to_string(cfg.command);
        d["params"] = cfg.params;
        return d;
      },
      py::arg("path"));
}
