#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsl/bounds.hpp"
#include "qsl/composite.hpp"
#include "qsl/dynamics.hpp"
#include "qsl/error.hpp"
#include "qsl/properties.hpp"

namespace py = pybind11;

namespace {

qsl::PureState make_state(std::vector<double> levels, std::vector<qsl::cplx> amplitudes) {
  return qsl::PureState::from_levels(std::move(levels), std::move(amplitudes));
}

const qsl::AlphaLowerSolver& default_solver() {
  static const qsl::AlphaLowerSolver solver;
  return solver;
}

qsl::BoundFunction bound_function(const std::string& name) {
  if (name == "alpha") return qsl::BoundFunction::Alpha;
  if (name == "beta_sq") return qsl::BoundFunction::BetaSquared;
  throw py::value_error("bound function must be 'alpha' or 'beta_sq'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum speed limit bounds for pure, mixed and composite states";

  static py::exception<qsl::Error> qsl_error(m, "QslError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const qsl::Error& e) {
      py::set_error(qsl_error, (std::string(qsl::to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def("beta", &qsl::beta, py::arg("eps"));
  m.def("beta_inverse", &qsl::beta_inverse, py::arg("x"));
  m.def("alpha", &qsl::alpha_reconciled, py::arg("eps"));
  m.def("alpha_upper", &qsl::alpha_upper, py::arg("eps"));
  m.def("alpha_inverse", &qsl::alpha_inverse, py::arg("x"));
  m.def(
      "alpha_lower",
      [](double eps) {
        const qsl::AlphaEstimate est = qsl::alpha(eps, default_solver());
        py::dict d;
        d["value"] = est.lower.fit.value_at_zero;
        d["error_bar"] = est.lower.fit.error_bar;
        d["upper"] = est.upper;
        d["compatible"] = est.compatible;
        d["theta_star"] = est.lower.theta_star;
        d["q_star"] = est.lower.q_star;
        return d;
      },
      py::arg("eps"), "Min-max estimate with the default grid ladder, next to the closed-form value.");
  m.def(
      "tangent_line", [](double q) { return qsl::tangent_line(q).a; }, py::arg("q"),
      "Slope a(q) of the line 1 - a x tangent to cos x + q sin x.");

  m.def(
      "qsl_time",
      [](double eps, double e, double de) { return qsl::qsl_time({eps, e, de}); },
      py::arg("eps"), py::arg("energy"), py::arg("spread"));
  m.def(
      "classify_regime",
      [](double eps, double e, double de) { return std::string(qsl::to_string(qsl::classify_regime({eps, e, de}))); },
      py::arg("eps"), py::arg("energy"), py::arg("spread"));
  m.def("orthogonality_time", &qsl::orthogonality_time, py::arg("energy"), py::arg("spread"));
  m.def("forbidden_floor", &qsl::forbidden_floor, py::arg("t"), py::arg("energy"), py::arg("spread"));
  m.def("touch_epsilon", &qsl::touch_epsilon, py::arg("xi"));

  m.def(
      "energy_moments",
      [](std::vector<double> levels, std::vector<qsl::cplx> amps) {
        const qsl::PureState s = make_state(std::move(levels), std::move(amps));
        return py::make_tuple(qsl::mean_energy(s), qsl::energy_spread(s));
      },
      py::arg("levels"), py::arg("amplitudes"), "(E, dE) measured from the ground level.");
  m.def(
      "survival_probability",
      [](std::vector<double> levels, std::vector<qsl::cplx> amps, double t) {
        return qsl::survival_probability(make_state(std::move(levels), std::move(amps)), t);
      },
      py::arg("levels"), py::arg("amplitudes"), py::arg("t"));
  m.def(
      "time_to_fidelity",
      [](std::vector<double> levels, std::vector<qsl::cplx> amps, double eps, double t_max) {
        return qsl::time_to_fidelity(make_state(std::move(levels), std::move(amps)), eps, t_max);
      },
      py::arg("levels"), py::arg("amplitudes"), py::arg("eps"), py::arg("t_max"),
      "First time P(t) = eps, or None.");
  m.def("two_level_crossing_time", &qsl::two_level_crossing_time, py::arg("xi"), py::arg("eps"));

  m.def("ratio_lower_bound", &qsl::ratio_lower_bound, py::arg("eps"), py::arg("m"));
  m.def(
      "ratio_curve",
      [](std::size_t m, std::size_t resolution) {
        std::vector<std::tuple<double, double, std::string>> out;
        for (const qsl::RatioPoint& p : qsl::ratio_curve(m, resolution).points) {
          out.emplace_back(p.eps, p.r_lower, qsl::to_string(p.branch));
        }
        return out;
      },
      py::arg("m"), py::arg("resolution") = 101, "List of (eps, r_lower, branch).");
  m.def(
      "entangled_speedup",
      [](double xi, double e0, std::size_t m) {
        const qsl::EntangledSpeedupReport r = qsl::entangled_speedup_check(xi, e0, m);
        py::dict d;
        d["touch_eps"] = r.touch_eps;
        d["crossing_time"] = r.crossing_time;
        d["qsl"] = r.qsl;
        d["relative_gap"] = r.relative_gap;
        d["separable_crossing"] = r.separable_crossing;
        d["ratio_lower"] = r.ratio_lower;
        d["separable_slower"] = r.separable_slower;
        return d;
      },
      py::arg("xi"), py::arg("e0"), py::arg("m"));

  m.def(
      "convexity_lambda",
      [](const std::string& f, double eps1, double eps2, double phi) {
        return qsl::convexity_lambda(bound_function(f), eps1, eps2, phi);
      },
      py::arg("f"), py::arg("eps1"), py::arg("eps2"), py::arg("phi"));
  m.def(
      "subadditivity_lambda",
      [](const std::string& f, double eps1, double eps2) {
        return qsl::subadditivity_lambda(bound_function(f), eps1, eps2);
      },
      py::arg("f"), py::arg("eps1"), py::arg("eps2"));
}
