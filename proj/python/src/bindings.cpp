#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "autocorr/errors.hpp"
#include "autocorr/fractal.hpp"
#include "autocorr/mellin.hpp"
#include "autocorr/series.hpp"
#include "autocorr/spectral.hpp"

namespace py = pybind11;
using namespace autocorr;

namespace {

BuiltinState make_state(const std::string& name, std::optional<double> beta, std::optional<double> alpha) {
  BuiltinState s;
  if (name == "psi1") {
    s = Psi1{};
  } else if (name == "psi2") {
    s = Psi2{};
  } else if (name == "psi3") {
    s = Psi3{};
  } else if (name == "psi4") {
    s = Psi4{};
  } else if (name == "chibeta") {
    if (!beta) throw ParameterDomainError("state chibeta requires beta");
    s = ChiBeta{*beta};
  } else if (name == "bloch") {
    if (!alpha) throw ParameterDomainError("state bloch requires alpha");
    s = Bloch{*alpha};
  } else {
    throw py::value_error("unknown state '" + name + "'");
  }
  validate(s);
  return s;
}

HarmonicSumSpec make_sum(const std::string& kind, double mu) {
  if (kind == "f1") return HarmonicSumSpec::f1(mu);
  if (kind == "f2") return HarmonicSumSpec::f2(mu);
  if (kind == "f3") return HarmonicSumSpec::f3(mu);
  throw py::value_error("unknown harmonic sum '" + kind + "'");
}

Part make_part(const std::string& part) {
  if (part == "re") return Part::Re;
  if (part == "im") return Part::Im;
  throw py::value_error("part must be 're' or 'im'");
}

py::dict series_dict(const SeriesValue& v) {
  py::dict d;
  d["value"] = v.value;
  d["truncation_bound"] = v.truncation_bound;
  d["terms_used"] = v.terms_used;
  return d;
}

py::dict expansion_dict(const AsymptoticExpansion& e) {
  py::list terms;
  for (const auto& term : e.terms) {
    py::dict d;
    d["coeff"] = term.coeff;
    d["power"] = term.power;
    d["log_power"] = term.log_power;
    terms.append(d);
  }
  py::dict out;
  out["variable"] = e.variable == ExpansionVariable::T ? "t" : "x";
  out["terms"] = terms;
  out["valid_order"] = e.valid_order;
  out["warnings"] = e.warnings;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Autocorrelation series, short-time expansions and fractal graph analysis.";

  // Leaked on purpose: the type must outlive interpreter finalization.
  static auto* error = new py::exception<Error>(m, "AutocorrError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const auto type = py::reinterpret_borrow<py::object>(error->ptr());
      py::object exc = type(e.what());
      exc.attr("code") = e.code();
      PyErr_SetObject(error->ptr(), exc.ptr());
    }
  });

  m.attr("DEFAULT_TOLERANCE") = kDefaultTolerance;
  m.attr("DEFAULT_DEPTH") = kDefaultDepth;

  m.def(
      "coefficients",
      [](const std::string& state, std::int64_t count, std::optional<double> beta, std::optional<double> alpha) {
        if (count < 1) throw py::value_error("count must be positive");
        return builtin_coefficients(make_state(state, beta, alpha)).prefix(count);
      },
      py::arg("state"), py::arg("count"), py::kw_only(), py::arg("beta") = py::none(),
      py::arg("alpha") = py::none(), "c_1 .. c_count of a builtin state.");

  m.def(
      "decay_exponent",
      [](const std::string& state, std::int64_t n_min, std::int64_t n_max, std::optional<double> beta) {
        return decay_exponent_fit(builtin_coefficients(make_state(state, beta, std::nullopt)), n_min, n_max);
      },
      py::arg("state"), py::arg("n_min"), py::arg("n_max"), py::kw_only(), py::arg("beta") = py::none(),
      "Log-log slope of |c_n| over the nonzero coefficients with n_min <= n <= n_max.");

  m.def(
      "autocorr",
      [](const std::string& state, double t, double tol, std::optional<double> beta, std::optional<double> alpha) {
        return series_dict(eval_autocorr(builtin_coefficients(make_state(state, beta, alpha)), t, tol));
      },
      py::arg("state"), py::arg("t"), py::arg("tol") = kDefaultTolerance, py::kw_only(),
      py::arg("beta") = py::none(), py::arg("alpha") = py::none(),
      "A(t) with a certified truncation bound.");

  m.def(
      "autocorr_period",
      [](const std::string& state, std::int64_t count, double tol, std::optional<double> beta,
         std::optional<double> alpha) {
        const auto p = sample_autocorr_period(builtin_coefficients(make_state(state, beta, alpha)), count, tol);
        py::dict d;
        d["dt"] = p.dt;
        d["values"] = p.values;
        d["truncation_bound"] = p.truncation_bound;
        return d;
      },
      py::arg("state"), py::arg("count"), py::arg("tol") = kDefaultTolerance, py::kw_only(),
      py::arg("beta") = py::none(), py::arg("alpha") = py::none(),
      "A(2 pi j / count) for j = 0 .. count - 1.");

  m.def("riemann", &eval_riemann, py::arg("t"), py::arg("tol") = kDefaultTolerance);
  m.def(
      "d_function", [](double t, double tol) { return series_dict(eval_d(t, tol)); }, py::arg("t"),
      py::arg("tol") = kDefaultTolerance);
  m.def(
      "bloch", [](double alpha, double t, double tol) { return series_dict(eval_bloch(alpha, t, tol)); },
      py::arg("alpha"), py::arg("t"), py::arg("tol") = kDefaultTolerance, "Bloch series B(t).");
  m.def("bloch_closed", &bloch_closed, py::arg("alpha"), py::arg("t"), "Closed form of B(t).");

  m.def(
      "expansion",
      [](const std::string& state, double depth, std::optional<double> beta) {
        return expansion_dict(autocorr_expansion(make_state(state, beta, std::nullopt), depth));
      },
      py::arg("state"), py::arg("depth") = kDefaultDepth, py::kw_only(), py::arg("beta") = py::none(),
      "Short-time expansion of A(t) in t.");

  m.def(
      "expand_sum",
      [](const std::string& kind, double mu, const std::string& part, double depth) {
        return expansion_dict(expand(make_sum(kind, mu), make_part(part), depth));
      },
      py::arg("kind"), py::arg("mu"), py::arg("part"), py::arg("depth") = kDefaultDepth,
      "Small-x expansion of one part of a harmonic sum f1, f2 or f3.");

  m.def(
      "box_count",
      [](std::vector<double> t, std::vector<double> values, std::optional<double> eps_max,
         std::optional<double> eps_min) {
        const SampledGraph g(std::move(t), std::move(values), Channel::Re, Spacing::Linear);
        const auto r = eps_max && eps_min ? box_count_dimension(g, *eps_max, *eps_min) : box_count_dimension(g);
        py::dict d;
        d["scales"] = r.scales;
        d["counts"] = r.counts;
        d["fitted_dimension"] = r.fitted_dimension;
        d["fit_residual"] = r.fit_residual;
        d["fit_range"] = py::make_tuple(r.fit_first, r.fit_last);
        return d;
      },
      py::arg("t"), py::arg("values"), py::arg("eps_max") = py::none(), py::arg("eps_min") = py::none(),
      "Box-counting dimension of a uniformly sampled graph.");

  m.def(
      "power_law_fit",
      [](std::vector<double> t, std::vector<double> values, double t_a, double t_b) {
        const SampledGraph g(std::move(t), std::move(values), Channel::Re, Spacing::Log);
        const auto f = power_law_fit(g, t_a, t_b);
        py::dict d;
        d["exponent"] = f.exponent;
        d["prefactor"] = f.prefactor;
        d["rms_residual"] = f.rms_residual;
        d["points"] = f.points;
        return d;
      },
      py::arg("t"), py::arg("values"), py::arg("t_a"), py::arg("t_b"),
      "Fit values = prefactor * t^exponent on a log-spaced grid.");

  m.def("log_grid", &log_grid, py::arg("start"), py::arg("stop"), py::arg("count"));
  m.def("linear_grid", &linear_grid, py::arg("start"), py::arg("stop"), py::arg("count"));
}
