#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sdpfeas/sdpfeas.hpp"

namespace py = pybind11;
using namespace sdpfeas;

namespace {

py::dict bound_dict(const BoundResult& r) {
  py::dict d;
  d["theorem"] = to_string(r.theorem);
  d["regime"] = to_string(r.regime);
  d["mu"] = r.mu;
  d["threshold"] = r.threshold;
  d["delta"] = r.delta;
  d["bound"] = r.valid() ? py::object(py::float_(r.bound)) : py::object(py::none());
  d["log_bound"] = r.valid() ? py::object(py::float_(r.log_bound)) : py::object(py::none());
  d["t"] = r.t ? py::object(py::float_(*r.t)) : py::object(py::none());
  if (r.sign_mode) d["sign_mode"] = to_string(*r.sign_mode);
  return d;
}

HazardModel model_from_dict(const py::dict& d) {
  auto json_mod = py::module_::import("json");
  const std::string text = py::str(json_mod.attr("dumps")(d));
  return parse_hazard_model(Json::parse(text));
}

SdpOutcome make_outcome(std::uint64_t l, double p, std::optional<double> K_hat,
                        std::optional<double> m_hat) {
  if (K_hat.has_value() != m_hat.has_value()) {
    throw InvalidInput("K_hat and m_hat must be given together");
  }
  std::optional<WeibullInjection> inj;
  if (K_hat) inj = WeibullInjection{*K_hat, *m_hat};
  return SdpOutcome(l, p, inj);
}

SignMode sign_mode(bool corrected) {
  return corrected ? SignMode::Corrected : SignMode::AsPublished;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Chernoff-bound feasibility analysis for software defect prediction";

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<AssumptionViolation>(m, "AssumptionViolation", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<WrongVariant>(m, "WrongVariant", base.ptr());

  m.def("false_omission_rate",
        [](std::int64_t tp, std::int64_t fn, std::int64_t fp, std::int64_t tn) {
          const auto r = false_omission_rate(confusion_from_counts(tp, fn, fp, tn));
          py::dict d;
          d["p"] = r.p;
          d["numerator"] = r.numerator;
          d["denominator"] = r.denominator;
          d["fraction"] = r.fraction();
          return d;
        },
        py::arg("tp"), py::arg("fn"), py::arg("fp"), py::arg("tn"));

  m.def("hazard_at", [](const py::dict& model, double t) { return hazard_at(model_from_dict(model), t); },
        py::arg("model"), py::arg("t"));
  m.def("cumulative_hazard",
        [](const py::dict& model, double t) { return cumulative_hazard(model_from_dict(model), t); },
        py::arg("model"), py::arg("t"));
  m.def("reliability_at",
        [](const py::dict& model, double t) { return reliability_at(model_from_dict(model), t); },
        py::arg("model"), py::arg("t"));
  m.def("reliability_tail_threshold",
        [](const py::dict& model, double t) {
          return reliability_tail_threshold(model_from_dict(model), t);
        },
        py::arg("model"), py::arg("t"));

  m.def("expected_reliability_bound_x",
        [](std::uint64_t l, double p, double t) {
          return expected_reliability_bound_x(SdpOutcome(l, p), t);
        },
        py::arg("l"), py::arg("p"), py::arg("t"));

  m.def("chernoff_lower_tail",
        [](double mu, double threshold) { return bound_dict(chernoff_lower_tail(mu, threshold)); },
        py::arg("mu"), py::arg("threshold"));

  m.def("bound",
        [](std::uint64_t l, double p, const py::dict& model, double t, const std::string& kind,
           std::optional<double> K_hat, std::optional<double> m_hat, bool corrected) {
          const auto o = make_outcome(l, p, K_hat, m_hat);
          BoundKind k;
          if (kind == "hazard") {
            k = BoundKind::Hazard;
          } else if (kind == "reliability") {
            k = BoundKind::Reliability;
          } else {
            throw InvalidInput("kind must be `hazard` or `reliability`");
          }
          return bound_dict(compute_bound(o, model_from_dict(model), t, k,
                                          o.is_y_variant() ? Variant::Y : Variant::X,
                                          sign_mode(corrected)));
        },
        py::arg("l"), py::arg("p"), py::arg("model"), py::arg("t"),
        py::arg("kind") = "hazard", py::arg("K_hat") = py::none(),
        py::arg("m_hat") = py::none(), py::arg("corrected") = true);

  m.def("exact_binomial_tail",
        [](std::uint64_t l, double p, double threshold) {
          return exact_binomial_tail({l, p, threshold});
        },
        py::arg("l"), py::arg("p"), py::arg("threshold"));

  m.def("mc_tail",
        [](std::uint64_t l, double p, double threshold, std::uint64_t trials, std::uint64_t seed,
           unsigned threads) {
          py::gil_scoped_release release;
          return mc_tail({l, p, threshold}, trials, seed, threads);
        },
        py::arg("l"), py::arg("p"), py::arg("threshold"), py::arg("trials"), py::arg("seed"),
        py::arg("threads") = 1);

  py::class_<TailEstimate>(m, "TailEstimate")
      .def_readonly("value", &TailEstimate::value)
      .def_readonly("log_value", &TailEstimate::log_value)
      .def_property_readonly("method", [](const TailEstimate& e) { return to_string(e.method); })
      .def_readonly("trials", &TailEstimate::trials)
      .def_readonly("stderr", &TailEstimate::stderr_)
      .def_readonly("seed", &TailEstimate::seed)
      .def("__eq__", [](const TailEstimate& a, const TailEstimate& b) { return a == b; })
      .def("__repr__", [](const TailEstimate& e) {
        return "TailEstimate(value=" + format_double(e.value) + ", method=" +
               to_string(e.method) + ")";
      });

  m.def("run_verify",
        [](const std::string& config_json, std::uint64_t seed, std::uint64_t mc_trials,
           double epsilon) {
          const auto config = parse_scenario(Json::parse(config_json));
          CampaignOptions options;
          options.seed = seed;
          options.mc_trials = mc_trials;
          options.exact = true;
          options.epsilon = epsilon;
          return report_to_json(run_campaign(config, options), "").dump();
        },
        py::arg("config_json"), py::arg("seed") = 0, py::arg("mc_trials") = 0,
        py::arg("epsilon") = 0.05,
        "Runs a verification campaign; returns the report as a JSON string.");

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = cli::run(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line tool in-process; returns (exit_code, stdout, stderr).");

  m.attr("__version__") = kToolVersion;
}
