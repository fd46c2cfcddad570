#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <tuple>
#include <vector>

#include "wecp/comparison.hpp"
#include "wecp/error.hpp"
#include "wecp/optics.hpp"
#include "wecp/protocols.hpp"

namespace py = pybind11;
using namespace wecp;

namespace {

using PyPhoton = std::pair<std::string, std::string>;
using PyTerm = std::pair<std::vector<PyPhoton>, Amplitude>;

Polarization parse_polarization(const std::string& s) {
  if (s == "H") return Polarization::kH;
  if (s == "V") return Polarization::kV;
  if (s.empty() || s == "-") return Polarization::kNone;
  throw Error(ErrorKind::kWrongConvention, "unknown polarization '" + s + "'");
}

PureState state_from_terms(const std::vector<PyTerm>& terms) {
  std::vector<std::pair<Ket, Amplitude>> out;
  out.reserve(terms.size());
  for (const auto& [photons, amp] : terms) {
    std::vector<Photon> ph;
    for (const auto& [mode, pol] : photons) {
      ph.push_back({ModeLabel(mode), parse_polarization(pol)});
    }
    out.emplace_back(Ket(std::move(ph)), amp);
  }
  return PureState(out);
}

std::vector<PyTerm> state_terms(const PureState& s) {
  std::vector<PyTerm> out;
  for (const auto& [ket, amp] : s.terms()) {
    std::vector<PyPhoton> ph;
    for (const auto& p : ket.photons()) {
      ph.emplace_back(p.mode.name(),
                      p.polarization == Polarization::kNone
                          ? std::string()
                          : std::string(to_string(p.polarization)));
    }
    out.emplace_back(std::move(ph), amp);
  }
  return out;
}

std::vector<ModeLabel> to_labels(const std::vector<std::string>& names) {
  return {names.begin(), names.end()};
}

std::vector<std::string> label_names(const std::vector<ModeLabel>& labels) {
  std::vector<std::string> out;
  for (const auto& l : labels) out.push_back(l.name());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "W-state entanglement concentration with linear optics";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  py::enum_<Encoding>(m, "Encoding")
      .value("MODE_OCCUPATION", Encoding::kModeOccupation)
      .value("POLARIZATION", Encoding::kPolarization);

  py::class_<ModeLabel>(m, "ModeLabel")
      .def(py::init<std::string>())
      .def_property_readonly("name", &ModeLabel::name)
      .def("__repr__", [](const ModeLabel& l) { return "ModeLabel('" + l.name() + "')"; });

  py::class_<PureState>(m, "PureState")
      .def(py::init(&state_from_terms), py::arg("terms"),
           "Terms as [([(mode, 'H'|'V'|''), ...], amplitude), ...]")
      .def_property_readonly("terms", &state_terms)
      .def_property_readonly("encoding", &PureState::encoding)
      .def_property_readonly("modes", [](const PureState& s) {
        std::vector<std::string> out;
        for (const auto& mlabel : s.modes()) out.push_back(mlabel.name());
        return out;
      })
      .def("__len__", &PureState::size)
      .def("__repr__", &PureState::to_string);

  m.def("norm_squared", &norm_squared);
  m.def("normalize", &normalize);
  m.def("fidelity", &fidelity);
  m.def("apply_vbs",
        [](const PureState& s, const std::string& in, const std::string& out_t,
           const std::string& out_r, double t) {
          return apply_vbs(s, {ModeLabel(in), ModeLabel(out_t), ModeLabel(out_r), t});
        },
        py::arg("state"), py::arg("input"), py::arg("out_transmit"),
        py::arg("out_reflect"), py::arg("transmittance"));
  m.def("detect_vacuum",
        [](const PureState& s, const std::string& mode) {
          BranchOutcome o = detect_vacuum(s, ModeLabel(mode));
          return std::make_tuple(std::move(o.kept_state), o.probability,
                                 o.discarded_probability);
        },
        "Returns (kept_state, kept_probability, discarded_probability).");

  py::class_<WCoefficients>(m, "WCoefficients")
      .def(py::init<std::vector<Amplitude>>(), py::arg("amps"))
      .def_static("from_weights", &WCoefficients::from_weights,
                  py::arg("weights"), py::arg("phases") = std::vector<double>{})
      .def_property_readonly("amps", &WCoefficients::amps)
      .def_property_readonly("weights", &WCoefficients::weights)
      .def_property_readonly("phases", &WCoefficients::phases)
      .def_property_readonly("min_index", &WCoefficients::min_index)
      .def("__len__", &WCoefficients::size);

  py::class_<PlanStep>(m, "PlanStep")
      .def(py::init<std::size_t, double>(), py::arg("party"), py::arg("transmittance"))
      .def_readwrite("party", &PlanStep::party)
      .def_readwrite("transmittance", &PlanStep::transmittance);

  py::class_<ProtocolPlan>(m, "ProtocolPlan")
      .def(py::init<>())
      .def(py::init([](std::vector<PlanStep> steps, std::size_t min_index) {
             return ProtocolPlan{std::move(steps), min_index};
           }),
           py::arg("steps"), py::arg("min_index") = 0)
      .def_readwrite("steps", &ProtocolPlan::steps)
      .def_readwrite("min_index", &ProtocolPlan::min_index);

  py::class_<RunReport>(m, "RunReport")
      .def_readonly("step_probs", &RunReport::step_probs)
      .def_readonly("total_prob", &RunReport::total_prob)
      .def_readonly("initial_state", &RunReport::initial_state)
      .def_readonly("final_state", &RunReport::final_state)
      .def_readonly("target_state", &RunReport::target_state)
      .def_readonly("fidelity_to_target", &RunReport::fidelity_to_target)
      .def_property_readonly("final_labels", [](const RunReport& r) {
        return label_names(r.final_labels);
      });

  m.def("default_party_labels",
        [](std::size_t n) { return label_names(default_party_labels(n)); });
  m.def("w_state_single_photon",
        [](const WCoefficients& c, const std::vector<std::string>& labels) {
          return w_state_single_photon(c, to_labels(labels));
        });
  m.def("w_state_polarization",
        [](const WCoefficients& c, const std::vector<std::string>& labels) {
          return w_state_polarization(c, to_labels(labels));
        });
  m.def("target_w_state",
        [](const WCoefficients& c, const std::vector<std::string>& labels,
           Encoding e) { return target_w_state(c, to_labels(labels), e); },
        py::arg("coefficients"), py::arg("labels"),
        py::arg("encoding") = Encoding::kModeOccupation);
  m.def("plan_transmittances", &plan_transmittances);
  m.def("run_single_photon_ecp",
        [](const WCoefficients& c, std::optional<ProtocolPlan> plan) {
          return plan ? run_single_photon_ecp(c, *plan) : run_single_photon_ecp(c);
        },
        py::arg("coefficients"), py::arg("plan") = py::none());
  m.def("run_polarization_ecp",
        [](const WCoefficients& c, std::optional<ProtocolPlan> plan) {
          return plan ? run_polarization_ecp(c, *plan) : run_polarization_ecp(c);
        },
        py::arg("coefficients"), py::arg("plan") = py::none());
  m.def("analytic_total_probability", &analytic_total_probability);
  m.def("analytic_step_probabilities", &analytic_step_probabilities);

  py::class_<PriorEcpParams>(m, "PriorEcpParams")
      .def(py::init([](double a, double b, double g, int n, int mm) {
             return PriorEcpParams{a, b, g, n, mm};
           }),
           py::arg("alpha"), py::arg("beta"), py::arg("gamma"),
           py::arg("iterations_step1") = kDefaultPriorCap,
           py::arg("iterations_step2") = kDefaultPriorCap)
      .def_readwrite("alpha", &PriorEcpParams::alpha)
      .def_readwrite("beta", &PriorEcpParams::beta)
      .def_readwrite("gamma", &PriorEcpParams::gamma)
      .def_readwrite("iterations_step1", &PriorEcpParams::iterations_step1)
      .def_readwrite("iterations_step2", &PriorEcpParams::iterations_step2);
  m.def("prior_step1_prob", &prior_step1_prob);
  m.def("prior_step2_prob", &prior_step2_prob);
  m.def("prior_total_prob", &prior_total_prob);

  py::class_<CurveSpec>(m, "CurveSpec")
      .def_readonly("id", &CurveSpec::id)
      .def_readonly("current_protocol", &CurveSpec::current_protocol)
      .def_readonly("cap1", &CurveSpec::cap1)
      .def_readonly("cap2", &CurveSpec::cap2);
  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("alpha", &SweepRow::alpha)
      .def_readonly("curve_id", &SweepRow::curve_id)
      .def_readonly("probability", &SweepRow::probability);
  m.def("default_curves", &default_curves);
  m.def("default_alpha_grid", &default_alpha_grid, py::arg("points") = 200);
  m.def("curve_value", &curve_value);
  m.def("figure3_sweep",
        [](const std::vector<double>& grid, std::optional<std::vector<CurveSpec>> curves) {
          return figure3_sweep(grid, curves ? *curves : default_curves()).rows;
        },
        py::arg("alpha_grid"), py::arg("curves") = py::none());
}
