#include "wecp/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "wecp/error.hpp"

namespace wecp {

WCoefficients::WCoefficients(std::vector<Amplitude> amps)
    : amps_(std::move(amps)) {
  if (amps_.size() < 2) {
    throw Error(ErrorKind::kBadCoefficients, "need at least two parties");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    const double w = std::norm(amps_[i]);
    if (!std::isfinite(w)) {
      throw Error(ErrorKind::kBadCoefficients, "non-finite coefficient");
    }
    if (w < kDefaultPruneEps) {
      throw Error(ErrorKind::kBadCoefficients,
                  "coefficient " + std::to_string(i + 1) + " is zero");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kCoefficientNormTol) {
    throw Error(ErrorKind::kBadCoefficients,
                "squared moduli sum to " + std::to_string(total) +
                    ", expected 1");
  }
  const double scale = 1.0 / std::sqrt(total);
  for (auto& a : amps_) a *= scale;
}

WCoefficients WCoefficients::from_weights(const std::vector<double>& weights,
                                          const std::vector<double>& phases) {
  if (!phases.empty() && phases.size() != weights.size()) {
    throw Error(ErrorKind::kBadCoefficients,
                "phase list length does not match coefficient count");
  }
  std::vector<Amplitude> amps;
  amps.reserve(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0)) {
      throw Error(ErrorKind::kBadCoefficients,
                  "squared modulus " + std::to_string(i + 1) +
                      " must be positive");
    }
    const double phase = phases.empty() ? 0.0 : phases[i];
    amps.push_back(std::polar(std::sqrt(weights[i]), phase));
  }
  return WCoefficients(std::move(amps));
}

std::vector<double> WCoefficients::weights() const {
  std::vector<double> w;
  w.reserve(amps_.size());
  for (const auto& a : amps_) w.push_back(std::norm(a));
  return w;
}

std::vector<double> WCoefficients::phases() const {
  std::vector<double> p;
  p.reserve(amps_.size());
  for (const auto& a : amps_) p.push_back(std::arg(a));
  return p;
}

std::size_t WCoefficients::min_index() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < amps_.size(); ++i) {
    if (std::norm(amps_[i]) < std::norm(amps_[best])) best = i;
  }
  return best;
}

double WCoefficients::min_weight() const {
  return std::norm(amps_[min_index()]);
}

std::vector<ModeLabel> default_party_labels(std::size_t n) {
  std::vector<ModeLabel> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (n <= 26) {
      labels.emplace_back(std::string(1, static_cast<char>('a' + i)) + "1");
    } else {
      labels.emplace_back("p" + std::to_string(i + 1) + "_1");
    }
  }
  return labels;
}

namespace {

void check_labels(const std::vector<ModeLabel>& labels, std::size_t n) {
  if (labels.size() != n) {
    throw Error(ErrorKind::kBadWiring, "expected " + std::to_string(n) +
                                           " party labels, got " +
                                           std::to_string(labels.size()));
  }
  ModeSet unique(labels.begin(), labels.end());
  if (unique.size() != labels.size()) {
    throw Error(ErrorKind::kBadWiring, "party labels must be distinct");
  }
}

PureState build_w_state(const std::vector<Amplitude>& amps,
                        const std::vector<ModeLabel>& labels,
                        Encoding encoding) {
  check_labels(labels, amps.size());
  std::vector<std::pair<Ket, Amplitude>> terms;
  terms.reserve(amps.size());
  for (std::size_t k = 0; k < amps.size(); ++k) {
    std::vector<Photon> photons;
    if (encoding == Encoding::kModeOccupation) {
      photons.push_back({labels[k], Polarization::kNone});
    } else {
      for (std::size_t j = 0; j < labels.size(); ++j) {
        photons.push_back(
            {labels[j], j == k ? Polarization::kH : Polarization::kV});
      }
    }
    terms.emplace_back(Ket(std::move(photons)), amps[k]);
  }
  return PureState(terms, ModeSet(labels.begin(), labels.end()), encoding);
}

std::string describe_vbs(const VbsSetting& s) {
  return "VBS " + s.input.name() + " -> " + s.out_transmit.name() + "/" +
         s.out_reflect.name() + " t=" + std::to_string(s.transmittance);
}

std::string describe_pbs(const PbsWiring& w) {
  std::string in = w.in_a.name();
  if (w.in_b) in += "," + w.in_b->name();
  return "PBS " + in + " -> " + w.out_c.name() + "/" + w.out_d.name();
}

// Applies one element and records the weights around it.
class Tracer {
 public:
  explicit Tracer(PureState state) : state_(std::move(state)) {}

  const PureState& state() const { return state_; }

  void vbs(const VbsSetting& s, StepRecord& rec) {
    const double before = norm_squared(state_);
    state_ = apply_vbs(state_, s);
    rec.elements.push_back({ElementRecord::Kind::kVbs, describe_vbs(s),
                            before, norm_squared(state_)});
  }

  void pbs(const PbsWiring& w, StepRecord& rec) {
    const double before = norm_squared(state_);
    state_ = apply_pbs(state_, w);
    rec.elements.push_back({ElementRecord::Kind::kPbs, describe_pbs(w),
                            before, norm_squared(state_)});
  }

  void detect(const ModeLabel& mode, StepRecord& rec) {
    const double before = norm_squared(state_);
    BranchOutcome outcome = detect_vacuum(state_, mode);
    state_ = std::move(outcome.kept_state);
    rec.detector = mode;
    rec.kept_probability = outcome.probability;
    rec.elements.push_back({ElementRecord::Kind::kDetector,
                            "detect " + mode.name(), before,
                            norm_squared(state_), outcome.probability,
                            outcome.discarded_probability});
  }

 private:
  PureState state_;
};

enum class Circuit { kSingleMode, kPolarization };

void check_plan(const ProtocolPlan& plan, std::size_t n) {
  std::vector<bool> seen(n, false);
  for (const auto& step : plan.steps) {
    if (step.party >= n || seen[step.party]) {
      throw Error(ErrorKind::kBadWiring,
                  "plan step refers to an invalid or repeated party");
    }
    seen[step.party] = true;
  }
}

RunReport run_ecp(const WCoefficients& c, const ProtocolPlan& plan,
                  std::optional<std::vector<ModeLabel>> labels,
                  Circuit circuit) {
  const std::size_t n = c.size();
  std::vector<ModeLabel> party = labels ? *labels : default_party_labels(n);
  check_plan(plan, n);
  const Encoding encoding = circuit == Circuit::kSingleMode
                                ? Encoding::kModeOccupation
                                : Encoding::kPolarization;

  RunReport report;
  report.encoding = encoding;
  report.initial_state = encoding == Encoding::kModeOccupation
                             ? w_state_single_photon(c, party)
                             : w_state_polarization(c, party);
  Tracer tracer(report.initial_state);

  for (const auto& step : plan.steps) {
    const ModeLabel& in = party[step.party];
    const std::string stem = in.stem();
    StepRecord rec;
    rec.party = step.party;
    rec.transmittance = step.transmittance;

    if (circuit == Circuit::kSingleMode) {
      auto out = tracer.state().fresh_labels(stem, 2);
      tracer.vbs({in, out[0], out[1], step.transmittance}, rec);
      tracer.detect(out[1], rec);
      party[step.party] = out[0];
    } else {
      // Split H (transmitted) from V (reflected), attenuate the H arm,
      // post-select on vacuum at the VBS dump port, then merge the arms.
      auto split = tracer.state().fresh_labels(stem, 2);
      tracer.pbs({in, std::nullopt, split[0], split[1]}, rec);
      auto vbs_out = tracer.state().fresh_labels(stem, 2);
      tracer.vbs({split[0], vbs_out[0], vbs_out[1], step.transmittance}, rec);
      tracer.detect(vbs_out[1], rec);
      auto merge = tracer.state().fresh_labels(stem, 2);
      tracer.pbs({vbs_out[0], split[1], merge[0], merge[1]}, rec);
      party[step.party] = merge[0];
    }
    report.step_probs.push_back(rec.kept_probability);
    report.steps.push_back(std::move(rec));
  }

  report.final_state = tracer.state();
  report.total_prob =
      norm_squared(report.final_state) / norm_squared(report.initial_state);
  report.target_state = target_w_state(c, party, encoding);
  report.fidelity_to_target =
      report.final_state.empty()
          ? 0.0
          : fidelity(report.final_state, report.target_state);
  report.final_labels = std::move(party);
  return report;
}

}  // namespace

PureState w_state_single_photon(const WCoefficients& c,
                                const std::vector<ModeLabel>& labels) {
  return build_w_state(c.amps(), labels, Encoding::kModeOccupation);
}

PureState w_state_polarization(const WCoefficients& c,
                               const std::vector<ModeLabel>& labels) {
  return build_w_state(c.amps(), labels, Encoding::kPolarization);
}

PureState target_w_state(const WCoefficients& c,
                         const std::vector<ModeLabel>& labels,
                         Encoding encoding) {
  const double mag = 1.0 / std::sqrt(static_cast<double>(c.size()));
  std::vector<Amplitude> amps;
  amps.reserve(c.size());
  for (const auto& a : c.amps()) amps.push_back(std::polar(mag, std::arg(a)));
  return build_w_state(amps, labels, encoding);
}

ProtocolPlan plan_transmittances(const WCoefficients& c) {
  const auto w = c.weights();
  ProtocolPlan plan;
  plan.min_index = c.min_index();
  const double w_min = w[plan.min_index];

  std::vector<std::size_t> order(w.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return w[i] > w[j]; });
  for (std::size_t i : order) {
    const double t = std::min(1.0, w_min / w[i]);
    if (std::abs(1.0 - t) <= kUnitTransmittanceTol) continue;
    plan.steps.push_back({i, t});
  }
  return plan;
}

RunReport run_single_photon_ecp(const WCoefficients& c) {
  return run_ecp(c, plan_transmittances(c), std::nullopt,
                 Circuit::kSingleMode);
}

RunReport run_single_photon_ecp(const WCoefficients& c,
                                const ProtocolPlan& plan,
                                std::optional<std::vector<ModeLabel>> labels) {
  return run_ecp(c, plan, std::move(labels), Circuit::kSingleMode);
}

RunReport run_polarization_ecp(const WCoefficients& c) {
  return run_ecp(c, plan_transmittances(c), std::nullopt,
                 Circuit::kPolarization);
}

RunReport run_polarization_ecp(const WCoefficients& c,
                               const ProtocolPlan& plan,
                               std::optional<std::vector<ModeLabel>> labels) {
  return run_ecp(c, plan, std::move(labels), Circuit::kPolarization);
}

double analytic_total_probability(const WCoefficients& c) {
  return static_cast<double>(c.size()) * c.min_weight();
}

std::vector<double> analytic_step_probabilities(const WCoefficients& c,
                                                const ProtocolPlan& plan) {
  const auto w = c.weights();
  double weight = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<double> probs;
  probs.reserve(plan.steps.size());
  for (const auto& step : plan.steps) {
    const double next = weight - (1.0 - step.transmittance) * w[step.party];
    probs.push_back(next / weight);
    weight = next;
  }
  return probs;
}

WCoefficients sample_coefficients(std::size_t n, std::mt19937_64& rng,
                                  bool with_phases) {
  std::uniform_real_distribution<double> weight_dist(0.05, 1.0);
  std::uniform_real_distribution<double> phase_dist(0.0,
                                                    2.0 * std::numbers::pi);
  std::vector<double> w(n);
  for (auto& x : w) x = weight_dist(rng);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& x : w) x /= total;
  std::vector<double> phases;
  if (with_phases) {
    phases.resize(n);
    for (auto& p : phases) p = phase_dist(rng);
  }
  return WCoefficients::from_weights(w, phases);
}

}  // namespace wecp
