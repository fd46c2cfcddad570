#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wecp/optics.hpp"
#include "wecp/quantum_state.hpp"

namespace wecp {

// Tolerance on the normalization of input coefficients.
inline constexpr double kCoefficientNormTol = 1e-9;

// Transmittances this close to one are treated as "no step needed".
inline constexpr double kUnitTransmittanceTol = 1e-12;

/// Amplitudes a_1..a_N of a partially entangled W state, in party order.
/// Validated on construction: N >= 2, every |a_i| nonzero, and
/// sum |a_i|^2 = 1 within kCoefficientNormTol. Accepted vectors are then
/// rescaled to exact unit norm.
class WCoefficients {
 public:
  explicit WCoefficients(std::vector<Amplitude> amps);

  /// From squared moduli and optional phases in radians.
  static WCoefficients from_weights(const std::vector<double>& weights,
                                    const std::vector<double>& phases = {});

  const std::vector<Amplitude>& amps() const noexcept { return amps_; }
  std::size_t size() const noexcept { return amps_.size(); }
  std::vector<double> weights() const;
  std::vector<double> phases() const;

  /// Index of the smallest-modulus amplitude (first one on ties).
  std::size_t min_index() const;
  double min_weight() const;

 private:
  std::vector<Amplitude> amps_;
};

struct PlanStep {
  std::size_t party = 0;
  double transmittance = 1.0;
};

struct ProtocolPlan {
  std::vector<PlanStep> steps;
  std::size_t min_index = 0;
};

/// One optical element applied during a run, with the weights around it.
struct ElementRecord {
  enum class Kind { kPbs, kVbs, kDetector };
  Kind kind = Kind::kVbs;
  std::string description;
  double norm_in = 0.0;
  double norm_out = 0.0;
  // Detector only: kept and discarded branch probabilities.
  double kept_probability = 0.0;
  double discarded_probability = 0.0;
};

struct StepRecord {
  std::size_t party = 0;
  double transmittance = 1.0;
  ModeLabel detector{"?"};
  double kept_probability = 0.0;
  std::vector<ElementRecord> elements;
};

struct RunReport {
  Encoding encoding = Encoding::kModeOccupation;
  std::vector<double> step_probs;
  /// Final branch weight relative to the initial one.
  double total_prob = 0.0;
  PureState initial_state;
  PureState final_state;
  PureState target_state;
  double fidelity_to_target = 0.0;
  /// Mode holding each party's photon at the end of the run.
  std::vector<ModeLabel> final_labels;
  std::vector<StepRecord> steps;
};

/// "a1", "b1", ... for N <= 26 parties, "p1_1", "p2_1", ... beyond that.
std::vector<ModeLabel> default_party_labels(std::size_t n);

/// a_1|10..0> + ... + a_N|0..01>: one photon spread over the party modes.
PureState w_state_single_photon(const WCoefficients& c,
                                const std::vector<ModeLabel>& labels);

/// a_1|HV..V> + ... + a_N|V..VH>: one photon per party.
PureState w_state_polarization(const WCoefficients& c,
                               const std::vector<ModeLabel>& labels);

/// Equal-weight W state carrying the phases of `c`.
PureState target_w_state(const WCoefficients& c,
                         const std::vector<ModeLabel>& labels,
                         Encoding encoding = Encoding::kModeOccupation);

/// Attenuates every party above the smallest weight down to it:
/// t_i = |a_min|^2 / |a_i|^2, in descending order of |a_i|.
ProtocolPlan plan_transmittances(const WCoefficients& c);

RunReport run_single_photon_ecp(const WCoefficients& c);
RunReport run_single_photon_ecp(const WCoefficients& c,
                                const ProtocolPlan& plan,
                                std::optional<std::vector<ModeLabel>> labels =
                                    std::nullopt);

RunReport run_polarization_ecp(const WCoefficients& c);
RunReport run_polarization_ecp(const WCoefficients& c,
                               const ProtocolPlan& plan,
                               std::optional<std::vector<ModeLabel>> labels =
                                   std::nullopt);

/// N * min |a_i|^2.
double analytic_total_probability(const WCoefficients& c);

/// Closed-form kept probability of each plan step. With weights w_j and a
/// step on party i, the branch weight drops from W to W - (1 - t_i) w_i.
std::vector<double> analytic_step_probabilities(const WCoefficients& c,
                                                const ProtocolPlan& plan);

/// Random valid coefficients: weights uniform in [0.05, 1) then normalized,
/// phases uniform in [0, 2pi) when `with_phases` is set.
WCoefficients sample_coefficients(std::size_t n, std::mt19937_64& rng,
                                  bool with_phases = true);

}  // namespace wecp
