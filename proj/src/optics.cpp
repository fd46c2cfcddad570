#include "wecp/optics.hpp"

#include <cmath>
#include <vector>

#include "wecp/error.hpp"

namespace wecp {

PbsWiring PbsWiring::mirrored() const {
  if (!in_b) {
    throw Error(ErrorKind::kBadWiring,
                "mirroring a PBS needs both input ports wired");
  }
  return PbsWiring{out_c, out_d, in_a, *in_b};
}

PureState apply_vbs(const PureState& state, const VbsSetting& s) {
  const double t = s.transmittance;
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorKind::kBadTransmittance,
                "transmittance " + std::to_string(t) + " outside [0, 1]");
  }
  if (s.out_transmit == s.out_reflect) {
    throw Error(ErrorKind::kModeCollision,
                "VBS outputs share mode " + s.out_transmit.name());
  }
  for (const auto& [ket, amp] : state.terms()) {
    for (const ModeLabel* out : {&s.out_transmit, &s.out_reflect}) {
      if (*out != s.input && ket.occupies(*out)) {
        throw Error(ErrorKind::kModeCollision,
                    "VBS output " + out->name() + " is already occupied");
      }
    }
  }

  const double amp_t = std::sqrt(t);
  const double amp_r = std::sqrt(1.0 - t);
  std::vector<std::pair<Ket, Amplitude>> out;
  out.reserve(2 * state.size());
  for (const auto& [ket, amp] : state.terms()) {
    if (!ket.occupies(s.input)) {
      out.emplace_back(ket, amp);
      continue;
    }
    out.emplace_back(ket.moved(s.input, s.out_transmit), amp * amp_t);
    out.emplace_back(ket.moved(s.input, s.out_reflect), amp * amp_r);
  }

  ModeSet modes = state.modes();
  modes.insert(s.input);
  modes.insert(s.out_transmit);
  modes.insert(s.out_reflect);
  return PureState(out, std::move(modes), state.encoding(), state.prune_eps());
}

PureState apply_pbs(const PureState& state, const PbsWiring& w) {
  if (state.encoding() != Encoding::kPolarization) {
    throw Error(ErrorKind::kWrongConvention,
                "PBS needs a polarization-encoded state");
  }
  std::vector<const ModeLabel*> labels{&w.in_a, &w.out_c, &w.out_d};
  if (w.in_b) labels.push_back(&*w.in_b);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (*labels[i] == *labels[j]) {
        throw Error(ErrorKind::kBadWiring,
                    "PBS ports share mode " + labels[i]->name());
      }
    }
  }

  std::vector<std::pair<Ket, Amplitude>> out;
  out.reserve(state.size());
  for (const auto& [ket, amp] : state.terms()) {
    std::vector<Photon> photons;
    photons.reserve(ket.photon_count());
    for (const auto& p : ket.photons()) {
      const bool h = p.polarization == Polarization::kH;
      if (p.mode == w.in_a) {
        photons.push_back({h ? w.out_c : w.out_d, p.polarization});
      } else if (w.in_b && p.mode == *w.in_b) {
        photons.push_back({h ? w.out_d : w.out_c, p.polarization});
      } else {
        photons.push_back(p);
      }
    }
    // Ket rejects two photons landing in one output.
    out.emplace_back(Ket(std::move(photons)), amp);
  }

  ModeSet modes = state.modes();
  for (const auto* m : labels) modes.insert(*m);
  return PureState(out, std::move(modes), state.encoding(), state.prune_eps());
}

BranchOutcome detect_vacuum(const PureState& state, const ModeLabel& mode) {
  if (!state.has_mode(mode)) {
    throw Error(ErrorKind::kUnknownMode, "no mode named " + mode.name());
  }
  const double total = norm_squared(state);
  if (total == 0.0) {
    throw Error(ErrorKind::kZeroState, "detection on a zero state");
  }

  std::vector<std::pair<Ket, Amplitude>> kept;
  double discarded = 0.0;
  for (const auto& [ket, amp] : state.terms()) {
    if (ket.occupies(mode)) {
      discarded += std::norm(amp);
    } else {
      kept.emplace_back(ket, amp);
    }
  }
  PureState kept_state(kept, state.modes(), state.encoding(),
                       state.prune_eps());
  const double kept_prob = norm_squared(kept_state) / total;
  return BranchOutcome{std::move(kept_state), kept_prob, discarded / total};
}

}  // namespace wecp
