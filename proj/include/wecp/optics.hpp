#pragma once

#include <optional>

#include "wecp/quantum_state.hpp"

namespace wecp {

/// Variable beam splitter acting on one occupied input port; the other
/// input port is vacuum. Transmitted amplitude sqrt(t), reflected
/// sqrt(1 - t), both real and nonnegative.
struct VbsSetting {
  ModeLabel input;
  ModeLabel out_transmit;
  ModeLabel out_reflect;
  double transmittance = 1.0;
};

/// Polarizing beam splitter. H from in_a and V from in_b leave through
/// out_c; V from in_a and H from in_b leave through out_d. in_b may be
/// left unwired (vacuum).
struct PbsWiring {
  ModeLabel in_a;
  std::optional<ModeLabel> in_b;
  ModeLabel out_c;
  ModeLabel out_d;

  /// Wiring that undoes this one. Requires in_b.
  PbsWiring mirrored() const;
};

struct BranchOutcome {
  PureState kept_state;
  /// Kept weight relative to the input weight.
  double probability = 0.0;
  /// Weight of the terms that fired the detector, computed from those terms
  /// directly rather than as 1 - probability.
  double discarded_probability = 0.0;
};

PureState apply_vbs(const PureState& state, const VbsSetting& setting);

PureState apply_pbs(const PureState& state, const PbsWiring& wiring);

/// Post-selects the branch in which a detector on `mode` sees no photon.
/// The kept state is not renormalized.
BranchOutcome detect_vacuum(const PureState& state, const ModeLabel& mode);

}  // namespace wecp
