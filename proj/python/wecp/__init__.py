"""Simulator for linear-optics concentration of partially entangled W states."""

from ._core import (
    CurveSpec,
    Encoding,
    Error,
    ModeLabel,
    PlanStep,
    PriorEcpParams,
    ProtocolPlan,
    PureState,
    RunReport,
    SweepRow,
    WCoefficients,
    analytic_step_probabilities,
    analytic_total_probability,
    curve_value,
    default_alpha_grid,
    default_curves,
    default_party_labels,
    detect_vacuum,
    apply_vbs,
    fidelity,
    figure3_sweep,
    norm_squared,
    normalize,
    plan_transmittances,
    prior_step1_prob,
    prior_step2_prob,
    prior_total_prob,
    run_polarization_ecp,
    run_single_photon_ecp,
    target_w_state,
    w_state_polarization,
    w_state_single_photon,
)

__all__ = [name for name in dir() if not name.startswith("_")]
