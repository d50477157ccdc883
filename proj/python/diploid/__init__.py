"""Spatial diploid model with meiotic drive: simulation, mean field and theory."""

from ._core import (
    RateSet,
    Genotype,
    Regime,
    acceptance,
    classify,
    condition4_threshold,
    condition5_check,
    coupled,
    emit_config,
    encode_pgm,
    equivalence_check,
    fixation_speed_bound,
    hitting_probability,
    integrate,
    interior_fixed_point,
    invasion_walk,
    parse_config,
    path_tail_bound,
    phase_sweep,
    rhs,
    simulate,
    stability_report,
)

__all__ = [
    "RateSet",
    "Genotype",
    "Regime",
    "acceptance",
    "classify",
    "condition4_threshold",
    "condition5_check",
    "coupled",
    "emit_config",
    "encode_pgm",
    "equivalence_check",
    "fixation_speed_bound",
    "hitting_probability",
    "integrate",
    "interior_fixed_point",
    "invasion_walk",
    "parse_config",
    "path_tail_bound",
    "phase_sweep",
    "rhs",
    "simulate",
    "stability_report",
]
