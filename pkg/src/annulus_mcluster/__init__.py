"""Combinatorics of (m+2)-angulations of the annulus and coloured quivers
of type A~(p, q)."""

from .angulation import (
    Angulation,
    AngulationError,
    apply_symmetry,
    canonical_form,
    delta0,
    extend,
    factor_out,
    mutate,
    quiver_of,
    validate,
)
from .geometry import AnnulusConfig, crossing_number, flip, shift, swap_boundaries, tau
from .mutclass import (
    closed_form_count,
    enumerate_angulation_classes,
    enumerate_quiver_classes,
    verify_bijection,
)
from .quiver import ColouredQuiver, mutate_quiver, quiver_canonical

__all__ = [
    "Angulation",
    "AngulationError",
    "AnnulusConfig",
    "ColouredQuiver",
    "apply_symmetry",
    "canonical_form",
    "closed_form_count",
    "crossing_number",
    "delta0",
    "enumerate_angulation_classes",
    "enumerate_quiver_classes",
    "extend",
    "factor_out",
    "flip",
    "mutate",
    "mutate_quiver",
    "quiver_canonical",
    "quiver_of",
    "shift",
    "swap_boundaries",
    "tau",
    "validate",
    "verify_bijection",
]
