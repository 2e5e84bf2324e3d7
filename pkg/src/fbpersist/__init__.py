"""Persistence diagrams of graphs under inclusions and contractions."""

from .backward import (
    backward_contraction,
    backward_only,
    extended_fb,
    fb_persistence,
    ff_shortcut,
    fg_persistence,
    recover_backward,
    recover_forward,
    sigma_tau_persistence,
)
from .core import (
    INF,
    Contract,
    Filtration,
    Graph,
    HourglassSchedule,
    Include,
    IntermediateComplex,
    Permutation,
    PersistenceDiagram,
    PersistencePair,
    validate_filtration,
    validate_graph,
    vertex_to_full,
)
from .filtration import (
    backward_filtration,
    descending_schedule,
    intermediate_complexes,
    permute_filtration,
    sigma_forward_filtration,
    sublevel_steps,
    tau_backward_filtration,
)
from .forward import forward_inclusion
from .hourglass import hourglass_persistence, validate_schedule
from .metrics import bottleneck_distance, bottleneck_excluding_essential
from .oracle import oracle_diagram

__version__ = "0.1.0"

__all__ = [
    "INF",
    "Contract",
    "Filtration",
    "Graph",
    "HourglassSchedule",
    "Include",
    "IntermediateComplex",
    "Permutation",
    "PersistenceDiagram",
    "PersistencePair",
    "backward_contraction",
    "backward_filtration",
    "backward_only",
    "bottleneck_distance",
    "bottleneck_excluding_essential",
    "descending_schedule",
    "extended_fb",
    "fb_persistence",
    "ff_shortcut",
    "fg_persistence",
    "forward_inclusion",
    "hourglass_persistence",
    "intermediate_complexes",
    "oracle_diagram",
    "permute_filtration",
    "recover_backward",
    "recover_forward",
    "sigma_forward_filtration",
    "sigma_tau_persistence",
    "sublevel_steps",
    "tau_backward_filtration",
    "validate_filtration",
    "validate_graph",
    "validate_schedule",
    "vertex_to_full",
]
