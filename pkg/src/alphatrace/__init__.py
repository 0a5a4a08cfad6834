"""Coalgebraic alpha-trace semantics: iterations, trace sequences, equivalences and oracles."""

from .kernel import (
    ConstructionError,
    Instance,
    InputError,
    Partition,
    TraceSequence,
    alpha_trace_equivalent,
    finite_depth_equivalent,
    finite_depth_partitions,
    first_split,
    iterate,
    trace_sequence,
)
from .report import LawReport
from .sysfile import ParseError, SystemDescription, load_system, make_instance, parse_system, render_system

__version__ = "0.1.0"

__all__ = [
    "ConstructionError",
    "Instance",
    "InputError",
    "LawReport",
    "ParseError",
    "Partition",
    "SystemDescription",
    "TraceSequence",
    "alpha_trace_equivalent",
    "finite_depth_equivalent",
    "finite_depth_partitions",
    "first_split",
    "iterate",
    "load_system",
    "make_instance",
    "parse_system",
    "render_system",
    "trace_sequence",
]
