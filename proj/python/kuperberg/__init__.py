"""Exact Hopf algebra computations and Kuperberg invariants of framed Heegaard diagrams."""

from ._core import (
    Cocycle,
    Diagram,
    HopfAlgebra,
    KuperbergError,
    builtin_diagram,
    builtin_diagram_names,
    catalog,
    catalog_names,
    cocycle_identity_suite,
    evaluate,
    exchange_identity_suite,
    gauge_check,
    idempotent_cocycle,
    integrals,
    load_cocycle,
    load_hopf,
    load_khd,
    parse_cocycle,
    parse_hopf,
    parse_khd,
    torus_closed_form,
    trace_identity_suite,
    weeks_closed_form,
)

__all__ = [name for name in dir() if not name.startswith("_")]
