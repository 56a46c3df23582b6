"""Evaluation metrics: GED score, SSIM/MSSIM, CSR, and BLEU."""

from __future__ import annotations

from collections.abc import Sequence

from .bleu import bleu
from .ged import GedResult, ged_anytime, ged_exact, ged_lower_bound, ged_score
from .graph import CircuitGraph, netlist_to_graph
from .ssim import SsimParams, gaussian_window, mssim, ssim

__all__ = [
    "CircuitGraph",
    "GedResult",
    "SsimParams",
    "bleu",
    "csr",
    "gaussian_window",
    "ged_anytime",
    "ged_exact",
    "ged_lower_bound",
    "ged_score",
    "mssim",
    "netlist_to_graph",
    "ssim",
]


def csr(outcomes: Sequence[bool]) -> float:
    """Compilation success rate: compilable samples over reference count."""
    if not outcomes:
        raise ValueError("CSR needs at least one reference sample")
    return sum(1 for ok in outcomes if ok) / len(outcomes)
