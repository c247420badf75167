"""Numerical search for the throughput-maximizing harvesting fraction.

No closed form exists for the optimal TSR time fraction or PSR power
split, but throughput is cheap to evaluate and empirically unimodal in
the fraction, so a coarse scan brackets the maximum and golden-section
refinement narrows it.  The scan step (0.01) matches the granularity at
which the curves are normally plotted, and makes the search robust to
mild multimodality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import Method, Protocol, ProtocolKind, SystemParams, TransmissionMode
from .montecarlo import McSettings
from .specfun import DEFAULT_QUADRATURE, QuadratureSettings
from .throughput import throughput

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0  # 0.618...
_SCAN = [round(0.01 * i, 2) for i in range(1, 100)]


@dataclass(frozen=True)
class OptResult:
    best_fraction: float
    best_throughput: float
    evaluations: int
    bracket_width: float
    flat_objective: bool = False


def optimize_fraction(
    params: SystemParams,
    protocol_family: ProtocolKind,
    mode: TransmissionMode,
    method: Method = Method.EXACT,
    frac_tol: float = 1e-3,
    mc: McSettings | None = None,
    settings: QuadratureSettings = DEFAULT_QUADRATURE,
) -> OptResult:
    """Maximize throughput over the harvesting fraction in [0, 1].

    Scans {0.01, ..., 0.99} to bracket the maximum, then refines by
    golden-section search until the bracket is narrower than
    `frac_tol`.  Ties break toward the smaller fraction.  Monte Carlo
    objectives reuse the same seed at every fraction (common random
    numbers), so the search is deterministic for any method.

    A flat objective (all scan values zero) is reported through
    `flat_objective` instead of an arbitrary interior optimum.
    """
    if protocol_family is ProtocolKind.IDEAL:
        raise ValueError("the ideal receiver has no fraction to optimize")
    if not frac_tol > 0.0:
        raise ValueError("frac_tol must be positive")

    evals = 0

    def objective(fraction: float) -> float:
        nonlocal evals
        evals += 1
        proto = Protocol(protocol_family, fraction)
        return throughput(params, proto, mode, method, mc=mc, settings=settings).throughput

    scan_values = [objective(f) for f in _SCAN]
    best_i = max(range(len(_SCAN)), key=lambda i: (scan_values[i], -i))
    best_x, best_f = _SCAN[best_i], scan_values[best_i]

    if best_f <= 0.0:
        return OptResult(
            best_fraction=best_x,
            best_throughput=max(best_f, 0.0),
            evaluations=evals,
            bracket_width=0.01,
            flat_objective=True,
        )

    # bracket the scan maximum; the endpoints 0 and 1 carry zero
    # throughput, so they are valid outer fence posts
    lo = _SCAN[best_i - 1] if best_i > 0 else 0.0
    hi = _SCAN[best_i + 1] if best_i < len(_SCAN) - 1 else 1.0

    # golden-section refinement on [lo, hi]
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = objective(x1), objective(x2)
    while hi - lo > frac_tol:
        if f1 >= f2:  # >= keeps ties moving toward the smaller fraction
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = objective(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = objective(x2)
        for x, f in ((x1, f1), (x2, f2)):
            if f > best_f or (f == best_f and x < best_x):
                best_x, best_f = x, f

    return OptResult(
        best_fraction=best_x,
        best_throughput=best_f,
        evaluations=evals,
        bracket_width=hi - lo,
    )
