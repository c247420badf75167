"""Special functions and quadrature used by the analytic formulas.

Provides the modified Bessel functions of the second kind K0 and K1 and
adaptive integration over semi-infinite domains.

K0/K1 use the classical two-regime evaluation:

* ``x <= 2``: ascending power series,
  ``K0(x) = -(ln(x/2) + gamma) I0(x) + sum_{k>=1} H_k q^k / (k!)^2`` and
  ``K1(x) = 1/x + ln(x/2) I1(x)
  - (x/4) sum_{k>=0} (H_k + H_{k+1} - 2 gamma) q^k / (k! (k+1)!)``
  with ``q = x^2/4`` and harmonic numbers ``H_k``;
* ``x > 2``: Chebyshev expansion of ``exp(x) sqrt(x) Kn(x)`` in the
  variable ``(8/x - 2)/2``.  The coefficient tables below were fitted
  against 50-digit reference values; the truncated expansions are
  accurate to ~3e-15 relative on [2, 700].

Both regimes comfortably exceed the 1e-12 relative-accuracy contract,
and the results underflow cleanly to 0 once ``exp(-x)`` leaves the
double range (x ~ 745).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

from scipy.integrate import quad

_EULER_GAMMA = 0.5772156649015329

# Chebyshev coefficients of exp(x)*sqrt(x)*K0(x) on x in [2, inf),
# argument (8/x - 2)/2 in (-1, 1].
_K0_CHEB = (
    1.2201515410329775,
    -0.031448101311964294,
    0.0015698838857299464,
    -0.00012849549581629797,
    1.3949813719049686e-05,
    -1.831755522670638e-06,
    2.7668136380517203e-07,
    -4.6604898725396045e-08,
    8.57403397169776e-09,
    -1.6975346313804114e-09,
    3.577395564965021e-10,
    -7.957371058372094e-11,
    1.8558843351001998e-11,
    -4.5151586173612184e-12,
    1.1403914849476375e-12,
    -2.990644768866938e-13,
    7.973621762857875e-14,
    -2.345531176691414e-14,
    5.728750807065808e-15,
    -1.0288066694859783e-15,
    9.02981393361794e-16,
    2.3684757858670006e-16,
)

# Same construction for exp(x)*sqrt(x)*K1(x).
_K1_CHEB = (
    1.3603130952422215,
    0.10392373657681732,
    -0.002857816859622912,
    0.00019521551847139957,
    -1.9361979741505664e-05,
    2.4064849479366044e-06,
    -3.501960603724541e-07,
    5.7410841458604975e-08,
    -1.0345762350520242e-08,
    2.0150495642449566e-09,
    -4.190356358198718e-10,
    9.218439345204387e-11,
    -2.130036887611671e-11,
    5.1390299423322475e-12,
    -1.2891983776815625e-12,
    3.33644223360352e-13,
    -9.029073784934856e-14,
    2.352192514839165e-14,
    -7.704947790898587e-15,
    2.9976021664879227e-15,
    -2.1464311809419693e-16,
    5.847174596359158e-16,
)


def _cheb_eval(s: float, coeffs) -> float:
    # Clenshaw recurrence for sum c_k T_k(s)
    b0 = 0.0
    b1 = 0.0
    for c in reversed(coeffs):
        b0, b1 = 2.0 * s * b0 - b1 + c, b0
    return b0 - s * b1


def _k0_small(x: float) -> float:
    q = 0.25 * x * x
    i0 = 1.0
    acc = 0.0
    term = 1.0
    h = 0.0
    for k in range(1, 30):
        term *= q / (k * k)
        h += 1.0 / k
        i0 += term
        acc += term * h
        if term * (h + 1.0) < 1e-18 * (i0 + acc):
            break
    return -(math.log(0.5 * x) + _EULER_GAMMA) * i0 + acc


def _k1_small(x: float) -> float:
    q = 0.25 * x * x
    i1 = 1.0
    term = 1.0
    acc = 1.0 - 2.0 * _EULER_GAMMA  # k = 0: H_0 + H_1 - 2 gamma = 1 - 2 gamma
    hk = 0.0
    hk1 = 1.0
    for k in range(1, 30):
        term *= q / (k * (k + 1))
        hk += 1.0 / k
        hk1 += 1.0 / (k + 1)
        i1 += term
        acc += term * (hk + hk1 - 2.0 * _EULER_GAMMA)
        if term * (hk + hk1 + 2.0) < 1e-18 * (abs(acc) + i1):
            break
    i1 *= 0.5 * x
    return 1.0 / x + math.log(0.5 * x) * i1 - 0.25 * x * acc


def bessel_k0(x: float) -> float:
    """Modified Bessel function of the second kind, order 0."""
    if not x > 0.0:
        raise ValueError(f"K0 requires x > 0 (diverges at 0), got {x}")
    if x <= 2.0:
        return _k0_small(x)
    return _cheb_eval(4.0 / x - 1.0, _K0_CHEB) * math.exp(-x) / math.sqrt(x)


def bessel_k1(x: float) -> float:
    """Modified Bessel function of the second kind, order 1."""
    if not x > 0.0:
        raise ValueError(f"K1 requires x > 0 (diverges at 0), got {x}")
    if x <= 2.0:
        return _k1_small(x)
    return _cheb_eval(4.0 / x - 1.0, _K1_CHEB) * math.exp(-x) / math.sqrt(x)


@dataclass(frozen=True)
class QuadratureSettings:
    """Tolerances for the adaptive integrators.

    `tail_cutoff_factor` bounds the relative size at which the running
    tail of an iteratively extended integral counts as converged (used
    by the capacity outer integral, which doubles its upper limit until
    the last doubling contributes less than `rel_tol` of the total).
    """

    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000
    tail_cutoff_factor: float = 1.0

    def __post_init__(self):
        if not (self.rel_tol > 0.0 and self.abs_tol > 0.0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if not self.tail_cutoff_factor > 0.0:
            raise ValueError("tail_cutoff_factor must be positive")


DEFAULT_QUADRATURE = QuadratureSettings()


class QuadratureWarning(UserWarning):
    """Raised (as a warning) when the adaptive integrator does not meet
    its tolerance budget; the partial value is still returned."""


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    converged: bool
    message: str = ""


def integrate_semi_infinite(
    f: Callable[[float], float],
    lower: float,
    settings: QuadratureSettings = DEFAULT_QUADRATURE,
) -> QuadratureResult:
    """Integrate ``f`` over ``(lower, inf)`` adaptively.

    The semi-infinite domain is mapped onto a finite interval through
    the rational substitution used by QUADPACK's QAGI routine
    (equivalent to z = lower + t/(1-t)) and integrated with adaptive
    Gauss-Kronrod rules.  The integrand must decay towards the upper
    end; it may evaluate to exactly 0 at `lower`.

    Non-convergence within `max_subdivisions` is reported through a
    :class:`QuadratureWarning` together with the partial value, never
    by discarding the result.
    """
    out = quad(
        f,
        lower,
        math.inf,
        epsabs=settings.abs_tol,
        epsrel=settings.rel_tol,
        limit=settings.max_subdivisions,
        full_output=True,
    )
    value, err = out[0], out[1]
    if len(out) > 3:  # quad appends a message only when in trouble
        message = str(out[3])
        warnings.warn(
            f"quadrature did not converge: {message} "
            f"(partial value {value:.6g}, error estimate {err:.3g})",
            QuadratureWarning,
            stacklevel=2,
        )
        return QuadratureResult(value, err, False, message)
    return QuadratureResult(value, err, True)


def clamped_exp(exponent: float) -> float:
    """exp() that treats any exponent below the double underflow point
    as exactly 0 instead of risking overflow/NaN downstream."""
    if exponent < -745.0:
        return 0.0
    return math.exp(exponent)
