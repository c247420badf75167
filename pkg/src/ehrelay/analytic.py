"""Closed-form and quadrature-based outage probability and ergodic
capacity for all three protocols.

Every analytic formula is parameterized by the constant tuple
(a, b, c, d, u) built from the link parameters and the SNR point of
interest (the fixed decoding threshold in delay-limited mode, the
running integration variable in delay-tolerant mode):

* exact outage / SNR CDF at gamma:
  ``1 - (1/lam_h) int_{d/c}^inf exp(-(z/lam_h + (a z + b)/((c z^2 - d z) lam_g))) dz``
* high-SNR approximation (drops b, the product of the two noise
  variances): ``1 - exp(-d/(c lam_h)) u K1(u)``
* exact SNR density:
  ``(1/(lam_h gamma)) int_{d/c}^inf (a z + b) c z^2 / ((c z^2 - d z)^2 lam_g)
  exp(...) dz``
* approximate density:
  ``u^2 K0(u) e^{-d/(c lam_h)} / (2 gamma) + d u K1(u) e^{-d/(c lam_h)} / (gamma c lam_h)``
* ergodic capacity: outer integral of density * log2(1 + gamma).

The z-integrand vanishes at the lower endpoint z = d/c (the exponent
diverges to -inf there), so quadrature starts at d/c + eps with
eps = 1e-12 * max(d/c, 1) and clamped exponentials, never producing
NaN.  A boundary fraction (c = 0, i.e. zero relay power with
probability one) is reported through :class:`DegenerateConstants`;
callers map it to outage 1 and capacity 0.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

from scipy.integrate import quad

from .model import Method, Protocol, ProtocolKind, SystemParams, snr_threshold
from .snr import noise_decomposition
from .specfun import (
    DEFAULT_QUADRATURE,
    QuadratureSettings,
    QuadratureWarning,
    bessel_k0,
    bessel_k1,
    clamped_exp,
    integrate_semi_infinite,
)

# analytic evaluators accept the two analytic variants of Method
AnalyticMethod = Method

# capacity tail doubling starts here and is capped defensively; the
# integrand decays at least like exp(-const*sqrt(gamma)) so the cap is
# never reached for valid parameters
_CAPACITY_FIRST_LIMIT = 64.0
_CAPACITY_MAX_LIMIT = 2.0 ** 40


class DegenerateConstants(ValueError):
    """The protocol fraction sits on a boundary where the relay never
    transmits (c = 0); outage is 1 and capacity 0 by convention."""


@dataclass(frozen=True)
class IntegralConstants:
    """The (a, b, c, d) tuple parameterizing the outage/capacity
    integrals, plus u = sqrt(4a / (c lam_h lam_g))."""

    a: float
    b: float
    c: float
    d: float
    u: float

    def __post_init__(self):
        for name in ("a", "b", "c", "d", "u"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"constant {name} must be nonnegative")


def constants(params: SystemParams, protocol: Protocol, snr_point: float) -> IntegralConstants:
    """Build the integral constants at the given SNR point.

    Raises :class:`DegenerateConstants` when the fraction is on a
    boundary that zeroes c.
    """
    if not snr_point > 0.0:
        raise ValueError(f"snr_point must be positive, got {snr_point}")
    noise = noise_decomposition(params, protocol)
    ps = params.source_power
    eta = params.harvesting_efficiency
    d1m = params.dist_source_relay ** params.path_loss_exponent
    d2m = params.dist_relay_dest ** params.path_loss_exponent
    s_r = noise.relay_total_var
    s_d = noise.dest_total_var
    g = snr_point

    if protocol.kind is ProtocolKind.TSR:
        alpha = protocol.fraction
        a = ps * d1m * d2m * s_d * g * (1.0 - alpha)
        b = d1m * d1m * d2m * s_r * s_d * g * (1.0 - alpha)
        c = 2.0 * eta * ps * ps * alpha
        d = 2.0 * eta * ps * d1m * s_r * g * alpha
    elif protocol.kind is ProtocolKind.PSR:
        rho = protocol.fraction
        a = ps * d1m * d2m * s_d * g * (1.0 - rho)
        b = d1m * d1m * d2m * s_r * s_d * g
        c = eta * ps * ps * rho * (1.0 - rho)
        d = eta * ps * d1m * s_r * g * rho
    else:
        a = ps * d1m * d2m * s_d * g
        b = d1m * d1m * d2m * s_r * s_d * g
        c = eta * ps * ps
        d = eta * ps * d1m * s_r * g

    if c == 0.0:
        raise DegenerateConstants(
            f"boundary fraction for {protocol.label()}: relay transmit power is zero"
        )
    u = math.sqrt(4.0 * a / (c * params.fading_mean_sr * params.fading_mean_rd))
    return IntegralConstants(a=a, b=b, c=c, d=d, u=u)


def _require_analytic(method: Method):
    if method not in (Method.EXACT, Method.HIGH_SNR):
        raise ValueError(f"analytic evaluator cannot use method {method}")


def _clamp_probability(p: float, settings: QuadratureSettings) -> float:
    if p < 0.0 or p > 1.0:
        excess = max(-p, p - 1.0)
        if excess > 10.0 * settings.rel_tol:
            warnings.warn(
                f"probability excursion {excess:.3g} beyond [0, 1] exceeds "
                f"10x the quadrature tolerance",
                QuadratureWarning,
                stacklevel=3,
            )
        p = min(max(p, 0.0), 1.0)
    return p


def outage_from_constants(
    k: IntegralConstants,
    fading_mean_sr: float,
    fading_mean_rd: float,
    method: Method = Method.EXACT,
    settings: QuadratureSettings = DEFAULT_QUADRATURE,
) -> float:
    """Evaluate P(SNR < snr_point) from a prepared constant tuple."""
    _require_analytic(method)
    lam_h = fading_mean_sr
    lam_g = fading_mean_rd

    if method is Method.HIGH_SNR:
        u_k1 = k.u * bessel_k1(k.u) if k.u > 0.0 else 1.0
        p = 1.0 - math.exp(-k.d / (k.c * lam_h)) * u_k1
        return _clamp_probability(p, settings)

    lo = k.d / k.c
    eps = 1e-12 * max(lo, 1.0)
    a, b, c, d = k.a, k.b, k.c, k.d

    def integrand(z):
        w = z * (c * z - d)
        if w <= 0.0:
            return 0.0
        return clamped_exp(-(z / lam_h + (a * z + b) / (w * lam_g)))

    res = integrate_semi_infinite(integrand, lo + eps, settings)
    return _clamp_probability(1.0 - res.value / lam_h, settings)


def outage_probability(
    params: SystemParams,
    protocol: Protocol,
    method: Method = Method.EXACT,
    settings: QuadratureSettings = DEFAULT_QUADRATURE,
) -> float:
    """Delay-limited outage probability at threshold 2**rate - 1."""
    gamma0 = snr_threshold(params.rate)
    try:
        k = constants(params, protocol, gamma0)
    except DegenerateConstants:
        return 1.0
    return outage_from_constants(
        k, params.fading_mean_sr, params.fading_mean_rd, method, settings
    )


def snr_cdf(
    params: SystemParams,
    protocol: Protocol,
    gamma: float,
    settings: QuadratureSettings = DEFAULT_QUADRATURE,
) -> float:
    """P(destination SNR < gamma), by the exact tail integral."""
    try:
        k = constants(params, protocol, gamma)
    except DegenerateConstants:
        return 1.0
    return outage_from_constants(
        k, params.fading_mean_sr, params.fading_mean_rd, Method.EXACT, settings
    )


def snr_pdf(
    params: SystemParams,
    protocol: Protocol,
    gamma: float,
    method: Method = Method.EXACT,
    settings: QuadratureSettings = DEFAULT_QUADRATURE,
) -> float:
    """Density of the destination SNR at gamma > 0."""
    _require_analytic(method)
    k = constants(params, protocol, gamma)  # DegenerateConstants propagates
    lam_h = params.fading_mean_sr
    lam_g = params.fading_mean_rd

    if method is Method.HIGH_SNR:
        damp = math.exp(-k.d / (k.c * lam_h))
        if k.u > 0.0:
            val = (
                k.u * k.u * bessel_k0(k.u) * damp / (2.0 * gamma)
                + k.d * k.u * bessel_k1(k.u) * damp / (gamma * k.c * lam_h)
            )
        else:  # u -> 0 limits: u^2 K0(u) -> 0, u K1(u) -> 1
            val = k.d * damp / (gamma * k.c * lam_h)
        return max(val, 0.0)

    lo = k.d / k.c
    eps = 1e-12 * max(lo, 1.0)
    a, b, c, d = k.a, k.b, k.c, k.d

    def integrand(z):
        w = z * (c * z - d)
        if w <= 0.0:
            return 0.0
        expo = z / lam_h + (a * z + b) / (w * lam_g)
        if expo > 745.0:
            return 0.0
        return (a * z + b) * c * z * z / (w * w * lam_g) * math.exp(-expo)

    res = integrate_semi_infinite(integrand, lo + eps, settings)
    return max(res.value / (lam_h * gamma), 0.0)


def ergodic_capacity(
    params: SystemParams,
    protocol: Protocol,
    method: Method = Method.EXACT,
    settings: QuadratureSettings = DEFAULT_QUADRATURE,
) -> float:
    """Mean of log2(1 + SNR) over the fading distribution.

    The outer gamma-integral nests the density's z-integral (nothing is
    precomputed: a, b, d all scale with gamma, so no caching across
    abscissae is sound).  The inner tolerance is tightened 10x relative
    to the outer.  The outer domain grows by doubling from 64 until the
    last doubling contributes less than rel_tol of the running total.
    """
    _require_analytic(method)
    try:
        constants(params, protocol, 1.0)
    except DegenerateConstants:
        return 0.0

    inner = replace(
        settings, rel_tol=settings.rel_tol / 10.0, abs_tol=settings.abs_tol / 10.0
    )

    def integrand(g):
        if g <= 0.0:
            return 0.0
        return snr_pdf(params, protocol, g, method, inner) * math.log2(1.0 + g)

    total = 0.0
    lo = 0.0
    hi = _CAPACITY_FIRST_LIMIT
    while True:
        piece, _ = quad(
            integrand,
            lo,
            hi,
            epsabs=settings.abs_tol,
            epsrel=settings.rel_tol,
            limit=settings.max_subdivisions,
        )
        total += piece
        if lo > 0.0 and abs(piece) < settings.tail_cutoff_factor * settings.rel_tol * max(
            abs(total), settings.abs_tol
        ):
            break
        if hi >= _CAPACITY_MAX_LIMIT:
            warnings.warn(
                f"capacity tail still contributing at gamma = {hi:g}; "
                f"result truncated",
                QuadratureWarning,
                stacklevel=2,
            )
            break
        lo, hi = hi, 2.0 * hi
    return max(total, 0.0)
