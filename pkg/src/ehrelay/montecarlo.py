"""Stochastic baseline: sample Rayleigh block-fading channels and
estimate outage probability and ergodic capacity empirically.

Channel gains |h|^2, |g|^2 are exponential (means lam_h, lam_g) drawn by
inverse CDF, -lam * ln(1 - U), from a counter-based Philox generator.
Realization i owns Philox counter block i (each block yields four
64-bit words; the first two become the two hops' uniforms), so a draw
is a pure function of (master_seed, realization index) and batch
generation is bit-identical to per-index generation.  Reductions are
single-pass numpy pairwise sums in fixed order, so estimates are
reproducible regardless of how the work could be scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.random import Generator, Philox

from .model import ChannelRealization, Protocol, ProtocolKind, SystemParams, snr_threshold
from .snr import noise_decomposition


@dataclass(frozen=True)
class McSettings:
    num_realizations: int = 100_000
    master_seed: int = 0
    antithetic: bool = False

    def __post_init__(self):
        if self.num_realizations < 1:
            raise ValueError("num_realizations must be >= 1")
        if not 0 <= self.master_seed < 2 ** 64:
            raise ValueError("master_seed must fit in 64 bits")


@dataclass(frozen=True)
class McEstimate:
    value: float
    stderr: float
    num_realizations: int

    @property
    def degenerate(self) -> bool:
        """True when the standard error carries no information
        (single sample, or an empirical probability of exactly 0/1)."""
        return self.num_realizations < 2 or self.stderr == 0.0


def sample_channel(params: SystemParams, mc: McSettings, index: int) -> ChannelRealization:
    """The block-fading draw owned by `index`; deterministic in
    (master_seed, index) and independent across indices."""
    if index < 0:
        raise ValueError("stream index must be nonnegative")
    rng = Generator(Philox(key=mc.master_seed).advance(index))
    u = rng.random(2)
    return ChannelRealization(
        gain_sr_sq=-params.fading_mean_sr * math.log(1.0 - u[0]),
        gain_rd_sq=-params.fading_mean_rd * math.log(1.0 - u[1]),
    )


def sample_channel_block(params: SystemParams, mc: McSettings):
    """All num_realizations draws as a pair of arrays (|h|^2, |g|^2).

    With antithetic pairing enabled, realization 2k keeps block k's
    uniforms and realization 2k+1 mirrors them (U -> 1-U), which the
    monotone inverse-CDF transform turns into negatively correlated
    gains.  Without it, realization i is exactly sample_channel(i).
    """
    n = mc.num_realizations
    rng = Generator(Philox(key=mc.master_seed))
    if mc.antithetic:
        m = (n + 1) // 2
        u = rng.random(4 * m).reshape(m, 4)[:, :2]
        mirrored = np.maximum(u, 1e-300)  # U = 0 would map to an infinite gain
        paired = np.empty((2 * m, 2))
        paired[0::2] = 1.0 - u
        paired[1::2] = mirrored
        v = paired[:n]
    else:
        v = 1.0 - rng.random(4 * n).reshape(n, 4)[:, :2]
    h2 = -params.fading_mean_sr * np.log(v[:, 0])
    g2 = -params.fading_mean_rd * np.log(v[:, 1])
    return h2, g2


def snr_samples(params: SystemParams, protocol: Protocol, mc: McSettings) -> np.ndarray:
    """Vectorized destination SNR over the full realization block."""
    h2, g2 = sample_channel_block(params, mc)
    noise = noise_decomposition(params, protocol)
    ps = params.source_power
    eta = params.harvesting_efficiency
    d1m = params.dist_source_relay ** params.path_loss_exponent
    d2m = params.dist_relay_dest ** params.path_loss_exponent
    s_r = noise.relay_total_var
    s_d = noise.dest_total_var

    if protocol.kind is ProtocolKind.TSR:
        alpha = protocol.fraction
        num = 2.0 * eta * ps * ps * h2 * h2 * g2 * alpha
        den = (
            2.0 * eta * ps * h2 * g2 * d1m * s_r * alpha
            + ps * h2 * d1m * d2m * s_d * (1.0 - alpha)
            + d1m * d1m * d2m * s_r * s_d * (1.0 - alpha)
        )
    elif protocol.kind is ProtocolKind.PSR:
        rho = protocol.fraction
        num = eta * ps * ps * h2 * h2 * g2 * rho * (1.0 - rho)
        den = (
            eta * ps * h2 * g2 * d1m * s_r * rho
            + ps * h2 * d1m * d2m * s_d * (1.0 - rho)
            + d1m * d1m * d2m * s_r * s_d
        )
    else:
        num = eta * ps * ps * h2 * h2 * g2
        den = (
            eta * ps * h2 * g2 * d1m * s_r
            + ps * h2 * d1m * d2m * s_d
            + d1m * d1m * d2m * s_r * s_d
        )
    return np.divide(num, den, out=np.zeros_like(num), where=den > 0.0)


def outage_empirical(params: SystemParams, protocol: Protocol, mc: McSettings) -> McEstimate:
    """Fraction of realizations whose SNR falls below 2**rate - 1."""
    gamma0 = snr_threshold(params.rate)
    snr = snr_samples(params, protocol, mc)
    n = mc.num_realizations
    p = float(np.count_nonzero(snr < gamma0)) / n
    stderr = math.sqrt(p * (1.0 - p) / n)
    return McEstimate(value=p, stderr=stderr, num_realizations=n)


def capacity_empirical(params: SystemParams, protocol: Protocol, mc: McSettings) -> McEstimate:
    """Sample mean of log2(1 + SNR) with its standard error."""
    snr = snr_samples(params, protocol, mc)
    rates = np.log2(1.0 + snr)
    n = mc.num_realizations
    mean = float(np.mean(rates))
    stderr = float(np.std(rates, ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return McEstimate(value=mean, stderr=stderr, num_realizations=n)
