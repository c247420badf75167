"""Domain types shared by every other module.

A relay link is described by :class:`SystemParams` (powers, distances,
path loss, noise variances, fading means, rate), a :class:`Protocol`
selecting how the relay splits its resources between energy harvesting
and information processing, and a :class:`TransmissionMode` selecting
the performance metric (outage-based or capacity-based throughput).
All types are immutable values; invalid parameter combinations are
rejected at construction time.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from enum import Enum


class ProtocolKind(Enum):
    TSR = "tsr"
    PSR = "psr"
    IDEAL = "ideal"


@dataclass(frozen=True)
class Protocol:
    """Relaying protocol selector.

    TSR carries the harvesting time fraction (alpha), PSR the
    power-splitting ratio (rho); the ideal receiver harvests and decodes
    the same signal so it has no free fraction.
    """

    kind: ProtocolKind
    fraction: float | None = None

    def __post_init__(self):
        if self.kind is ProtocolKind.IDEAL:
            if self.fraction is not None:
                raise ValueError("ideal receiver takes no harvesting fraction")
        else:
            if self.fraction is None:
                raise ValueError(f"{self.kind.value} requires a fraction in [0, 1]")
            if not 0.0 <= self.fraction <= 1.0:
                raise ValueError(
                    f"{self.kind.value} fraction must lie in [0, 1], got {self.fraction}"
                )

    @classmethod
    def tsr(cls, alpha: float) -> "Protocol":
        return cls(ProtocolKind.TSR, float(alpha))

    @classmethod
    def psr(cls, rho: float) -> "Protocol":
        return cls(ProtocolKind.PSR, float(rho))

    @classmethod
    def ideal(cls) -> "Protocol":
        return cls(ProtocolKind.IDEAL, None)

    def with_fraction(self, fraction: float) -> "Protocol":
        if self.kind is ProtocolKind.IDEAL:
            raise ValueError("ideal receiver takes no harvesting fraction")
        return Protocol(self.kind, float(fraction))

    def label(self) -> str:
        if self.kind is ProtocolKind.IDEAL:
            return "ideal"
        return f"{self.kind.value}({self.fraction:g})"


class TransmissionMode(Enum):
    DELAY_LIMITED = "delay-limited"
    DELAY_TOLERANT = "delay-tolerant"


class Method(Enum):
    """How an outage probability / ergodic capacity is evaluated."""

    EXACT = "exact"
    HIGH_SNR = "high-snr"
    MONTE_CARLO = "monte-carlo"


# positivity/range checks applied at construction and by validate()
_POSITIVE = (
    "source_power",
    "dist_source_relay",
    "dist_relay_dest",
    "path_loss_exponent",
    "fading_mean_sr",
    "fading_mean_rd",
    "rate",
    "block_time",
)
_NONNEGATIVE = ("antenna_noise_var", "conversion_noise_var")


@dataclass(frozen=True)
class SystemParams:
    """Physical parameters of one source -> relay -> destination link.

    Defaults follow the usual normalized setup: unit source power and
    distances, unit fading means, path loss exponent 2.7 (urban
    cellular), equal antenna/conversion noise variances of 0.01, and a
    3 bits/sec/Hz fixed rate.  `block_time` is kept for completeness
    but cancels out of every throughput formula, so it defaults to 1
    and never affects results.
    """

    source_power: float = 1.0
    harvesting_efficiency: float = 1.0
    dist_source_relay: float = 1.0
    dist_relay_dest: float = 1.0
    path_loss_exponent: float = 2.7
    antenna_noise_var: float = 0.01
    conversion_noise_var: float = 0.01
    fading_mean_sr: float = 1.0
    fading_mean_rd: float = 1.0
    rate: float = 3.0
    block_time: float = 1.0

    def __post_init__(self):
        for name in _POSITIVE:
            v = getattr(self, name)
            if not v > 0.0:
                raise ValueError(f"{name} must be positive, got {v}")
        for name in _NONNEGATIVE:
            v = getattr(self, name)
            if v < 0.0:
                raise ValueError(f"{name} must be nonnegative, got {v}")
        if not 0.0 < self.harvesting_efficiency <= 1.0:
            raise ValueError(
                f"harvesting_efficiency must lie in (0, 1], got {self.harvesting_efficiency}"
            )
        if self.antenna_noise_var == 0.0 and self.conversion_noise_var == 0.0:
            raise ValueError(
                "at least one of antenna_noise_var, conversion_noise_var must be "
                "positive (a noiseless link has unbounded SNR and no outage)"
            )

    def replace(self, **changes) -> "SystemParams":
        kwargs = {f.name: getattr(self, f.name) for f in fields(self)}
        kwargs.update(changes)
        return SystemParams(**kwargs)


def validate(params: SystemParams) -> SystemParams:
    """Re-check every parameter invariant and hand the value back.

    Idempotent; construction already performs the same checks, so this
    only matters for objects built through unusual paths.
    """
    params.__post_init__()
    return params


@dataclass(frozen=True)
class ChannelRealization:
    """One block-fading draw: squared channel gain on each hop."""

    gain_sr_sq: float
    gain_rd_sq: float

    def __post_init__(self):
        if self.gain_sr_sq < 0.0 or self.gain_rd_sq < 0.0:
            raise ValueError("squared channel gains must be nonnegative")


def snr_threshold(rate: float) -> float:
    """SNR needed to decode `rate` bits/sec/Hz: 2**rate - 1."""
    if not rate > 0.0:
        raise ValueError(f"rate must be positive, got {rate}")
    return 2.0 ** rate - 1.0
