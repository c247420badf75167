"""Throughput analysis for amplify-and-forward relay links whose relay
powers itself by harvesting energy from the source's RF signal.

Three relaying protocols are covered: time-switching (TSR),
power-splitting (PSR), and the ideal receiver that harvests and decodes
the same signal.  For each, outage probability and ergodic capacity are
available by exact integration, by a closed-form high-SNR
approximation, and by Monte Carlo simulation, with throughput assembled
for delay-limited and delay-tolerant transmission and a numerical
search for the throughput-optimal harvesting fraction.
"""

from .analytic import (
    AnalyticMethod,
    DegenerateConstants,
    IntegralConstants,
    constants,
    ergodic_capacity,
    outage_probability,
    snr_cdf,
    snr_pdf,
)
from .experiments import (
    SweepResult,
    SweepRow,
    SweepSpec,
    emit,
    figure_preset,
    read_csv,
    run_sweep,
)
from .model import (
    ChannelRealization,
    Method,
    Protocol,
    ProtocolKind,
    SystemParams,
    TransmissionMode,
    snr_threshold,
    validate,
)
from .montecarlo import (
    McEstimate,
    McSettings,
    capacity_empirical,
    outage_empirical,
    sample_channel,
)
from .optimize import OptResult, optimize_fraction
from .snr import (
    NoiseDecomposition,
    harvested_energy,
    instantaneous_snr,
    noise_decomposition,
    relay_power,
)
from .specfun import (
    QuadratureSettings,
    QuadratureWarning,
    bessel_k0,
    bessel_k1,
    integrate_semi_infinite,
)
from .throughput import ThroughputResult, throughput

__version__ = "0.1.0"

__all__ = [
    "AnalyticMethod",
    "ChannelRealization",
    "DegenerateConstants",
    "IntegralConstants",
    "McEstimate",
    "McSettings",
    "Method",
    "NoiseDecomposition",
    "OptResult",
    "Protocol",
    "ProtocolKind",
    "QuadratureSettings",
    "QuadratureWarning",
    "SweepResult",
    "SweepRow",
    "SweepSpec",
    "SystemParams",
    "ThroughputResult",
    "TransmissionMode",
    "bessel_k0",
    "bessel_k1",
    "capacity_empirical",
    "constants",
    "emit",
    "ergodic_capacity",
    "figure_preset",
    "harvested_energy",
    "instantaneous_snr",
    "integrate_semi_infinite",
    "noise_decomposition",
    "optimize_fraction",
    "outage_empirical",
    "outage_probability",
    "read_csv",
    "relay_power",
    "run_sweep",
    "sample_channel",
    "snr_cdf",
    "snr_pdf",
    "snr_threshold",
    "throughput",
    "validate",
]
