"""Assemble the end metric: throughput in bits/sec/Hz per unit block
time, for every (protocol, transmission mode) pair.

Delay-limited mode transmits at the fixed rate R and discounts outages;
delay-tolerant mode transmits at the ergodic capacity.  Both discount
the fraction of the block actually spent delivering information: half
the block for PSR and the ideal receiver, half of the post-harvest
remainder (1 - alpha)/2 for TSR.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import analytic, montecarlo
from .model import Method, Protocol, ProtocolKind, SystemParams, TransmissionMode
from .montecarlo import McSettings
from .specfun import DEFAULT_QUADRATURE, QuadratureSettings


@dataclass(frozen=True)
class ThroughputResult:
    throughput: float
    mode: TransmissionMode
    method: Method
    outage: float | None = None      # delay-limited intermediate
    capacity: float | None = None    # delay-tolerant intermediate
    stderr: float | None = None      # on throughput, Monte Carlo only

    @property
    def intermediate(self) -> float:
        return self.outage if self.mode is TransmissionMode.DELAY_LIMITED else self.capacity


def _time_share(protocol: Protocol) -> float:
    # fraction of the block spent on information delivery
    if protocol.kind is ProtocolKind.TSR:
        return (1.0 - protocol.fraction) / 2.0
    return 0.5


def throughput(
    params: SystemParams,
    protocol: Protocol,
    mode: TransmissionMode,
    method: Method = Method.EXACT,
    mc: McSettings | None = None,
    settings: QuadratureSettings = DEFAULT_QUADRATURE,
) -> ThroughputResult:
    """Throughput at the destination for one operating point.

    With ``method=MONTE_CARLO`` the intermediate metric comes from the
    empirical estimators (`mc` settings required) and its standard
    error is propagated linearly onto the throughput.
    """
    share = _time_share(protocol)

    if mode is TransmissionMode.DELAY_LIMITED:
        if method is Method.MONTE_CARLO:
            if mc is None:
                raise ValueError("Monte Carlo throughput requires McSettings")
            est = montecarlo.outage_empirical(params, protocol, mc)
            p_out, se = est.value, est.stderr
        else:
            p_out = analytic.outage_probability(params, protocol, method, settings)
            se = None
        tau = (1.0 - p_out) * params.rate * share
        return ThroughputResult(
            throughput=tau,
            mode=mode,
            method=method,
            outage=p_out,
            stderr=None if se is None else params.rate * share * se,
        )

    if method is Method.MONTE_CARLO:
        if mc is None:
            raise ValueError("Monte Carlo throughput requires McSettings")
        est = montecarlo.capacity_empirical(params, protocol, mc)
        cap, se = est.value, est.stderr
    else:
        cap = analytic.ergodic_capacity(params, protocol, method, settings)
        se = None
    return ThroughputResult(
        throughput=cap * share,
        mode=mode,
        method=method,
        capacity=cap,
        stderr=None if se is None else share * se,
    )
