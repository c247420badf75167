"""Per-channel-realization quantities: harvested energy, relay transmit
power, and the end-to-end destination SNR of each protocol.

Everything here is evaluated in the fully reduced algebraic forms (the
intermediate amplify-and-forward compositions cancel exactly, so using
them would only add rounding noise).
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import ChannelRealization, Protocol, ProtocolKind, SystemParams


@dataclass(frozen=True)
class NoiseDecomposition:
    """Total effective noise variance at the relay and the destination.

    The destination always sees antenna + conversion noise.  The relay
    sees the same in TSR and for the ideal receiver; under PSR only the
    fraction (1 - rho) of the antenna noise reaches the information
    path, so the relay total is (1 - rho)*antenna + conversion.
    """

    relay_total_var: float
    dest_total_var: float


def noise_decomposition(params: SystemParams, protocol: Protocol) -> NoiseDecomposition:
    dest = params.antenna_noise_var + params.conversion_noise_var
    if protocol.kind is ProtocolKind.PSR:
        relay = (1.0 - protocol.fraction) * params.antenna_noise_var + params.conversion_noise_var
    else:
        relay = params.antenna_noise_var + params.conversion_noise_var
    return NoiseDecomposition(relay_total_var=relay, dest_total_var=dest)


def harvested_energy(
    params: SystemParams, protocol: Protocol, ch: ChannelRealization
) -> float:
    """Energy (Joules) harvested by the relay in one block.

    TSR harvests for a fraction alpha of the block; PSR diverts a
    fraction rho of the received power for half the block; the ideal
    receiver harvests the full signal for half the block.
    """
    base = (
        params.harvesting_efficiency
        * params.source_power
        * ch.gain_sr_sq
        / params.dist_source_relay ** params.path_loss_exponent
    )
    t = params.block_time
    if protocol.kind is ProtocolKind.TSR:
        return base * protocol.fraction * t
    if protocol.kind is ProtocolKind.PSR:
        return base * protocol.fraction * (t / 2.0)
    return base * (t / 2.0)


def relay_power(params: SystemParams, protocol: Protocol, ch: ChannelRealization) -> float:
    """Relay transmit power: harvested energy spread over the relay's
    transmission interval ((1-alpha)T/2 for TSR, T/2 otherwise)."""
    eta_ps_h = (
        params.harvesting_efficiency
        * params.source_power
        * ch.gain_sr_sq
        / params.dist_source_relay ** params.path_loss_exponent
    )
    if protocol.kind is ProtocolKind.TSR:
        alpha = protocol.fraction
        if alpha == 1.0:
            raise ValueError(
                "TSR with alpha = 1 leaves no transmission interval; relay power diverges"
            )
        return 2.0 * eta_ps_h * alpha / (1.0 - alpha)
    if protocol.kind is ProtocolKind.PSR:
        return eta_ps_h * protocol.fraction
    return eta_ps_h


def instantaneous_snr(
    params: SystemParams, protocol: Protocol, ch: ChannelRealization
) -> float:
    """End-to-end SNR at the destination for one channel draw.

    TSR at alpha = 1 is the continuity limit Ps|h|^2/(d1^m sigma_r^2):
    the (1-alpha) denominator terms vanish and the formula below yields
    it automatically.  A zero denominator (zero gains) maps to SNR 0.
    """
    noise = noise_decomposition(params, protocol)
    ps = params.source_power
    eta = params.harvesting_efficiency
    h2 = ch.gain_sr_sq
    g2 = ch.gain_rd_sq
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

    if den == 0.0:
        return 0.0
    return num / den
