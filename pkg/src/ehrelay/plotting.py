"""Render sweep results to figure files.

Throughput curves are grouped one subplot per transmission mode, one
color per protocol; the exact analytic route draws solid lines, the
high-SNR approximation dashed lines, and Monte Carlo estimates markers
only, so the three routes can be compared at a glance the way the
standard verification figures do.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .experiments import SweepResult

_PROTO_COLOR = {"tsr": "tab:blue", "psr": "tab:red", "ideal": "tab:green"}
_AXIS_LABEL = {
    "fraction": "harvesting fraction",
    "antenna_noise_var": "antenna noise variance",
    "conversion_noise_var": "conversion noise variance",
    "dist_source_relay": "source-relay distance",
    "rate": "source rate (bits/sec/Hz)",
    "harvesting_efficiency": "harvesting efficiency",
}


def _style(method: str) -> dict:
    if method == "exact":
        return {"linestyle": "-", "marker": ""}
    if method == "high-snr":
        return {"linestyle": "--", "marker": ""}
    return {"linestyle": "", "marker": "o", "markersize": 3.5}


def render_sweep(result: SweepResult, path, title: str | None = None):
    """Plot throughput against the swept value and save to `path`."""
    rows = [r for r in result.rows if r.throughput is not None]
    if not rows:
        raise ValueError("nothing to plot: every sweep cell failed")

    modes = sorted({r.mode for r in rows})
    swept = rows[0].swept_param
    fig, axes = plt.subplots(
        1, len(modes), figsize=(5.2 * len(modes), 4.0), squeeze=False, sharex=True
    )

    for ax, mode in zip(axes[0], modes):
        series = {}
        for r in rows:
            if r.mode != mode:
                continue
            series.setdefault((r.protocol, r.method), []).append(
                (r.swept_value, r.throughput)
            )
        for (protocol, method), pts in sorted(series.items()):
            pts.sort()
            xs, ys = zip(*pts)
            ax.plot(
                xs,
                ys,
                color=_PROTO_COLOR.get(protocol, "tab:gray"),
                label=f"{protocol} ({method})",
                **_style(method),
            )
        ax.set_xlabel(_AXIS_LABEL.get(swept, swept))
        ax.set_ylabel("throughput (bits/sec/Hz)")
        ax.set_title(mode)
        ax.grid(True, alpha=0.4)
        ax.legend(fontsize=8)

    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
