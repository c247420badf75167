"""Parameter sweeps and machine-readable output.

A :class:`SweepSpec` names one swept parameter, its values, and the
(protocol x mode x method) grid to evaluate at each value; `run_sweep`
produces one row per combination in spec order.  Presets encode the
standard study sweeps: throughput versus harvesting fraction, optimal
throughput versus each noise variance, relay position (with the
d2 = 2 - d1 coupling), source rate, and harvesting efficiency.

Rows serialize to CSV (fixed column order, 10 significant digits) or
JSON (same field names); both are byte-deterministic for identical
inputs.  Per-cell evaluation failures are recorded in the row's `note`
and the sweep continues.
"""

from __future__ import annotations

import csv
import io
import json
import sys
import warnings
from dataclasses import asdict, dataclass
from pathlib import Path

from .model import Method, Protocol, ProtocolKind, SystemParams, TransmissionMode
from .montecarlo import McSettings
from .optimize import optimize_fraction
from .specfun import DEFAULT_QUADRATURE, QuadratureSettings
from .throughput import throughput

SWEEPABLE = (
    "fraction",
    "antenna_noise_var",
    "conversion_noise_var",
    "dist_source_relay",
    "rate",
    "harvesting_efficiency",
)

COUPLING_D2_MIRROR = "d2=2-d1"

CSV_COLUMNS = (
    "swept_param",
    "swept_value",
    "protocol",
    "fraction",
    "mode",
    "method",
    "p_out",
    "capacity",
    "throughput",
    "stderr",
    "note",
)


def _check_value(name: str, v: float):
    if name == "fraction" and not 0.0 <= v <= 1.0:
        raise ValueError(f"fraction value {v} outside [0, 1]")
    if name in ("antenna_noise_var", "conversion_noise_var") and v < 0.0:
        raise ValueError(f"{name} value {v} must be nonnegative")
    if name in ("dist_source_relay", "rate") and not v > 0.0:
        raise ValueError(f"{name} value {v} must be positive")
    if name == "harvesting_efficiency" and not 0.0 < v <= 1.0:
        raise ValueError(f"harvesting_efficiency value {v} outside (0, 1]")


@dataclass(frozen=True)
class SweepSpec:
    swept_parameter: str
    values: tuple[float, ...]
    protocols: tuple[Protocol, ...]
    modes: tuple[TransmissionMode, ...]
    methods: tuple[Method, ...]
    optimize_fraction: bool = False
    coupling: str | None = None

    def __post_init__(self):
        if self.swept_parameter not in SWEEPABLE:
            raise ValueError(
                f"unknown swept parameter {self.swept_parameter!r}; "
                f"expected one of {SWEEPABLE}"
            )
        if not self.values:
            raise ValueError("sweep needs at least one value")
        for v in self.values:
            _check_value(self.swept_parameter, v)
        if not self.protocols:
            raise ValueError("sweep needs at least one protocol")
        if not self.modes:
            raise ValueError("sweep needs at least one transmission mode")
        if not self.methods:
            raise ValueError("sweep needs at least one method")
        if self.coupling is not None:
            if self.coupling != COUPLING_D2_MIRROR:
                raise ValueError(f"unsupported coupling rule {self.coupling!r}")
            if self.swept_parameter != "dist_source_relay":
                raise ValueError("coupling applies only to dist_source_relay sweeps")
            if any(v >= 2.0 for v in self.values):
                raise ValueError("d2 = 2 - d1 requires d1 < 2")
        if self.swept_parameter == "fraction":
            if any(p.kind is ProtocolKind.IDEAL for p in self.protocols):
                raise ValueError("the ideal receiver has no fraction to sweep")
            if self.optimize_fraction:
                raise ValueError("cannot optimize the fraction while sweeping it")


@dataclass(frozen=True)
class SweepRow:
    swept_param: str
    swept_value: float
    protocol: str
    fraction: float | None
    mode: str
    method: str
    p_out: float | None
    capacity: float | None
    throughput: float | None
    stderr: float | None
    note: str = ""


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]

    @property
    def failed_cells(self) -> int:
        return sum(1 for r in self.rows if r.note.startswith("error:"))


def _apply_value(base: SystemParams, spec: SweepSpec, value: float) -> SystemParams:
    if spec.swept_parameter == "fraction":
        return base
    changes = {spec.swept_parameter: value}
    if spec.coupling == COUPLING_D2_MIRROR:
        changes["dist_relay_dest"] = 2.0 - value
    return base.replace(**changes)


def _evaluate_cell(
    params: SystemParams,
    spec: SweepSpec,
    value: float,
    protocol: Protocol,
    mode: TransmissionMode,
    method: Method,
    mc: McSettings,
    settings: QuadratureSettings,
):
    """Returns (fraction, ThroughputResult) for one sweep cell."""
    if spec.swept_parameter == "fraction":
        proto = protocol.with_fraction(value)
        return value, throughput(params, proto, mode, method, mc=mc, settings=settings)
    if spec.optimize_fraction and protocol.kind is not ProtocolKind.IDEAL:
        opt = optimize_fraction(
            params, protocol.kind, mode, method, mc=mc, settings=settings
        )
        proto = Protocol(protocol.kind, opt.best_fraction)
        return opt.best_fraction, throughput(
            params, proto, mode, method, mc=mc, settings=settings
        )
    return protocol.fraction, throughput(
        params, protocol, mode, method, mc=mc, settings=settings
    )


def run_sweep(
    spec: SweepSpec,
    base: SystemParams = SystemParams(),
    mc: McSettings = McSettings(),
    settings: QuadratureSettings = DEFAULT_QUADRATURE,
) -> SweepResult:
    """Evaluate every (value x protocol x mode x method) combination.

    Cell failures do not abort the sweep; they surface in the row note
    and in `SweepResult.failed_cells`.  Results are deterministic for
    identical inputs (the Monte Carlo seed is part of `mc`).
    """
    rows = []
    for value in spec.values:
        try:
            params = _apply_value(base, spec, value)
        except ValueError as exc:
            for protocol in spec.protocols:
                for mode in spec.modes:
                    for method in spec.methods:
                        rows.append(
                            SweepRow(
                                spec.swept_parameter, value, protocol.kind.value,
                                None, mode.value, method.value,
                                None, None, None, None, f"error: {exc}",
                            )
                        )
            continue
        for protocol in spec.protocols:
            for mode in spec.modes:
                for method in spec.methods:
                    note = ""
                    fraction = tp = None
                    with warnings.catch_warnings(record=True) as caught:
                        warnings.simplefilter("always")
                        try:
                            fraction, tp = _evaluate_cell(
                                params, spec, value, protocol, mode, method, mc, settings
                            )
                        except Exception as exc:
                            note = f"error: {exc}"
                    if caught and not note:
                        note = "; ".join(str(w.message) for w in caught)
                    rows.append(
                        SweepRow(
                            swept_param=spec.swept_parameter,
                            swept_value=value,
                            protocol=protocol.kind.value,
                            fraction=None if protocol.kind is ProtocolKind.IDEAL else fraction,
                            mode=mode.value,
                            method=method.value,
                            p_out=None if tp is None else tp.outage,
                            capacity=None if tp is None else tp.capacity,
                            throughput=None if tp is None else tp.throughput,
                            stderr=None if tp is None else tp.stderr,
                            note=note,
                        )
                    )
    return SweepResult(rows=tuple(rows))


# ---------------------------------------------------------------------------
# figure presets

_FRACTION_GRID = tuple(round(0.01 * i, 2) for i in range(1, 100))
_BOTH_MODES = (TransmissionMode.DELAY_LIMITED, TransmissionMode.DELAY_TOLERANT)
_DL_ONLY = (TransmissionMode.DELAY_LIMITED,)


def figure_preset(name: str) -> SweepSpec:
    """Sweep specification behind each standard figure of the study."""
    presets = {
        # throughput vs harvesting fraction, all three evaluation routes
        "fig3": SweepSpec(
            swept_parameter="fraction",
            values=_FRACTION_GRID,
            protocols=(Protocol.tsr(0.5), Protocol.psr(0.5)),
            modes=_BOTH_MODES,
            methods=(Method.EXACT, Method.HIGH_SNR, Method.MONTE_CARLO),
        ),
        # optimal fraction (and throughput) vs antenna noise variance
        "fig4": SweepSpec(
            swept_parameter="antenna_noise_var",
            values=tuple(round(0.01 * i, 2) for i in range(1, 11)),
            protocols=(Protocol.tsr(0.5), Protocol.psr(0.5)),
            modes=_DL_ONLY,
            methods=(Method.EXACT,),
            optimize_fraction=True,
        ),
        # optimal throughput vs antenna noise variance, incl. ideal bound
        "fig5a": SweepSpec(
            swept_parameter="antenna_noise_var",
            values=tuple(round(0.01 * i, 2) for i in range(1, 11)),
            protocols=(Protocol.tsr(0.5), Protocol.psr(0.5), Protocol.ideal()),
            modes=_BOTH_MODES,
            methods=(Method.EXACT,),
            optimize_fraction=True,
        ),
        # optimal throughput vs conversion noise variance
        "fig5b": SweepSpec(
            swept_parameter="conversion_noise_var",
            values=tuple(round(0.005 * i, 3) for i in range(1, 11)),
            protocols=(Protocol.tsr(0.5), Protocol.psr(0.5), Protocol.ideal()),
            modes=_BOTH_MODES,
            methods=(Method.EXACT,),
            optimize_fraction=True,
        ),
        # optimal throughput vs relay position on the line d2 = 2 - d1
        "fig6": SweepSpec(
            swept_parameter="dist_source_relay",
            values=tuple(round(0.5 + 0.1 * i, 1) for i in range(11)),
            protocols=(Protocol.tsr(0.5), Protocol.psr(0.5)),
            modes=_BOTH_MODES,
            methods=(Method.EXACT,),
            optimize_fraction=True,
            coupling=COUPLING_D2_MIRROR,
        ),
        # optimal delay-limited throughput vs source rate
        "fig7": SweepSpec(
            swept_parameter="rate",
            values=tuple(float(r) for r in range(1, 9)),
            protocols=(Protocol.tsr(0.5), Protocol.psr(0.5)),
            modes=_DL_ONLY,
            methods=(Method.EXACT,),
            optimize_fraction=True,
        ),
        # optimal throughput vs harvesting efficiency
        "fig8": SweepSpec(
            swept_parameter="harvesting_efficiency",
            values=tuple(round(0.1 * i, 1) for i in range(1, 11)),
            protocols=(Protocol.tsr(0.5), Protocol.psr(0.5)),
            modes=_BOTH_MODES,
            methods=(Method.EXACT,),
            optimize_fraction=True,
        ),
    }
    try:
        return presets[name]
    except KeyError:
        raise ValueError(
            f"unknown figure preset {name!r}; expected one of {sorted(presets)}"
        ) from None


# ---------------------------------------------------------------------------
# serialization

def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.10g}"
    return str(x)


def _rows_to_csv_text(result: SweepResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in result.rows:
        d = asdict(row)
        writer.writerow([_fmt(d[col]) for col in CSV_COLUMNS])
    return buf.getvalue()


def _rows_to_json_text(result: SweepResult) -> str:
    return json.dumps([asdict(row) for row in result.rows], indent=2) + "\n"


def emit(result: SweepResult, format: str = "csv", destination=None):
    """Write the sweep table as CSV or JSON.

    `destination` may be a path, "-" or None for standard output, or
    any writable text stream.
    """
    if format == "csv":
        text = _rows_to_csv_text(result)
    elif format == "json":
        text = _rows_to_json_text(result)
    else:
        raise ValueError(f"unknown output format {format!r}")

    if destination is None or destination == "-":
        sys.stdout.write(text)
    elif hasattr(destination, "write"):
        destination.write(text)
    else:
        path = Path(destination)
        try:
            path.write_text(text)
        except OSError as exc:
            raise OSError(f"cannot write sweep output to {path}: {exc}") from exc


def read_csv(source) -> SweepResult:
    """Parse a CSV produced by :func:`emit` back into rows."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        p = Path(source)
        if p.exists():
            text = p.read_text()
        else:
            text = str(source)
    reader = csv.DictReader(io.StringIO(text))
    rows = []
    for rec in reader:
        def num(col):
            return float(rec[col]) if rec[col] != "" else None
        rows.append(
            SweepRow(
                swept_param=rec["swept_param"],
                swept_value=float(rec["swept_value"]),
                protocol=rec["protocol"],
                fraction=num("fraction"),
                mode=rec["mode"],
                method=rec["method"],
                p_out=num("p_out"),
                capacity=num("capacity"),
                throughput=num("throughput"),
                stderr=num("stderr"),
                note=rec["note"],
            )
        )
    return SweepResult(rows=tuple(rows))
