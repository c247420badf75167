"""Command-line interface.

Four verbs:

* ``eval``     one operating point -> single-row table
* ``optimize`` best harvesting fraction for one protocol/mode
* ``sweep``    a SweepSpec built from flags or a JSON config file
* ``figure``   preset sweeps; writes the table and a rendered plot

Flags mirror the SystemParams field names; JSON config keys are
identical to the flag names.  The EHRELAY_OUTDIR environment variable
supplies the default output directory.  Exit status is 0 on success,
otherwise the number of failed sweep cells (capped at 255).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import fields
from pathlib import Path

from .experiments import (
    SWEEPABLE,
    SweepResult,
    SweepSpec,
    emit,
    figure_preset,
    run_sweep,
)
from .model import Method, Protocol, ProtocolKind, SystemParams, TransmissionMode
from .montecarlo import McSettings
from .optimize import optimize_fraction
from .throughput import throughput

_PARAM_FIELDS = [f.name for f in fields(SystemParams)]


def _add_param_flags(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("link parameters")
    for name in _PARAM_FIELDS:
        group.add_argument(f"--{name.replace('_', '-')}", type=float, dest=name)


def _add_mc_flags(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("Monte Carlo")
    group.add_argument("--realizations", type=int, default=100_000)
    group.add_argument("--seed", type=int, default=0)
    group.add_argument("--antithetic", action="store_true")


def _params_from_args(args, config: dict | None = None) -> SystemParams:
    kwargs = {}
    if config:
        kwargs.update({k: v for k, v in config.items() if k in _PARAM_FIELDS})
    for name in _PARAM_FIELDS:
        v = getattr(args, name, None)
        if v is not None:
            kwargs[name] = v
    return SystemParams(**kwargs)


def _mc_from_args(args) -> McSettings:
    return McSettings(
        num_realizations=args.realizations,
        master_seed=args.seed,
        antithetic=args.antithetic,
    )


def _parse_protocol(text: str) -> Protocol:
    """'ideal', or 'tsr'/'psr' with an optional ':fraction' suffix
    (default 0.5, used only when the sweep neither sweeps nor
    optimizes the fraction)."""
    name, _, frac = text.partition(":")
    name = name.strip().lower()
    if name == "ideal":
        if frac:
            raise argparse.ArgumentTypeError("ideal takes no fraction")
        return Protocol.ideal()
    if name not in ("tsr", "psr"):
        raise argparse.ArgumentTypeError(f"unknown protocol {name!r}")
    fraction = float(frac) if frac else 0.5
    return Protocol(ProtocolKind(name), fraction)


def _parse_mode(text: str) -> TransmissionMode:
    return TransmissionMode(text.strip().lower())


def _parse_method(text: str) -> Method:
    return Method(text.strip().lower())


def _out_dir(args) -> Path:
    if getattr(args, "output_dir", None):
        return Path(args.output_dir)
    return Path(os.environ.get("EHRELAY_OUTDIR", "."))


def _cmd_eval(args) -> int:
    params = _params_from_args(args)
    protocol = _parse_protocol(args.protocol)
    mode = _parse_mode(args.mode)
    method = _parse_method(args.method)
    mc = _mc_from_args(args)
    tp = throughput(params, protocol, mode, method, mc=mc)

    from .experiments import SweepRow  # single-row table, same schema as sweeps

    row = SweepRow(
        swept_param="fraction",
        swept_value=protocol.fraction if protocol.fraction is not None else 0.0,
        protocol=protocol.kind.value,
        fraction=protocol.fraction,
        mode=mode.value,
        method=method.value,
        p_out=tp.outage,
        capacity=tp.capacity,
        throughput=tp.throughput,
        stderr=tp.stderr,
    )
    emit(SweepResult(rows=(row,)), format=args.format, destination=args.output)
    return 0


def _cmd_optimize(args) -> int:
    params = _params_from_args(args)
    family = ProtocolKind(args.protocol.lower())
    mode = _parse_mode(args.mode)
    method = _parse_method(args.method)
    mc = _mc_from_args(args)
    res = optimize_fraction(
        params, family, mode, method, frac_tol=args.frac_tol, mc=mc
    )
    print(f"protocol        {family.value}")
    print(f"mode            {mode.value}")
    print(f"method          {method.value}")
    print(f"best_fraction   {res.best_fraction:.6g}")
    print(f"best_throughput {res.best_throughput:.10g}")
    print(f"evaluations     {res.evaluations}")
    print(f"bracket_width   {res.bracket_width:.3g}")
    if res.flat_objective:
        print("note            flat objective: throughput is zero everywhere")
    return 0


def _spec_from_args(args) -> tuple[SweepSpec, dict]:
    config = {}
    if args.config:
        try:
            config = json.loads(Path(args.config).read_text())
        except OSError as exc:
            raise SystemExit(f"cannot read config {args.config}: {exc}")

    param = args.param or config.get("swept_parameter")
    if param is None:
        raise SystemExit("sweep needs --param or a config with swept_parameter")
    if args.values is not None:
        values = tuple(float(v) for v in args.values.split(","))
    else:
        values = tuple(float(v) for v in config.get("values", ()))
    protocols = tuple(
        _parse_protocol(p)
        for p in (args.protocols.split(",") if args.protocols else config.get("protocols", ["tsr", "psr"]))
    )
    modes = tuple(
        _parse_mode(m)
        for m in (args.modes.split(",") if args.modes else config.get("modes", ["delay-limited"]))
    )
    methods = tuple(
        _parse_method(m)
        for m in (args.methods.split(",") if args.methods else config.get("methods", ["exact"]))
    )
    optimize = args.optimize or bool(config.get("optimize_fraction", False))
    coupling = args.coupling or config.get("coupling")
    spec = SweepSpec(
        swept_parameter=param,
        values=values,
        protocols=protocols,
        modes=modes,
        methods=methods,
        optimize_fraction=optimize,
        coupling=coupling,
    )
    return spec, config


def _finish_sweep(result: SweepResult, args, default_stem: str) -> int:
    out = args.output
    if out is None and args.plot:
        out = str(_out_dir(args) / f"{default_stem}.{args.format}")
    emit(result, format=args.format, destination=out)
    if args.plot:
        from .plotting import render_sweep

        plot_path = Path(out).with_suffix(".png")
        render_sweep(result, plot_path, title=default_stem)
        print(f"wrote {out} and {plot_path}", file=sys.stderr)
    failed = result.failed_cells
    if failed:
        print(f"{failed} sweep cell(s) failed", file=sys.stderr)
    return min(failed, 255)


def _cmd_sweep(args) -> int:
    spec, config = _spec_from_args(args)
    params = _params_from_args(args, config)
    mc = _mc_from_args(args)
    result = run_sweep(spec, params, mc)
    return _finish_sweep(result, args, f"sweep_{spec.swept_parameter}")


def _cmd_figure(args) -> int:
    spec = figure_preset(args.name)
    params = _params_from_args(args)
    mc = _mc_from_args(args)
    result = run_sweep(spec, params, mc)
    if args.output is None:
        args.output = str(_out_dir(args) / f"{args.name}.{args.format}")
    return _finish_sweep(result, args, args.name)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ehrelay",
        description=(
            "Outage, ergodic capacity and throughput analysis for relay links "
            "powered by RF energy harvesting."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one operating point")
    p_eval.add_argument("--protocol", required=True, help="tsr:FRAC, psr:FRAC or ideal")
    p_eval.add_argument("--mode", default="delay-limited")
    p_eval.add_argument("--method", default="exact")
    p_eval.add_argument("--format", choices=("csv", "json"), default="csv")
    p_eval.add_argument("--output", default=None, help="path or '-' for stdout")
    _add_param_flags(p_eval)
    _add_mc_flags(p_eval)
    p_eval.set_defaults(func=_cmd_eval)

    p_opt = sub.add_parser("optimize", help="find the best harvesting fraction")
    p_opt.add_argument("--protocol", required=True, choices=("tsr", "psr"))
    p_opt.add_argument("--mode", default="delay-limited")
    p_opt.add_argument("--method", default="exact")
    p_opt.add_argument("--frac-tol", type=float, default=1e-3)
    _add_param_flags(p_opt)
    _add_mc_flags(p_opt)
    p_opt.set_defaults(func=_cmd_optimize)

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep")
    p_sweep.add_argument("--config", default=None, help="JSON config file")
    p_sweep.add_argument("--param", choices=SWEEPABLE, default=None)
    p_sweep.add_argument("--values", default=None, help="comma-separated values")
    p_sweep.add_argument("--protocols", default=None, help="e.g. tsr,psr,ideal")
    p_sweep.add_argument("--modes", default=None)
    p_sweep.add_argument("--methods", default=None)
    p_sweep.add_argument("--optimize", action="store_true")
    p_sweep.add_argument("--coupling", default=None)
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.add_argument("--output", default=None)
    p_sweep.add_argument("--output-dir", default=None)
    p_sweep.add_argument("--plot", action="store_true")
    _add_param_flags(p_sweep)
    _add_mc_flags(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_fig = sub.add_parser("figure", help="run a preset figure sweep")
    p_fig.add_argument("name", help="fig3|fig4|fig5a|fig5b|fig6|fig7|fig8")
    p_fig.add_argument("--format", choices=("csv", "json"), default="csv")
    p_fig.add_argument("--output", default=None)
    p_fig.add_argument("--output-dir", default=None)
    p_fig.add_argument("--no-plot", dest="plot", action="store_false")
    _add_param_flags(p_fig)
    _add_mc_flags(p_fig)
    p_fig.set_defaults(func=_cmd_figure, plot=True)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
