"""Command-line front end.

Single-point evaluations, parameter sweeps, crossover searches and
applicability reports.  All lengths are nm, frequencies s^-1 (scientific
notation accepted).  Flags override an optional key-value config file
(--config), which overrides the built-in defaults.

Exit codes: 0 success (crossover found), 1 crossover not found,
2 usage error, 3 quadrature failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .anisotropic import crossover_thickness, f_parallel_ratio, f_perp_ratio
from .quadrature import QuadratureError, QuadratureSpec
from .sweep import (
    QUANTITIES,
    SweepAxis,
    SweepRequest,
    UsageError,
    evaluate_quantity,
    format_value,
    preset_fig2,
    preset_fig3,
    preset_fig4,
    run_sweep,
    array_slab,
    write_table,
)

# Built-in defaults; a config file and then explicit flags override them.
DEFAULTS = {
    "omega_p": 2.0e16,          # free-electron-gas bulk plasma frequency
    "eps_sub": 1.0,             # free-standing environment
    "eps_sup": 1.0,
    "radius": 2.0,
    "threshold": 0.01,
    "orientation": "both",
    "format": "csv",
    "rel_tol": 1.0e-8,
    "abs_tol": 1.0e-12,
    "p_transform": "hyperbolic",
    "curve_points": 25,
}

# eps_b defaults differ between the isotropic film and the nanotube array.
EPS_B_DEFAULT = {
    "iso-nonlocal": 9.0,
    "iso-thin": 9.0,
    "validity": 9.0,
    "aniso": 10.0,
    "main-terms": 10.0,
    "crossover": 10.0,
    "sweep": 9.0,
}

# CLI dest -> canonical parameter key used by the evaluators.
_PARAM_KEYS = {
    "l_nm": "l",
    "d_nm": "d",
    "eps_b": "eps_b",
    "omega_p": "omega_p",
    "eps_sub": "eps_sub",
    "eps_sup": "eps_sup",
    "radius_nm": "radius",
    "delta_nm": "delta",
    "layers": "layers",
    "threshold": "threshold",
    "d_min_nm": "d_min",
    "d_max_nm": "d_max",
}

_FLOAT_DESTS = {
    "l_nm", "d_nm", "eps_b", "omega_p", "eps_sub", "eps_sup", "radius_nm",
    "delta_nm", "threshold", "d_min_nm", "d_max_nm", "rel_tol", "abs_tol",
}
_INT_DESTS = {"layers", "points", "d_points", "l_points", "curve_points"}


def _add_common(parser: argparse.ArgumentParser, *names: str) -> None:
    spec = {
        "l_nm": dict(type=float, help="separation between slabs, nm"),
        "d_nm": dict(type=float, help="slab thickness, nm"),
        "eps_b": dict(type=float, help="in-plane background permittivity"),
        "omega_p": dict(type=float, help="bulk plasma frequency, 1/s"),
        "eps_sub": dict(type=float, help="substrate permittivity"),
        "eps_sup": dict(type=float, help="superstrate permittivity"),
        "radius_nm": dict(type=float, help="nanotube radius, nm"),
        "delta_nm": dict(type=float, help="array period, nm (default 2R)"),
        "layers": dict(type=int, help="number of monolayers (d = 2R layers)"),
        "orientation": dict(choices=("parallel", "perp", "both")),
        "threshold": dict(type=float, help="deviation threshold"),
        "d_min_nm": dict(type=float, help="lower thickness bracket, nm"),
        "d_max_nm": dict(type=float, help="upper thickness bracket, nm"),
        "out": dict(help="output file path"),
        "format": dict(choices=("csv", "json")),
        "curve_out": dict(help="CSV of the anisotropy curve over the bracket"),
        "curve_points": dict(type=int, help="points of the anisotropy curve"),
    }
    for name in names:
        flag = "--" + name.replace("_", "-")
        parser.add_argument(flag, default=None, **spec[name])
    parser.add_argument("--rel-tol", type=float, default=None)
    parser.add_argument("--abs-tol", type=float, default=None)
    parser.add_argument(
        "--p-transform", choices=("hyperbolic", "shifted-square"), default=None
    )
    parser.add_argument("--config", default=None, help="key = value file of flags")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="casimir-slabs",
        description="Casimir-Lifshitz attraction between ultrathin material slabs",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    _add_common(sub.add_parser("casimir", help="ideal-conductor pressure"), "l_nm")
    _add_common(
        sub.add_parser("lifshitz-local", help="local-metal force, 1/l correction"),
        "l_nm", "omega_p",
    )
    _add_common(
        sub.add_parser("iso-nonlocal", help="nonlocal isotropic-film force"),
        "l_nm", "d_nm", "eps_b", "omega_p", "eps_sub", "eps_sup",
    )
    _add_common(
        sub.add_parser("iso-thin", help="small-thickness closed form"),
        "l_nm", "d_nm", "eps_b", "omega_p", "eps_sub", "eps_sup",
    )
    _add_common(
        sub.add_parser("aniso", help="nanotube-array force, both orientations"),
        "l_nm", "d_nm", "layers", "radius_nm", "delta_nm", "eps_b", "omega_p",
        "eps_sub", "eps_sup", "orientation",
    )
    _add_common(sub.add_parser("main-terms", help="infinite-wp limits"), "eps_b")
    _add_common(
        sub.add_parser("crossover", help="orientation crossover thickness"),
        "l_nm", "d_min_nm", "d_max_nm", "radius_nm", "delta_nm", "eps_b",
        "omega_p", "eps_sub", "eps_sup", "curve_out", "curve_points",
    )
    _add_common(
        sub.add_parser("validity", help="film vs half-space applicability"),
        "l_nm", "d_nm", "eps_b", "omega_p", "eps_sub", "eps_sup", "threshold",
    )

    sweep = sub.add_parser("sweep", help="parameter grid to CSV/JSON")
    sweep.add_argument("--quantity", required=True, choices=QUANTITIES)
    sweep.add_argument(
        "--axis",
        action="append",
        default=None,
        metavar="NAME:FROM:TO:POINTS[:SPACING]",
        help="swept axis (name in d,l,eps_b,R,layers); up to two",
    )
    _add_common(
        sweep,
        "l_nm", "d_nm", "eps_b", "omega_p", "eps_sub", "eps_sup", "radius_nm",
        "delta_nm", "layers", "threshold", "d_min_nm", "d_max_nm", "out", "format",
    )

    preset = sub.add_parser("preset", help="standard figure data sets")
    preset.add_argument("name", choices=("fig2", "fig3", "fig4"))
    preset.add_argument("--points", type=int, default=None)
    preset.add_argument("--d-points", type=int, default=None)
    preset.add_argument("--l-points", type=int, default=None)
    preset.add_argument("--panels", default=None, help="fig4 panels, e.g. ab")
    _add_common(preset, "out")
    return parser


def _load_config(path: str) -> dict:
    values: dict[str, str] = {}
    with open(path) as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" in line:
                key, value = line.split("=", 1)
            elif ":" in line:
                key, value = line.split(":", 1)
            else:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _apply_config(args: argparse.Namespace) -> None:
    if not getattr(args, "config", None):
        return
    for dest, raw in _load_config(args.config).items():
        if not hasattr(args, dest) or getattr(args, dest) is not None:
            continue  # unknown key for this command, or flag already set
        if dest in _FLOAT_DESTS:
            value: object = float(raw)
        elif dest in _INT_DESTS:
            value = int(raw)
        else:
            value = raw
        setattr(args, dest, value)


def _get(args: argparse.Namespace, dest: str, command: str):
    value = getattr(args, dest, None)
    if value is not None:
        return value
    if dest == "eps_b":
        return EPS_B_DEFAULT.get(command)
    return DEFAULTS.get(dest.removesuffix("_nm"))


def _params(args: argparse.Namespace, command: str) -> dict:
    params = {}
    for dest, key in _PARAM_KEYS.items():
        if hasattr(args, dest):
            params[key] = _get(args, dest, command)
    return params


def _spec(args: argparse.Namespace) -> QuadratureSpec:
    return QuadratureSpec(
        rel_tol=getattr(args, "rel_tol", None) or DEFAULTS["rel_tol"],
        abs_tol=(
            DEFAULTS["abs_tol"]
            if getattr(args, "abs_tol", None) is None
            else args.abs_tol
        ),
        p_transform=getattr(args, "p_transform", None) or DEFAULTS["p_transform"],
    )


def _print_result(quantity: str, params: dict, outputs: dict) -> None:
    for key, value in outputs.items():
        print(f"{key}: {format_value(value)}")
    record = {
        "quantity": quantity,
        "params": {k: v for k, v in sorted(params.items()) if v is not None},
        **outputs,
    }
    print("RESULT " + json.dumps(record, sort_keys=True))


def run_point(quantity: str, params: dict, spec: QuadratureSpec) -> int:
    """Evaluate one configuration, print text plus a machine-readable line."""
    outputs = evaluate_quantity(quantity, params, spec)
    _print_result(quantity, params, outputs)
    failed = any(v == "quadrature_failed" for v in outputs.values())
    return 3 if failed else 0


def run_crossover(args: argparse.Namespace) -> int:
    params = _params(args, "crossover")
    spec = _spec(args)
    for key in ("l", "d_min", "d_max"):
        if params.get(key) is None:
            raise UsageError(f"crossover requires --{key.replace('_', '-')}-nm")
    if params["d_min"] >= params["d_max"]:
        raise UsageError(
            f"need d_min < d_max, got {params['d_min']} >= {params['d_max']}"
        )
    template = array_slab({**params, "d": params["d_max"]}, "crossover")
    result = crossover_thickness(
        template, params["l"], (params["d_min"], params["d_max"]), spec
    )
    outputs = {
        "crossover_d_nm": result.crossover_d,
        "bracket_low_nm": result.bracket[0],
        "bracket_high_nm": result.bracket[1],
        "sign_low": result.sign_low,
        "sign_high": result.sign_high,
        "iterations": result.iterations,
    }
    _print_result("crossover", params, outputs)
    if args.curve_out:
        n = _get(args, "curve_points", "crossover")
        step = (params["d_max"] - params["d_min"]) / max(n - 1, 1)
        rows = []
        from dataclasses import replace

        for i in range(n):
            d = params["d_min"] + i * step
            slab = replace(template, thickness_d=d)
            par = f_parallel_ratio(slab, params["l"], spec)
            perp = f_perp_ratio(slab, params["l"], spec)
            rows.append(
                [
                    d,
                    par.ratio_to_casimir,
                    perp.ratio_to_casimir,
                    par.ratio_to_casimir - perp.ratio_to_casimir,
                ]
            )
        write_table(
            args.curve_out,
            ["d_nm", "ratio_parallel", "ratio_perp", "anisotropy"],
            rows,
        )
        print(f"anisotropy curve written to {args.curve_out}")
    return 0 if result.crossover_d is not None else 1


def _parse_axis(text: str) -> SweepAxis:
    parts = text.split(":")
    if len(parts) not in (4, 5):
        raise UsageError(
            f"axis must be NAME:FROM:TO:POINTS[:SPACING], got {text!r}"
        )
    name, start, stop, points = parts[0], parts[1], parts[2], parts[3]
    spacing = parts[4] if len(parts) == 5 else "linear"
    try:
        return SweepAxis(name, float(start), float(stop), int(points), spacing)
    except ValueError as exc:
        raise UsageError(f"bad axis {text!r}: {exc}") from None


def _run_sweep_cmd(args: argparse.Namespace) -> int:
    if not args.out:
        raise UsageError("sweep requires --out")
    axes = tuple(_parse_axis(a) for a in (args.axis or []))
    params = _params(args, "sweep")
    if args.quantity in ("aniso_parallel", "aniso_perp", "crossover"):
        if getattr(args, "eps_b", None) is None:
            params["eps_b"] = EPS_B_DEFAULT["aniso"]
    swept = {_axis_name_to_param(ax.name) for ax in axes}
    fixed = {k: v for k, v in params.items() if k not in swept}
    request = SweepRequest(
        quantity=args.quantity,
        fixed_params=fixed,
        axes=axes,
        output_path=args.out,
        format=_get(args, "format", "sweep"),
    )
    summary = run_sweep(request, _spec(args))
    print(
        f"wrote {summary['rows']} rows to {summary['output']} "
        f"(manifest: {summary['manifest']})"
    )
    return 0


def _axis_name_to_param(name: str) -> str:
    return {"R": "radius"}.get(name, name)


def _run_preset(args: argparse.Namespace) -> int:
    if not args.out:
        raise UsageError("preset requires --out")
    spec = _spec(args)
    if args.name == "fig2":
        summary = preset_fig2(args.out, args.points or 50, spec)
    elif args.name == "fig3":
        summary = preset_fig3(args.out, args.points or 25, spec)
    else:
        summary = preset_fig4(
            args.out,
            d_points=args.d_points or args.points or 5,
            l_points=args.l_points or args.points or 6,
            panels=args.panels or "abcd",
            spec=spec,
        )
    print(f"wrote {summary['rows']} rows to {summary['output']}")
    return 0


_POINT_COMMANDS = {
    "casimir": "casimir",
    "lifshitz-local": "lifshitz_local",
    "iso-nonlocal": "iso_nonlocal",
    "iso-thin": "iso_thin",
    "main-terms": "main_terms",
    "validity": "validity",
}


def _dispatch(args: argparse.Namespace) -> int:
    _apply_config(args)
    command = args.command
    if command in _POINT_COMMANDS:
        return run_point(_POINT_COMMANDS[command], _params(args, command), _spec(args))
    if command == "aniso":
        params = _params(args, "aniso")
        spec = _spec(args)
        orientation = _get(args, "orientation", "aniso")
        quantities = {
            "parallel": ("aniso_parallel",),
            "perp": ("aniso_perp",),
            "both": ("aniso_parallel", "aniso_perp"),
        }[orientation]
        code = 0
        for quantity in quantities:
            code = max(code, run_point(quantity, params, spec))
        return code
    if command == "crossover":
        return run_crossover(args)
    if command == "sweep":
        return _run_sweep_cmd(args)
    if command == "preset":
        return _run_preset(args)
    raise UsageError(f"unknown command {command!r}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse prints its own message
        return int(exc.code or 0)
    try:
        return _dispatch(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QuadratureError as exc:
        print(f"quadrature failure: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
