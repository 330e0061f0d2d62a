"""Parameter sweeps with reproducible CSV/JSON artifacts.

A sweep names a quantity, fixes the remaining parameters, and walks up
to two axes in deterministic axis-major order.  Every output file gets a
sibling ``<name>.manifest.json`` recording the fixed parameters, the
tool version and the quadrature settings, so a run can be reproduced
byte for byte.  The three ``fig*`` presets generate the data behind the
standard plots: main terms vs 1/eps_b, the isotropic force vs separation
for three thicknesses, and the orientation-resolved nanotube surfaces.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from .anisotropic import (
    crossover_thickness,
    f_parallel_ratio,
    f_perp_ratio,
    main_term_parallel,
    main_term_perp,
)
from .lifshitz import (
    ForceResult,
    casimir_pressure,
    lifshitz_force_local,
    nonlocal_isotropic_ratio,
    thin_limit_ratio,
)
from .quadrature import QuadratureSpec
from .response import IsotropicSlab, NanotubeArraySlab
from .validity import applicability_report

__all__ = [
    "UsageError",
    "SweepAxis",
    "SweepRequest",
    "QUANTITIES",
    "evaluate_quantity",
    "run_sweep",
    "preset_fig2",
    "preset_fig3",
    "preset_fig4",
]


class UsageError(ValueError):
    """Bad request: unknown quantity, malformed axis, missing parameter."""


AXIS_COLUMNS = {
    "d": "d_nm",
    "l": "l_nm",
    "eps_b": "eps_b",
    "R": "radius_nm",
    "layers": "layers",
}

FORCE_COLUMNS = ("ratio_to_casimir", "pressure_pa", "error_estimate", "validity")

QUANTITY_COLUMNS = {
    "casimir": FORCE_COLUMNS,
    "lifshitz_local": FORCE_COLUMNS,
    "iso_nonlocal": FORCE_COLUMNS,
    "iso_thin": FORCE_COLUMNS,
    "aniso_parallel": FORCE_COLUMNS,
    "aniso_perp": FORCE_COLUMNS,
    "main_terms": ("main_parallel", "main_perp"),
    "crossover": ("crossover_d_nm", "sign_low", "sign_high", "iterations"),
    "validity": (
        "max_rel_deviation_s",
        "max_rel_deviation_p",
        "d_ok",
        "l_ok",
        "verdict",
    ),
}

QUANTITIES = tuple(QUANTITY_COLUMNS)


@dataclass(frozen=True)
class SweepAxis:
    """One swept parameter: name in {d, l, eps_b, R, layers}."""

    name: str
    start: float
    stop: float
    points: int
    spacing: str = "linear"

    def __post_init__(self) -> None:
        if self.name not in AXIS_COLUMNS:
            raise UsageError(
                f"unknown axis {self.name!r}; choose from {sorted(AXIS_COLUMNS)}"
            )
        if self.points < 1:
            raise UsageError(f"axis {self.name}: points must be >= 1")
        if self.spacing not in ("linear", "log"):
            raise UsageError(f"axis {self.name}: spacing must be linear or log")
        if self.spacing == "log" and (self.start <= 0.0 or self.stop <= 0.0):
            raise UsageError(f"axis {self.name}: log spacing needs positive bounds")

    def grid(self) -> list[float]:
        if self.points == 1:
            return [float(self.start)]
        if self.spacing == "log":
            values = np.geomspace(self.start, self.stop, self.points)
        else:
            values = np.linspace(self.start, self.stop, self.points)
        return [float(v) for v in values]


@dataclass(frozen=True)
class SweepRequest:
    """Grid description: quantity, fixed parameters, up to two axes."""

    quantity: str
    fixed_params: dict
    axes: tuple[SweepAxis, ...]
    output_path: str
    format: str = "csv"

    def __post_init__(self) -> None:
        if self.quantity not in QUANTITY_COLUMNS:
            raise UsageError(
                f"unknown quantity {self.quantity!r}; choose from {QUANTITIES}"
            )
        if len(self.axes) > 2:
            raise UsageError("at most two sweep axes are supported")
        if self.format not in ("csv", "json"):
            raise UsageError(f"format must be csv or json, got {self.format!r}")


def _require(params: dict, keys: Sequence[str], quantity: str) -> None:
    missing = [k for k in keys if params.get(k) is None]
    if missing:
        raise UsageError(f"{quantity} requires parameters: {', '.join(missing)}")


def _iso_slab(params: dict, quantity: str) -> IsotropicSlab:
    _require(params, ("d", "omega_p", "eps_b"), quantity)
    return IsotropicSlab(
        omega_p3d=params["omega_p"],
        thickness_d=params["d"],
        eps_b=params["eps_b"],
        eps_sub=params.get("eps_sub") or 1.0,
        eps_sup=params.get("eps_sup") or 1.0,
    )


def array_slab(params: dict, quantity: str) -> NanotubeArraySlab:
    _require(params, ("radius", "omega_p", "eps_b"), quantity)
    radius = params["radius"]
    d = params.get("d")
    if d is None:
        layers = params.get("layers")
        if layers is None:
            raise UsageError(f"{quantity} requires either d or layers")
        d = int(round(layers)) * 2.0 * radius  # n monolayers of diameter 2R
    return NanotubeArraySlab(
        omega_p3d=params["omega_p"],
        radius_R=radius,
        thickness_d=d,
        eps_b=params["eps_b"],
        period_Delta=params.get("delta"),
        eps_sub=params.get("eps_sub") or 1.0,
        eps_sup=params.get("eps_sup") or 1.0,
    )


def _force_row(result: ForceResult) -> dict:
    return {
        "ratio_to_casimir": result.ratio_to_casimir,
        "pressure_pa": result.pressure,
        "error_estimate": result.error_estimate,
        "validity": result.validity,
    }


def evaluate_quantity(quantity: str, params: dict, spec: QuadratureSpec) -> dict:
    """Compute one grid point; returns the output columns for that quantity."""
    if quantity == "casimir":
        _require(params, ("l",), quantity)
        pressure = casimir_pressure(params["l"])
        return {
            "ratio_to_casimir": 1.0,
            "pressure_pa": pressure,
            "error_estimate": 0.0,
            "validity": "valid",
        }
    if quantity == "lifshitz_local":
        _require(params, ("l", "omega_p"), quantity)
        return _force_row(lifshitz_force_local(params["omega_p"], params["l"]))
    if quantity == "iso_nonlocal":
        _require(params, ("l",), quantity)
        slab = _iso_slab(params, quantity)
        return _force_row(nonlocal_isotropic_ratio(slab, params["l"], spec))
    if quantity == "iso_thin":
        _require(params, ("l",), quantity)
        slab = _iso_slab(params, quantity)
        return _force_row(thin_limit_ratio(slab, params["l"]))
    if quantity == "aniso_parallel":
        _require(params, ("l",), quantity)
        slab = array_slab(params, quantity)
        return _force_row(f_parallel_ratio(slab, params["l"], spec))
    if quantity == "aniso_perp":
        _require(params, ("l",), quantity)
        slab = array_slab(params, quantity)
        return _force_row(f_perp_ratio(slab, params["l"], spec))
    if quantity == "main_terms":
        _require(params, ("eps_b",), quantity)
        return {
            "main_parallel": main_term_parallel(params["eps_b"], spec),
            "main_perp": main_term_perp(params["eps_b"], spec),
        }
    if quantity == "crossover":
        _require(params, ("l", "d_min", "d_max"), quantity)
        template = array_slab({**params, "d": params["d_max"]}, quantity)
        result = crossover_thickness(
            template, params["l"], (params["d_min"], params["d_max"]), spec
        )
        return {
            "crossover_d_nm": result.crossover_d,
            "sign_low": result.sign_low,
            "sign_high": result.sign_high,
            "iterations": result.iterations,
        }
    if quantity == "validity":
        _require(params, ("l",), quantity)
        slab = _iso_slab(params, quantity)
        report = applicability_report(
            slab, params["l"], params.get("threshold") or 0.01
        )
        return {
            "max_rel_deviation_s": report.max_rel_deviation_s,
            "max_rel_deviation_p": report.max_rel_deviation_p,
            "d_ok": report.d_ok,
            "l_ok": report.l_ok,
            "verdict": report.verdict,
        }
    raise UsageError(f"unknown quantity {quantity!r}")


def format_value(value) -> str:
    """Locale-free cell format: 10 significant digits for floats."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def write_table(path: str | Path, columns: Sequence[str], rows: Iterable[Sequence],
                fmt: str = "csv") -> None:
    path = Path(path)
    if fmt == "csv":
        lines = [",".join(columns)]
        lines.extend(",".join(format_value(v) for v in row) for row in rows)
        path.write_text("\n".join(lines) + "\n")
    else:
        payload = {
            "columns": list(columns),
            "rows": [[None if v is None else v for v in row] for row in rows],
        }
        path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def write_manifest(output_path: str | Path, payload: dict) -> Path:
    manifest_path = Path(str(output_path) + ".manifest.json")
    manifest_path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return manifest_path


def _manifest_payload(
    quantity: str,
    fixed_params: dict,
    axes: Sequence[SweepAxis],
    spec: QuadratureSpec,
    columns: Sequence[str],
    rows: int,
    fmt: str,
    output_path: str | Path,
) -> dict:
    return {
        "tool": "casimir-slabs",
        "version": __version__,
        "quantity": quantity,
        "fixed_params": {
            k: v for k, v in sorted(fixed_params.items()) if v is not None
        },
        "axes": [
            {
                "name": ax.name,
                "start": ax.start,
                "stop": ax.stop,
                "points": ax.points,
                "spacing": ax.spacing,
            }
            for ax in axes
        ],
        "quadrature": {
            "rel_tol": spec.rel_tol,
            "abs_tol": spec.abs_tol,
            "x_max": spec.x_max,
            "p_transform": spec.p_transform,
            "max_subdivisions": spec.max_subdivisions,
        },
        "format": fmt,
        "columns": list(columns),
        "rows": rows,
        "output": Path(output_path).name,
    }


def _open_for_write(path: str | Path) -> None:
    # Touch the target up front so an unwritable path fails before any
    # integral is evaluated.
    with open(path, "w"):
        pass


def run_sweep(request: SweepRequest, spec: QuadratureSpec | None = None) -> dict:
    """Execute a sweep: validate the whole grid, then compute and write.

    Returns a small summary dict (rows written, output paths).  Grid
    points are emitted in axis-major order: the first axis varies
    slowest.  Reruns of the same request produce byte-identical files.
    """
    spec = spec or QuadratureSpec()
    grids = [ax.grid() for ax in request.axes]
    combos = list(itertools.product(*grids)) if grids else [()]

    # Validate every grid point (slab invariants, required parameters)
    # before any quadrature or file output.
    param_sets = []
    for combo in combos:
        params = dict(request.fixed_params)
        for ax, value in zip(request.axes, combo):
            params[_axis_param(ax.name)] = value
        _validate_point(request.quantity, params)
        param_sets.append(params)

    _open_for_write(request.output_path)

    axis_cols = [AXIS_COLUMNS[ax.name] for ax in request.axes]
    value_cols = list(QUANTITY_COLUMNS[request.quantity])
    columns = axis_cols + value_cols
    rows = []
    for combo, params in zip(combos, param_sets):
        outputs = evaluate_quantity(request.quantity, params, spec)
        rows.append(list(combo) + [outputs[c] for c in value_cols])

    write_table(request.output_path, columns, rows, request.format)
    manifest = write_manifest(
        request.output_path,
        _manifest_payload(
            request.quantity,
            request.fixed_params,
            request.axes,
            spec,
            columns,
            len(rows),
            request.format,
            request.output_path,
        ),
    )
    return {
        "rows": len(rows),
        "output": str(request.output_path),
        "manifest": str(manifest),
    }


def _axis_param(name: str) -> str:
    return {"R": "radius"}.get(name, name)


def _validate_point(quantity: str, params: dict) -> None:
    """Run the cheap constructors/checks for one grid point."""
    if quantity in ("iso_nonlocal", "iso_thin", "validity"):
        _iso_slab(params, quantity)
        _require(params, ("l",), quantity)
    elif quantity in ("aniso_parallel", "aniso_perp"):
        array_slab(params, quantity)
        _require(params, ("l",), quantity)
    elif quantity == "crossover":
        _require(params, ("l", "d_min", "d_max"), quantity)
        array_slab({**params, "d": params["d_max"]}, quantity)
    elif quantity == "lifshitz_local":
        _require(params, ("l", "omega_p"), quantity)
    elif quantity == "casimir":
        _require(params, ("l",), quantity)
    elif quantity == "main_terms":
        _require(params, ("eps_b",), quantity)
        if params["eps_b"] <= 1.0:
            raise UsageError("main_terms requires eps_b > 1")


# ---------------------------------------------------------------------------
# Presets reproducing the standard figure data sets.


def preset_fig2(
    output_path: str | Path,
    points: int = 50,
    spec: QuadratureSpec | None = None,
) -> dict:
    """Main expansion terms against 1/eps_b.

    The grid spans 1/eps_b in [1e-3, 0.99]; the endpoint eps_b = 1 is a
    pole of the background factors and is excluded.  Both columns tend
    to 1 as 1/eps_b -> 0.
    """
    spec = spec or QuadratureSpec()
    _open_for_write(output_path)
    inv_grid = [float(v) for v in np.geomspace(1.0e-3, 0.99, points)]
    columns = ["inv_eps_b", "eps_b", "main_parallel", "main_perp"]
    rows = []
    for inv in inv_grid:
        eps_b = 1.0 / inv
        rows.append(
            [inv, eps_b, main_term_parallel(eps_b, spec), main_term_perp(eps_b, spec)]
        )
    write_table(output_path, columns, rows)
    manifest = write_manifest(
        output_path,
        _manifest_payload(
            "main_terms",
            {"preset": "fig2", "points": points},
            (),
            spec,
            columns,
            len(rows),
            "csv",
            output_path,
        ),
    )
    return {"rows": len(rows), "output": str(output_path), "manifest": str(manifest)}


def preset_fig3(
    output_path: str | Path,
    points: int = 25,
    spec: QuadratureSpec | None = None,
) -> dict:
    """Isotropic nonlocal force vs separation for 10/20/200 nm slabs,
    with the local-metal force as a reference column."""
    spec = spec or QuadratureSpec()
    _open_for_write(output_path)
    omega_p, eps_b = 2.0e16, 9.0
    l_grid = [float(v) for v in np.geomspace(100.0, 5000.0, points)]
    columns = [
        "d_nm",
        "l_nm",
        "ratio_to_casimir",
        "pressure_pa",
        "error_estimate",
        "validity",
        "ratio_lifshitz_local",
    ]
    rows = []
    for d in (10.0, 20.0, 200.0):
        slab = IsotropicSlab(omega_p3d=omega_p, thickness_d=d, eps_b=eps_b)
        for l in l_grid:
            res = nonlocal_isotropic_ratio(slab, l, spec)
            local = lifshitz_force_local(omega_p, l)
            rows.append(
                [
                    d,
                    l,
                    res.ratio_to_casimir,
                    res.pressure,
                    res.error_estimate,
                    res.validity,
                    local.ratio_to_casimir,
                ]
            )
    write_table(output_path, columns, rows)
    manifest = write_manifest(
        output_path,
        _manifest_payload(
            "iso_nonlocal",
            {
                "preset": "fig3",
                "omega_p": omega_p,
                "eps_b": eps_b,
                "d_values": [10.0, 20.0, 200.0],
                "points": points,
            },
            (),
            spec,
            columns,
            len(rows),
            "csv",
            output_path,
        ),
    )
    return {"rows": len(rows), "output": str(output_path), "manifest": str(manifest)}


_FIG4_PANELS = {
    # panel: (eps_b, mode); mode "radius" = 5 monolayers of growing tubes,
    # mode "layers" = growing stack of 2 nm tubes.
    "a": (10.0, "radius"),
    "b": (10.0, "layers"),
    "c": (5.0, "radius"),
    "d": (5.0, "layers"),
}


def preset_fig4(
    output_path: str | Path,
    d_points: int = 5,
    l_points: int = 6,
    panels: str = "abcd",
    spec: QuadratureSpec | None = None,
) -> dict:
    """Orientation-resolved nanotube-array force surfaces.

    Radius panels: 5-monolayer slabs of tubes with radius 0.5..4 nm.
    Layer panels: 1..d_points monolayers of 2 nm tubes.  Densely packed
    arrays (period = 2R), free-standing, omega_p = 2e16 1/s.
    """
    spec = spec or QuadratureSpec()
    for panel in panels:
        if panel not in _FIG4_PANELS:
            raise UsageError(f"unknown fig4 panel {panel!r}")
    _open_for_write(output_path)
    omega_p = 2.0e16
    l_grid = [float(v) for v in np.geomspace(500.0, 5000.0, l_points)]
    main_cache: dict[float, tuple[float, float]] = {}
    columns = [
        "panel",
        "eps_b",
        "radius_nm",
        "layers",
        "d_nm",
        "l_nm",
        "ratio_parallel",
        "error_parallel",
        "validity_parallel",
        "ratio_perp",
        "error_perp",
        "validity_perp",
        "main_parallel",
        "main_perp",
    ]
    rows = []
    for panel in panels:
        eps_b, mode = _FIG4_PANELS[panel]
        if eps_b not in main_cache:
            main_cache[eps_b] = (
                main_term_parallel(eps_b, spec),
                main_term_perp(eps_b, spec),
            )
        mpar, mperp = main_cache[eps_b]
        if mode == "radius":
            configs = [
                (float(r), 5) for r in np.linspace(0.5, 4.0, d_points)
            ]
        else:
            configs = [(2.0, n) for n in range(1, d_points + 1)]
        for radius, layers in configs:
            d = layers * 2.0 * radius
            slab = NanotubeArraySlab(
                omega_p3d=omega_p, radius_R=radius, thickness_d=d, eps_b=eps_b
            )
            for l in l_grid:
                par = f_parallel_ratio(slab, l, spec)
                perp = f_perp_ratio(slab, l, spec)
                rows.append(
                    [
                        panel,
                        eps_b,
                        radius,
                        layers,
                        d,
                        l,
                        par.ratio_to_casimir,
                        par.error_estimate,
                        par.validity,
                        perp.ratio_to_casimir,
                        perp.error_estimate,
                        perp.validity,
                        mpar,
                        mperp,
                    ]
                )
    write_table(output_path, columns, rows)
    manifest = write_manifest(
        output_path,
        _manifest_payload(
            "aniso_parallel",
            {
                "preset": "fig4",
                "panels": panels,
                "omega_p": omega_p,
                "d_points": d_points,
                "l_points": l_points,
            },
            (),
            spec,
            columns,
            len(rows),
            "csv",
            output_path,
        ),
    )
    return {"rows": len(rows), "output": str(output_path), "manifest": str(manifest)}
