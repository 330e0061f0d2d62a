"""Adaptive quadrature for the two semi-infinite axes of the force integrals.

The x axis carries Bose-type weights decaying like e^-x; it is truncated
at ``QuadratureSpec.x_max`` and the discarded tail enters the error
estimate through an exponential-decay bound.  The p axis starts at an
algebraic endpoint singularity at p = 1; a substitution (p = cosh u by
default) converts any (p^2-1)^-s endpoint factor with s < 1 into an
integrable one before QUADPACK is applied.

All entry points are pure functions of their arguments; no state is
shared between calls, so they may be used from multiple threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Literal

from scipy.integrate import quad

__all__ = [
    "PTransform",
    "QuadratureError",
    "QuadratureSpec",
    "IntegralResult",
    "integrate_x_axis",
    "integrate_p_axis",
    "integrate_xp",
]

PTransform = Literal["hyperbolic", "shifted-square"]

# Truncation of the transformed p axis.  With p = cosh u an integrand
# decaying like p^-2 becomes ~ e^-u, so u = 40 leaves a relative tail
# below 1e-17.  With p = 1 + t^2 the same integrand decays like t^-3
# and t = 1e6 leaves an absolute tail near 1e-12 for O(1) integrands.
_U_MAX = 40.0
_T_MAX = 1.0e6
# Breakpoints keep QUADPACK from missing the O(1)-scale structure when
# the shifted-square interval spans six decades.
_T_BREAKPOINTS = (1.0, 10.0, 100.0)


class QuadratureError(RuntimeError):
    """A quadrature result that must be certified failed to converge."""


# QUADPACK refuses epsrel below 50 machine epsilons; requests beyond the
# floor are clamped and judged against the requested tolerance instead.
_EPSREL_FLOOR = 1.2e-14


def _default_x_max(abs_tol: float) -> float:
    """Truncation point for e^-x decaying integrands: tail below abs_tol."""
    if abs_tol <= 0.0:
        return 40.0
    return max(40.0, -math.log(abs_tol) + 10.0)


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances, truncations and transform choice for the axis integrals.

    ``x_max=None`` derives the x-axis truncation from ``abs_tol`` so the
    exponential tail stays below the requested absolute tolerance.
    """

    rel_tol: float = 1.0e-8
    abs_tol: float = 1.0e-12
    x_max: float | None = None
    p_transform: PTransform = "hyperbolic"
    max_subdivisions: int = 200

    def __post_init__(self) -> None:
        if self.rel_tol <= 0.0:
            raise ValueError(f"rel_tol must be > 0, got {self.rel_tol}")
        if self.abs_tol < 0.0:
            raise ValueError(f"abs_tol must be >= 0, got {self.abs_tol}")
        if self.x_max is None:
            object.__setattr__(self, "x_max", _default_x_max(self.abs_tol))
        if self.x_max <= 0.0:
            raise ValueError(f"x_max must be > 0, got {self.x_max}")
        if self.max_subdivisions < 1:
            raise ValueError(
                f"max_subdivisions must be >= 1, got {self.max_subdivisions}"
            )
        if self.p_transform not in ("hyperbolic", "shifted-square"):
            raise ValueError(f"unknown p_transform {self.p_transform!r}")

    def tightened(self, factor: float = 10.0) -> "QuadratureSpec":
        """Same spec with both tolerances divided by ``factor``."""
        return replace(
            self, rel_tol=self.rel_tol / factor, abs_tol=self.abs_tol / factor
        )


@dataclass(frozen=True)
class IntegralResult:
    """One quadrature outcome: value, certified error, convergence flag."""

    value: float
    error_estimate: float
    converged: bool
    evaluations: int


def _finish(
    out: tuple, tail: float, spec: QuadratureSpec, extra_evals: int = 1
) -> IntegralResult:
    value, abserr, info = out[0], out[1], out[2]
    warned = len(out) > 3  # QUADPACK appended a warning message
    err = abserr + tail
    converged = (not warned) and err <= max(
        spec.abs_tol, spec.rel_tol * abs(value)
    )
    return IntegralResult(value, err, converged, int(info["neval"]) + extra_evals)


def integrate_x_axis(
    f: Callable[[float], float], spec: QuadratureSpec | None = None
) -> IntegralResult:
    """Integrate f over (0, inf) for integrands decaying at least like e^-x.

    QUADPACK runs on the open interval (0, x_max]; the tail beyond x_max
    is bounded by 2|f(x_max)| (valid for e^-x decay with the moderate
    polynomial prefactors of the force kernels) and added to the error
    estimate.  Non-convergence within max_subdivisions is reported via
    ``converged=False``, never raised.
    """
    spec = spec or QuadratureSpec()
    out = quad(
        f,
        0.0,
        spec.x_max,
        epsabs=spec.abs_tol,
        epsrel=max(spec.rel_tol, _EPSREL_FLOOR),
        limit=spec.max_subdivisions,
        full_output=True,
    )
    tail = 2.0 * abs(f(spec.x_max))
    return _finish(out, tail, spec)


def integrate_p_axis(
    f: Callable[[float], float],
    singularity_order: float = 0.0,
    spec: QuadratureSpec | None = None,
) -> IntegralResult:
    """Integrate f over [1, inf) allowing a (p^2-1)^-s endpoint singularity.

    ``singularity_order`` is the admissible s and must lie in [0, 1); both
    transforms turn such endpoints into integrable ones.  f must decay at
    least like p^-2 at infinity, which the truncation of the transformed
    axis relies on.
    """
    if not 0.0 <= singularity_order < 1.0:
        raise ValueError(
            f"singularity_order must be in [0, 1), got {singularity_order}"
        )
    spec = spec or QuadratureSpec()

    if spec.p_transform == "hyperbolic":

        def g(u: float) -> float:
            p = math.cosh(u)
            if p <= 1.0:  # cosh rounded to 1: contribution below roundoff
                return 0.0
            return f(p) * math.sinh(u)

        upper = _U_MAX
        points = None
        tail_factor = 2.0  # e^-u tail
    else:

        def g(t: float) -> float:
            p = 1.0 + t * t
            if p <= 1.0:
                return 0.0
            return f(p) * 2.0 * t

        upper = _T_MAX
        points = list(_T_BREAKPOINTS)
        tail_factor = 0.5 * _T_MAX  # t^-3 tail: integral ~ g(T) T/2

    if points is not None and spec.max_subdivisions <= len(points) + 1:
        points = None
    out = quad(
        g,
        0.0,
        upper,
        epsabs=spec.abs_tol,
        epsrel=max(spec.rel_tol, _EPSREL_FLOOR),
        limit=spec.max_subdivisions,
        points=points,
        full_output=True,
    )
    tail = tail_factor * abs(g(upper))
    return _finish(out, tail, spec)


def integrate_xp(
    f: Callable[[float, float], float],
    spec: QuadratureSpec | None = None,
    p_singularity_order: float = 0.0,
) -> IntegralResult:
    """Nested quadrature of f(x, p) over (0, inf) x [1, inf).

    The inner p integral runs at 10x tighter tolerances so the outer
    error estimate dominates; the inner residual budget (rel_tol/10 of
    the result plus abs_tol/10 per unit x) is folded into the reported
    error.  ``evaluations`` counts integrand calls, not outer nodes.
    """
    spec = spec or QuadratureSpec()
    inner_spec = spec.tightened(10.0)
    state = {"neval": 0, "failed": False}

    def outer(x: float) -> float:
        res = integrate_p_axis(lambda p: f(x, p), p_singularity_order, inner_spec)
        state["neval"] += res.evaluations
        if not res.converged:
            state["failed"] = True
        return res.value

    rx = integrate_x_axis(outer, spec)
    err = (
        rx.error_estimate
        + inner_spec.rel_tol * abs(rx.value)
        + inner_spec.abs_tol * spec.x_max
    )
    converged = rx.converged and not state["failed"]
    return IntegralResult(rx.value, err, converged, state["neval"])
