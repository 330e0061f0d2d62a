"""Forces for slabs of parallel aligned metallic nanotubes.

A facing pair of such slabs has two symmetric relative orientations:
tubes co-aligned or crossed.  Each orientation mixes a metallic channel
(plasmons along the tubes, excited by p-polarized exchange) with the
transverse dielectric background described by the factors phi and psi.
The finite plasma frequency contributes a structure-dependent negative
correction weighted by the cylinder Bessel product; its endpoint
behaviour at p = 1 is handled by the same hyperbolic substitution as the
isotropic case.

Also provides the thickness crossover finder: thick slabs attract more
strongly co-aligned, ultrathin slabs prefer the crossed orientation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

from .constants import C_NM_PER_S, PI4
from .lifshitz import RATIO_NORM, ForceResult, _flag, _force_result
from .quadrature import IntegralResult, QuadratureError, QuadratureSpec, integrate_xp
from .response import NanotubeArraySlab, eps_tilde
from .special import bessel_i0k0_product

__all__ = [
    "phi",
    "psi",
    "main_term_parallel",
    "main_term_perp",
    "f_parallel_ratio",
    "f_perp_ratio",
    "OrientationForces",
    "orientation_forces",
    "CrossoverResult",
    "crossover_thickness",
]


def _check_background(p: float, eps_b: float) -> None:
    if p < 1.0:
        raise ValueError(f"p must be >= 1, got {p}")
    if eps_b <= 1.0:
        raise ValueError(
            f"background factors require eps_b > 1, got {eps_b} "
            "(the denominator vanishes at eps_b = 1)"
        )


def phi(p: float, eps_b: float) -> float:
    """s-polarization background factor (S+p)/(S-p), S = sqrt(eps_b-1+p^2).

    Evaluated as (S+p)^2/(eps_b-1), exact and free of the large-p
    cancellation in S - p.  Always >= (sqrt(eps_b)+1)/(sqrt(eps_b)-1) > 1.
    """
    _check_background(p, eps_b)
    s = math.sqrt(eps_b - 1.0 + p * p)
    return (s + p) ** 2 / (eps_b - 1.0)


def psi(p: float, eps_b: float) -> float:
    """p-polarization background factor (S+eps_b p)/(S-eps_b p).

    The denominator is negative for all p >= 1, eps_b > 1, so psi <= -1;
    evaluated as (S+eps_b p)^2 / ((eps_b-1)(1 - p^2(eps_b+1)))."""
    _check_background(p, eps_b)
    pp = p * p
    s = math.sqrt(eps_b - 1.0 + pp)
    return (s + eps_b * p) ** 2 / ((eps_b - 1.0) * (1.0 - pp * (eps_b + 1.0)))


def _main_parallel_integral(
    eps_b: float, spec: QuadratureSpec | None
) -> IntegralResult:
    def f(x: float, p: float) -> float:
        emx = math.exp(-x)
        return x ** 3 / (p * p) * emx / (phi(p, eps_b) ** 2 - emx)

    return integrate_xp(f, spec)


def _main_perp_integral(eps_b: float, spec: QuadratureSpec | None) -> IntegralResult:
    def f(x: float, p: float) -> float:
        emx = math.exp(-x)
        both = 1.0 / (phi(p, eps_b) - emx) - 1.0 / (psi(p, eps_b) + emx)
        return x ** 3 / (p * p) * emx * both

    return integrate_xp(f, spec)


def main_term_parallel(eps_b: float, spec: QuadratureSpec | None = None) -> float:
    """Infinite-plasma-frequency limit of the co-aligned force ratio.

    The metallic channel becomes perfectly reflective and contributes
    exactly 1/2; the dielectric channel is damped by phi^2.  A function
    of eps_b alone, tending to 1 as eps_b -> inf.
    """
    return 0.5 + RATIO_NORM * _main_parallel_integral(eps_b, spec).value


def main_term_perp(eps_b: float, spec: QuadratureSpec | None = None) -> float:
    """Infinite-plasma-frequency limit of the crossed force ratio.

    Metal-dielectric exchange in both channels, damped by phi and psi;
    also tends to 1 as eps_b -> inf.
    """
    return RATIO_NORM * _main_perp_integral(eps_b, spec).value


def _radical_fn(array: NanotubeArraySlab, l: float) -> Callable[[float, float], float]:
    """sqrt(Delta/(4 pi R) * a(1 + R a/(eps~ d)) / (I0 K0(1/a))) with
    a = (2l/R) p/(x sqrt(p^2-1)); the inverse of the tube-array plasma
    frequency expressed in the (x, p) variables."""
    et_d = eps_tilde(array) * array.thickness_d
    r = array.radius_R
    pref = array.period_Delta / (4.0 * math.pi * r)
    two_l_over_r = 2.0 * l / r

    def radical(x: float, p: float) -> float:
        a = two_l_over_r * p / (x * math.sqrt(p * p - 1.0))
        return math.sqrt(
            pref * a * (1.0 + r * a / et_d) / bessel_i0k0_product(1.0 / a)
        )

    return radical


def _assemble(
    main: IntegralResult,
    corr: IntegralResult,
    main_offset: float,
    corr_coef: float,
    l: float,
) -> ForceResult:
    main_val = main_offset + RATIO_NORM * main.value
    corr_val = corr_coef * corr.value
    err = RATIO_NORM * main.error_estimate + corr_coef * corr.error_estimate
    validity = _flag(main.converged and corr.converged, corr_val, main_val)
    return _force_result(main_val - corr_val, l, err, validity)


def f_parallel_ratio(
    array: NanotubeArraySlab, l: float, spec: QuadratureSpec | None = None
) -> ForceResult:
    """Force ratio for co-aligned nanotube-array slabs.

    Main term 1/2 + phi^2-damped dielectric channel, minus the
    Bessel-weighted finite-plasma-frequency correction."""
    if l <= 0.0:
        raise ValueError(f"separation must be > 0, got {l} nm")
    radical = _radical_fn(array, l)

    def fcorr(x: float, p: float) -> float:
        pp = p * p
        bose = x ** 4 * math.exp(-x) / math.expm1(-x) ** 2
        return bose / (pp * pp) * radical(x, p)

    main = _main_parallel_integral(array.eps_b, spec)
    corr = integrate_xp(fcorr, spec, p_singularity_order=0.5)
    coef = 15.0 * C_NM_PER_S / (PI4 * array.omega_p3d * l)
    return _assemble(main, corr, 0.5, coef, l)


def f_perp_ratio(
    array: NanotubeArraySlab, l: float, spec: QuadratureSpec | None = None
) -> ForceResult:
    """Force ratio for crossed nanotube-array slabs.

    Both channels are metal-dielectric; the correction carries the same
    radical as the co-aligned case at half the prefactor, weighted by
    the squared round-trip denominators."""
    if l <= 0.0:
        raise ValueError(f"separation must be > 0, got {l} nm")
    eps_b = array.eps_b
    radical = _radical_fn(array, l)

    def fcorr(x: float, p: float) -> float:
        emx = math.exp(-x)
        ph = phi(p, eps_b)
        ps = psi(p, eps_b)
        # x^4 e^x [phi p/(phi e^x - 1)^2 - (psi/p)/(psi e^x + 1)^2] / p^3,
        # folded with e^(-2x) so nothing grows with x.
        bracket = ph * p / (ph - emx) ** 2 - (ps / p) / (ps + emx) ** 2
        return x ** 4 * emx * bracket / p ** 3 * radical(x, p)

    main = _main_perp_integral(eps_b, spec)
    corr = integrate_xp(fcorr, spec, p_singularity_order=0.5)
    coef = 15.0 * C_NM_PER_S / (2.0 * PI4 * array.omega_p3d * l)
    return _assemble(main, corr, 0.0, coef, l)


@dataclass(frozen=True)
class OrientationForces:
    """Force results for both relative orientations of one slab pair."""

    f_parallel: ForceResult
    f_perp: ForceResult

    @property
    def anisotropy(self) -> float:
        """Co-aligned minus crossed force ratio; negative means the pair
        prefers the crossed orientation."""
        return self.f_parallel.ratio_to_casimir - self.f_perp.ratio_to_casimir


def orientation_forces(
    array: NanotubeArraySlab, l: float, spec: QuadratureSpec | None = None
) -> OrientationForces:
    return OrientationForces(
        f_parallel_ratio(array, l, spec), f_perp_ratio(array, l, spec)
    )


@dataclass(frozen=True)
class CrossoverResult:
    """Outcome of the thickness bisection for the orientation crossover.

    ``crossover_d`` is None when the anisotropy keeps one sign over the
    bracket; the endpoint signs are always reported.
    """

    crossover_d: float | None
    bracket: tuple[float, float]
    sign_low: float
    sign_high: float
    iterations: int


def crossover_thickness(
    array_template: NanotubeArraySlab,
    l: float,
    d_range: tuple[float, float],
    spec: QuadratureSpec | None = None,
    ratio_tol: float = 1.0e-4,
    max_iterations: int = 80,
) -> CrossoverResult:
    """Bisect slab thickness for the sign change of F_par - F_perp.

    ``array_template`` supplies everything but the thickness, which is
    replaced per probe (so the d >= 2R invariant is enforced on every
    evaluation).  Converges when |F_par - F_perp|/F_C drops below
    ``ratio_tol``.  A probe whose quadrature fails raises
    QuadratureError.
    """
    d_lo, d_hi = d_range
    if not d_lo < d_hi:
        raise ValueError(f"need d_lo < d_hi, got ({d_lo}, {d_hi})")

    def aniso(d: float) -> float:
        forces = orientation_forces(replace(array_template, thickness_d=d), l, spec)
        for res in (forces.f_parallel, forces.f_perp):
            if res.validity == "quadrature_failed":
                raise QuadratureError(f"force quadrature failed at d = {d} nm")
        return forces.anisotropy

    a_lo = aniso(d_lo)
    a_hi = aniso(d_hi)
    sign_lo = math.copysign(1.0, a_lo)
    sign_hi = math.copysign(1.0, a_hi)
    if sign_lo * sign_hi > 0.0:
        return CrossoverResult(None, (d_lo, d_hi), sign_lo, sign_hi, 0)

    lo, hi, a_cur = d_lo, d_hi, a_lo
    for iteration in range(1, max_iterations + 1):
        mid = 0.5 * (lo + hi)
        a_mid = aniso(mid)
        if abs(a_mid) <= ratio_tol:
            return CrossoverResult(mid, (d_lo, d_hi), sign_lo, sign_hi, iteration)
        if math.copysign(1.0, a_mid) == math.copysign(1.0, a_cur):
            lo, a_cur = mid, a_mid
        else:
            hi = mid
    return CrossoverResult(None, (d_lo, d_hi), sign_lo, sign_hi, max_iterations)
