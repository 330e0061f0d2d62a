"""Force evaluators for in-plane isotropic slabs.

Forces are attractive and reported as positive ratios to the
ideal-conductor value F_C = hbar c pi^2/(240 l^4), plus the absolute
pressure in Pa.  Separations and thicknesses in nm, frequencies in s^-1.

The evaluators cover the exact ideal-conductor pressure, the general
double integral over arbitrary permittivity callbacks, the local-metal
closed form with its 16/3 correction, the nonlocal finite-thickness
integral, and the small-thickness closed form whose ~4.79 coefficient is
computed from quadrature once and cached, never hard-coded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Literal

from .constants import C_NM_PER_S, HBAR_C_J_M, PI4
from .quadrature import (
    QuadratureError,
    QuadratureSpec,
    integrate_p_axis,
    integrate_xp,
)
from .response import IsotropicSlab, eps_tilde
from .special import bose_integral

__all__ = [
    "Validity",
    "ForceResult",
    "casimir_pressure",
    "lifshitz_pressure_general",
    "lifshitz_force_local",
    "nonlocal_isotropic_ratio",
    "thin_limit_ratio",
    "thin_limit_coefficient",
]

Validity = Literal["valid", "correction_dominant", "quadrature_failed"]

# Prefactor turning the (x, p) double integral of the two polarization
# terms into F/F_C; both channels perfect gives exactly 1.
RATIO_NORM = 15.0 / (2.0 * PI4)


@dataclass(frozen=True)
class ForceResult:
    """Force at one configuration: ratio to the ideal-conductor value,
    absolute pressure (ratio times that value, by construction), the
    quadrature error on the ratio and an applicability flag.

    ``correction_dominant`` marks points where the first-order material
    correction exceeds half the leading term, i.e. where the expansion
    is no longer a legitimate correction.
    """

    ratio_to_casimir: float
    pressure: float
    error_estimate: float
    validity: Validity


def _force_result(ratio: float, l: float, err: float, validity: Validity) -> ForceResult:
    return ForceResult(ratio, ratio * casimir_pressure(l), err, validity)


def _flag(converged: bool, correction: float, leading: float = 1.0) -> Validity:
    if not converged:
        return "quadrature_failed"
    if correction > 0.5 * leading:
        return "correction_dominant"
    return "valid"


def casimir_pressure(l: float) -> float:
    """Ideal-conductor attraction hbar c pi^2 / (240 l^4) in Pa, l in nm."""
    if l <= 0.0:
        raise ValueError(f"separation must be > 0, got {l} nm")
    l_m = l * 1.0e-9
    return HBAR_C_J_M * math.pi ** 2 / (240.0 * l_m ** 4)


def lifshitz_pressure_general(
    eps1_fn: Callable[[float], float],
    eps2_fn: Callable[[float], float],
    l: float,
    spec: QuadratureSpec | None = None,
) -> ForceResult:
    """Full two-polarization force integral for arbitrary media.

    The callbacks receive xi = x c/(2 p l) in s^-1 and must return real
    permittivities >= 1 (any causal response on the imaginary axis).
    The s- and p-channel round-trip factors are evaluated through the
    differences A - 1 in exact rational form, which keeps the integrand
    stable both in the near-vacuum and in the near-conductor limits.
    """
    if l <= 0.0:
        raise ValueError(f"separation must be > 0, got {l} nm")
    half_cl = C_NM_PER_S / (2.0 * l)

    def f(x: float, p: float) -> float:
        xi = half_cl * x / p
        e1 = eps1_fn(xi)
        e2 = eps2_fn(xi)
        pp = p * p
        s1 = math.sqrt(e1 - 1.0 + pp)
        s2 = math.sqrt(e2 - 1.0 + pp)
        emx = math.exp(-x)
        em1 = -math.expm1(-x)  # 1 - e^-x
        # s channel: A_s - 1 = 2p(s1+s2) / ((s1-p)(s2-p)), with
        # s - p = (eps-1)/(s+p) to avoid the large-p cancellation.
        d1 = (e1 - 1.0) / (s1 + p)
        d2 = (e2 - 1.0) / (s2 + p)
        den_s = d1 * d2
        ts = emx / (2.0 * p * (s1 + s2) / den_s + em1) if den_s > 0.0 else 0.0
        # p channel: s - eps*p = (eps-1)(1 - p^2(eps+1))/(s + eps*p) < 0.
        g1 = (e1 - 1.0) * (1.0 - pp * (e1 + 1.0)) / (s1 + e1 * p)
        g2 = (e2 - 1.0) * (1.0 - pp * (e2 + 1.0)) / (s2 + e2 * p)
        den_p = g1 * g2
        tp = (
            emx / (2.0 * p * (e1 * s2 + e2 * s1) / den_p + em1)
            if den_p > 0.0
            else 0.0
        )
        return x ** 3 / pp * (ts + tp)

    res = integrate_xp(f, spec)
    ratio = RATIO_NORM * res.value
    err = RATIO_NORM * res.error_estimate
    validity: Validity = "valid" if res.converged else "quadrature_failed"
    return _force_result(ratio, l, err, validity)


def lifshitz_force_local(omega_p: float, l: float) -> ForceResult:
    """Closed-form large-separation force for identical local-Drude metals.

    F/F_C = 1 - 16 c/(3 omega_p l); the correction scales as 1/l and the
    result is exact within the first-order expansion, so the error
    estimate is zero.
    """
    if omega_p <= 0.0:
        raise ValueError(f"omega_p must be > 0, got {omega_p}")
    if l <= 0.0:
        raise ValueError(f"separation must be > 0, got {l} nm")
    corr = 16.0 * C_NM_PER_S / (3.0 * omega_p * l)
    return _force_result(1.0 - corr, l, 0.0, _flag(True, corr))


def nonlocal_isotropic_ratio(
    slab: IsotropicSlab, l: float, spec: QuadratureSpec | None = None
) -> ForceResult:
    """Force between identical isotropic slabs with the thickness-dependent
    momentum dispersion of the in-plane plasma frequency.

    The dispersion enters as sqrt(1 + (2l/eps~ d) p/(x sqrt(p^2-1))),
    which diverges as (p^2-1)^(-1/2) at normal incidence and leaves an
    integrable (p^2-1)^(-1/4) factor in the p integrand.
    """
    if l <= 0.0:
        raise ValueError(f"separation must be > 0, got {l} nm")
    beta = 2.0 * l / (eps_tilde(slab) * slab.thickness_d)

    def f(x: float, p: float) -> float:
        pp = p * p
        bose = x ** 4 * math.exp(-x) / math.expm1(-x) ** 2
        rad = math.sqrt(1.0 + beta * p / (x * math.sqrt(pp - 1.0)))
        return bose * (pp + 1.0) / (pp * pp) * rad

    res = integrate_xp(f, spec, p_singularity_order=0.25)
    coef = 15.0 * C_NM_PER_S / (PI4 * slab.omega_p3d * l)
    corr = coef * res.value
    return _force_result(
        1.0 - corr, l, coef * res.error_estimate, _flag(res.converged, corr)
    )


@lru_cache(maxsize=None)
def _thin_limit_parts(spec: QuadratureSpec) -> tuple[float, float]:
    """(coefficient, error) of the small-thickness correction.

    The x part is Gamma(9/2) zeta(7/2) in closed form; the p part,
    int_1^inf (p^2+1) / (p^(7/2) (p^2-1)^(1/4)) dp, is done by
    quadrature so the whole stack stays self-validating.
    """
    pres = integrate_p_axis(
        lambda p: (p * p + 1.0) / (p ** 3.5 * (p * p - 1.0) ** 0.25),
        0.25,
        spec,
    )
    if not pres.converged:
        raise QuadratureError("thin-limit p integral did not converge")
    scale = 15.0 * math.sqrt(2.0) / PI4 * bose_integral(3.5)
    return scale * pres.value, scale * pres.error_estimate


def thin_limit_coefficient(spec: QuadratureSpec | None = None) -> float:
    """Numeric prefactor (~4.79) of the c/(omega_p sqrt(eps~ d l))
    correction, computed once per quadrature spec and cached."""
    return _thin_limit_parts(spec or QuadratureSpec())[0]


def thin_limit_ratio(slab: IsotropicSlab, l: float) -> ForceResult:
    """Small-thickness closed form: F/F_C = 1 - C c/(omega_p sqrt(eps~ d l)).

    The material correction decays only as 1/sqrt(l), in contrast with
    the 1/l of the local-metal force: thinner slabs stay farther from
    the ideal-conductor limit even at large separation.
    """
    if l <= 0.0:
        raise ValueError(f"separation must be > 0, got {l} nm")
    coeff, coeff_err = _thin_limit_parts(QuadratureSpec())
    scale = C_NM_PER_S / (
        slab.omega_p3d * math.sqrt(eps_tilde(slab) * slab.thickness_d * l)
    )
    corr = coeff * scale
    return _force_result(1.0 - corr, l, coeff_err * scale, _flag(True, corr))
