"""Electromagnetic response on the imaginary frequency axis.

Holds the slab descriptors and the confinement-induced nonlocal plasma
frequencies: the in-plane isotropic film model and the aligned-nanotube
array model, together with the local Drude permittivity evaluated at
omega = i*xi and the (x, p) -> (xi, k) mapping used inside the force
integrands.

Lengths are nm, angular frequencies s^-1.  All functions are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

from .constants import C_NM_PER_S
from .special import bessel_i0k0_product

__all__ = [
    "IsotropicSlab",
    "NanotubeArraySlab",
    "ImaginaryFrequencyPoint",
    "eps_tilde",
    "momentum_from_xp",
    "frequency_point",
    "plasma_freq_isotropic",
    "plasma_freq_nanotube",
    "drude_eps_imaginary_axis",
    "local_drude_fn",
]


@dataclass(frozen=True)
class IsotropicSlab:
    """Uniform in-plane isotropic film of finite thickness.

    The surroundings must screen less than the film itself
    (eps_sub + eps_sup < eps_b), which is the regime where the vertical
    confinement reshapes the carrier interaction and the in-plane plasma
    frequency becomes momentum dependent.
    """

    omega_p3d: float          # bulk plasma angular frequency, 1/s
    thickness_d: float        # slab thickness, nm
    eps_b: float              # in-plane background permittivity
    eps_sub: float = 1.0      # substrate static permittivity (free-standing = 1)
    eps_sup: float = 1.0      # superstrate static permittivity
    damping_delta: float = 0.0  # Drude damping rate, 1/s

    def __post_init__(self) -> None:
        if self.omega_p3d <= 0.0:
            raise ValueError(f"omega_p3d must be > 0, got {self.omega_p3d}")
        if self.thickness_d <= 0.0:
            raise ValueError(f"thickness_d must be > 0, got {self.thickness_d}")
        if self.eps_b < 1.0:
            raise ValueError(f"eps_b must be >= 1, got {self.eps_b}")
        if self.eps_sub <= 0.0 or self.eps_sup <= 0.0:
            raise ValueError("environment permittivities must be > 0")
        if self.damping_delta < 0.0:
            raise ValueError(f"damping_delta must be >= 0, got {self.damping_delta}")
        if self.eps_sub + self.eps_sup >= self.eps_b:
            raise ValueError(
                "confined-film regime requires eps_sub + eps_sup < eps_b, got "
                f"{self.eps_sub} + {self.eps_sup} vs eps_b = {self.eps_b}"
            )


@dataclass(frozen=True)
class NanotubeArraySlab:
    """Slab made of parallel aligned metallic nanotubes in a dielectric layer.

    ``period_Delta=None`` selects dense packing (period = tube diameter).
    """

    omega_p3d: float            # bulk plasma angular frequency, 1/s
    radius_R: float             # nanotube radius, nm
    thickness_d: float          # slab thickness, nm
    eps_b: float                # transverse background permittivity
    period_Delta: float | None = None  # translational unit, nm
    eps_sub: float = 1.0
    eps_sup: float = 1.0

    def __post_init__(self) -> None:
        if self.omega_p3d <= 0.0:
            raise ValueError(f"omega_p3d must be > 0, got {self.omega_p3d}")
        if self.radius_R <= 0.0:
            raise ValueError(f"radius_R must be > 0, got {self.radius_R}")
        if self.period_Delta is None:
            object.__setattr__(self, "period_Delta", 2.0 * self.radius_R)
        if self.period_Delta < 2.0 * self.radius_R:
            raise ValueError(
                f"period_Delta = {self.period_Delta} nm would overlap tubes of "
                f"radius {self.radius_R} nm"
            )
        if self.thickness_d < 2.0 * self.radius_R:
            raise ValueError(
                f"thickness_d = {self.thickness_d} nm is below one monolayer "
                f"(2R = {2.0 * self.radius_R} nm)"
            )
        if self.eps_b < 1.0:
            raise ValueError(f"eps_b must be >= 1, got {self.eps_b}")
        if self.eps_sub <= 0.0 or self.eps_sup <= 0.0:
            raise ValueError("environment permittivities must be > 0")


Slab = Union[IsotropicSlab, NanotubeArraySlab]


@dataclass(frozen=True)
class ImaginaryFrequencyPoint:
    """One point (xi, k) on the imaginary frequency / in-plane momentum plane."""

    xi: float          # imaginary-axis angular frequency, 1/s
    momentum_k: float  # in-plane momentum, 1/nm

    def __post_init__(self) -> None:
        if self.xi < 0.0:
            raise ValueError(f"xi must be >= 0, got {self.xi}")
        if self.momentum_k < 0.0:
            raise ValueError(f"momentum_k must be >= 0, got {self.momentum_k}")


def eps_tilde(slab: Slab) -> float:
    """Screening ratio eps_b / (eps_sub + eps_sup) of film to surroundings."""
    return slab.eps_b / (slab.eps_sub + slab.eps_sup)


def momentum_from_xp(x: float, p: float, l: float) -> float:
    """In-plane momentum k = x sqrt(p^2-1)/(2 p l) in 1/nm.

    Consistent with xi = x c/(2 p l) on the imaginary axis, where the
    wave-vector relation reads omega p / c = sqrt((omega/c)^2 - k^2).
    """
    return x * math.sqrt(max(p * p - 1.0, 0.0)) / (2.0 * p * l)


def frequency_point(x: float, p: float, l: float) -> ImaginaryFrequencyPoint:
    """Map dimensionless integration variables (x, p) at separation l (nm)."""
    return ImaginaryFrequencyPoint(
        xi=x * C_NM_PER_S / (2.0 * p * l),
        momentum_k=momentum_from_xp(x, p, l),
    )


def plasma_freq_isotropic(k: float, slab: Slab) -> float:
    """Momentum-dependent in-plane plasma frequency of a thin isotropic film.

    omega_p(k) = omega_p3d / sqrt(1 + 1/(eps~ k d)); tends to the bulk
    value for k d -> inf and to the sqrt(k)-dispersive two-dimensional
    form for small k.  Defined as 0 at k = 0 by continuity.
    """
    if k < 0.0:
        raise ValueError(f"momentum must be >= 0, got {k}")
    if k == 0.0:
        return 0.0
    return slab.omega_p3d / math.sqrt(
        1.0 + 1.0 / (eps_tilde(slab) * k * slab.thickness_d)
    )


def plasma_freq_nanotube(q: float, slab: NanotubeArraySlab) -> float:
    """Plasma frequency along the tube alignment of a nanotube-array slab.

    omega_p(q) = omega_p3d sqrt(2 q R I0(qR) K0(qR) / (1 + 1/(q eps~ d))).
    The Bessel product normalises the carrier distribution over the
    cylinder surfaces; for qR -> inf it tends to 1/(2qR) and the
    isotropic film expression is recovered.  0 at q = 0 by continuity.
    """
    if q < 0.0:
        raise ValueError(f"momentum must be >= 0, got {q}")
    if q == 0.0:
        return 0.0
    z = q * slab.radius_R
    num = 2.0 * z * bessel_i0k0_product(z)
    den = 1.0 + 1.0 / (q * eps_tilde(slab) * slab.thickness_d)
    return slab.omega_p3d * math.sqrt(num / den)


def drude_eps_imaginary_axis(
    xi: float, omega_p: float, eps_b: float, delta: float = 0.0
) -> float:
    """Drude permittivity continued to omega = i*xi: eps_b + wp^2/(xi(xi+delta)).

    Real, larger than eps_b, and monotonically decreasing in xi, as any
    response function must be on the imaginary axis.  The static point
    xi = 0 is a pole and rejected.
    """
    if xi <= 0.0:
        raise ValueError(f"xi must be > 0, got {xi}")
    return eps_b + omega_p * omega_p / (xi * (xi + delta))


def local_drude_fn(
    omega_p: float, eps_b: float, delta: float = 0.0
) -> Callable[[float], float]:
    """Permittivity-of-xi callback for the general force integral."""
    return lambda xi: drude_eps_imaginary_axis(xi, omega_p, eps_b, delta)
