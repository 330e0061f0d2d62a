import math

import numpy as np
import pytest

from casimir_slabs import (
    ImaginaryFrequencyPoint,
    IsotropicSlab,
    NanotubeArraySlab,
    drude_eps_imaginary_axis,
    eps_tilde,
    frequency_point,
    momentum_from_xp,
    plasma_freq_isotropic,
    plasma_freq_nanotube,
)
from casimir_slabs.constants import C_NM_PER_S

OMEGA_P = 2.0e16


class TestSlabValidation:
    def test_isotropic_ok(self):
        slab = IsotropicSlab(omega_p3d=OMEGA_P, thickness_d=10.0, eps_b=9.0)
        assert slab.eps_sub == slab.eps_sup == 1.0
        assert slab.damping_delta == 0.0

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"omega_p3d": 0.0, "thickness_d": 10.0, "eps_b": 9.0},
            {"omega_p3d": OMEGA_P, "thickness_d": -1.0, "eps_b": 9.0},
            {"omega_p3d": OMEGA_P, "thickness_d": 10.0, "eps_b": 0.5},
            {"omega_p3d": OMEGA_P, "thickness_d": 10.0, "eps_b": 9.0, "damping_delta": -1.0},
            # surroundings screening as much as the film breaks the confined regime
            {"omega_p3d": OMEGA_P, "thickness_d": 10.0, "eps_b": 2.0},
            {"omega_p3d": OMEGA_P, "thickness_d": 10.0, "eps_b": 9.0, "eps_sub": 5.0, "eps_sup": 5.0},
        ],
    )
    def test_isotropic_invalid(self, kwargs):
        with pytest.raises(ValueError):
            IsotropicSlab(**kwargs)

    def test_array_dense_packing_default(self):
        slab = NanotubeArraySlab(
            omega_p3d=OMEGA_P, radius_R=2.0, thickness_d=20.0, eps_b=10.0
        )
        assert slab.period_Delta == 4.0

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"radius_R": -1.0, "thickness_d": 20.0, "eps_b": 10.0},
            {"radius_R": 2.0, "thickness_d": 3.0, "eps_b": 10.0},  # < one monolayer
            {"radius_R": 2.0, "thickness_d": 20.0, "eps_b": 10.0, "period_Delta": 3.0},
            {"radius_R": 2.0, "thickness_d": 20.0, "eps_b": 0.9},
        ],
    )
    def test_array_invalid(self, kwargs):
        with pytest.raises(ValueError):
            NanotubeArraySlab(omega_p3d=OMEGA_P, **kwargs)

    def test_frequency_point_invariants(self):
        with pytest.raises(ValueError):
            ImaginaryFrequencyPoint(xi=-1.0, momentum_k=0.0)
        with pytest.raises(ValueError):
            ImaginaryFrequencyPoint(xi=0.0, momentum_k=-1.0)


class TestEpsTilde:
    def test_free_standing_eps9(self):
        slab = IsotropicSlab(omega_p3d=OMEGA_P, thickness_d=10.0, eps_b=9.0)
        assert eps_tilde(slab) == pytest.approx(4.5)

    def test_equal_screening_gives_one(self):
        # the array type allows eps_b down to 1, so the degenerate ratio
        # is reachable there
        slab = NanotubeArraySlab(
            omega_p3d=OMEGA_P, radius_R=2.0, thickness_d=20.0, eps_b=2.0
        )
        assert eps_tilde(slab) == pytest.approx(1.0)

    def test_free_standing_eps10(self):
        slab = IsotropicSlab(omega_p3d=OMEGA_P, thickness_d=10.0, eps_b=10.0)
        assert eps_tilde(slab) == pytest.approx(5.0)


class TestMomentumMap:
    def test_normal_incidence(self):
        assert momentum_from_xp(3.7, 1.0, 250.0) == 0.0

    def test_sample_point(self):
        k = momentum_from_xp(2.0, math.sqrt(2.0), 1000.0)
        assert k == pytest.approx(1.0 / (math.sqrt(2.0) * 1000.0), rel=1e-12)
        assert k == pytest.approx(7.0711e-4, rel=1e-4)

    def test_radicand_identity(self):
        # 1/(eps~ k d) must equal (2l/(eps~ d)) p/(x sqrt(p^2-1))
        slab = IsotropicSlab(omega_p3d=OMEGA_P, thickness_d=10.0, eps_b=9.0)
        et, d, l = eps_tilde(slab), slab.thickness_d, 1000.0
        for x, p in [(0.5, 1.5), (2.0, 1.01), (4.0, 10.0)]:
            k = momentum_from_xp(x, p, l)
            lhs = 1.0 / (et * k * d)
            rhs = 2.0 * l / (et * d) * p / (x * math.sqrt(p * p - 1.0))
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_frequency_point(self):
        point = frequency_point(2.0, 2.0, 1000.0)
        assert point.xi == pytest.approx(2.0 * C_NM_PER_S / 4000.0, rel=1e-12)
        assert point.momentum_k == pytest.approx(
            momentum_from_xp(2.0, 2.0, 1000.0), rel=1e-12
        )


class TestIsotropicPlasmaFrequency:
    def test_unit_argument(self, film_slab):
        # k eps~ d = 1 -> omega_p / sqrt(2)
        k = 1.0 / (eps_tilde(film_slab) * film_slab.thickness_d)
        assert plasma_freq_isotropic(k, film_slab) == pytest.approx(
            OMEGA_P / math.sqrt(2.0), rel=1e-12
        )

    def test_bulk_limit(self):
        thick = IsotropicSlab(omega_p3d=OMEGA_P, thickness_d=1e9, eps_b=9.0)
        assert plasma_freq_isotropic(0.1, thick) == pytest.approx(OMEGA_P, rel=1e-8)

    def test_small_k_sqrt_dispersion(self, film_slab):
        et_d = eps_tilde(film_slab) * film_slab.thickness_d
        k1, k2 = 1e-9, 4e-9
        w1 = plasma_freq_isotropic(k1, film_slab)
        w2 = plasma_freq_isotropic(k2, film_slab)
        assert w2 / w1 == pytest.approx(math.sqrt(k2 / k1), rel=1e-6)
        assert w1 == pytest.approx(OMEGA_P * math.sqrt(et_d * k1), rel=1e-6)

    def test_zero_momentum_limit(self, film_slab):
        assert plasma_freq_isotropic(0.0, film_slab) == 0.0

    def test_bounded_by_bulk_and_monotone(self, film_slab):
        grid = np.geomspace(1e-6, 1e3, 40)
        values = [plasma_freq_isotropic(k, film_slab) for k in grid]
        assert all(v < OMEGA_P for v in values)
        assert all(a < b for a, b in zip(values, values[1:]))

    def test_monotone_in_thickness(self):
        k = 0.01
        thicknesses = [5.0, 10.0, 50.0, 200.0, 1e4]
        values = [
            plasma_freq_isotropic(
                k, IsotropicSlab(omega_p3d=OMEGA_P, thickness_d=d, eps_b=9.0)
            )
            for d in thicknesses
        ]
        assert all(a < b for a, b in zip(values, values[1:]))


class TestNanotubePlasmaFrequency:
    def test_zero_momentum(self, tube_array):
        assert plasma_freq_nanotube(0.0, tube_array) == 0.0

    def test_monotone_in_q_at_long_wavelength(self, tube_array):
        # monotone over the momentum window the force integrals sample
        # (qR <~ 0.5); near qR ~ 1.4 the cylinder normalization makes the
        # frequency overshoot the bulk value by ~2% and turn over
        grid = np.geomspace(1e-5, 0.25, 40)
        values = [plasma_freq_nanotube(q, tube_array) for q in grid]
        assert all(a < b for a, b in zip(values, values[1:]))

    def test_bulk_limit_and_bounded_overshoot(self, tube_array):
        assert plasma_freq_nanotube(1e3, tube_array) == pytest.approx(
            OMEGA_P, rel=1e-4
        )
        grid = np.geomspace(1e-5, 1e2, 60)
        values = [plasma_freq_nanotube(q, tube_array) for q in grid]
        assert max(values) < 1.03 * OMEGA_P

    def test_wide_tube_matches_isotropic_film(self):
        # R -> inf at fixed q: the cylinder normalization tends to 1/2
        # and the isotropic expression must be recovered
        q = 1.0
        radius = 1.0e4 / q  # qR = 1e4
        tube = NanotubeArraySlab(
            omega_p3d=OMEGA_P,
            radius_R=radius,
            thickness_d=2.0 * radius,
            eps_b=9.0,
        )
        film = IsotropicSlab(
            omega_p3d=OMEGA_P, thickness_d=tube.thickness_d, eps_b=9.0
        )
        w_tube = plasma_freq_nanotube(q, tube)
        w_film = plasma_freq_isotropic(q, film)
        assert abs(w_tube - w_film) / w_film < 1e-3

    def test_negative_momentum_rejected(self, tube_array):
        with pytest.raises(ValueError):
            plasma_freq_nanotube(-1.0, tube_array)


class TestDrude:
    def test_at_plasma_frequency(self):
        assert drude_eps_imaginary_axis(OMEGA_P, OMEGA_P, 9.0) == pytest.approx(10.0)

    def test_high_frequency_limit(self):
        assert drude_eps_imaginary_axis(1e25, OMEGA_P, 9.0) == pytest.approx(9.0, rel=1e-6)

    def test_direct_arithmetic(self):
        # eps_b = 9, wp = 2e16, xi = 1e15 -> 9 + 400
        assert drude_eps_imaginary_axis(1e15, 2e16, 9.0) == pytest.approx(409.0)

    @pytest.mark.parametrize("xi", [0.0, -1e10])
    def test_static_pole_rejected(self, xi):
        with pytest.raises(ValueError):
            drude_eps_imaginary_axis(xi, OMEGA_P, 9.0)

    def test_decreasing_and_bounded_below(self):
        grid = np.geomspace(1e12, 1e20, 30)
        values = [drude_eps_imaginary_axis(x, OMEGA_P, 9.0) for x in grid]
        assert all(a > b for a, b in zip(values, values[1:]))
        assert all(v > 9.0 for v in values)

    def test_damping_lowers_response(self):
        undamped = drude_eps_imaginary_axis(1e15, OMEGA_P, 9.0)
        damped = drude_eps_imaginary_axis(1e15, OMEGA_P, 9.0, delta=1e14)
        assert damped < undamped
