import pytest

from casimir_slabs import IsotropicSlab, NanotubeArraySlab, QuadratureSpec

OMEGA_P = 2.0e16  # free-electron-gas bulk plasma frequency, 1/s


@pytest.fixture(scope="session")
def spec():
    return QuadratureSpec()


@pytest.fixture(scope="session")
def fast_spec():
    # Loose tolerance for the heavier double integrals in unit tests;
    # still far below any assertion tolerance used with it.
    return QuadratureSpec(rel_tol=1.0e-6, abs_tol=1.0e-10)


@pytest.fixture
def film_slab():
    return IsotropicSlab(omega_p3d=OMEGA_P, thickness_d=10.0, eps_b=9.0)


@pytest.fixture
def tube_array():
    return NanotubeArraySlab(
        omega_p3d=OMEGA_P, radius_R=2.0, thickness_d=20.0, eps_b=10.0
    )
