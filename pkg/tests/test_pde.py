import cmath

import pytest

from cnls_symmetry.catalog.pde import (
    FAMILIES,
    constant_orbit_solution,
    fd_residual,
    reflect_orbit_check,
    richardson_suite,
)
from cnls_symmetry.exprfield import DomainError

PT = (1.0, 0.3, -0.2)


def test_identity_element():
    fam = constant_orbit_solution(1.0, "t", "t^2", "1", eps_g=0.0, p=1, q=1, r=1)
    assert fam.u(*PT) == 1.0 and fam.v(*PT) == fam.b
    assert fd_residual(fam, PT, 1e-2) == (0.0, 0.0)


def test_constant_phase_rotation():
    fam = constant_orbit_solution(1.0, "0", "0", "1", eps_g=0.3, p=1, q=1, r=1)
    assert fam.u(*PT) == pytest.approx(cmath.exp(0.3j))
    assert fam.v(*PT) == pytest.approx(fam.b)


def test_unit_modulus():
    fam = constant_orbit_solution(1.0, "t", "0", "0", eps_g=0.1, p=1, q=1, r=1)
    assert abs(fam.u(*PT)) == pytest.approx(1.0)


def test_second_order_decay():
    fam = constant_orbit_solution(1.0, "t", "t^2", "1", eps_g=0.5, p=1, q=1, r=1)
    coarse, fine = fd_residual(fam, PT, 1e-2), fd_residual(fam, PT, 5e-3)
    assert 3.5 <= coarse[0] / fine[0] <= 4.5


def test_reflection_u_is_identical():
    fam = constant_orbit_solution(1.0, "t", "t^2", "1", eps_g=0.5, p=1, q=2, r=1)
    assert reflect_orbit_check(fam, "u", PT, 1e-2) == pytest.approx(fd_residual(fam, PT, 1e-2))


def test_reflection_of_identity():
    fam = constant_orbit_solution(1.0, "t", "t", "1", eps_g=0.0, p=1, q=2, r=1)
    assert reflect_orbit_check(fam, "x", PT, 1e-2) == (0.0, 0.0)


def test_reflection_xy_decay():
    fam = constant_orbit_solution(1.0, "t", "0", "0", eps_g=0.5, p=1, q=2, r=1)
    coarse = reflect_orbit_check(fam, "xy", PT, 1e-2)
    fine = reflect_orbit_check(fam, "xy", PT, 5e-3)
    assert 3.5 <= coarse[0] / fine[0] <= 4.5


def test_bad_arguments():
    fam = constant_orbit_solution(1.0, "t", "0", "0", eps_g=0.5, p=1, q=2, r=1)
    with pytest.raises(ValueError):
        fd_residual(fam, PT, 0.0)
    with pytest.raises(ValueError):
        reflect_orbit_check(fam, "z", PT, 1e-2)
    with pytest.raises(DomainError):
        constant_orbit_solution(1.0, "a*t", "0", "0", eps_g=0.5, p=1, q=2, r=1)


def test_richardson_suite():
    res = richardson_suite(seed=0)
    assert len(res) == 3 * len(FAMILIES)
    assert all(r.passed for r in res)
