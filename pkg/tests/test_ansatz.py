import math

import numpy as np
import pytest
from numpy.polynomial import Polynomial

from shellbuckle.ansatz import (
    QuadratureError,
    ansatz_field,
    ansatz_ratios,
    bump_profile,
    cross_limit,
    phipsi_identity,
    phipsi_profile,
)
from shellbuckle.cli import cross_profile
from shellbuckle.tensors import DomainError, ShellParams


def test_profile_partials_match_finite_differences():
    W = bump_profile("poly6", 2.0)
    eta, z, d = 0.3, 0.7, 1e-5
    fd = (W(eta + d, z) - W(eta - d, z)) / (2 * d)
    assert W.partial(1, 0, eta, z) == pytest.approx(fd, rel=1e-8)
    fd = (W.partial(2, 0, eta, z + d) - W.partial(2, 0, eta, z - d)) / (2 * d)
    assert W.partial(2, 1, eta, z) == pytest.approx(fd, rel=1e-7)


def test_profile_vanishes_outside_support():
    W = bump_profile("poly6", 2.0)
    assert W(1.2, 1.0) == 0.0 and W(0.0, -0.1) == 0.0 and W(0.0, 2.5) == 0.0
    assert W(0.0, 1.0) == pytest.approx(1.0)


def test_field_is_periodic_and_localised():
    p = ShellParams(h=1e-2)
    f = ansatz_field(bump_profile("poly6", p.L), p)
    a, _ = f(1.0, 0.1, 0.8)
    b, _ = f(1.0, 0.1 + 2 * math.pi, 0.8)
    np.testing.assert_allclose(a, b, atol=1e-14)
    far, dfar = f(1.0, 1.0, 0.8)
    assert not far.any() and not dfar.any()


def test_field_gradient_matches_finite_differences():
    p = ShellParams(h=1e-2)
    f = ansatz_field(bump_profile("poly6", p.L), p)
    x = np.array([1.002, 0.05, 0.9])
    _, d = f(*x)
    step = 1e-6
    for k in range(3):
        e = np.zeros(3)
        e[k] = step
        fd = (f(*(x + e))[0] - f(*(x - e))[0]) / (2 * step)
        np.testing.assert_allclose(d[:, k], fd, rtol=1e-5, atol=1e-7)


def test_scale_must_fit_in_one_period():
    with pytest.raises(DomainError):
        ansatz_field(bump_profile(), ShellParams(h=100.0, L=2.0))


def test_unknown_profile_kind():
    with pytest.raises(ValueError):
        bump_profile("gauss")


def test_ratios_follow_their_powers():
    W = bump_profile("poly6", 2.0)
    a = ansatz_ratios(W, ShellParams(h=1e-3))
    b = ansatz_ratios(W, ShellParams(h=1e-4))
    assert math.log(a.korn / b.korn) / math.log(10) == pytest.approx(1.5, abs=0.1)
    assert math.log(a.load / b.load) / math.log(10) == pytest.approx(1.0, abs=0.1)
    assert a.neg_compression > 0


def test_under_resolved_quadrature_is_reported():
    with pytest.raises(QuadratureError):
        ansatz_ratios(bump_profile("poly6", 2.0), ShellParams(h=1e-2), n=(2, 4, 4))


def test_phipsi_identity_and_cross_limit():
    L = 2.0
    phi = Polynomial([1.0, 0.0, -1.0]) ** 6
    psi = Polynomial([0.0, 0.0, 0.0, 1.0]) * Polynomial([L, -1.0]) ** 3 / L ** 6
    lhs, rhs = phipsi_identity(phi, psi, L)
    assert abs(lhs - rhs) <= 1e-8 * abs(rhs)
    assert cross_limit(phipsi_profile(phi, psi, L)) == pytest.approx(lhs, rel=1e-14)


def test_cross_term_tends_to_its_limit():
    W = cross_profile(2.0)
    lim = cross_limit(W)
    gaps = [abs(ansatz_ratios(W, ShellParams(h=h)).cross / h - lim) / abs(lim) for h in (1e-2, 1e-3, 1e-4)]
    assert gaps[0] > gaps[1] > gaps[2]
