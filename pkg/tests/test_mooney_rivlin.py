import math

import numpy as np
import pytest

from shellbuckle.branches import imperfect_branch
from shellbuckle.mooney_rivlin import (
    mr_alpha,
    mr_beta,
    mr_branch,
    mr_d2psi,
    mr_dpsi,
    mr_linearize,
    mr_phi,
    mr_pressure,
    mr_psi,
    mr_residuals,
)
from shellbuckle.branches import linear_defect
from shellbuckle.tensors import DomainError, ShellParams, cyl_gradient

D = 1e-5


def cdiff(f, x):
    return (f(x + D) - f(x - D)) / (2 * D)


def test_psi_examples():
    r = np.linspace(0.9, 1.1, 5)
    assert np.array_equal(mr_psi(r, 0.0, 0.0), r)
    assert math.isclose(mr_psi(1.0, 0.2, 0.0), 1 / math.sqrt(0.8), rel_tol=1e-15)
    dpsi = cdiff(lambda lam: float(mr_psi(1.3, lam, mr_beta(lam, 0.8))), 0.0)
    assert abs(dpsi - 1.3 / 2) < 1e-6


def test_psi_domain_errors():
    with pytest.raises(DomainError):
        mr_psi(1.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        mr_psi(0.5, 0.0, -0.3)


def test_closed_form_derivatives_against_differences():
    lam, beta = 0.12, -0.01
    r = np.linspace(0.96, 1.04, 7)
    assert np.allclose(mr_dpsi(r, lam, beta), cdiff(lambda x: mr_psi(x, lam, beta), r), rtol=1e-6)
    assert np.allclose(mr_d2psi(r, lam, beta), cdiff(lambda x: mr_dpsi(x, lam, beta), r), rtol=1e-6)
    b = mr_branch(0.1, 0.08, 0.9)
    assert np.allclose(b.dpressure(r), cdiff(b.pressure, r), rtol=1e-6)


def test_pressure_limit_and_traction():
    b = mr_branch(0.0, 0.1, 1.0)
    assert math.isclose(float(mr_pressure(1.0, b)), 1.0, rel_tol=1e-14)
    b = mr_branch(0.05, 0.02, 0.7)
    faces = np.array([0.99, 1.01])
    assert np.abs(mr_pressure(faces, b) - b.dpsi(faces) ** 2).max() < 1e-10


def test_alpha_examples():
    assert mr_alpha(0.0, 0.1, 1.0) == 0.0
    assert np.allclose(mr_phi(np.linspace(0.9, 1.1, 4), 0.0, 0.0), -1.0)
    for h, b0 in ((0.1, 1.0), (0.02, 0.4), (0.3, 2.0)):
        da = cdiff(lambda lam: mr_alpha(lam, h, b0), 0.0)
        assert abs(da - 4 * b0 / (4 - h * h)) < 1e-6
    assert math.isclose(4 / 3.99, 1.0025063, rel_tol=1e-7)


def test_alpha_matches_direct_phi_difference():
    lam, h, b0 = 0.2, 0.1, 1.0
    beta = mr_beta(lam, b0)
    direct = (mr_phi(1 + h / 2, lam, beta) - mr_phi(1 - h / 2, lam, beta)) / (2 * h)
    assert math.isclose(mr_alpha(lam, h, b0) ** 2, float(direct), rel_tol=1e-10)


def test_alpha_domain_error():
    with pytest.raises(DomainError):
        mr_alpha(1.0, 0.1, 1.0)


def test_beta_is_minus_half_alpha_squared_for_small_load():
    h, b0 = 0.05, 1.0
    for lam in (1e-2, 1e-3):
        a = mr_alpha(lam, h, b0)
        gap = abs(mr_beta(lam, b0) + a * a / 2)
        assert gap < 10 * (lam ** 3 + h * lam ** 2)


@pytest.mark.parametrize("lam,h,b0", [(0.05, 0.02, 0.7), (0.2, 0.1, 1.0), (-0.1, 0.05, 0.5)])
def test_residual_report(lam, h, b0):
    r = mr_residuals(mr_branch(lam, h, b0))
    assert r.det < 1e-12
    assert r.ode < 1e-8
    assert r.traction < 1e-10
    assert r.face_system < 1e-12


def test_deformation_gradient_linearises():
    h, b0 = 0.06, 0.8
    u, _, _ = mr_linearize(h, b0)
    pt = (np.array(1.01), np.array(0.4), np.array(0.7))
    grad_u = cyl_gradient(u, *pt)
    coef = linear_defect(lambda lam: mr_branch(lam, h, b0).deformation_gradient(pt[0], pt[2]), grad_u, 0.05)
    assert abs(coef) < 1e-7


def test_linearised_stress_examples():
    _, sig_h, s0 = mr_linearize(0.1, 0.3, 2.0)
    assert math.isclose(s0["tz"], 0.2, rel_tol=1e-15)
    assert s0["zz"] == -2.0
    assert math.isclose(sig_h.at(1.2)["tz"], 4 * 0.3 * 2.0 * 1.2 / (3 * (4 - 0.01)), rel_tol=1e-14)
    _, sig_h, s0 = mr_linearize(0.1, 0.0, 1.0)
    assert np.array_equal(sig_h.sigma0.data, np.array([0, 0, -1.0, 0, 0, 0]))


def test_linearised_stress_agrees_with_incompressible_twist():
    b0, gaps = 0.6, []
    for h in (0.1, 0.05, 0.025):
        _, sig_h, _ = mr_linearize(h, b0)
        lin = imperfect_branch(b0, ShellParams(h=h, nu=0.5)).stress
        gaps.append(np.abs(sig_h.at(1.0).data - lin.at(1.0).data).max())
    ratios = [gaps[i] / gaps[i + 1] for i in range(2)]
    assert all(abs(q - 4) < 0.1 for q in ratios)
    u, _, _ = mr_linearize(0.0 + 1e-9, b0)
    phi, _ = u(np.array(1.0), np.array(0.0), np.array(1.0))
    assert np.allclose(phi, [0.5, b0, -1.0], atol=1e-8)
