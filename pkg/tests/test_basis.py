import math
import warnings

import numpy as np
import pytest

from oracles import basis_gradients, brute_gram, volume_rule
from shellbuckle.basis import (
    BOTH,
    EVEN,
    ODD,
    ConfigError,
    StressField,
    assemble,
    axial_integrals,
    basis_field,
    build_basis,
    component_gram,
    curl_form_gram,
    default_k_ax,
    integrate_radial,
    parse_entry,
    symmetric_residual,
)
from shellbuckle.tensors import ShellParams, SymTensor3, compression_tensor, skew_vector, stiffness_apply, strain

P = ShellParams(h=0.1, L=2.0, nu=0.3)
STRESS = StressField(SymTensor3.from_components(zz=-1.0, rr=0.3, tz=0.4),
                     SymTensor3.from_components(tz=0.7, tt=-0.2))


def _sym(g):
    return strain(g)


@pytest.fixture(scope="module", params=[(0, EVEN), (2, EVEN), (3, ODD), (3, BOTH)])
def case(request):
    m, parity = request.param
    b = build_basis(P, m, parity, k_ax=3, p_rad=2)
    rule = volume_rule(P.h, P.L, n_r=8, n_t=4 * m + 8, n_z=64)
    return b, rule, basis_gradients(b, rule)


def test_gradient_and_strain_grams_match_brute_force(case):
    b, rule, grads = case
    forms = assemble(b, STRESS, P)
    G = brute_gram(grads, rule, lambda a, c: np.sum(a * c, axis=(-2, -1)))
    Ee = brute_gram(grads, rule, lambda a, c: _sym(a).dot(_sym(c)))
    scale = np.abs(G).max()
    assert np.abs(forms.G - G).max() < 1e-11 * scale
    assert np.abs(forms.Ee - Ee).max() < 1e-11 * scale


def test_stiffness_and_stress_grams_match_brute_force(case):
    b, rule, grads = case
    forms = assemble(b, STRESS, P)
    R = rule[0]
    sig = STRESS.at(R).matrix()
    S = brute_gram(grads, rule, lambda a, c: stiffness_apply(_sym(a), P).dot(_sym(c)))
    C = brute_gram(grads, rule, lambda a, c: np.einsum("qab,qca,qcb->q", sig, a, c))
    scale = np.abs(S).max()
    assert np.abs(forms.S - S).max() < 1e-11 * scale
    assert np.abs(forms.C - C).max() < 1e-11 * scale


def test_curl_form_matches_brute_force(case):
    b, rule, grads = case
    R = rule[0]
    st = compression_tensor(STRESS.at(R)).matrix()
    C0 = brute_gram(grads, rule, lambda a, c: 0.25 * np.einsum("qab,qa,qb->q", st, skew_vector(a), skew_vector(c)))
    assert np.abs(curl_form_gram(b, STRESS) - C0).max() < 1e-11 * max(np.abs(C0).max(), 1.0)


def test_component_gram_cross_pair_matches_brute_force(case):
    b, rule, grads = case
    C = brute_gram(grads, rule, lambda a, c: 0.5 * (a[..., 0, 2] * c[..., 0, 1] + a[..., 0, 1] * c[..., 0, 2]))
    assert np.abs(component_gram(b, "rz", "rt") - C).max() < 1e-11 * max(np.abs(C).max(), 1.0)


def test_forms_are_symmetric_and_gram_is_positive_definite():
    b = build_basis(P, 4, BOTH, k_ax=5, p_rad=3)
    f = assemble(b, STRESS, P)
    for a in (f.S, f.C, f.G, f.Ee):
        assert symmetric_residual(a) < 1e-14
    assert np.linalg.eigvalsh(f.G).min() > 0


def test_breathing_conditions_hold_for_every_basis_field():
    b = build_basis(P, 3, BOTH, k_ax=4, p_rad=2)
    rng = np.random.default_rng(1)
    x = rng.standard_normal(b.basis_size)
    r = rng.uniform(0.95, 1.05, 10)
    th = rng.uniform(0, 2 * math.pi, 10)
    for zend in (0.0, P.L):
        phi, _ = basis_field(b, x)(r, th, np.full(10, zend))
        assert np.abs(phi[1:]).max() < 1e-13
        assert np.abs(phi[0]).max() > 1e-3


def test_basis_sizes():
    assert build_basis(P, 0, EVEN, k_ax=1, p_rad=1).basis_size == 6
    assert build_basis(P, 2, BOTH, k_ax=3, p_rad=2).basis_size == 2 * 3 * 3 * 3
    with pytest.raises(ConfigError):
        build_basis(P, -1)
    with pytest.raises(ConfigError):
        build_basis(P, 1, "sideways")


def test_nested_embedding_preserves_forms():
    small = build_basis(P, 3, EVEN, k_ax=3, p_rad=2)
    big = build_basis(P, 3, EVEN, k_ax=5, p_rad=3)
    E = big.embed(small)
    fs, fb = assemble(small, STRESS, P), assemble(big, STRESS, P)
    assert np.allclose(E.T @ fb.G @ E, fs.G, atol=1e-12)
    assert np.allclose(E.T @ fb.C @ E, fs.C, atol=1e-12)


def test_axial_integrals_match_quadrature():
    L = 2.0
    ax = axial_integrals(4, L)
    x, w = np.polynomial.legendre.leggauss(80)
    z = 0.5 * L * (x + 1)
    w = 0.5 * L * w
    for a in range(4):
        for b in range(1, 5):
            exact = float(np.sum(w * np.cos(a * math.pi * z / L) * np.sin(b * math.pi * z / L)))
            val = 2 * b * L / (math.pi * (b * b - a * a)) if (a + b) % 2 else 0.0
            assert math.isclose(val, exact, abs_tol=1e-13)
    assert isinstance(ax, dict)


def test_volume_is_integrated_exactly():
    b = build_basis(P, 0)
    assert math.isclose(integrate_radial(b, lambda r: np.ones_like(r)), 2 * math.pi * P.L * P.h, rel_tol=1e-14)


def test_low_radial_quadrature_warns():
    b = build_basis(P, 1, k_ax=2, p_rad=3)
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        f = assemble(b, STRESS, P, n_rad_quad=3)
    assert any("quadrature" in str(x.message) for x in w)
    assert f.meta["warnings"]


def test_default_axial_resolution_and_entry_names():
    assert default_k_ax(0.01, 2.0) == math.ceil(8 / (math.pi * 0.1))
    assert default_k_ax(1e-6, 2.0) == 64
    assert parse_entry("theta,z") == (1, 2) == parse_entry("tz")
    with pytest.raises(KeyError):
        parse_entry("qq")
