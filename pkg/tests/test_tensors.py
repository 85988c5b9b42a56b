import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shellbuckle.tensors import (
    DomainError,
    ShellParams,
    SymTensor3,
    compression_tensor,
    cross_matrix,
    cyl_curl,
    cyl_gradient,
    skew_vector,
    stiffness_apply,
    strain,
)

floats = st.floats(-10, 10, allow_nan=False)
sym6 = st.lists(floats, min_size=6, max_size=6)


def cartesian_field(c):
    """Field given by Cartesian components ``c(x, y, z)``, returned in the cylindrical frame."""

    def field(r, theta, z):
        r, theta, z = np.broadcast_arrays(r, theta, z)

        def comps(r, theta, z):
            x, y = r * np.cos(theta), r * np.sin(theta)
            ux, uy, uz = c(x, y, z)
            return np.stack([ux * np.cos(theta) + uy * np.sin(theta),
                             -ux * np.sin(theta) + uy * np.cos(theta), uz])

        phi = comps(r, theta, z)
        e = 1e-6
        d = np.stack([
            (comps(r + e, theta, z) - comps(r - e, theta, z)) / (2 * e),
            (comps(r, theta + e, z) - comps(r, theta - e, z)) / (2 * e),
            (comps(r, theta, z + e) - comps(r, theta, z - e)) / (2 * e),
        ], axis=1)
        return phi, d

    return field


def test_gradient_of_linear_cartesian_field_is_its_matrix_in_the_frame():
    M = np.array([[0.3, -1.2, 0.5], [0.7, 0.1, -0.4], [1.1, 0.2, -0.6]])
    f = cartesian_field(lambda x, y, z: tuple(M @ np.stack([x, y, z])))
    r, th, z = 1.07, 0.83, 0.4
    g = cyl_gradient(f, np.array(r), np.array(th), np.array(z))
    Q = np.array([[math.cos(th), math.sin(th), 0], [-math.sin(th), math.cos(th), 0], [0, 0, 1]])
    assert np.allclose(g, Q @ M @ Q.T, atol=1e-8)


def test_rigid_rotation_has_zero_strain_and_curl_twice_the_angle():
    w = np.array([0.2, -0.5, 0.9])
    f = cartesian_field(lambda x, y, z: tuple(np.cross(w, np.stack([x, y, z]), axis=0)))
    r, th, z = np.array([0.95, 1.02]), np.array([0.1, 2.0]), np.array([0.3, 1.7])
    g = cyl_gradient(f, r, th, z)
    assert np.abs(strain(g).data).max() < 1e-8
    curl = cyl_curl(f, r, th, z)
    for k, t in enumerate(th):
        Q = np.array([[math.cos(t), math.sin(t), 0], [-math.sin(t), math.cos(t), 0], [0, 0, 1]])
        assert np.allclose(curl[k], 2 * Q @ w, atol=1e-7)


def test_curl_matches_skew_part_of_gradient():
    f = cartesian_field(lambda x, y, z: (x * y, np.sin(z) * x, y * y - z))
    r, th, z = np.array([1.01]), np.array([0.7]), np.array([0.9])
    g = cyl_gradient(f, r, th, z)
    assert np.allclose(skew_vector(g), cyl_curl(f, r, th, z), atol=1e-8)
    a = skew_vector(g)[0]
    assert np.allclose(g[0] - g[0].T, cross_matrix(a), atol=1e-12)


def test_radius_must_be_positive():
    f = cartesian_field(lambda x, y, z: (x, y, z))
    with pytest.raises(DomainError):
        cyl_gradient(f, np.array(0.0), np.array(0.0), np.array(0.0))


@given(sym6)
def test_symtensor_matrix_roundtrip(v):
    s = SymTensor3(np.array(v))
    m = s.matrix()
    assert np.allclose(m, m.T)
    assert np.allclose(SymTensor3.from_matrix(m).data, s.data)
    assert math.isclose(s.trace(), np.trace(m), abs_tol=1e-9)


@given(sym6, sym6)
def test_frobenius_dot_matches_matrix_contraction(a, b):
    A, B = SymTensor3(np.array(a)), SymTensor3(np.array(b))
    assert math.isclose(A.dot(B), float(np.sum(A.matrix() * B.matrix())), rel_tol=1e-12, abs_tol=1e-9)


@settings(max_examples=50)
@given(sym6, st.floats(-0.9, 0.49))
def test_stiffness_coercivity_bounds(v, nu):
    p = ShellParams(h=0.1, nu=nu)
    xi = SymTensor3(np.array(v))
    lo, hi = p.coercivity
    q = stiffness_apply(xi, p).dot(xi)
    n2 = xi.dot(xi)
    assert lo * n2 - 1e-9 * (1 + n2) <= q <= hi * n2 + 1e-9 * (1 + n2)


def test_compression_tensor_of_axial_load():
    s = SymTensor3.from_components(zz=-2.0)
    assert np.allclose(compression_tensor(s).matrix(), np.diag([-2.0, -2.0, 0.0]))


def test_params_validation_and_incompressible_limit():
    with pytest.raises(DomainError):
        ShellParams(h=1.5)
    with pytest.raises(DomainError):
        ShellParams(h=0.1, nu=0.6)
    p = ShellParams(h=0.1, nu=0.5)
    with pytest.raises(DomainError):
        stiffness_apply(SymTensor3.identity(), p)
