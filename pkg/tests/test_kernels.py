import numpy as np
import pytest

from shellbuckle import _kernels
from shellbuckle.dent import dent_grid

pytestmark = pytest.mark.skipif(_kernels.numba_kernels is None, reason="numba not installed")


@pytest.fixture(scope="module")
def case():
    g = dent_grid(n=33, amplitude=0.01)
    rng = np.random.default_rng(3)
    s = rng.standard_normal(g.shape)
    s[0, :] = s[-1, :] = s[:, 0] = s[:, -1] = 0.0
    de, dz = g.spacing
    return s, (g.rho_ee, g.rho_zz, g.rho_ez, 1.0, de, dz)


@pytest.mark.parametrize("name", ["fixed_point_rhs", "pde_residual", "step"])
def test_backends_agree(case, name):
    s, args = case
    a = getattr(_kernels.numpy_kernels, name)(s, *args)
    b = getattr(_kernels.numba_kernels, name)(s, *args)
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12 * np.abs(a).max())


def test_dirichlet_solve_inverts_second_difference():
    rng = np.random.default_rng(5)
    n, dz = 17, 0.1
    f = rng.standard_normal((4, n))
    for k in (_kernels.numpy_kernels, _kernels.numba_kernels):
        s = k.dirichlet_zeta(f, dz)
        assert np.all(s[:, 0] == 0.0) and np.allclose(s[:, -1], 0.0, atol=1e-14)
        d2 = (s[:, 2:] - 2 * s[:, 1:-1] + s[:, :-2]) / dz ** 2
        np.testing.assert_allclose(d2, f[:, 1:-1], rtol=1e-10, atol=1e-10)


def test_environment_flag_selects_numpy(monkeypatch):
    monkeypatch.setenv("SHELLBUCKLE_DISABLE_NUMBA", "1")
    assert _kernels.select().name == "numpy"
    monkeypatch.setenv("SHELLBUCKLE_DISABLE_NUMBA", "0")
    assert _kernels.select().name == "numba"
    assert _kernels.select("numpy").name == "numpy"
    with pytest.raises(ValueError):
        _kernels.select("fortran")
