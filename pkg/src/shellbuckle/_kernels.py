"""Grid kernels of the dent solver, compiled with numba when available.

Set ``SHELLBUCKLE_DISABLE_NUMBA=1`` to force the pure numpy path.  Both
paths are always importable under ``numpy_kernels`` / ``numba_kernels`` so the
benchmark and the tests can compare them.
"""
from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None


def _dirichlet_zeta_np(f, dz):
    """Solve ``D_zz s = f`` along axis 1 with ``s = 0`` at both ends, exactly."""
    n = f.shape[1]
    F = np.zeros_like(f)
    F[:, 1:-1] = f[:, 1:-1]
    d = dz * dz * np.cumsum(F[:, :-1], axis=1)
    c = np.zeros_like(f)
    c[:, 1:] = np.cumsum(d, axis=1)
    j = np.arange(n) / (n - 1)
    return c - j[None, :] * c[:, -1:]


def _second_diffs_np(s, de, dz):
    see = np.zeros_like(s)
    szz = np.zeros_like(s)
    sez = np.zeros_like(s)
    c = s[1:-1, 1:-1]
    see[1:-1, 1:-1] = (s[2:, 1:-1] - 2.0 * c + s[:-2, 1:-1]) / (de * de)
    szz[1:-1, 1:-1] = (s[1:-1, 2:] - 2.0 * c + s[1:-1, :-2]) / (dz * dz)
    sez[1:-1, 1:-1] = (s[2:, 2:] - s[2:, :-2] - s[:-2, 2:] + s[:-2, :-2]) / (4.0 * de * dz)
    return see, szz, sez


def _fixed_point_rhs_np(s, ree, rzz, rez, E, de, dz):
    see, _, sez = _second_diffs_np(s, de, dz)
    f = (E * rzz - rzz * see + 2.0 * rez * sez) / (ree - 1.0)
    f[0, :] = 0.0
    f[-1, :] = 0.0
    return f


def _pde_residual_np(s, ree, rzz, rez, E, de, dz):
    see, szz, sez = _second_diffs_np(s, de, dz)
    res = ree * szz + see * rzz - 2.0 * rez * sez - szz - E * rzz
    out = np.zeros_like(s)
    out[1:-1, 1:-1] = res[1:-1, 1:-1]
    return out


def _step_np(s, ree, rzz, rez, E, de, dz):
    s_new = _dirichlet_zeta_np(_fixed_point_rhs_np(s, ree, rzz, rez, E, de, dz), dz)
    s_new[0, :] = 0.0
    s_new[-1, :] = 0.0
    return s_new


numpy_kernels = SimpleNamespace(
    name="numpy",
    dirichlet_zeta=_dirichlet_zeta_np,
    fixed_point_rhs=_fixed_point_rhs_np,
    pde_residual=_pde_residual_np,
    step=_step_np,
)


if njit is not None:

    @njit(cache=True)
    def _dirichlet_zeta_nb(f, dz):
        m, n = f.shape
        s = np.zeros_like(f)
        h2 = dz * dz
        for i in range(m):
            d = 0.0
            c = 0.0
            for j in range(1, n):
                c += d
                s[i, j] = c
                if j < n - 1:
                    d += h2 * f[i, j]
            end = s[i, n - 1]
            for j in range(n):
                s[i, j] -= j / (n - 1) * end
        return s

    @njit(cache=True)
    def _fixed_point_rhs_nb(s, ree, rzz, rez, E, de, dz):
        m, n = s.shape
        f = np.zeros_like(s)
        for i in range(1, m - 1):
            for j in range(1, n - 1):
                see = (s[i + 1, j] - 2.0 * s[i, j] + s[i - 1, j]) / (de * de)
                sez = (s[i + 1, j + 1] - s[i + 1, j - 1] - s[i - 1, j + 1] + s[i - 1, j - 1]) / (4.0 * de * dz)
                f[i, j] = (E * rzz[i, j] - rzz[i, j] * see + 2.0 * rez[i, j] * sez) / (ree[i, j] - 1.0)
        return f

    @njit(cache=True)
    def _pde_residual_nb(s, ree, rzz, rez, E, de, dz):
        m, n = s.shape
        out = np.zeros_like(s)
        for i in range(1, m - 1):
            for j in range(1, n - 1):
                see = (s[i + 1, j] - 2.0 * s[i, j] + s[i - 1, j]) / (de * de)
                szz = (s[i, j + 1] - 2.0 * s[i, j] + s[i, j - 1]) / (dz * dz)
                sez = (s[i + 1, j + 1] - s[i + 1, j - 1] - s[i - 1, j + 1] + s[i - 1, j - 1]) / (4.0 * de * dz)
                out[i, j] = (ree[i, j] - 1.0) * szz + see * rzz[i, j] - 2.0 * rez[i, j] * sez - E * rzz[i, j]
        return out

    @njit(cache=True)
    def _step_nb(s, ree, rzz, rez, E, de, dz):
        s_new = _dirichlet_zeta_nb(_fixed_point_rhs_nb(s, ree, rzz, rez, E, de, dz), dz)
        m = s.shape[0]
        s_new[0, :] = 0.0
        s_new[m - 1, :] = 0.0
        return s_new

    numba_kernels = SimpleNamespace(
        name="numba",
        dirichlet_zeta=_dirichlet_zeta_nb,
        fixed_point_rhs=_fixed_point_rhs_nb,
        pde_residual=_pde_residual_nb,
        step=_step_nb,
    )
else:  # pragma: no cover
    numba_kernels = None


def _env_disabled() -> bool:
    return os.environ.get("SHELLBUCKLE_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}


def select(name: str | None = None) -> SimpleNamespace:
    """Kernel set by name, or the default chosen from the environment."""
    if name is None:
        name = "numpy" if _env_disabled() or numba_kernels is None else "numba"
    if name == "numba":
        if numba_kernels is None:
            raise RuntimeError("numba is not installed")
        return numba_kernels
    if name == "numpy":
        return numpy_kernels
    raise ValueError(f"unknown kernel backend {name!r}")
