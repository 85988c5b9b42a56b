"""Leading-order stress redistribution around a localized dent.

On the stretched coordinates ``(eta, zeta)`` around the dent, the membrane
stress is generated by a potential ``s`` with hoop stress ``s_zeta_zeta``,
shear ``-s_eta_zeta`` and axial stress ``s_eta_eta``.  ``s`` solves

    rho_ee s_zz + s_ee rho_zz - 2 rho_ez s_ez = s_zz + E rho_zz

which is solved here by a fixed point on the ``s_zz`` term, with zero
Dirichlet data on a rectangle around the dent.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .basis import ConfigError

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DentGrid:
    eta: np.ndarray
    zeta: np.ndarray
    rho: np.ndarray
    rho_ee: np.ndarray
    rho_zz: np.ndarray
    rho_ez: np.ndarray
    amplitude: float = 0.0
    aspect: tuple = (1.0, 1.0)

    @property
    def shape(self) -> tuple:
        return self.rho.shape

    @property
    def spacing(self) -> tuple:
        return float(self.eta[1] - self.eta[0]), float(self.zeta[1] - self.zeta[0])

    def center_index(self) -> tuple:
        return int(np.argmin(np.abs(self.eta))), int(np.argmin(np.abs(self.zeta)))

    def scaled(self, factor: float) -> "DentGrid":
        """Same grid with ``rho`` multiplied by ``factor``."""
        return DentGrid(self.eta, self.zeta, factor * self.rho, factor * self.rho_ee,
                        factor * self.rho_zz, factor * self.rho_ez,
                        factor * self.amplitude, self.aspect)


def dent_profile(eta, zeta, amplitude: float, a_eta: float = 1.0, a_zeta: float = 0.5):
    """``rho = -A (1 - q)^6`` on ``q < 1``, ``q = (eta/a_eta)^2 + (zeta/a_zeta)^2``.

    Returns ``(rho, rho_ee, rho_zz, rho_ez)``.  ``A > 0`` is an inward dent.
    """
    qe, qz = 2.0 * eta / a_eta ** 2, 2.0 * zeta / a_zeta ** 2
    u = 1.0 - (eta / a_eta) ** 2 - (zeta / a_zeta) ** 2
    inside = u > 0.0
    u = np.where(inside, u, 0.0)
    A = amplitude
    rho = -A * u ** 6
    ree = -30.0 * A * u ** 4 * qe ** 2 + 12.0 * A * u ** 5 / a_eta ** 2
    rzz = -30.0 * A * u ** 4 * qz ** 2 + 12.0 * A * u ** 5 / a_zeta ** 2
    rez = -30.0 * A * u ** 4 * qe * qz
    return rho, ree, rzz, rez


def dent_grid(n: int = 129, amplitude: float = 0.01, a_eta: float = 1.0, a_zeta: float = 0.5,
              margin: float = 0.5, n_zeta: int | None = None) -> DentGrid:
    """Uniform grid on ``[-(1+margin), 1+margin]^2`` around a dent inside the unit ball."""
    if max(a_eta, a_zeta) > 1.0 or min(a_eta, a_zeta) <= 0.0:
        raise ConfigError("dent semi-axes must lie in (0, 1]")
    if margin <= 0.0:
        raise ConfigError("margin must be positive")
    half = 1.0 + margin
    eta = np.linspace(-half, half, n)
    zeta = np.linspace(-half, half, n if n_zeta is None else n_zeta)
    E, Z = np.meshgrid(eta, zeta, indexing="ij")
    rho, ree, rzz, rez = dent_profile(E, Z, amplitude, a_eta, a_zeta)
    return DentGrid(eta, zeta, rho, ree, rzz, rez, amplitude, (a_eta, a_zeta))


@dataclass(frozen=True, eq=False)
class DentSolution:
    s: np.ndarray
    residual: float
    iterations: int
    converged: bool
    grid: DentGrid = field(repr=False)
    E: float = 1.0
    history: tuple = field(default=(), repr=False)


def dent_solve(grid: DentGrid, E: float = 1.0, tol: float = 1e-6, max_iter: int = 200,
               backend: str | None = None) -> DentSolution:
    """Fixed-point solve starting from ``s = -E rho``.

    ``tol`` is relative to ``E max|rho_zz|``.  A solve that does not reach
    it is returned with ``converged=False`` and the iterate of smallest
    residual; the loop stops early once the residual has grown a thousandfold
    past its minimum.
    """
    sup_ee = float(np.max(np.abs(grid.rho_ee)))
    if sup_ee >= 1.0:
        raise ConfigError(f"max |rho_ee| = {sup_ee:.3f} >= 1: the s_zz coefficient changes sign")
    k = _kernels.select(backend)
    de, dz = grid.spacing
    scale = E * float(np.max(np.abs(grid.rho_zz)))
    if scale == 0.0:
        scale = abs(E) or 1.0
    args = (np.ascontiguousarray(grid.rho_ee), np.ascontiguousarray(grid.rho_zz),
            np.ascontiguousarray(grid.rho_ez), float(E), de, dz)
    s = -E * np.array(grid.rho, dtype=float)
    best, best_res = s, math.inf
    history = []
    it = 0
    while it < max_iter:
        s = k.step(s, *args)
        it += 1
        res = float(np.max(np.abs(k.pde_residual(s, *args)))) / scale
        history.append(res)
        if res < best_res:
            best, best_res = s, res
        if res < tol:
            return DentSolution(s, res, it, True, grid, E, tuple(history))
        # the iteration amplifies grid-scale eta modes; stop once it has clearly turned
        if not math.isfinite(res) or res > 1e3 * best_res:
            break
    log.warning("dent solve did not converge: best residual %.3e (tol %.1e) after %d steps",
                best_res, tol, it)
    return DentSolution(best, best_res, it, False, grid, E, tuple(history))


@dataclass(frozen=True, eq=False)
class HoopStress:
    values: np.ndarray
    minimum: float
    argmin: tuple
    location: tuple


def dent_hoop_stress(sol: DentSolution) -> HoopStress:
    """``s_zeta_zeta`` by second differences (zero on the boundary)."""
    if not sol.converged:
        log.warning("hoop stress of an unconverged dent solution")
    _, dz = sol.grid.spacing
    s = sol.s
    out = np.zeros_like(s)
    out[1:-1, 1:-1] = (s[1:-1, 2:] - 2.0 * s[1:-1, 1:-1] + s[1:-1, :-2]) / (dz * dz)
    idx = np.unravel_index(int(np.argmin(out)), out.shape)
    loc = (float(sol.grid.eta[idx[0]]), float(sol.grid.zeta[idx[1]]))
    return HoopStress(out, float(out[idx]), (int(idx[0]), int(idx[1])), loc)
