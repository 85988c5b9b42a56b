"""Helical trivial branch of an incompressible Mooney-Rivlin shell.

The deformation is ``y = (psi(r) cos(alpha z), psi(r) sin(alpha z), (1 - lam) z)``
in the frame at the reference point.  Incompressibility fixes ``psi``, the
radial equilibrium equation fixes the pressure up to a constant ``gamma``, and
the two traction-free faces fix ``gamma`` and the twist rate ``alpha``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import StressField
from .branches import residual_grid, twist_displacement
from .tensors import DomainError, ShellParams, SymTensor3


def _check_lambda(lam: float) -> None:
    if lam >= 1.0:
        raise DomainError(f"lambda must be < 1, got {lam}")


def mr_psi(r, lam: float, beta: float):
    _check_lambda(lam)
    rad = np.asarray(r, dtype=float) ** 2 / (1.0 - lam) + beta
    if np.any(rad <= 0.0):
        raise DomainError(f"psi radicand {np.min(rad):.3e} <= 0")
    return np.sqrt(rad)


def mr_dpsi(r, lam: float, beta: float):
    """``psi' = r / ((1 - lam) psi)``."""
    return np.asarray(r, dtype=float) / ((1.0 - lam) * mr_psi(r, lam, beta))


def mr_d2psi(r, lam: float, beta: float):
    psi = mr_psi(r, lam, beta)
    dpsi = np.asarray(r, dtype=float) / ((1.0 - lam) * psi)
    return (1.0 - np.asarray(r) * dpsi / psi) / ((1.0 - lam) * psi)


def mr_phi(r, lam: float, beta: float):
    r2 = np.asarray(r, dtype=float) ** 2
    return np.log(1.0 / (1.0 - lam) + beta / r2) - r2 / (r2 + beta * (1.0 - lam))


def mr_beta(lam: float, beta0: float) -> float:
    return -0.5 * beta0 * beta0 * lam * lam


def _half_phi_jump(lam: float, h: float, beta: float) -> float:
    """``(Phi(1+h/2) - Phi(1-h/2)) / (2h)`` without cancellation for small ``beta``."""
    rp2, rm2 = (1.0 + h / 2) ** 2, (1.0 - h / 2) ** 2
    c = 1.0 / (1.0 - lam)
    b1 = beta * (1.0 - lam)
    x = -2.0 * h * beta / (rp2 * (c * rm2 + beta))
    return math.log1p(x) / (2.0 * h) - b1 / ((rp2 + b1) * (rm2 + b1))


def mr_alpha(lam: float, h: float, beta0: float) -> float:
    """Twist rate making both faces traction free.

    The sign follows ``lam`` so that ``alpha`` is smooth through ``lam = 0``.
    """
    _check_lambda(lam)
    beta = mr_beta(lam, beta0)
    q = _half_phi_jump(lam, h, beta)
    if q < 0.0:
        raise DomainError(f"Phi(1+h/2) - Phi(1-h/2) = {2 * h * q:.3e} < 0; no real twist rate")
    return math.copysign(math.sqrt(q), lam)


@dataclass(frozen=True)
class MrBranch:
    lam: float
    h: float
    beta0: float
    beta: float
    alpha: float
    gamma: float
    E: float = 1.0

    def psi(self, r):
        return mr_psi(r, self.lam, self.beta)

    def dpsi(self, r):
        return mr_dpsi(r, self.lam, self.beta)

    def pressure(self, r):
        return mr_pressure(r, self)

    def dpressure(self, r):
        r = np.asarray(r, dtype=float)
        b1 = self.beta * (1.0 - self.lam)
        c = 1.0 / (1.0 - self.lam)
        dlog = -2.0 * self.beta / r ** 3 / (c + self.beta / r ** 2)
        return (dlog - 2.0 * r * self.alpha ** 2 + 2.0 * r * b1 / (r * r + b1) ** 2) / (2.0 * (1.0 - self.lam))

    def deformation_gradient(self, r, z) -> np.ndarray:
        """``grad y`` in the orthonormal frame at ``(r, theta, z)``, shape ``(..., 3, 3)``."""
        r, z = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(z, dtype=float))
        psi, dpsi = self.psi(r), self.dpsi(r)
        ca, sa = np.cos(self.alpha * z), np.sin(self.alpha * z)
        F = np.zeros(r.shape + (3, 3))
        F[..., 0, 0], F[..., 1, 0] = dpsi * ca, dpsi * sa
        F[..., 0, 1], F[..., 1, 1] = -psi / r * sa, psi / r * ca
        F[..., 0, 2], F[..., 1, 2] = -self.alpha * psi * sa, self.alpha * psi * ca
        F[..., 2, 2] = 1.0 - self.lam
        return F


def mr_branch(lam: float, h: float, beta0: float, E: float = 1.0) -> MrBranch:
    beta = mr_beta(lam, beta0)
    if beta <= -(1.0 - h / 2) ** 2 / (1.0 - lam):
        raise DomainError(f"beta = {beta:.3e} makes psi complex on the inner face")
    alpha = mr_alpha(lam, h, beta0)
    rp = 1.0 + h / 2
    gamma = alpha * alpha * rp * rp - float(mr_phi(rp, lam, beta)) + 1.0
    return MrBranch(lam=lam, h=h, beta0=beta0, beta=beta, alpha=alpha, gamma=gamma, E=E)


def mr_pressure(r, branch: MrBranch):
    """Pressure ``p(r)``; a function of the radius alone."""
    lam, beta = branch.lam, branch.beta
    r = np.asarray(r, dtype=float)
    _check_lambda(lam)
    b1 = beta * (1.0 - lam)
    return (np.log(1.0 / (1.0 - lam) + beta / r ** 2) - r * r * branch.alpha ** 2
            - b1 / (r * r + b1) + branch.gamma) / (2.0 * (1.0 - lam))


@dataclass(frozen=True)
class MrResiduals:
    ode: float
    det: float
    traction: float
    face_system: float

    def max(self) -> float:
        return max(self.ode, self.det, self.traction, self.face_system)


def ode_residual(branch: MrBranch, r):
    """``(r s1)' - s2 - alpha r s3`` with ``(r s1)'`` differentiated in closed form."""
    r = np.asarray(r, dtype=float)
    psi, dpsi = branch.psi(r), branch.dpsi(r)
    d2psi = mr_d2psi(r, branch.lam, branch.beta)
    p, dp = branch.pressure(r), branch.dpressure(r)
    s1 = dpsi - p / dpsi
    ds1 = d2psi - dp / dpsi + p * d2psi / dpsi ** 2
    s2 = psi / r - r * p / psi
    s3 = branch.alpha * psi
    return s1 + r * ds1 - s2 - branch.alpha * r * s3


def mr_residuals(branch: MrBranch, grid=None) -> MrResiduals:
    """Residual report on ``grid = (r, theta, z)`` (defaults to the branch check grid)."""
    if grid is None:
        grid = residual_grid(ShellParams(h=branch.h), seed=0)
    r, _, z = grid
    ode = np.abs(ode_residual(branch, r)).max()
    det = np.abs(np.linalg.det(branch.deformation_gradient(r, z)) - 1.0).max()
    faces = np.array([1.0 - branch.h / 2, 1.0 + branch.h / 2])
    trac = np.abs(branch.pressure(faces) - branch.dpsi(faces) ** 2).max()
    phi = mr_phi(faces, branch.lam, branch.beta)
    face = np.abs(branch.alpha ** 2 * faces ** 2 - phi - branch.gamma + 1.0).max()
    return MrResiduals(float(ode), float(det), float(trac), float(face))


def mr_linearize(h: float, beta0: float, E: float = 1.0):
    """Linearised displacement, stress ``sigma_h`` and its thin-shell limit."""
    c = 4.0 * beta0 / (4.0 - h * h)
    u = twist_displacement(0.5, c, -1.0)
    shear = E * c / 3.0
    sigma_h = StressField(SymTensor3.from_components(tz=shear, zz=-E),
                          SymTensor3.from_components(tz=shear))
    sigma0 = SymTensor3.from_components(tz=E * beta0 / 3.0, zz=-E)
    return u, sigma_h, sigma0
