"""Trivial branches of the axially compressed shell.

The perfect Saint Venant-Kirchhoff branch is a homogeneous stretch; the
load-imperfect branch adds a uniform twist ``u_theta = eps r z`` to the
linearised displacement, which produces a constant-rate shear ``sigma_tz``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import StressField
from .tensors import (
    DomainError,
    ShellParams,
    SymTensor3,
    cyl_gradient,
    stiffness_apply,
    strain,
)


def transverse_stretch(lam: float, nu: float) -> float:
    """``a(lam)`` making the lateral faces traction free."""
    rad = 1.0 + 2.0 * nu * lam - nu * lam * lam
    if rad <= 0.0:
        raise DomainError(f"no traction-free stretch: radicand {rad:.3e} <= 0 at lambda={lam}")
    return math.sqrt(rad) - 1.0


@dataclass(frozen=True, eq=False)
class SvkBranch:
    lam: float
    a: float
    F: np.ndarray
    Egreen: np.ndarray

    def piola(self, p: ShellParams) -> np.ndarray:
        """First Piola-Kirchhoff stress ``F (L0 E)``."""
        S = stiffness_apply(SymTensor3.from_matrix(np.diag(self.Egreen)), p).matrix()
        return self.F @ S

    def traction_residual(self, p: ShellParams) -> float:
        """``|P e_r|``; the branch is homogeneous so both faces agree."""
        return float(np.linalg.norm(self.piola(p)[:, 0]))


def svk_branch(lam: float, p: ShellParams) -> SvkBranch:
    a = transverse_stretch(lam, p.nu)
    F = np.diag([1.0 + a, 1.0 + a, 1.0 - lam])
    E = np.array([a + 0.5 * a * a, a + 0.5 * a * a, 0.5 * lam * lam - lam])
    F.setflags(write=False)
    E.setflags(write=False)
    return SvkBranch(lam=lam, a=a, F=F, Egreen=E)


def perfect_stress(p: ShellParams) -> StressField:
    return StressField(SymTensor3.from_components(zz=-p.E))


def linear_defect(F_of_lambda, grad_u: np.ndarray, lam_max: float, degree: int = 8) -> float:
    """Linear coefficient of ``F(lam) - I - lam grad_u`` fitted on ``[0, lam_max]``.

    The fit uses the monomials ``lam .. lam^degree`` on Chebyshev nodes; a
    branch linearising to ``grad_u`` has a vanishing linear coefficient.
    """
    n = 4 * degree
    lam = 0.5 * lam_max * (1.0 - np.cos(np.pi * (np.arange(n) + 0.5) / n))
    rem = np.array([(np.asarray(F_of_lambda(x)) - np.eye(3) - x * grad_u).ravel() for x in lam])
    V = np.vander(lam / lam_max, degree + 1, increasing=True)[:, 1:]
    coef, *_ = np.linalg.lstsq(V, rem, rcond=None)
    return float(np.max(np.abs(coef[0])) / lam_max)


def stress_divergence(stress: StressField, r) -> np.ndarray:
    """Divergence of a stress that depends on ``r`` only (affine), shape ``(..., 3)``."""
    r = np.asarray(r, dtype=float)
    s = stress.at(r)
    d = stress.sigma1
    return np.stack([
        d["rr"] + (s["rr"] - s["tt"]) / r,
        d["rt"] + 2.0 * s["rt"] / r,
        d["rz"] + s["rz"] / r,
    ], axis=-1) * np.ones(r.shape + (1,))


def residual_grid(p: ShellParams, seed: int = 0, n_random: int = 20):
    """Deterministic 5x8x8 grid plus seeded random points, as flat arrays."""
    r = np.linspace(1.0 - p.h / 2, 1.0 + p.h / 2, 5)
    th = np.linspace(0.0, 2.0 * np.pi, 8, endpoint=False)
    z = np.linspace(0.0, p.L, 8)
    R, T, Z = (a.ravel() for a in np.meshgrid(r, th, z, indexing="ij"))
    rng = np.random.default_rng(seed)
    R = np.concatenate([R, rng.uniform(1.0 - p.h / 2, 1.0 + p.h / 2, n_random)])
    T = np.concatenate([T, rng.uniform(0.0, 2.0 * np.pi, n_random)])
    Z = np.concatenate([Z, rng.uniform(0.0, p.L, n_random)])
    return R, T, Z


@dataclass(frozen=True)
class BranchResiduals:
    equilibrium: float
    traction: float
    clamp: float
    constitutive: float

    def max(self) -> float:
        return max(self.equilibrium, self.traction, self.clamp, self.constitutive)


def twist_displacement(c_r: float, c_t: float, c_z: float):
    """Field ``u = (c_r r, c_t r z, c_z z)`` with its partials."""

    def field(r, theta, z):
        r, theta, z = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (r, theta, z)))
        zero = np.zeros_like(r)
        phi = np.stack([c_r * r, c_t * r * z, c_z * z])
        d = np.stack([
            np.stack([zero + c_r, zero, zero]),
            np.stack([c_t * z, zero, c_t * r]),
            np.stack([zero, zero, zero + c_z]),
        ])
        return phi, d

    return field


@dataclass(frozen=True)
class ImperfectBranch:
    """Linearised branch ``u = (nu r, eps r z, -z)`` under a twisted end load."""

    eps: float
    p: ShellParams
    stress: StressField

    @property
    def u(self):
        return twist_displacement(self.p.nu, self.eps, -1.0)

    def residuals(self, seed: int = 0) -> BranchResiduals:
        p = self.p
        R, T, Z = residual_grid(p, seed)
        eq = np.abs(stress_divergence(self.stress, R)).max()
        faces = np.array([1.0 - p.h / 2, 1.0 + p.h / 2])
        trac = np.abs(self.stress.at(faces).matrix()[:, :, 0]).max()
        phi, _ = self.u(R, T, np.zeros_like(Z))
        clamp = np.abs(phi[1:]).max()
        if p.nu < 0.5:
            sig = stiffness_apply(strain(cyl_gradient(self.u, R, T, Z)), p)
            const = np.abs(sig.data - self.stress.at(R).data).max()
        else:
            const = 0.0
        return BranchResiduals(float(eq), float(trac), float(clamp), float(const))


def imperfect_branch(eps: float, p: ShellParams) -> ImperfectBranch:
    shear = eps * p.E / (2.0 * (1.0 + p.nu))
    stress = StressField(SymTensor3.from_components(tz=shear, zz=-p.E),
                         SymTensor3.from_components(tz=shear))
    return ImperfectBranch(eps=eps, p=p, stress=stress)


def sigma0_family(s: float, t: float, p: ShellParams):
    """Displacement and limiting stress ``[[0,0,0],[0,0,s],[0,s,t]]`` of a twisted end load."""
    u = twist_displacement(-t * p.nu / p.E, 2.0 * (1.0 + p.nu) * s / p.E, t / p.E)
    return u, SymTensor3.from_components(tz=s, zz=t)
