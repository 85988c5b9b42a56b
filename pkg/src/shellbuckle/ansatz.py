"""Explicit test fields that saturate the Korn-type scalings.

A profile ``W(eta, z)`` supported in ``(-1, 1) x (0, L)`` is turned into a
displacement concentrated on the circumferential scale ``h^(1/4)``.  Profiles
are finite sums of separable polynomial products, so every partial derivative
is exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial

from .tensors import DomainError, ShellParams, gradient_from_partials, stiffness_apply, strain


class QuadratureError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class AnsatzProfile:
    """``W = sum_k f_k(eta) g_k(z)``, with every factor vanishing outside its interval."""

    terms: tuple
    L: float

    def partial(self, i: int, j: int, eta, z):
        """``d^i/deta^i d^j/dz^j W``."""
        eta = np.asarray(eta, dtype=float)
        z = np.asarray(z, dtype=float)
        inside = (np.abs(eta) < 1.0) & (z > 0.0) & (z < self.L)
        out = np.zeros(np.broadcast_shapes(eta.shape, z.shape))
        for f, g in self.terms:
            out = out + f.deriv(i)(eta) * g.deriv(j)(z) if i or j else out + f(eta) * g(z)
        return np.where(inside, out, 0.0)

    def __call__(self, eta, z):
        return self.partial(0, 0, eta, z)


def bump_profile(kind: str = "poly6", L: float = 2.0) -> AnsatzProfile:
    """``(1 - eta^2)^6 (z (L - z) / L^2)^6`` scaled to unit maximum."""
    if kind != "poly6":
        raise ValueError(f"unknown profile kind {kind!r}")
    if L <= 0:
        raise DomainError("L must be positive")
    f = Polynomial([1.0, 0.0, -1.0]) ** 6
    g = (Polynomial([0.0, L, -1.0]) / L ** 2) ** 6 * 4.0 ** 6
    return AnsatzProfile(((f, g),), L)


def phipsi_profile(phi: Polynomial, psi: Polynomial, L: float) -> AnsatzProfile:
    """``W = phi(eta) psi'(z) + phi'(eta) psi(z)``."""
    return AnsatzProfile(((phi, psi.deriv()), (phi.deriv(), psi)), L)


def _check_scale(p: ShellParams) -> float:
    q = p.h ** 0.25
    if q >= math.pi:
        raise DomainError(f"h^(1/4) = {q:.3f} >= pi: support does not fit in one period")
    return q


def _ansatz_partials(W: AnsatzProfile, h: float, r, eta, z):
    """Components and their (r, theta, z) partials at scaled points."""
    q = h ** 0.25
    s = math.sqrt(h)
    w = {(i, j): W.partial(i, j, eta, z) for i in range(5) for j in range(3) if i + j <= 5}
    rm = r - 1.0
    phi = (
        -w[2, 0],
        r * q * w[1, 0] + rm / q * w[3, 0],
        rm * w[2, 1] - s * w[0, 1],
    )
    zero = np.zeros_like(w[0, 0])
    d = (
        (zero, -w[3, 0] / q, -w[2, 1]),
        (q * w[1, 0] + w[3, 0] / q, r * w[2, 0] + rm / q ** 2 * w[4, 0], r * q * w[1, 1] + rm / q * w[3, 1]),
        (w[2, 1], rm / q * w[3, 1] - s / q * w[1, 1], rm * w[2, 2] - s * w[0, 2]),
    )
    return phi, d


def ansatz_field(W: AnsatzProfile, p: ShellParams):
    """Displacement evaluator ``(r, theta, z) -> (phi, dphi)``, 2pi-periodic in theta."""
    q = _check_scale(p)
    h = p.h

    def field(r, theta, z):
        r, theta, z = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (r, theta, z)))
        eta = (np.mod(theta + math.pi, 2.0 * math.pi) - math.pi) / q
        phi, d = _ansatz_partials(W, h, r, eta, z)
        return np.stack(phi), np.stack([np.stack(row) for row in d])

    return field


@dataclass(frozen=True)
class AnsatzRatios:
    h: float
    e2: float
    grad2: float
    tz2: float
    rz2: float
    stability: float
    neg_compression: float
    cross: float

    @property
    def korn(self) -> float:
        return self.e2 / self.grad2

    @property
    def theta_z(self) -> float:
        return self.tz2 / self.e2

    @property
    def r_z(self) -> float:
        return self.rz2 / self.e2

    @property
    def load(self) -> float:
        """``S / (-C)``, an upper bound for the buckling load."""
        return self.stability / self.neg_compression

    @property
    def compression_ratio(self) -> float:
        return self.neg_compression / self.stability


def _integrals(W: AnsatzProfile, p: ShellParams, n: tuple[int, int, int]) -> np.ndarray:
    h = p.h
    q = h ** 0.25
    (t, wt), (x, wx), (y, wy) = (np.polynomial.legendre.leggauss(k) for k in n)
    eta, ze = x, 0.5 * p.L * (y + 1.0)
    T, Eta, Zt = np.meshgrid(t, eta, ze, indexing="ij")
    R = 1.0 + 0.5 * h * T
    wts = np.einsum("i,j,k->ijk", wt, wx, wy) * (0.5 * h) * q * (0.5 * p.L) * R
    phi, d = _ansatz_partials(W, h, R, Eta, Zt)
    g = gradient_from_partials(R, phi, d)
    e = strain(g)
    vals = (
        e.dot(e),
        (g * g).sum(axis=(-2, -1)),
        g[..., 1, 2] ** 2,
        g[..., 0, 2] ** 2,
        stiffness_apply(e, p).dot(e),
        p.E * (g[..., :, 2] ** 2).sum(axis=-1),
        g[..., 0, 2] * g[..., 0, 1],
    )
    return np.array([float((v * wts).sum()) for v in vals])


def ansatz_ratios(W: AnsatzProfile, p: ShellParams, n: tuple[int, int, int] = (8, 24, 24),
                  tol: float = 1e-8) -> AnsatzRatios:
    """Quadratures of the ansatz field in the scaled variables ``(t, eta, z)``.

    ``t = 2 (r - 1) / h`` and ``eta = theta / h^(1/4)``; the weight carries the
    exact volume factor ``r``.  Each integral is recomputed with doubled
    nodes and must agree to ``tol``.
    """
    _check_scale(p)
    a = _integrals(W, p, n)
    b = _integrals(W, p, tuple(2 * k for k in n))
    scale = np.maximum(np.abs(b), 1e-300)
    # the cross term can vanish by symmetry; measure it against its Cauchy-Schwarz bound
    scale[6] = max(scale[6], math.sqrt(b[3] * b[1]))
    worst = float(np.max(np.abs(a - b) / scale))
    if worst > tol:
        raise QuadratureError(f"ansatz quadrature not converged: relative change {worst:.2e} > {tol:.0e}")
    return AnsatzRatios(p.h, *map(float, b))


def cross_limit(W: AnsatzProfile, n: int = 48) -> float:
    """``int int W_eta3 W_eta2_z deta dz`` by tensor Gauss rules."""
    x, wx = np.polynomial.legendre.leggauss(n)
    eta, ze = x, 0.5 * W.L * (x + 1.0)
    E, Z = np.meshgrid(eta, ze, indexing="ij")
    f = W.partial(3, 0, E, Z) * W.partial(2, 1, E, Z)
    return float(np.einsum("i,j,ij->", wx, wx, f) * 0.5 * W.L)


def phipsi_identity(phi: Polynomial, psi: Polynomial, L: float, n: int = 48) -> tuple[float, float]:
    """Both sides of ``int W_eta3 W_eta2_z = 2 int phi'''^2 int psi'^2``."""
    x, wx = np.polynomial.legendre.leggauss(n)
    lhs = cross_limit(phipsi_profile(phi, psi, L), n)
    zq = 0.5 * L * (x + 1.0)
    rhs = 2.0 * float(wx @ phi.deriv(3)(x) ** 2) * float(wx @ psi.deriv()(zq) ** 2) * 0.5 * L
    return lhs, rhs
