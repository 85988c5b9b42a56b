"""Cylindrical-coordinate tensor calculus and isotropic linear elasticity.

Vector fields are supplied as callables ``field(r, theta, z)`` returning a
pair ``(phi, dphi)``: ``phi`` has shape ``(3, ...)`` holding the physical
components (r, theta, z) and ``dphi`` has shape ``(3, 3, ...)`` holding
``d phi_i / d x_j`` with ``x = (r, theta, z)``.  Tensors carry the
component axes last, i.e. a gradient evaluated on a grid has shape
``(..., 3, 3)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

R, THETA, Z = 0, 1, 2
AXES = ("r", "theta", "z")

# packed order of symmetric components
SYM_INDEX = ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2))
SYM_NAMES = ("rr", "tt", "zz", "rt", "rz", "tz")

VectorField = Callable[..., Tuple[np.ndarray, np.ndarray]]


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


@dataclass(frozen=True)
class ShellParams:
    """Geometry and material of the shell ``[1-h/2, 1+h/2] x T x [0, L]``.

    Lengths are scaled by the mid-surface radius.  ``nu = 0.5`` is accepted
    (incompressible branches) but rejected by :func:`stiffness_apply`.
    """

    h: float
    L: float = 2.0
    E: float = 1.0
    nu: float = 0.3

    def __post_init__(self):
        if not 0.0 < self.h < 1.0:
            raise DomainError(f"thickness ratio h must lie in (0, 1), got {self.h}")
        if self.L <= 0.0:
            raise DomainError(f"length L must be positive, got {self.L}")
        if self.E <= 0.0:
            raise DomainError(f"Young modulus E must be positive, got {self.E}")
        if not -1.0 < self.nu <= 0.5:
            raise DomainError(f"Poisson ratio must lie in (-1, 0.5], got {self.nu}")

    @property
    def lame(self) -> tuple[float, float]:
        """Lame constants (lambda, mu)."""
        if self.nu >= 0.5:
            raise DomainError("incompressible limit nu = 0.5 has no finite Lame lambda")
        lam = self.E * self.nu / ((1.0 + self.nu) * (1.0 - 2.0 * self.nu))
        mu = self.E / (2.0 * (1.0 + self.nu))
        return lam, mu

    @property
    def coercivity(self) -> tuple[float, float]:
        """Lower and upper bounds of ``(L0 xi, xi) / |xi|^2`` on symmetric ``xi``."""
        lam, mu = self.lame
        return min(2 * mu, 3 * lam + 2 * mu), max(2 * mu, 3 * lam + 2 * mu)

    def with_(self, **changes) -> "ShellParams":
        fields = dict(h=self.h, L=self.L, E=self.E, nu=self.nu)
        fields.update(changes)
        return ShellParams(**fields)


@dataclass(frozen=True, eq=False)
class SymTensor3:
    """Symmetric 3x3 tensor in packed form ``(rr, tt, zz, rt, rz, tz)``.

    ``data`` may carry leading batch axes; the packed axis is last.
    """

    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=float)
        if data.shape[-1:] != (6,):
            raise ValueError(f"packed symmetric tensor needs a trailing axis of 6, got {data.shape}")
        data = data.copy()
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @classmethod
    def from_matrix(cls, m) -> "SymTensor3":
        """Symmetric part of a (batch of) 3x3 matrices."""
        m = np.asarray(m, dtype=float)
        packed = np.stack([0.5 * (m[..., i, j] + m[..., j, i]) for i, j in SYM_INDEX], axis=-1)
        return cls(packed)

    @classmethod
    def from_components(cls, **comps) -> "SymTensor3":
        """Build from named components, e.g. ``from_components(zz=-1.0, tz=0.2)``."""
        unknown = set(comps) - set(SYM_NAMES)
        if unknown:
            raise KeyError(f"unknown components {sorted(unknown)}; use {SYM_NAMES}")
        return cls(np.array([float(comps.get(name, 0.0)) for name in SYM_NAMES]))

    @classmethod
    def zeros(cls) -> "SymTensor3":
        return cls(np.zeros(6))

    @classmethod
    def identity(cls) -> "SymTensor3":
        return cls(np.array([1.0, 1.0, 1.0, 0.0, 0.0, 0.0]))

    def matrix(self) -> np.ndarray:
        d = self.data
        m = np.empty(d.shape[:-1] + (3, 3))
        for k, (i, j) in enumerate(SYM_INDEX):
            m[..., i, j] = d[..., k]
            m[..., j, i] = d[..., k]
        return m

    def trace(self) -> np.ndarray:
        return self.data[..., 0] + self.data[..., 1] + self.data[..., 2]

    def __getitem__(self, name: str):
        return self.data[..., SYM_NAMES.index(name)]

    def __add__(self, other: "SymTensor3") -> "SymTensor3":
        return SymTensor3(self.data + other.data)

    def __sub__(self, other: "SymTensor3") -> "SymTensor3":
        return SymTensor3(self.data - other.data)

    def __mul__(self, c) -> "SymTensor3":
        return SymTensor3(self.data * np.asarray(c)[..., None])

    __rmul__ = __mul__

    def __neg__(self) -> "SymTensor3":
        return SymTensor3(-self.data)

    def dot(self, other: "SymTensor3") -> np.ndarray:
        """Frobenius inner product."""
        w = np.array([1.0, 1.0, 1.0, 2.0, 2.0, 2.0])
        return np.sum(self.data * other.data * w, axis=-1)

    def allclose(self, other: "SymTensor3", **kw) -> bool:
        return bool(np.allclose(self.data, other.data, **kw))

    def __repr__(self):
        if self.data.ndim == 1:
            body = ", ".join(f"{n}={v:.6g}" for n, v in zip(SYM_NAMES, self.data))
            return f"SymTensor3({body})"
        return f"SymTensor3(shape={self.data.shape[:-1]})"


def _check_radius(r):
    if np.any(np.asarray(r) <= 0.0):
        raise DomainError("cylindrical formulas need r > 0")


def cyl_gradient(field: VectorField, r, theta, z) -> np.ndarray:
    """Gradient of a vector field in the orthonormal cylindrical frame.

    Row ``i`` holds the derivatives of component ``i``; the theta column
    carries the metric terms ``(phi_r,t - phi_t)/r`` and ``(phi_t,t + phi_r)/r``.
    """
    _check_radius(r)
    phi, d = field(r, theta, z)
    return gradient_from_partials(r, phi, d)


def gradient_from_partials(r, phi, d) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    rows = (
        (d[0][0], (d[0][1] - phi[1]) / r, d[0][2]),
        (d[1][0], (d[1][1] + phi[0]) / r, d[1][2]),
        (d[2][0], d[2][1] / r, d[2][2]),
    )
    shape = np.broadcast_shapes(*(np.shape(x) for row in rows for x in row))
    g = np.empty(shape + (3, 3))
    for i, row in enumerate(rows):
        for j, entry in enumerate(row):
            g[..., i, j] = entry
    return g


def strain(g) -> SymTensor3:
    return SymTensor3.from_matrix(g)


def skew_vector(g) -> np.ndarray:
    """Axial vector ``a`` of ``g - g^T``, so that ``g - g^T = pi(a)``."""
    g = np.asarray(g, dtype=float)
    return np.stack(
        [g[..., 2, 1] - g[..., 1, 2], g[..., 0, 2] - g[..., 2, 0], g[..., 1, 0] - g[..., 0, 1]],
        axis=-1,
    )


def cross_matrix(a) -> np.ndarray:
    """Antisymmetric matrix with ``cross_matrix(a) @ u == cross(a, u)``."""
    a = np.asarray(a, dtype=float)
    m = np.zeros(a.shape[:-1] + (3, 3))
    m[..., 0, 1], m[..., 0, 2] = -a[..., 2], a[..., 1]
    m[..., 1, 0], m[..., 1, 2] = a[..., 2], -a[..., 0]
    m[..., 2, 0], m[..., 2, 1] = -a[..., 1], a[..., 0]
    return m


def cyl_curl(field: VectorField, r, theta, z) -> np.ndarray:
    """Curl in cylindrical components, computed from the partials directly."""
    _check_radius(r)
    phi, d = field(r, theta, z)
    r = np.asarray(r, dtype=float)
    curl_r = d[2, 1] / r - d[1, 2]
    curl_t = d[0, 2] - d[2, 0]
    curl_z = (phi[1] + r * d[1, 0] - d[0, 1]) / r
    return np.stack(np.broadcast_arrays(curl_r, curl_t, curl_z), axis=-1)


def stiffness_apply(xi: SymTensor3, p: ShellParams) -> SymTensor3:
    """Isotropic Hooke law ``lambda tr(xi) I + 2 mu xi``."""
    lam, mu = p.lame
    tr = xi.trace()
    out = 2.0 * mu * xi.data
    out[..., :3] += (lam * tr)[..., None]
    return SymTensor3(out)


def compression_tensor(sigma: SymTensor3) -> SymTensor3:
    """``tr(sigma) I - sigma``."""
    out = -sigma.data
    out[..., :3] += sigma.trace()[..., None]
    return SymTensor3(out)
