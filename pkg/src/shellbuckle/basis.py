"""Galerkin subspaces of admissible variations and their Gram matrices.

A block collects every basis field with one circumferential wavenumber
``m``.  Each basis field is a single cylindrical component

    phi_c = P_i(t) * A_k(z) * T(m theta),   t = 2 (r - 1) / h,

with ``P_i`` an L2-normalised Legendre polynomial, ``A_k = cos(k pi z / L)``
for the radial component (k = 0..K-1) and ``sin(k pi z / L)`` for the
angular and axial components (k = 1..K), so ``phi_theta = phi_z = 0`` at both
ends while ``phi_r`` is free.  ``T`` is ``cos`` or ``sin``.

Every entry of the gradient of such a field factors into
(radial function) x (axial trig) x (angular trig).  Since all weights used
here depend on ``r`` only, the theta and z integrals are done in closed form
and only the radial integral needs quadrature.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import legendre

from .tensors import (
    ShellParams,
    SymTensor3,
    compression_tensor,
    gradient_from_partials,
)

COS, SIN = 0, 1
EVEN, ODD, BOTH = "even", "odd", "both"

# theta trig of each component for the two parity classes
_PARITY_TYPES = {
    EVEN: {0: COS, 1: SIN, 2: COS},
    ODD: {0: SIN, 1: COS, 2: SIN},
}

# radial kinds of a gradient entry
_P, _DP, _P_OVER_R = 0, 1, 2


class ConfigError(ValueError):
    """Invalid discretisation parameters."""


def entry(a: int, b: int) -> int:
    """Flat index of gradient entry (a, b)."""
    return 3 * a + b


ENTRY_NAMES = {
    "rr": (0, 0), "rt": (0, 1), "rz": (0, 2),
    "tr": (1, 0), "tt": (1, 1), "tz": (1, 2),
    "zr": (2, 0), "zt": (2, 1), "zz": (2, 2),
}


def parse_entry(name) -> tuple[int, int]:
    """Accept ``"rz"``, ``"theta,z"`` or an index pair."""
    if isinstance(name, str):
        key = name.replace("theta", "t").replace(",", "").replace(" ", "").replace("(", "").replace(")", "")
        if key not in ENTRY_NAMES:
            raise KeyError(f"unknown gradient entry {name!r}")
        return ENTRY_NAMES[key]
    a, b = name
    return int(a), int(b)


@dataclass(frozen=True)
class BlockBasis:
    """Basis of one circumferential block.

    ``groups`` lists ``(component, theta_trig)`` pairs; within a group the
    index runs radial-major: ``i * k_ax + (axial position)``.
    """

    h: float
    L: float
    m: int
    parity: str
    k_ax: int
    p_rad: int
    n_rad_quad: int
    groups: tuple

    @property
    def group_size(self) -> int:
        return (self.p_rad + 1) * self.k_ax

    @property
    def basis_size(self) -> int:
        return len(self.groups) * self.group_size

    def axial_modes(self, component: int) -> np.ndarray:
        if component == 0:
            return np.arange(0, self.k_ax)
        return np.arange(1, self.k_ax + 1)

    def group_slice(self, g: int) -> slice:
        n = self.group_size
        return slice(g * n, (g + 1) * n)

    def describe(self) -> list[tuple[int, int, int, int]]:
        """``(component, theta_trig, radial degree, axial mode)`` per index."""
        out = []
        for comp, trig in self.groups:
            ks = self.axial_modes(comp)
            for i in range(self.p_rad + 1):
                for k in ks:
                    out.append((comp, trig, i, int(k)))
        return out

    def embed(self, other: "BlockBasis") -> np.ndarray:
        """Matrix ``E`` with ``x_self = E @ x_other`` for a nested smaller basis."""
        pos = {key: n for n, key in enumerate(self.describe())}
        emb = np.zeros((self.basis_size, other.basis_size))
        for n, key in enumerate(other.describe()):
            if key not in pos:
                raise ValueError("basis is not nested in this one")
            emb[pos[key], n] = 1.0
        return emb


def default_k_ax(h: float, L: float, factor: float = 4.0, cap: int = 64) -> int:
    return int(min(cap, math.ceil(factor * L / (math.pi * math.sqrt(h)))))


def build_basis(p: ShellParams, m: int, parity: str = EVEN, k_ax: int | None = None,
                p_rad: int = 3, n_rad_quad: int | None = None) -> BlockBasis:
    if k_ax is None:
        k_ax = default_k_ax(p.h, p.L)
    if k_ax < 1 or p_rad < 1:
        raise ConfigError(f"need k_ax >= 1 and p_rad >= 1, got k_ax={k_ax}, p_rad={p_rad}")
    if m < 0 or int(m) != m:
        raise ConfigError(f"wavenumber must be a non-negative integer, got {m}")
    if parity not in (EVEN, ODD, BOTH):
        raise ConfigError(f"parity must be one of {EVEN!r}, {ODD!r}, {BOTH!r}")
    if n_rad_quad is None:
        n_rad_quad = p_rad + 3
    if m == 0:
        groups = ((0, COS), (1, COS), (2, COS))
    elif parity == BOTH:
        groups = tuple((c, _PARITY_TYPES[par][c]) for par in (EVEN, ODD) for c in range(3))
    else:
        groups = tuple((c, _PARITY_TYPES[parity][c]) for c in range(3))
    return BlockBasis(h=p.h, L=p.L, m=int(m), parity=parity, k_ax=int(k_ax), p_rad=int(p_rad),
                      n_rad_quad=int(n_rad_quad), groups=groups)


# --------------------------------------------------------------------------
# 1D ingredients

def _legendre_table(p_rad: int, t: np.ndarray):
    """Normalised Legendre values and t-derivatives, shape (p_rad+1, len(t))."""
    vals = np.empty((p_rad + 1, t.size))
    ders = np.empty_like(vals)
    for i in range(p_rad + 1):
        c = np.zeros(i + 1)
        c[i] = math.sqrt((2 * i + 1) / 2.0)
        vals[i] = legendre.legval(t, c)
        ders[i] = legendre.legval(t, legendre.legder(c)) if i else 0.0
    return vals, ders


def radial_rule(basis: BlockBasis, n_points: int | None = None):
    """Gauss nodes ``r`` and weights for ``int f(r) r dr`` over the wall."""
    n = n_points or basis.n_rad_quad
    t, w = legendre.leggauss(n)
    r = 1.0 + 0.5 * basis.h * t
    return t, r, w * 0.5 * basis.h * r


def axial_integrals(k_max: int, L: float) -> dict:
    """Closed-form ``int_0^L f_a(z) g_b(z) dz`` for trig frequencies 0..k_max.

    Keys are ``(type_f, type_g)`` with types ``COS``/``SIN`` of ``a pi z / L``.
    """
    a = np.arange(k_max + 1)[:, None].astype(float)
    b = np.arange(k_max + 1)[None, :].astype(float)
    same = a == b
    cc = np.where(same, L / 2.0, 0.0)
    cc[0, 0] = L
    ss = np.where(same & (a > 0), L / 2.0, 0.0)
    odd = ((a + b) % 2) == 1
    with np.errstate(divide="ignore", invalid="ignore"):
        sc = np.where(odd, 2.0 * a * L / (math.pi * (a * a - b * b)), 0.0)
    return {(COS, COS): cc, (SIN, SIN): ss, (SIN, COS): sc, (COS, SIN): sc.T.copy()}


def _theta_integral(m: int, t1: int, t2: int) -> float:
    if t1 != t2:
        return 0.0
    if m == 0:
        return 2.0 * math.pi if t1 == COS else 0.0
    return math.pi


def _group_terms(basis: BlockBasis, comp: int, trig: int):
    """Gradient entries of a group as ``(entry, radial kind, sign, axial, angular)``.

    ``axial = (trig type, per-mode multiplier)``, ``angular = (trig type, multiplier)``.
    """
    m, L = basis.m, basis.L
    ks = basis.axial_modes(comp)
    atype = COS if comp == 0 else SIN
    freq = ks * math.pi / L
    plain = (atype, np.ones(ks.size))
    if atype == COS:
        deriv = (SIN, -freq)
    else:
        deriv = (COS, freq)
    ang = (trig, 1.0)
    ang_d = (SIN, -float(m)) if trig == COS else (COS, float(m))
    terms = []
    if comp == 0:
        terms += [(entry(0, 0), _DP, 1.0, plain, ang),
                  (entry(0, 1), _P_OVER_R, 1.0, plain, ang_d),
                  (entry(0, 2), _P, 1.0, deriv, ang),
                  (entry(1, 1), _P_OVER_R, 1.0, plain, ang)]
    elif comp == 1:
        terms += [(entry(1, 0), _DP, 1.0, plain, ang),
                  (entry(1, 1), _P_OVER_R, 1.0, plain, ang_d),
                  (entry(1, 2), _P, 1.0, deriv, ang),
                  (entry(0, 1), _P_OVER_R, -1.0, plain, ang)]
    else:
        terms += [(entry(2, 0), _DP, 1.0, plain, ang),
                  (entry(2, 1), _P_OVER_R, 1.0, plain, ang_d),
                  (entry(2, 2), _P, 1.0, deriv, ang)]
    return terms


# --------------------------------------------------------------------------
# pointwise weights: 9x9 matrices acting on flattened gradient entries

def weight_gradient() -> np.ndarray:
    return np.eye(9)


def weight_strain() -> np.ndarray:
    w = np.zeros((9, 9))
    for a in range(3):
        for b in range(3):
            w[entry(a, b), entry(a, b)] += 0.5
            w[entry(a, b), entry(b, a)] += 0.5
    return w


def weight_stiffness(p: ShellParams) -> np.ndarray:
    lam, mu = p.lame
    tr = np.zeros(9)
    tr[[0, 4, 8]] = 1.0
    return lam * np.outer(tr, tr) + 2.0 * mu * weight_strain()


def weight_stress(sigma: SymTensor3) -> np.ndarray:
    """Weight of ``(sigma, g^T g)``: couples entries (c, a) and (c, b)."""
    s = sigma.matrix()
    w = np.zeros((9, 9))
    for c in range(3):
        for a in range(3):
            for b in range(3):
                w[entry(c, a), entry(c, b)] = s[a, b]
    return w


def weight_component(a, b=None) -> np.ndarray:
    """Gram weight of one gradient entry, or the symmetrised cross pair."""
    i = entry(*parse_entry(a))
    w = np.zeros((9, 9))
    if b is None:
        w[i, i] = 1.0
        return w
    j = entry(*parse_entry(b))
    w[i, j] += 0.5
    w[j, i] += 0.5
    return w


_CURL = np.zeros((3, 9))
_CURL[0, entry(2, 1)], _CURL[0, entry(1, 2)] = 1.0, -1.0
_CURL[1, entry(0, 2)], _CURL[1, entry(2, 0)] = 1.0, -1.0
_CURL[2, entry(1, 0)], _CURL[2, entry(0, 1)] = 1.0, -1.0


def weight_curl(sigma: SymTensor3) -> np.ndarray:
    """Weight of ``(1/4) (compression_tensor(sigma) curl, curl)``."""
    st = compression_tensor(sigma).matrix()
    return 0.25 * _CURL.T @ st @ _CURL


# --------------------------------------------------------------------------

@dataclass(frozen=True)
class StressField:
    """Stress ``sigma0 + (r - 1) sigma1``, independent of theta and z."""

    sigma0: SymTensor3
    sigma1: SymTensor3 = field(default_factory=SymTensor3.zeros)

    def at(self, r) -> SymTensor3:
        r = np.asarray(r, dtype=float)
        return SymTensor3(self.sigma0.data + (r - 1.0)[..., None] * self.sigma1.data)

    def sup_norm(self, h: float) -> float:
        """Max spectral norm over the wall (convex in r, so the faces suffice)."""
        ends = self.at(np.array([1.0 - h / 2, 1.0 + h / 2])).matrix()
        return float(max(np.linalg.norm(m, 2) for m in ends))

    @property
    def breaks_reflection(self) -> bool:
        """True if shear couples the two theta-parity classes."""
        d = np.concatenate([self.sigma0.data[3:], self.sigma1.data[3:]])
        return bool(np.any(d != 0.0))

    @classmethod
    def zero(cls) -> "StressField":
        return cls(SymTensor3.zeros())


def assemble_weight(basis: BlockBasis, w0: np.ndarray, w1: np.ndarray | None = None,
                    n_rad_quad: int | None = None) -> np.ndarray:
    """Gram matrix of ``int (w0 + (r-1) w1) : (grad phi_i, grad phi_j) dx``."""
    t, r, wq = radial_rule(basis, n_rad_quad)
    vals, ders = _legendre_table(basis.p_rad, t)
    kinds = {_P: vals, _DP: ders * (2.0 / basis.h), _P_OVER_R: vals / r}
    rad = {}
    for k1, f1 in kinds.items():
        for k2, f2 in kinds.items():
            rad[k1, k2, 0] = (f1 * wq) @ f2.T
            rad[k1, k2, 1] = (f1 * wq * (r - 1.0)) @ f2.T
    ax = axial_integrals(basis.k_ax, basis.L)

    n = basis.basis_size
    out = np.zeros((n, n))
    terms = [_group_terms(basis, c, tr) for c, tr in basis.groups]
    for g1, t1 in enumerate(terms):
        ks1 = basis.axial_modes(basis.groups[g1][0])
        for g2, t2 in enumerate(terms):
            ks2 = basis.axial_modes(basis.groups[g2][0])
            block = np.zeros((basis.group_size, basis.group_size))
            for e1, kind1, sgn1, (at1, am1), (tt1, tm1) in t1:
                for e2, kind2, sgn2, (at2, am2), (tt2, tm2) in t2:
                    th = _theta_integral(basis.m, tt1, tt2) * tm1 * tm2
                    if th == 0.0:
                        continue
                    c0 = w0[e1, e2]
                    c1 = 0.0 if w1 is None else w1[e1, e2]
                    if c0 == 0.0 and c1 == 0.0:
                        continue
                    radm = c0 * rad[kind1, kind2, 0]
                    if c1 != 0.0:
                        radm = radm + c1 * rad[kind1, kind2, 1]
                    axm = am1[:, None] * ax[at1, at2][np.ix_(ks1, ks2)] * am2[None, :]
                    block += (sgn1 * sgn2 * th) * np.kron(radm, axm)
            out[basis.group_slice(g1), basis.group_slice(g2)] = block
    return 0.5 * (out + out.T)


def _stress_weights(stress: StressField, builder):
    w0 = builder(stress.sigma0)
    w1 = builder(stress.sigma1) if np.any(stress.sigma1.data != 0.0) else None
    return w0, w1


@dataclass(frozen=True, eq=False)
class FormMatrices:
    """Gram matrices of the stability, compression, gradient and strain forms."""

    S: np.ndarray
    C: np.ndarray
    G: np.ndarray
    Ee: np.ndarray
    basis: BlockBasis
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.S.shape[0]


def assemble(basis: BlockBasis, stress: StressField, p: ShellParams,
             n_rad_quad: int | None = None) -> FormMatrices:
    meta = {"n_rad_quad": n_rad_quad or basis.n_rad_quad, "warnings": []}
    if meta["n_rad_quad"] < basis.p_rad + 3:
        msg = (f"radial quadrature with {meta['n_rad_quad']} points is below the "
               f"p_rad + 3 = {basis.p_rad + 3} rule")
        meta["warnings"].append(msg)
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
    S = assemble_weight(basis, weight_stiffness(p), n_rad_quad=n_rad_quad)
    C = assemble_weight(basis, *_stress_weights(stress, weight_stress), n_rad_quad=n_rad_quad)
    G = assemble_weight(basis, weight_gradient(), n_rad_quad=n_rad_quad)
    Ee = assemble_weight(basis, weight_strain(), n_rad_quad=n_rad_quad)
    for a in (S, C, G, Ee):
        a.setflags(write=False)
    return FormMatrices(S=S, C=C, G=G, Ee=Ee, basis=basis, meta=meta)


def component_gram(basis: BlockBasis, component, other=None) -> np.ndarray:
    """Gram of one gradient entry, e.g. ``"rz"``; with ``other``, the cross pair."""
    return assemble_weight(basis, weight_component(component, other))


def curl_form_gram(basis: BlockBasis, stress: StressField) -> np.ndarray:
    """Gram of ``(1/4) int (tilde sigma curl phi, curl phi) dx``."""
    return assemble_weight(basis, *_stress_weights(stress, weight_curl))


def integrate_radial(basis: BlockBasis, f, n_rad_quad: int | None = None) -> float:
    """Volume integral of a function of ``r`` alone over the shell."""
    _, r, wq = radial_rule(basis, n_rad_quad)
    return float(2.0 * math.pi * basis.L * np.sum(wq * f(r)))


def basis_field(basis: BlockBasis, x: np.ndarray):
    """Vector field (value and partials) of the coefficient vector ``x``.

    Evaluated pointwise, independently of the Gram assembly.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (basis.basis_size,):
        raise ValueError(f"coefficient vector must have length {basis.basis_size}")
    m, L, h = basis.m, basis.L, basis.h

    def field_fn(r, theta, z):
        r, theta, z = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (r, theta, z)))
        shape = r.shape
        t = (2.0 * (r - 1.0) / h).ravel()
        th, zz = theta.ravel(), z.ravel()
        vals, ders = _legendre_table(basis.p_rad, t)
        phi = np.zeros((3, t.size))
        d = np.zeros((3, 3, t.size))
        for g, (comp, trig) in enumerate(basis.groups):
            coef = x[basis.group_slice(g)].reshape(basis.p_rad + 1, basis.k_ax)
            ks = basis.axial_modes(comp)
            arg = np.outer(ks * math.pi / L, zz)
            if comp == 0:
                A, dA = np.cos(arg), -(ks * math.pi / L)[:, None] * np.sin(arg)
            else:
                A, dA = np.sin(arg), (ks * math.pi / L)[:, None] * np.cos(arg)
            if trig == COS:
                T, dT = np.cos(m * th), -m * np.sin(m * th)
            else:
                T, dT = np.sin(m * th), m * np.cos(m * th)
            radA = np.einsum("ik,iq,kq->q", coef, vals, A)
            radA_dz = np.einsum("ik,iq,kq->q", coef, vals, dA)
            dradA = np.einsum("ik,iq,kq->q", coef, ders, A) * (2.0 / h)
            phi[comp] += radA * T
            d[comp, 0] += dradA * T
            d[comp, 1] += radA * dT
            d[comp, 2] += radA_dz * T
        return phi.reshape((3,) + shape), d.reshape((3, 3) + shape)

    return field_fn


def field_gradient(basis: BlockBasis, x: np.ndarray, r, theta, z) -> np.ndarray:
    phi, d = basis_field(basis, x)(r, theta, z)
    return gradient_from_partials(np.broadcast_to(r, phi.shape[1:]), phi, d)


def symmetric_residual(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - a.T) / max(np.linalg.norm(a), 1e-300))


__all__ = [
    "BlockBasis", "FormMatrices", "StressField", "build_basis", "assemble", "assemble_weight",
    "component_gram", "curl_form_gram", "basis_field", "field_gradient", "integrate_radial",
    "default_k_ax", "ConfigError", "EVEN", "ODD", "BOTH",
]
