"""Generalised eigenproblems behind the Korn, safe-load and buckling constants.

Every constant is an extremum of a Rayleigh quotient ``x^T A x / x^T B x``
over the Galerkin space, computed block by block in the circumferential
wavenumber ``m`` and reduced by min/max over the block sweep.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import linalg

from .basis import (
    BOTH,
    EVEN,
    BlockBasis,
    FormMatrices,
    StressField,
    assemble,
    assemble_weight,
    build_basis,
    component_gram,
    curl_form_gram,
    default_k_ax,
    weight_gradient,
    weight_stiffness,
    weight_strain,
)
from .tensors import ShellParams, SymTensor3

log = logging.getLogger(__name__)


class SpectralError(RuntimeError):
    """A pencil could not be solved or has no admissible extremum."""


class NoDestabilizingVariation(SpectralError):
    """The compression form is non-negative on the whole discrete space."""


class BoundViolation(AssertionError):
    pass


@dataclass(frozen=True)
class Resolution:
    """Discretisation knobs; ``None`` means the thickness-dependent default."""

    p_rad: int = 3
    k_ax: int | None = None
    k_ax_factor: float = 4.0
    k_ax_cap: int = 64
    m_max: int | None = None
    m_max_factor: float = 6.0
    extend_m: bool = True

    def k_ax_for(self, p: ShellParams) -> int:
        if self.k_ax is not None:
            return self.k_ax
        return default_k_ax(p.h, p.L, self.k_ax_factor, self.k_ax_cap)

    def m_max_for(self, p: ShellParams) -> int:
        if self.m_max is not None:
            return self.m_max
        return int(math.ceil(self.m_max_factor * p.h ** -0.25))

    def meta(self, p: ShellParams) -> dict:
        return {"p_rad": self.p_rad, "k_ax": self.k_ax_for(p), "m_max": self.m_max_for(p)}


DEFAULT_RESOLUTION = Resolution()


@dataclass(frozen=True, eq=False)
class SpectralResult:
    value: float
    vector: np.ndarray
    m_star: int
    boundary_flag: bool
    basis_meta: dict
    per_m: tuple = ()
    residual: float = 0.0
    basis: BlockBasis | None = field(default=None, repr=False)
    scale: float = 0.0


@dataclass(frozen=True)
class Eigenpair:
    value: float
    vector: np.ndarray
    residual: float
    scale: float = 0.0


def pencil_residual(A, B, mu, x) -> float:
    ax, bx = A @ x, B @ x
    den = np.linalg.norm(ax) + abs(mu) * np.linalg.norm(bx)
    return float(np.linalg.norm(ax - mu * bx) / den) if den > 0 else 0.0


def solve_pencil(A: np.ndarray, B: np.ndarray, which: str = "min") -> Eigenpair:
    """Extreme eigenpair of ``A x = mu B x`` with ``B`` symmetric positive definite.

    Cholesky reduction ``B = L L^T`` to the standard problem for
    ``L^-1 A L^-T``; the returned vector has unit ``B``-norm.
    """
    try:
        chol = linalg.cholesky(B, lower=True)
    except linalg.LinAlgError as exc:
        raise SpectralError("right-hand matrix of the pencil is not positive definite") from exc
    X = linalg.solve_triangular(chol, A, lower=True)
    M = linalg.solve_triangular(chol, X.T, lower=True)
    M = 0.5 * (M + M.T)
    w, V = linalg.eigh(M, driver="evd")
    k = 0 if which == "min" else -1
    x = linalg.solve_triangular(chol.T, V[:, k], lower=False)
    x /= math.sqrt(x @ B @ x)
    mu = float(w[k])
    return Eigenpair(mu, x, pencil_residual(A, B, mu, x), float(np.abs(w).max()))


def _dominant_axial_is_last(basis: BlockBasis, x: np.ndarray) -> bool:
    energy = (x.reshape(len(basis.groups), basis.p_rad + 1, basis.k_ax) ** 2).sum(axis=(0, 1))
    return int(np.argmax(energy)) == basis.k_ax - 1


PencilBuilder = Callable[[BlockBasis], "tuple[np.ndarray, np.ndarray]"]


def sweep_blocks(p: ShellParams, build: PencilBuilder, which: str,
                 res: Resolution = DEFAULT_RESOLUTION, parity: str = EVEN,
                 transform: Callable[[float], float] | None = None) -> SpectralResult:
    """Extremum of the block pencils over ``m = 0 .. m_max``.

    ``which`` picks the eigenvalue inside a block and the reduction across
    blocks.  Ties within 1e-12 go to the smaller ``m``.  If the extremum sits
    on the upper end of the sweep and ``res.extend_m`` is set, the range is
    doubled until it is interior (at most three times).
    """
    k_ax = res.k_ax_for(p)
    m_max = res.m_max_for(p)
    per_m: dict[int, Eigenpair] = {}
    bases: dict[int, BlockBasis] = {}
    m_lo = 0
    for _ in range(4):
        for m in range(m_lo, m_max + 1):
            b = build_basis(p, m, parity, k_ax=k_ax, p_rad=res.p_rad)
            A, B = build(b)
            per_m[m] = solve_pencil(A, B, which)
            bases[m] = b
        best = _pick(per_m, which)
        if best < m_max or not res.extend_m:
            break
        log.info("extremum at m_max=%d for h=%g; doubling the range", m_max, p.h)
        m_lo, m_max = m_max + 1, 2 * m_max
    pair = per_m[best]
    flag = best == m_max or _dominant_axial_is_last(bases[best], pair.vector)
    if flag:
        log.warning("extremum at the boundary of the sweep (m=%d, h=%g)", best, p.h)
    value = pair.value if transform is None else transform(pair.value)
    meta = {"p_rad": res.p_rad, "k_ax": k_ax, "m_max": m_max, "parity": parity,
            "basis_size": bases[best].basis_size}
    return SpectralResult(value=value, vector=pair.vector, m_star=best, boundary_flag=flag,
                          basis_meta=meta, per_m=tuple((m, per_m[m].value) for m in sorted(per_m)),
                          residual=max(pr.residual for pr in per_m.values()), basis=bases[best],
                          scale=max(pr.scale for pr in per_m.values()))


def _pick(per_m: dict, which: str) -> int:
    ms = sorted(per_m)
    vals = np.array([per_m[m].value for m in ms])
    target = vals.min() if which == "min" else vals.max()
    scale = max(abs(target), 1e-300)
    for m, v in zip(ms, vals):
        if abs(v - target) <= 1e-12 * scale:
            return m
    raise AssertionError("unreachable")


def perfect_stress_field(p: ShellParams) -> StressField:
    return StressField(SymTensor3.from_components(zz=-p.E))


def korn_constant(p: ShellParams, res: Resolution = DEFAULT_RESOLUTION) -> SpectralResult:
    """``inf |e(phi)|^2 / |grad phi|^2`` over the discrete space."""

    def build(b):
        return assemble_weight(b, weight_strain()), assemble_weight(b, weight_gradient())

    return sweep_blocks(p, build, "min", res)


def safe_load_constant(p: ShellParams, res: Resolution = DEFAULT_RESOLUTION) -> SpectralResult:
    """``inf (L0 e, e) / |grad phi|^2`` over the discrete space."""

    def build(b):
        return assemble_weight(b, weight_stiffness(p)), assemble_weight(b, weight_gradient())

    return sweep_blocks(p, build, "min", res)


def buckling_load(p: ShellParams, stress: StressField | None = None,
                  res: Resolution = DEFAULT_RESOLUTION) -> SpectralResult:
    """Constitutively linearised buckling load ``1 / max mu`` of ``(-C) x = mu S x``.

    Shear stresses couple the two theta-parity classes, so those blocks are
    assembled over both.
    """
    if stress is None:
        stress = perfect_stress_field(p)
    parity = BOTH if stress.breaks_reflection else EVEN

    def build(b):
        forms = assemble(b, stress, p)
        return -forms.C, forms.S

    result = sweep_blocks(p, build, "max", res, parity=parity)
    mu = result.value
    # a non-positive compression form leaves only roundoff above zero
    if mu <= 1e-10 * result.scale:
        raise NoDestabilizingVariation(
            f"no destabilizing variation in the discrete space (largest mu = {mu:.3e})")
    return SpectralResult(value=1.0 / mu, vector=result.vector, m_star=result.m_star,
                          boundary_flag=result.boundary_flag, basis_meta=result.basis_meta,
                          per_m=tuple((m, 1.0 / v if v > 0 else math.inf) for m, v in result.per_m),
                          residual=result.residual, basis=result.basis, scale=result.scale)


def component_korn(p: ShellParams, component, res: Resolution = DEFAULT_RESOLUTION,
                   other=None) -> SpectralResult:
    """``sup |(grad phi)_ab|^2 / |e(phi)|^2``; with ``other``, the cross pair."""

    def build(b):
        return component_gram(b, component, other), assemble_weight(b, weight_strain())

    return sweep_blocks(p, build, "max", res)


@dataclass(frozen=True)
class Sufficiency:
    ratio: float
    buckling: SpectralResult
    korn: SpectralResult


def sufficiency(p: ShellParams, stress: StressField | None = None,
                res: Resolution = DEFAULT_RESOLUTION) -> Sufficiency:
    lam = buckling_load(p, stress, res)
    K = korn_constant(p, res)
    return Sufficiency(lam.value ** 2 / K.value, lam, K)


def sufficiency_ratio(p: ShellParams, stress: StressField | None = None,
                      res: Resolution = DEFAULT_RESOLUTION) -> float:
    """``lambda_hat(h)^2 / K(V_h)``; small values certify the linearised regime."""
    return sufficiency(p, stress, res).ratio


@dataclass(frozen=True)
class EquivalenceGap:
    gap: float
    bound: float


def equivalence_gap(p: ShellParams, stress: StressField, basis: BlockBasis,
                    x: np.ndarray, check: bool = True) -> EquivalenceGap:
    """Difference between the compression form and its curl form on ``x``.

    Checked against ``|sigma|_inf (|e|^2 + 2 |e| |grad phi|)``.
    """
    forms = assemble(basis, stress, p)
    C0 = curl_form_gram(basis, stress)
    gap = abs(float(x @ forms.C @ x - x @ C0 @ x))
    e2 = float(x @ forms.Ee @ x)
    g2 = float(x @ forms.G @ x)
    bound = stress.sup_norm(p.h) * (e2 + 2.0 * math.sqrt(max(e2, 0.0) * max(g2, 0.0)))
    if check and gap > bound * (1.0 + 1e-10) + 1e-14 * abs(float(x @ forms.C @ x)):
        raise BoundViolation(f"curl-form gap {gap:.6e} exceeds bound {bound:.6e}")
    return EquivalenceGap(gap, bound)


def block_forms(p: ShellParams, m: int, stress: StressField | None = None,
                res: Resolution = DEFAULT_RESOLUTION, parity: str | None = None) -> FormMatrices:
    """Assembled forms of one block at the resolution ``res`` would use."""
    if stress is None:
        stress = perfect_stress_field(p)
    if parity is None:
        parity = BOTH if stress.breaks_reflection else EVEN
    b = build_basis(p, m, parity, k_ax=res.k_ax_for(p), p_rad=res.p_rad)
    return assemble(b, stress, p)
