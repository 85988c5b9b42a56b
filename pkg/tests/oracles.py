"""Independent brute-force evaluators used as test oracles."""
import math

import numpy as np

from shellbuckle.basis import basis_field
from shellbuckle.tensors import gradient_from_partials


def volume_rule(h, L, n_r=8, n_t=32, n_z=96):
    """Tensor rule on the shell: Gauss in r and z, uniform in theta."""
    xr, wr = np.polynomial.legendre.leggauss(n_r)
    xz, wz = np.polynomial.legendre.leggauss(n_z)
    r = 1.0 + 0.5 * h * xr
    th = 2.0 * math.pi * np.arange(n_t) / n_t
    z = 0.5 * L * (xz + 1.0)
    R, T, Z = np.meshgrid(r, th, z, indexing="ij")
    W = np.einsum("i,j,k->ijk", 0.5 * h * wr * r, np.full(n_t, 2.0 * math.pi / n_t), 0.5 * L * wz)
    return R.ravel(), T.ravel(), Z.ravel(), W.ravel()


def basis_gradients(basis, rule):
    """Gradient of every basis function at the rule points, shape (n, q, 3, 3)."""
    R, T, Z, _ = rule
    out = []
    for i in range(basis.basis_size):
        x = np.zeros(basis.basis_size)
        x[i] = 1.0
        phi, d = basis_field(basis, x)(R, T, Z)
        out.append(gradient_from_partials(R, phi, d))
    return np.array(out)


def brute_gram(grads, rule, density):
    """``int density(g_i, g_j) dx`` for a bilinear pointwise density."""
    W = rule[3]
    n = grads.shape[0]
    A = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            A[i, j] = A[j, i] = float(np.sum(W * density(grads[i], grads[j])))
    return A
