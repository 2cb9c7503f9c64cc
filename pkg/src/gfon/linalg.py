"""Cyclic Jacobi eigensolver for small dense symmetric matrices."""
from __future__ import annotations

import numpy as np

from .errors import ConvergenceError, InvalidParameterError

SYMMETRY_TOL = 1e-12
OFFDIAG_TOL = 1e-12


def _offdiag_norm(a):
    off = a - np.diag(np.diag(a))
    return np.sqrt(np.sum(off * off))


def jacobi_eigensym(m, tol: float = OFFDIAG_TOL, max_sweeps: int = 100):
    """Eigenvalues and orthonormal eigenvectors of a symmetric matrix.

    Returns ``(eigvals, U)`` with eigenvalues sorted by decreasing absolute
    value (ties: larger value first) and ``U[:, k]`` the k-th eigenvector.
    Sweeps rotate every off-diagonal pair until the off-diagonal Frobenius
    norm drops below ``tol * max(1, ||M||_F)``.
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidParameterError("matrix must be square")
    if np.max(np.abs(a - a.T), initial=0.0) > SYMMETRY_TOL:
        raise InvalidParameterError("matrix is not symmetric")
    a = 0.5 * (a + a.T)
    n = a.shape[0]
    u = np.eye(n)
    target = tol * max(1.0, float(np.linalg.norm(a)))

    for _ in range(max_sweeps):
        if _offdiag_norm(a) < target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                diff = a[q, q] - a[p, p]
                if abs(apq) < 1e-150 * max(abs(diff), 1.0):
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = diff / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 1.0 / (2.0 * theta)
                else:
                    t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                up, uq = u[:, p].copy(), u[:, q].copy()
                u[:, p] = c * up - s * uq
                u[:, q] = s * up + c * uq
    else:
        if _offdiag_norm(a) >= target:
            raise ConvergenceError("Jacobi sweeps did not converge")

    vals = np.diag(a).copy()
    order = np.lexsort((-vals, -np.abs(vals)))
    return vals[order], u[:, order]
