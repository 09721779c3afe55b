"""Cyclic Jacobi eigensolver for small Hermitian matrices."""

import logging
from typing import Tuple

import numpy as np

from ..core.constants import JACOBI_MAX_SWEEPS, JACOBI_TOL

logger = logging.getLogger("cbstools")


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def jacobi_eigh(
    matrix: np.ndarray,
    tol: float = JACOBI_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> Tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Each pivot ``(p, q)`` is first rotated onto the real axis by a phase,
    then annihilated with the classical real rotation
    ``t = sgn(tau) / (|tau| + sqrt(1 + tau^2))``, ``tau = (a_qq - a_pp) / (2|a_pq|)``.

    Args:
        matrix: Hermitian k x k array (real symmetric allowed).
        tol: Stop once the off-diagonal Frobenius norm is below
            ``tol * max(1, ||A||_F)``.
        max_sweeps: Upper bound on full cyclic sweeps.

    Returns:
        (eigenvalues ascending, eigenvectors as columns)
    """
    a = np.array(matrix, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    if n == 0:
        return np.zeros(0), v
    threshold = tol * max(1.0, float(np.linalg.norm(a)))

    for sweep in range(max_sweeps):
        if _off_norm(a) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= threshold * 1e-3:
                    continue
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rot = np.eye(n, dtype=complex)
                rot[p, p] = c
                rot[p, q] = s
                rot[q, p] = -s * np.conj(phase)
                rot[q, q] = c * np.conj(phase)
                a = rot.conj().T @ a @ rot
                v = v @ rot
    else:
        logger.warning(f"Jacobi did not converge in {max_sweeps} sweeps (off-norm {_off_norm(a):.3e})")

    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]
