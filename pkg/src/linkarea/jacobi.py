"""Cyclic Jacobi eigensolver for small symmetric matrices.

Used for the 6x6 and 2x2 Gram matrices that arise in tangent-space
signature counting; sweeps run until the off-diagonal Frobenius norm
drops below the requested tolerance.
"""

import math

import numpy as np


def jacobi_eigenvalues(A, tol: float = 1e-12, max_sweeps: int = 60):
    """Eigenvalues of a symmetric matrix, ascending.

    A is not modified.  Raises ValueError for non-square or visibly
    asymmetric input.
    """
    A = np.array(A, dtype=float)
    n, m = A.shape
    if n != m:
        raise ValueError("matrix must be square")
    if np.max(np.abs(A - A.T)) > 1e-10 * max(1.0, np.max(np.abs(A))):
        raise ValueError("matrix must be symmetric")
    A = 0.5 * (A + A.T)

    for _ in range(max_sweeps):
        off = math.sqrt(max(0.0, np.sum(A * A) - np.sum(np.diag(A) ** 2)))
        if off <= tol:
            break
        for p in range(n):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 0.1 * tol / (n * n):
                    continue
                phi = 0.5 * math.atan2(2.0 * apq, A[q, q] - A[p, p])
                c, s = math.cos(phi), math.sin(phi)
                rp = c * A[p, :] - s * A[q, :]
                rq = s * A[p, :] + c * A[q, :]
                A[p, :], A[q, :] = rp, rq
                cp = c * A[:, p] - s * A[:, q]
                cq = s * A[:, p] + c * A[:, q]
                A[:, p], A[:, q] = cp, cq
                A[p, q] = 0.0
                A[q, p] = 0.0
    return np.sort(np.diag(A))


def signature_counts(eigenvalues, zero_threshold: float):
    """(n_plus, n_minus, n_zero) with |lambda| <= zero_threshold counted as zero."""
    ev = np.asarray(eigenvalues, dtype=float)
    n_plus = int(np.sum(ev > zero_threshold))
    n_minus = int(np.sum(ev < -zero_threshold))
    return n_plus, n_minus, len(ev) - n_plus - n_minus
