"""Deterministic orthonormal frame completion.

Gram-Schmidt against the standard basis with a fixed acceptance threshold,
so repeated runs produce identical frames.
"""

import numpy as np

_PIVOT = 0.25


def complete_orthonormal(vectors, dim: int):
    """Extend a list of orthonormal vectors to a full basis of R^dim.

    Standard basis vectors are tried in index order and accepted when the
    orthogonalized remainder keeps norm above a fixed pivot threshold.
    Returns only the new vectors, as a (dim - len(vectors), dim) array.
    """
    basis = [np.asarray(v, dtype=float) for v in vectors]
    added = []
    for i in range(dim):
        if len(basis) == dim:
            break
        w = np.zeros(dim)
        w[i] = 1.0
        for b in basis:
            w = w - (w @ b) * b
        nrm = np.linalg.norm(w)
        if nrm > _PIVOT:
            w = w / nrm
            # second pass tightens orthogonality to roundoff
            for b in basis:
                w = w - (w @ b) * b
            w = w / np.linalg.norm(w)
            basis.append(w)
            added.append(w)
    if len(basis) != dim:
        raise RuntimeError("orthonormal completion failed")  # unreachable for unit input
    return np.array(added)
