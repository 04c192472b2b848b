import numpy as np
import pytest

from linkarea.jacobi import jacobi_eigenvalues, signature_counts
from linkarea.rng import Lcg64


def test_matches_numpy_on_random_symmetric():
    rng = Lcg64(42)
    for n in (2, 3, 6, 8):
        for _ in range(10):
            G = np.array([[rng.normal() for _ in range(n)] for _ in range(n)])
            A = 0.5 * (G + G.T)
            got = jacobi_eigenvalues(A)
            want = np.linalg.eigvalsh(A)
            assert np.allclose(got, want, atol=1e-11)


def test_diagonal_passthrough():
    d = np.diag([3.0, -1.0, 0.5])
    assert np.allclose(jacobi_eigenvalues(d), [-1.0, 0.5, 3.0])


def test_off_diagonal_cross_gram():
    g = 0.37
    ev = jacobi_eigenvalues(np.array([[0.0, g], [g, 0.0]]))
    assert np.allclose(ev, [-g, g], atol=1e-13)


def test_rejects_asymmetric():
    with pytest.raises(ValueError):
        jacobi_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_signature_counts():
    assert signature_counts(np.array([1.0, -2.0, 1e-9]), 1e-7) == (1, 1, 1)
    assert signature_counts(np.array([0.3, 0.4, -0.5, -0.1, 2.0, -9.0]), 1e-7) == (3, 3, 0)
