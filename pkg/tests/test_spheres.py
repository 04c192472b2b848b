import numpy as np
import pytest

import linkarea as la
from linkarea import links as lk
from linkarea import minkowski as mk
from linkarea import spheres as sp
from linkarea.errors import CoincidentPoints, NotOnSphere
from linkarea.jacobi import jacobi_eigenvalues
from linkarea.rng import Lcg64
from conftest import random_unit4

TWO_PI = 2 * np.pi
E4 = np.eye(4)


def antipodal_test_curves():
    """Curves meeting antipodally at s = t = 0 with non-orthogonal velocities."""
    c1 = lk.CircleCurve(np.zeros(4), E4[2], E4[0], 1.0)     # x(0) = (0,0,1,0), x'(0) = e1
    v = (E4[0] + E4[1]) / np.sqrt(2)
    c2 = lk.CircleCurve(np.zeros(4), -E4[2], v, 1.0)        # y(0) = (0,0,-1,0), y'(0) = v
    return c1, c2


class TestLift:
    def test_lightlike(self):
        x = np.array([0.0, 0, 1, 0])
        bar = sp.lift(x)
        assert np.array_equal(bar, [1, 0, 0, 1, 0])
        assert mk.inner5(bar, bar) == 0.0
        assert np.array_equal(sp.lift(np.array([1.0, 0, 0, 0])), [1, 1, 0, 0, 0])

    def test_pair_inner_product(self):
        rng = Lcg64(21)
        for _ in range(50):
            x, y = random_unit4(rng), random_unit4(rng)
            want = -np.sum((x - y) ** 2) / 2
            assert mk.inner5(sp.lift(x), sp.lift(y)) == pytest.approx(want, abs=1e-14)
            assert mk.inner5(sp.lift(x), sp.lift(y)) == pytest.approx(-1 + x @ y, abs=1e-14)

    def test_rejects_off_sphere(self):
        with pytest.raises(NotOnSphere):
            sp.lift(np.array([1.0, 0, 0, 1e-4]))


class TestPsiEmbed:
    def test_antipodal_pair(self):
        p = sp.psi_embed(np.array([0.0, 0, 1, 0]), np.array([0.0, 0, -1, 0]))
        want = np.zeros(10)
        want[mk.PAIR_INDEX[(0, 3)]] = -1.0
        assert np.allclose(p, want, atol=1e-15)

    def test_unit_norm_and_decomposable(self):
        rng = Lcg64(22)
        for _ in range(50):
            x, y = random_unit4(rng), random_unit4(rng)
            if np.linalg.norm(x - y) < 0.05:
                continue
            p = sp.psi_embed(x, y)
            assert mk.inner10(p, p) == pytest.approx(1.0, abs=1e-12)
            assert np.max(np.abs(mk.plucker_residuals(p))) <= 1e-12

    def test_coincident_rejected(self):
        x = np.array([1.0, 0, 0, 0])
        with pytest.raises(CoincidentPoints):
            sp.psi_embed(x, x)


class TestSigmaDerivatives:
    def test_nullity_random_links(self, small_catalogue):
        rng = Lcg64(23)
        for link in small_catalogue.values():
            s = np.array([rng.uniform_in(0, TWO_PI) for _ in range(1000)])
            t = np.array([rng.uniform_in(0, TWO_PI) for _ in range(1000)])
            _, ss, st = sp.sigma_derivatives(link.c1, link.c2, s, t)
            assert np.max(np.abs(mk.inner10(ss, ss))) <= 1e-10
            assert np.max(np.abs(mk.inner10(st, st))) <= 1e-10

    def test_hopf_cross_term_vanishes(self, hopf):
        rng = Lcg64(24)
        for _ in range(100):
            s0, t0 = rng.uniform_in(0, TWO_PI), rng.uniform_in(0, TWO_PI)
            _, ss, st = sp.sigma_derivatives(hopf.c1, hopf.c2, s0, t0)
            assert abs(mk.inner10(ss, st)) <= 1e-10

    def test_antipodal_cross_term(self):
        c1, c2 = antipodal_test_curves()
        _, ss, st = sp.sigma_derivatives(c1, c2, 0.0, 0.0)
        want = -0.5 * (c1.velocity(0.0) @ c2.velocity(0.0))
        assert want != 0.0
        assert mk.inner10(ss, st) == pytest.approx(want, abs=1e-12)


class TestMetricCoefficient:
    def test_hopf_everywhere_zero(self, hopf):
        s = np.linspace(0, TWO_PI, 64, endpoint=False)
        assert np.max(np.abs(sp.metric_grid(hopf.c1, hopf.c2, s, s))) <= 1e-14

    def test_antipodal_value(self):
        c1, c2 = antipodal_test_curves()
        want = -0.5 * (c1.velocity(0.0) @ c2.velocity(0.0))
        assert sp.metric_coefficient(c1, c2, 0.0, 0.0) == pytest.approx(want, abs=1e-12)

    def test_matches_explicit_route(self, small_catalogue):
        rng = Lcg64(25)
        for link in small_catalogue.values():
            s = np.array([rng.uniform_in(0, TWO_PI) for _ in range(1000)])
            t = np.array([rng.uniform_in(0, TWO_PI) for _ in range(1000)])
            closed = sp.metric_pairs(link.c1, link.c2, s, t)
            _, ss, st = sp.sigma_derivatives(link.c1, link.c2, s, t)
            explicit = mk.inner10(ss, st)
            scale = np.maximum(np.abs(explicit), 1.0)
            assert np.max(np.abs(closed - explicit) / scale) <= 1e-10

    def test_grid_matches_scalar(self, perturbed02):
        s = np.linspace(0, TWO_PI, 8, endpoint=False)
        grid = sp.metric_grid(perturbed02.c1, perturbed02.c2, s, s)
        for i in (0, 3, 7):
            for j in (1, 4, 6):
                want = sp.metric_coefficient(perturbed02.c1, perturbed02.c2, s[i], s[j])
                assert grid[i, j] == pytest.approx(want, rel=1e-13, abs=1e-15)


class TestSignature:
    def test_antipodal_pair(self):
        sig = sp.theta_tangent_signature(np.array([0.0, 0, 1, 0]), np.array([0.0, 0, -1, 0]))
        assert sig == (3, 3, 0)

    def test_random_pairs(self):
        rng = Lcg64(26)
        for _ in range(100):
            x, y = random_unit4(rng), random_unit4(rng)
            if np.linalg.norm(x - y) < 0.1:
                continue
            assert sp.theta_tangent_signature(x, y) == (3, 3, 0)

    def test_torus_gram_eigenvalues(self, separated10):
        g = sp.metric_coefficient(separated10.c1, separated10.c2, 0.3, 1.1)
        assert abs(g) > 1e-5
        _, ss, st = sp.sigma_derivatives(separated10.c1, separated10.c2, 0.3, 1.1)
        gram = np.array([[mk.inner10(ss, ss), mk.inner10(ss, st)],
                         [mk.inner10(st, ss), mk.inner10(st, st)]])
        ev = jacobi_eigenvalues(gram)
        assert np.allclose(ev, [-abs(g), abs(g)], atol=1e-10)


def test_degenerate_basis_detected(monkeypatch):
    from linkarea.errors import DegenerateBasis
    monkeypatch.setattr(sp, "psi_embed", lambda x, y: np.zeros(10))
    with pytest.raises(DegenerateBasis):
        sp.theta_tangent_signature(np.array([1.0, 0, 0, 0]), np.array([0.0, 1, 0, 0]))


class TestTorusTangentType:
    def test_hopf_degenerate(self, hopf):
        rng = Lcg64(27)
        for _ in range(50):
            s0, t0 = rng.uniform_in(0, TWO_PI), rng.uniform_in(0, TWO_PI)
            assert sp.torus_tangent_type(hopf.c1, hopf.c2, s0, t0) == sp.TangentType.DEGENERATE

    def test_separated_generic_mixed(self, separated10):
        assert sp.torus_tangent_type(separated10.c1, separated10.c2, 0.3, 1.1) == sp.TangentType.MIXED


class TestEquivariance:
    def test_minor_lift_commutes_with_embedding(self):
        rng = Lcg64(28)
        for k in range(20):
            mob = la.random_mobius(300 + k, 1.0)
            x, y = random_unit4(rng), random_unit4(rng)
            if np.linalg.norm(x - y) < 0.1:
                continue
            lhs = mk.minor_lift(mob.matrix) @ sp.psi_embed(x, y)
            rhs = sp.psi_embed(mob.act_point(x), mob.act_point(y))
            assert np.max(np.abs(lhs - rhs)) <= 1e-9
