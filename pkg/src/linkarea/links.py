"""Closed curves on the unit 3-sphere, a standard link catalogue, the
Moebius group action, and link-file ingestion.

All curves are 2*pi-periodic maps into S^3 in R^4 with analytic first
derivatives.  Three representations are provided: exact circles, truncated
Fourier series in R^4 composed with radial normalization, and uniformly
sampled nodes with periodic quintic spline interpolation.  Evaluation
methods accept scalar or array parameters and broadcast.
"""

import json

import numpy as np
from scipy.interpolate import make_interp_spline

from . import minkowski as mk
from .errors import (BadLinkFile, BadParameter, BadPolygon,
                     DisjointnessViolation, ImmersionFailure)
from .rng import Lcg64

TWO_PI = 2.0 * np.pi

#: chordal separation floor between link components
DELTA_SEP = 1e-6

#: minimum admissible parametric speed (immersion floor)
V_MIN = 1e-4

#: default node count for sampled curves, default Fourier mode cap
N_SAMPLES = 256
K_MAX = 16


def _as_param(s):
    return np.asarray(s, dtype=float)


class LinkCurve:
    """Interface shared by all curve representations."""

    def point(self, s):
        raise NotImplementedError

    def velocity(self, s):
        raise NotImplementedError

    def evaluate(self, s):
        """Point on S^3 and tangent velocity at parameter s (mod 2*pi)."""
        p = self.point(s)
        v = self.velocity(s)
        speed = np.linalg.norm(v, axis=-1)
        if np.min(speed) < V_MIN:
            raise ImmersionFailure(f"speed {np.min(speed):.3e} below {V_MIN}")
        return p, v

    def reversed(self):
        raise NotImplementedError


class CircleCurve(LinkCurve):
    """Exact round circle on S^3: center + radius*(cos(s) u + sin(s) v).

    center, u, v must be mutually orthogonal with |center|^2 + radius^2 = 1
    and u, v unit, so every point lies exactly on the sphere.
    """

    def __init__(self, center, u, v, radius):
        center = np.asarray(center, dtype=float)
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        radius = float(radius)
        gram_ok = (abs(u @ u - 1) < 1e-9 and abs(v @ v - 1) < 1e-9
                   and abs(u @ v) < 1e-9 and abs(center @ u) < 1e-9
                   and abs(center @ v) < 1e-9)
        if not gram_ok:
            raise BadParameter("circle frame is not orthonormal")
        if abs(center @ center + radius * radius - 1.0) > 1e-9:
            raise BadParameter("circle does not lie on the unit sphere")
        if radius < V_MIN:
            raise ImmersionFailure("circle radius below speed floor")
        self.center, self.u, self.v, self.radius = center, u, v, radius

    def point(self, s):
        s = _as_param(s)
        return (self.center
                + self.radius * (np.cos(s)[..., None] * self.u
                                 + np.sin(s)[..., None] * self.v))

    def velocity(self, s):
        s = _as_param(s)
        return self.radius * (-np.sin(s)[..., None] * self.u
                              + np.cos(s)[..., None] * self.v)

    def reversed(self):
        return CircleCurve(self.center, self.u, -self.v, self.radius)


def _fourier_design(s, n_modes, derivative=False):
    """Rows [1, cos s, sin s, cos 2s, sin 2s, ...] or their derivatives."""
    s = _as_param(s)
    cols = [np.zeros_like(s) if derivative else np.ones_like(s)]
    for k in range(1, n_modes + 1):
        if derivative:
            cols.append(-k * np.sin(k * s))
            cols.append(k * np.cos(k * s))
        else:
            cols.append(np.cos(k * s))
            cols.append(np.sin(k * s))
    return np.stack(cols, axis=-1)


class FourierCurve(LinkCurve):
    """Truncated Fourier curve in R^4, radially normalized onto S^3.

    coefficients has shape (4, 2K+1): column 0 the constant term, then
    alternating cos/sin coefficients per mode.  The evaluated point is
    F(s)/|F(s)| and the velocity is the analytic derivative of that
    composition.
    """

    def __init__(self, coefficients):
        coeffs = np.asarray(coefficients, dtype=float)
        if coeffs.ndim != 2 or coeffs.shape[0] != 4 or coeffs.shape[1] % 2 != 1:
            raise BadParameter("fourier coefficients must have shape (4, 2K+1)")
        if (coeffs.shape[1] - 1) // 2 > K_MAX:
            raise BadParameter(f"more than {K_MAX} fourier modes")
        self.coeffs = coeffs
        self.n_modes = (coeffs.shape[1] - 1) // 2
        probe = np.linspace(0.0, TWO_PI, 512, endpoint=False)
        radii = np.linalg.norm(self._raw(probe), axis=-1)
        if np.min(radii) < 0.05:
            raise BadParameter("fourier curve passes too close to the origin")
        speed = np.linalg.norm(self.velocity(probe), axis=-1)
        if np.min(speed) < V_MIN:
            raise ImmersionFailure(f"speed {np.min(speed):.3e} below {V_MIN}")

    def _raw(self, s):
        return _fourier_design(s, self.n_modes) @ self.coeffs.T

    def _raw_deriv(self, s):
        return _fourier_design(s, self.n_modes, derivative=True) @ self.coeffs.T

    def point(self, s):
        f = self._raw(s)
        return f / np.linalg.norm(f, axis=-1, keepdims=True)

    def velocity(self, s):
        f = self._raw(s)
        fp = self._raw_deriv(s)
        n = np.linalg.norm(f, axis=-1, keepdims=True)
        return fp / n - f * np.sum(f * fp, axis=-1, keepdims=True) / n ** 3

    def reversed(self):
        flipped = self.coeffs.copy()
        flipped[:, 2::2] = -flipped[:, 2::2]
        return FourierCurve(flipped)


class SampledCurve(LinkCurve):
    """Uniform nodes on S^3 joined by a periodic quintic spline.

    The spline interpolates the nodes in R^4; evaluation renormalizes
    radially so points sit on the sphere to roundoff.
    """

    def __init__(self, nodes):
        nodes = np.asarray(nodes, dtype=float)
        if nodes.ndim != 2 or nodes.shape[1] != 4 or nodes.shape[0] < 8:
            raise BadPolygon("need at least 8 nodes of dimension 4")
        norms = np.linalg.norm(nodes, axis=1)
        if np.any(norms < 0.5) or np.any(norms > 2.0):
            raise BadPolygon("node norms too far from the unit sphere")
        self.nodes = nodes / norms[:, None]
        n = len(self.nodes)
        grid = np.linspace(0.0, TWO_PI, n + 1)
        closed = np.vstack([self.nodes, self.nodes[:1]])
        self._spline = make_interp_spline(grid, closed, k=5, bc_type="periodic")
        self._dspline = self._spline.derivative()
        probe = np.linspace(0.0, TWO_PI, 4 * n, endpoint=False)
        speed = np.linalg.norm(self.velocity(probe), axis=-1)
        if np.min(speed) < V_MIN:
            raise ImmersionFailure(f"speed {np.min(speed):.3e} below {V_MIN}")

    def point(self, s):
        f = self._spline(np.mod(_as_param(s), TWO_PI))
        return f / np.linalg.norm(f, axis=-1, keepdims=True)

    def velocity(self, s):
        sm = np.mod(_as_param(s), TWO_PI)
        f = self._spline(sm)
        fp = self._dspline(sm)
        n = np.linalg.norm(f, axis=-1, keepdims=True)
        return fp / n - f * np.sum(f * fp, axis=-1, keepdims=True) / n ** 3

    def reversed(self):
        rev = np.vstack([self.nodes[:1], self.nodes[:0:-1]])
        return SampledCurve(rev)


class TransformedCurve(LinkCurve):
    """Moebius image of another curve, evaluated through the light cone."""

    def __init__(self, base: LinkCurve, matrix):
        self.base = base
        self.matrix = np.asarray(matrix, dtype=float)

    def point(self, s):
        x = self.base.point(s)
        xb = np.concatenate([np.ones(x.shape[:-1] + (1,)), x], axis=-1)
        w = xb @ self.matrix.T
        return w[..., 1:] / w[..., :1]

    def velocity(self, s):
        x = self.base.point(s)
        xp = self.base.velocity(s)
        xb = np.concatenate([np.ones(x.shape[:-1] + (1,)), x], axis=-1)
        xbp = np.concatenate([np.zeros(x.shape[:-1] + (1,)), xp], axis=-1)
        w = xb @ self.matrix.T
        wp = xbp @ self.matrix.T
        w0 = w[..., :1]
        return wp[..., 1:] / w0 - w[..., 1:] * wp[..., :1] / w0 ** 2

    def reversed(self):
        return TransformedCurve(self.base.reversed(), self.matrix)


class Link2:
    """Two disjoint closed curves on S^3.

    Disjointness is probed on a 256x256 parameter grid at construction.
    """

    def __init__(self, c1: LinkCurve, c2: LinkCurve, probe: int = 256):
        self.c1 = c1
        self.c2 = c2
        sep = self.min_separation(probe)
        if sep <= DELTA_SEP:
            raise DisjointnessViolation(f"components approach to {sep:.3e}")

    def min_separation(self, n: int = 256) -> float:
        s = np.linspace(0.0, TWO_PI, n, endpoint=False)
        x = self.c1.point(s)
        y = self.c2.point(s)
        # both factors unit: |x-y|^2 = 2 - 2 x.y
        top = float(np.max(x @ y.T))
        return float(np.sqrt(max(0.0, 2.0 - 2.0 * top)))


# ---------------------------------------------------------------------------
# standard catalogue

_E = np.eye(4)


def hopf_link() -> Link2:
    """The two orthogonal unit circles {(cos s, sin s, 0, 0)}, {(0, 0, cos t, sin t)}."""
    c1 = CircleCurve(np.zeros(4), _E[0], _E[1], 1.0)
    c2 = CircleCurve(np.zeros(4), _E[2], _E[3], 1.0)
    return Link2(c1, c2)


def separated_link(d: float) -> Link2:
    """Two round circles at chordal separation >= d, for d in (0, 2)."""
    if not 0.0 < d < 2.0:
        raise BadParameter("separation must lie in (0, 2)")
    cos_rho = 0.5 * d * (1.0 + 1e-9)
    if cos_rho >= 1.0 - 1e-12:
        raise BadParameter("separation too close to the diameter")
    sin_rho = float(np.sqrt(1.0 - cos_rho * cos_rho))
    c1 = CircleCurve(cos_rho * _E[0], _E[1], _E[2], sin_rho)
    c2 = CircleCurve(-cos_rho * _E[0], _E[1], _E[2], sin_rho)
    return Link2(c1, c2)


def parallel_circles_link(r: float = 1.0, gap: float = 1.0) -> Link2:
    """Two coaxial radius-r circles in planes z = +-gap/2, lifted to S^3."""
    if r <= 0.0 or gap <= 0.0:
        raise BadParameter("radius and gap must be positive")

    def lifted(z0):
        q = r * r + z0 * z0 + 1.0
        center = np.array([0.0, 0.0, 2.0 * z0 / q, (q - 2.0) / q])
        return CircleCurve(center, _E[0], _E[1], 2.0 * r / q)

    return Link2(lifted(0.5 * gap), lifted(-0.5 * gap))


_HOPF_COEFFS_1 = np.zeros((4, 7))
_HOPF_COEFFS_1[0, 1] = 1.0
_HOPF_COEFFS_1[1, 2] = 1.0
_HOPF_COEFFS_2 = np.zeros((4, 7))
_HOPF_COEFFS_2[2, 1] = 1.0
_HOPF_COEFFS_2[3, 2] = 1.0


def perturbed_hopf_link(eps: float, seed: int) -> Link2:
    """Hopf link with seeded Fourier noise of sup amplitude eps, renormalized.

    eps = 0 reproduces the Hopf link exactly.  Noise spans modes 0..3 and
    is rescaled so the largest R^4 displacement before renormalization is
    exactly eps, which keeps the components disjoint for eps < 0.3.
    """
    if not 0.0 <= eps < 0.3:
        raise BadParameter("perturbation amplitude must lie in [0, 0.3)")
    rng = Lcg64(seed)
    curves = []
    probe = np.linspace(0.0, TWO_PI, 512, endpoint=False)
    for base in (_HOPF_COEFFS_1, _HOPF_COEFFS_2):
        coeffs = base.copy()
        if eps > 0.0:
            raw = np.zeros((4, 7))
            for c in range(4):
                raw[c, 0] = 0.5 * rng.uniform_in(-1.0, 1.0)
                for k in (1, 2, 3):
                    raw[c, 2 * k - 1] = 2.0 ** (-k) * rng.uniform_in(-1.0, 1.0)
                    raw[c, 2 * k] = 2.0 ** (-k) * rng.uniform_in(-1.0, 1.0)
            delta = _fourier_design(probe, 3) @ raw.T
            top = np.max(np.linalg.norm(delta, axis=-1))
            coeffs = coeffs + (eps / top) * raw
        curves.append(FourierCurve(coeffs))
    return Link2(curves[0], curves[1])


def catalogue() -> dict:
    """The standard test links, keyed by short names."""
    links = {
        "hopf": hopf_link(),
        "separated_1.0": separated_link(1.0),
        "separated_1.5": separated_link(1.5),
        "separated_1.9": separated_link(1.9),
        "parallel_circles": parallel_circles_link(1.0, 1.0),
    }
    for seed in range(5):
        links[f"perturbed_hopf_0.2_s{seed}"] = perturbed_hopf_link(0.2, seed)
    return links


# ---------------------------------------------------------------------------
# Moebius group

class MobiusMap:
    """Orthochronous pseudo-orthogonal 5x5 matrix acting on S^3.

    The action lifts a point to the light cone, applies the matrix, and
    rescales back to the x0 = 1 slice; orthochronicity keeps the leading
    component positive.
    """

    def __init__(self, matrix):
        A = np.asarray(matrix, dtype=float)
        if A.shape != (5, 5):
            raise BadParameter("moebius matrix must be 5x5")
        if mk.pseudo_orthogonality_residual(A) > 1e-10:
            raise BadParameter("matrix is not pseudo-orthogonal")
        if A[0, 0] <= 0.0:
            raise BadParameter("matrix reverses time orientation")
        self.matrix = A

    def act_point(self, x):
        x = np.asarray(x, dtype=float)
        xb = np.concatenate([np.ones(x.shape[:-1] + (1,)), x], axis=-1)
        w = xb @ self.matrix.T
        return w[..., 1:] / w[..., :1]

    def transform_curve(self, c: LinkCurve) -> LinkCurve:
        return TransformedCurve(c, self.matrix)

    def transform_link(self, link: Link2) -> Link2:
        return Link2(self.transform_curve(link.c1), self.transform_curve(link.c2))

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        return MobiusMap(self.matrix @ other.matrix)


def boost_matrix(rapidity: float, axis: int = 1):
    """Boost mixing the timelike coordinate with spatial axis (1..4)."""
    if not 1 <= axis <= 4:
        raise BadParameter("boost axis must be 1..4")
    A = np.eye(5)
    ch, sh = np.cosh(rapidity), np.sinh(rapidity)
    A[0, 0] = ch
    A[axis, axis] = ch
    A[0, axis] = sh
    A[axis, 0] = sh
    return A


def rotation_embed(R):
    """Embed an SO(4) matrix as a time-preserving element of O+(4,1)."""
    A = np.eye(5)
    A[1:, 1:] = np.asarray(R, dtype=float)
    return A


def _reorthonormalize(A):
    """Newton polish toward the pseudo-orthogonal group."""
    eta = np.diag(mk.ETA5)
    for _ in range(3):
        M = eta @ A.T @ eta @ A
        A = A @ (1.5 * np.eye(5) - 0.5 * M)
        if mk.pseudo_orthogonality_residual(A) <= 1e-13:
            break
    return A


def random_mobius(seed: int, rapidity_max: float) -> MobiusMap:
    """Seeded random rotation composed with a seeded boost.

    rapidity_max = 0 yields a pure rotation with unit corner entry.  The
    product is polished back to pseudo-orthogonality residual <= 1e-12.
    """
    if rapidity_max > 2.0:
        raise BadParameter("rapidity_max must be at most 2")
    rng = Lcg64(seed)
    G = np.array([[rng.normal() for _ in range(4)] for _ in range(4)])
    Q, R = np.linalg.qr(G)
    Q = Q * np.sign(np.diag(R))
    if np.linalg.det(Q) < 0:
        Q[:, -1] = -Q[:, -1]
    beta = rapidity_max * rng.uniform()
    A = rotation_embed(Q) @ boost_matrix(beta)
    A = _reorthonormalize(A)
    return MobiusMap(A)


# ---------------------------------------------------------------------------
# charts between R^3 and S^3

def inverse_stereographic(u):
    """R^3 -> S^3, u -> (2u, |u|^2 - 1)/(|u|^2 + 1); infinity maps to (0,0,0,1)."""
    u = np.asarray(u, dtype=float)
    q = np.sum(u * u, axis=-1, keepdims=True)
    return np.concatenate([2.0 * u, q - 1.0], axis=-1) / (q + 1.0)


def stereographic_3chart(x):
    """S^3 minus the north pole (0,0,0,1) -> R^3, inverse of the lift above."""
    x = np.asarray(x, dtype=float)
    return x[..., :3] / (1.0 - x[..., 3:])


def chart_lift(points) -> SampledCurve:
    """Closed R^3 polygon -> sampled curve on S^3 via the inverse chart.

    Nodes are taken as uniformly spaced in parameter; at least 8 distinct
    nodes are required and the first node must not be repeated at the end.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise BadPolygon("expected an (N, 3) array of nodes")
    if pts.shape[0] < 8:
        raise BadPolygon("need at least 8 nodes")
    diffs = pts[:, None, :] - pts[None, :, :]
    dist = np.linalg.norm(diffs, axis=-1)
    np.fill_diagonal(dist, np.inf)
    if np.min(dist) < 1e-12:
        raise BadPolygon("repeated nodes")
    return SampledCurve(inverse_stereographic(pts))


# ---------------------------------------------------------------------------
# lk-1 link files

def _component_to_dict(c: LinkCurve) -> dict:
    if isinstance(c, FourierCurve):
        return {"kind": "fourier4", "coefficients": c.coeffs.tolist()}
    if isinstance(c, CircleCurve):
        coeffs = np.zeros((4, 3))
        coeffs[:, 0] = c.center
        coeffs[:, 1] = c.radius * c.u
        coeffs[:, 2] = c.radius * c.v
        return {"kind": "fourier4", "coefficients": coeffs.tolist()}
    if isinstance(c, SampledCurve):
        return {"kind": "samples4", "nodes": c.nodes.tolist()}
    s = np.linspace(0.0, TWO_PI, N_SAMPLES, endpoint=False)
    return {"kind": "samples4", "nodes": c.point(s).tolist()}


def write_link(link: Link2, path) -> None:
    doc = {
        "version": "lk-1",
        "components": [_component_to_dict(link.c1), _component_to_dict(link.c2)],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def _component_from_dict(comp, index: int) -> LinkCurve:
    where = f"components[{index}]"
    if not isinstance(comp, dict):
        raise BadLinkFile(f"{where} is not an object")
    kind = comp.get("kind")
    if kind == "fourier4":
        coeffs = comp.get("coefficients")
        if coeffs is None:
            raise BadLinkFile(f"{where}.coefficients missing")
        try:
            return FourierCurve(np.asarray(coeffs, dtype=float))
        except (BadParameter, ImmersionFailure, ValueError) as exc:
            raise BadLinkFile(f"{where}.coefficients invalid: {exc}") from exc
    if kind in ("samples4", "samples3"):
        nodes = comp.get("nodes")
        if nodes is None:
            raise BadLinkFile(f"{where}.nodes missing")
        try:
            arr = np.asarray(nodes, dtype=float)
        except ValueError as exc:
            raise BadLinkFile(f"{where}.nodes not numeric") from exc
        try:
            if kind == "samples4":
                return SampledCurve(arr)
            return chart_lift(arr)
        except (BadPolygon, ImmersionFailure, ValueError) as exc:
            raise BadLinkFile(f"{where}.nodes invalid: {exc}") from exc
    raise BadLinkFile(f"{where}.kind must be fourier4, samples4 or samples3")


def read_link(path) -> Link2:
    """Parse an lk-1 file into a validated two-component link."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise BadLinkFile(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("version") != "lk-1":
        raise BadLinkFile("version must be \"lk-1\"")
    comps = doc.get("components")
    if not isinstance(comps, list) or len(comps) != 2:
        raise BadLinkFile("components must be a list of exactly two entries")
    c1 = _component_from_dict(comps[0], 0)
    c2 = _component_from_dict(comps[1], 1)
    try:
        return Link2(c1, c2)
    except DisjointnessViolation as exc:
        raise BadLinkFile(f"components are not disjoint: {exc}") from exc
