"""Finite-dimensional real normed spaces.

Four norm families are supported:

* ``lp``          -- the r-power norms for 1 <= r <= inf,
                     ||v||_r = (sum |v_i|^r)^(1/r), with the sup norm at r = inf
* ``l1_linf``     -- R^2 under the sign-mixed norm: the sup norm on the
                     quadrants where v1*v2 >= 0 and the 1-norm where
                     v1*v2 <= 0 (both branches agree on the axes); its unit
                     ball is the hexagon with vertices
                     (1,0), (0,1), (-1,0), (0,-1), (1,1), (-1,-1)
* ``weighted_c0`` -- ||v|| = max_i |v_i| + (sum_i v_i^2 / 4^i)^(1/2),
                     the strictly convex renorming of a sup-norm space,
                     truncated to a finite dimension
* ``polyhedral``  -- the Minkowski gauge of the convex hull of a finite
                     symmetric point set

Spaces are immutable after construction; a private dict on each instance is
used only to memoize derived data (sphere grids, pair meshes) so repeated
estimator calls stay cheap.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "NormedSpace",
    "UnitSample",
    "lp_space",
    "l1_linf_space",
    "weighted_c0_space",
    "polyhedral_space",
    "polyhedral_space_from_file",
    "load_extreme_points",
    "symmetrize_points",
    "minkowski_gauge",
    "sample_unit_sphere",
    "catalog_spaces",
    "DIRECT_NORM_TOL",
    "GAUGE_NORM_TOL",
]

# Unit-norm certification tolerances: closed-form norms are exact to a few
# ulp, hull-gauge norms go through an edge solve and get a looser budget.
DIRECT_NORM_TOL = 1e-12
GAUGE_NORM_TOL = 1e-9

_L1_LINF_VERTICES = np.array(
    [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0), (1.0, 1.0), (-1.0, -1.0)]
)


def as_vector(coords, dim: int | None = None) -> np.ndarray:
    """Validate and convert coordinates to a 1-d float array (length >= 2)."""
    v = np.asarray(coords, dtype=float)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-d coordinate array, got shape {v.shape}")
    if v.size < 2:
        raise ValueError("vectors must have dimension >= 2")
    if dim is not None and v.size != dim:
        raise ValueError(f"dimension mismatch: expected {dim}, got {v.size}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector coordinates must be finite")
    return v


# ---------------------------------------------------------------------------
# convex hulls and gauge functionals
# ---------------------------------------------------------------------------


def _hull_2d(points: np.ndarray) -> np.ndarray:
    """Vertices of the planar convex hull in counter-clockwise order.

    Andrew's monotone chain with strict turns, so collinear interior points
    of an edge are dropped and only true extreme points remain.
    """
    pts = sorted(set(map(tuple, points.tolist())))
    if len(pts) < 3:
        raise ValueError("point set is degenerate: fewer than 3 distinct points")

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0.0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise ValueError("point set is degenerate: all points are collinear")
    return np.array(hull)


def _edge_functionals_2d(vertices: np.ndarray) -> np.ndarray:
    """Supporting functionals of a CCW polygon with the origin inside.

    Each consecutive vertex pair (p, q) spans an edge on the line
    <a, x> = 1; the functional a solves the 2x2 system [p; q] a = [1, 1].
    """
    rows = []
    m = len(vertices)
    for i in range(m):
        px, py = vertices[i]
        qx, qy = vertices[(i + 1) % m]
        det = px * qy - py * qx
        if abs(det) < 1e-14:
            raise ValueError(
                "unit ball is degenerate: the origin lies on an edge line"
            )
        rows.append(((qy - py) / det, (px - qx) / det))
    return np.array(rows)


def _gauge_data(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Hull vertices and gauge functionals of a symmetric spanning point set.

    Returns (vertices, rows) where gauge(v) = max_i <rows[i], v>.  The 2-d
    path solves one exact 2x2 linear system per hull edge; higher dimensions
    use Qhull facet equations.
    """
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[0] < 3:
        raise ValueError("need at least 3 points of equal dimension")
    dim = points.shape[1]
    if dim == 2:
        verts = _hull_2d(points)
        rows = _edge_functionals_2d(verts)
        return verts, rows

    from scipy.spatial import ConvexHull, QhullError

    try:
        hull = ConvexHull(points)
    except QhullError as exc:
        raise ValueError(f"point set is degenerate: {exc}") from exc
    offsets = hull.equations[:, -1]
    if np.any(offsets > -1e-12):
        raise ValueError("unit ball is degenerate: origin not strictly interior")
    rows = hull.equations[:, :-1] / (-offsets[:, None])
    return points[hull.vertices], rows


def symmetrize_points(points) -> np.ndarray:
    """Close a point set under negation (v present implies -v present)."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2:
        raise ValueError("expected a 2-d array of points")
    out = list(pts)
    for p in pts:
        if not any(np.max(np.abs(q + p)) <= 1e-12 for q in out):
            out.append(-p)
    return np.array(out)


def _check_symmetric(points: np.ndarray) -> None:
    for p in points:
        if not any(np.max(np.abs(q + p)) <= 1e-9 for q in points):
            raise ValueError("point set is not symmetric under negation")


def minkowski_gauge(extreme_points, v) -> float:
    """Minkowski gauge of conv(extreme_points) at v.

    The point set must be symmetric under negation and span the space, so
    the gauge is a norm.  gauge(v) = max over facet functionals a of <a, v>.
    """
    points = np.asarray(extreme_points, dtype=float)
    _check_symmetric(points)
    _, rows = _gauge_data(points)
    vv = as_vector(v, dim=points.shape[1])
    return float(np.max(rows @ vv))


# ---------------------------------------------------------------------------
# spaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class NormedSpace:
    """An immutable finite-dimensional normed space.

    Construct through the factory functions (`lp_space`, `l1_linf_space`,
    `weighted_c0_space`, `polyhedral_space`) rather than directly.
    """

    dim: int
    kind: str
    name: str
    r: float | None = None
    _vertices: np.ndarray | None = field(default=None, repr=False)
    _gauge_rows: np.ndarray | None = field(default=None, repr=False)
    # memo store for derived data; the mathematical fields above never change
    _memo: dict = field(default_factory=dict, repr=False)

    @property
    def tol_norm(self) -> float:
        """Unit-membership tolerance: looser for hull-gauge norms."""
        return GAUGE_NORM_TOL if self.kind == "polyhedral" else DIRECT_NORM_TOL

    @property
    def truncation_tail(self) -> float | None:
        """Norm error bound of the finite truncation, per unit of sup|x_i|.

        Only meaningful for weighted_c0: dropping coordinates beyond ``dim``
        changes the norm by at most sup|x_i| * sqrt(4^-dim / 3).
        """
        if self.kind != "weighted_c0":
            return None
        return math.sqrt(4.0 ** (-self.dim) / 3.0)

    # -- norm evaluation ----------------------------------------------------

    def norm_many(self, vs) -> np.ndarray:
        """Norms of a batch of vectors, shape (n, dim) -> (n,)."""
        V = np.asarray(vs, dtype=float)
        if V.ndim != 2 or V.shape[1] != self.dim:
            raise ValueError(f"expected shape (n, {self.dim}), got {V.shape}")
        if self.kind == "lp":
            A = np.abs(V)
            if self.r == math.inf:
                return A.max(axis=1)
            if self.r == 1.0:
                return A.sum(axis=1)
            if self.r == 2.0:
                return np.sqrt(np.einsum("ij,ij->i", V, V))
            return (A**self.r).sum(axis=1) ** (1.0 / self.r)
        if self.kind == "l1_linf":
            A = np.abs(V)
            same_sign = V[:, 0] * V[:, 1] >= 0.0
            return np.where(same_sign, A.max(axis=1), A.sum(axis=1))
        if self.kind == "weighted_c0":
            w = self._memo.get("wc0_weights")
            if w is None:
                w = 4.0 ** (-np.arange(1, self.dim + 1, dtype=float))
                self._memo["wc0_weights"] = w
            return np.abs(V).max(axis=1) + np.sqrt((V * V * w).sum(axis=1))
        # polyhedral gauge
        return (V @ self._gauge_rows.T).max(axis=1)

    def norm(self, v) -> float:
        return float(self.norm_many(as_vector(v, self.dim)[None, :])[0])

    def normalize(self, v) -> np.ndarray:
        """Radial projection v / ||v|| onto the unit sphere."""
        vv = as_vector(v, self.dim)
        n = self.norm(vv)
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return vv / n

    # -- geometry -----------------------------------------------------------

    def extreme_points(self) -> np.ndarray | None:
        """Extreme points of the unit ball, or None when the set is not
        finite (lp with 1 < r < inf, weighted_c0)."""
        if self.kind == "polyhedral":
            return self._vertices.copy()
        if self.kind == "l1_linf":
            return _L1_LINF_VERTICES.copy()
        if self.kind == "lp" and self.r == 1.0:
            eye = np.eye(self.dim)
            return np.vstack([eye, -eye])
        if self.kind == "lp" and self.r == math.inf:
            return np.array(
                list(itertools.product((1.0, -1.0), repeat=self.dim))
            )
        return None


def lp_space(r: float, dim: int = 2) -> NormedSpace:
    """The space R^dim under the r-power norm, 1 <= r <= inf."""
    r = float(r)
    if not (r >= 1.0):
        raise ValueError("lp norms require r >= 1")
    if dim < 2:
        raise ValueError("dimension must be >= 2")
    tag = "inf" if r == math.inf else f"{r:g}"
    return NormedSpace(dim=dim, kind="lp", name=f"l{tag}^{dim}", r=r)


def l1_linf_space() -> NormedSpace:
    """R^2 under the sign-mixed sup/1-norm (hexagonal unit ball)."""
    return NormedSpace(dim=2, kind="l1_linf", name="l1linf")


def weighted_c0_space(dim: int = 3) -> NormedSpace:
    """Truncated strictly convex renorming max|v_i| + (sum v_i^2/4^i)^(1/2)."""
    if dim < 2:
        raise ValueError("dimension must be >= 2")
    return NormedSpace(dim=dim, kind="weighted_c0", name=f"wc0^{dim}")


def polyhedral_space(points, name: str | None = None) -> NormedSpace:
    """Space whose unit ball is the convex hull of a symmetric point set.

    The set is closed under negation automatically; points interior to the
    hull are dropped, so `extreme_points` returns true vertices only.
    """
    pts = symmetrize_points(points)
    verts, rows = _gauge_data(pts)
    dim = pts.shape[1]
    if name is None:
        name = f"poly{len(verts)}^{dim}"
    return NormedSpace(
        dim=dim, kind="polyhedral", name=name, _vertices=verts, _gauge_rows=rows
    )


def load_extreme_points(path) -> np.ndarray:
    """Read one point per line (whitespace-separated floats) from a file.

    Blank lines and lines starting with '#' are skipped.  All rows must have
    the same dimension >= 2.
    """
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            try:
                rows.append([float(tok) for tok in body.split()])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: not a float row: {body!r}") from exc
    if not rows:
        raise ValueError(f"{path}: no points found")
    width = len(rows[0])
    if width < 2 or any(len(row) != width for row in rows):
        raise ValueError(f"{path}: rows must share one dimension >= 2")
    return np.array(rows, dtype=float)


def polyhedral_space_from_file(path, name: str | None = None) -> NormedSpace:
    pts = load_extreme_points(path)
    return polyhedral_space(pts, name=name)


# ---------------------------------------------------------------------------
# sampling and catalog
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UnitSample:
    """A batch of unit vectors together with the seed that produced it."""

    points: np.ndarray
    seed: int


def sample_unit_sphere(space: NormedSpace, count: int, seed: int) -> UnitSample:
    """Draw `count` unit vectors by normalizing Gaussian directions.

    Deterministic for a fixed (space, count, seed).  Directions with
    pathologically small Euclidean length are re-drawn.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    dirs = rng.standard_normal((count, space.dim))
    while True:
        tiny = np.sqrt(np.einsum("ij,ij->i", dirs, dirs)) < 1e-8
        if not tiny.any():
            break
        dirs[tiny] = rng.standard_normal((int(tiny.sum()), space.dim))
    units = dirs / space.norm_many(dirs)[:, None]
    return UnitSample(points=units, seed=seed)


def catalog_spaces() -> list[NormedSpace]:
    """The built-in test catalog used by verification batteries."""
    return [
        lp_space(1, 2),
        lp_space(2, 2),
        lp_space(3, 2),
        lp_space(math.inf, 2),
        l1_linf_space(),
        weighted_c0_space(2),
        weighted_c0_space(3),
    ]
