"""Estimators for geometric constants of normed spaces.

The central objective is the sphere-restricted skew ratio

    f(x, y) = (||xi x + nu y||^p + ||nu x - xi y||^p)
              / (2^(p-1) (xi^p + nu^p)),   x, y on the unit sphere,

whose supremum is the skew constant of the space.  Also provided: the
unrestricted variant (pairs ranging over the whole space), the symmetric
xi = nu case, the James constant sup min(||x+y||, ||x-y||), the modulus of
convexity, its characteristic of convexity, and the two related constants
obtained by fixing p = 2.

Three search strategies, dispatched on the space:

* extreme-point enumeration -- exact and certified: the objective is convex
  in each argument, so its supremum over the ball is attained at extreme
  points, and for unit-norm extreme points the sphere supremum agrees;
* dense 2-d angular grid plus derivative-free golden-section refinement;
* seeded multistart coordinate descent in hyperspherical angles (dim >= 3).

Every estimator is deterministic given (space, params, opts, seed): each
multistart start derives its own substream from (seed, start index), so the
result does not depend on evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .spaces import NormedSpace, as_vector

__all__ = [
    "SkewParams",
    "Witness",
    "Estimate",
    "ConvexityEstimate",
    "SearchOptions",
    "skew_nj_objective",
    "james_objective",
    "extreme_point_supremum",
    "estimate_skew_nj",
    "estimate_skew_nj_global",
    "estimate_gen_nj_tilde",
    "estimate_james",
    "estimate_convexity_modulus",
    "estimate_convexity_characteristic",
    "estimate_lyj",
]

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


# ---------------------------------------------------------------------------
# parameter and result types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SkewParams:
    """Skew weights (xi, nu) and exponent p for the skew ratio."""

    xi: float
    nu: float
    p: float

    def __post_init__(self):
        for label, v in (("xi", self.xi), ("nu", self.nu)):
            if not (math.isfinite(v) and v > 0.0):
                raise ValueError(f"{label} must be finite and > 0, got {v}")
        if not (math.isfinite(self.p) and self.p >= 1.0):
            raise ValueError(f"p must be finite and >= 1, got {self.p}")

    @property
    def q(self) -> float | None:
        """Conjugate exponent 1/p + 1/q = 1; None at p = 1."""
        if self.p == 1.0:
            return None
        return self.p / (self.p - 1.0)


@dataclass
class Witness:
    """A pair of vectors achieving (or approaching) an estimated value.

    For sphere-restricted constants both vectors are unit vectors.  For the
    unrestricted constant, y carries the optimal scale t in [0, 1] directly
    (||y|| = t), so the objective re-evaluates from the stored pair alone.
    """

    x: np.ndarray
    y: np.ndarray
    value: float


@dataclass
class Estimate:
    """An estimated supremum with provenance.

    certified is True only for extreme-point enumeration over a sphere
    objective, where the convexity argument makes the maximum exact.
    resolution is the final search window (0 for enumeration); evaluations
    counts objective evaluations.
    """

    value: float
    witness: Witness
    method: str  # 'extreme_point' | 'grid2d' | 'multistart'
    evaluations: int
    resolution: float
    certified: bool


@dataclass
class ConvexityEstimate:
    """Estimated modulus of convexity at a given eps, with its witness pair."""

    eps: float
    delta: float
    witness: Witness


@dataclass(frozen=True)
class SearchOptions:
    """Tuning knobs shared by the estimators (all deterministic)."""

    grid_steps: int = 720          # angular resolution of the 2-d coarse grid
    step_tol: float = 1e-10        # terminal half-width of refinement windows
    starts: int = 64               # multistart count
    max_iters: int = 500           # line-search cap per multistart run
    refine_candidates: int = 5     # grid local maxima refined per estimate
    golden_iters: int = 16         # golden iterations per vectorized search
    t_steps: int = 33              # scale grid for the unrestricted constant
    zoom_points: int = 17          # local grid size in constrained refinement
    zero_tol: float = 1e-7         # threshold for "the modulus vanishes"
    eps0_resolution: float = 1e-4  # bisection resolution for eps_0


_DEFAULT_OPTS = SearchOptions()


class _Counter:
    __slots__ = ("n",)

    def __init__(self):
        self.n = 0

    def add(self, k: int = 1):
        self.n += k


# ---------------------------------------------------------------------------
# objectives
# ---------------------------------------------------------------------------


def _skew_pair_values(space, params, X, Y) -> np.ndarray:
    """Skew ratio on stacked unit pairs, shapes (n, dim) -> (n,)."""
    xi, nu, p = params.xi, params.nu, params.p
    a = space.norm_many(xi * X + nu * Y) ** p
    b = space.norm_many(nu * X - xi * Y) ** p
    return (a + b) / (2.0 ** (p - 1.0) * (xi**p + nu**p))


def _global_pair_values(space, params, X, Yunit, t) -> np.ndarray:
    """Unrestricted ratio at pairs (x, t * y_unit) with ||x|| = 1.

    t may be a scalar or a per-row array in [0, 1]; the denominator uses
    ||x||^p + ||y||^p = 1 + t^p exactly.
    """
    xi, nu, p = params.xi, params.nu, params.p
    t = np.asarray(t, dtype=float)
    Ys = Yunit * (t[..., None] if t.ndim else t)
    a = space.norm_many(xi * X + nu * Ys) ** p
    b = space.norm_many(nu * X - xi * Ys) ** p
    den = 2.0 ** (p - 2.0) * (xi**p + nu**p) * (1.0 + t**p)
    return (a + b) / den


def _check_unit(space, v, label):
    if abs(space.norm(v) - 1.0) > space.tol_norm:
        raise ValueError(f"{label} is not a unit vector (within {space.tol_norm})")


def skew_nj_objective(space: NormedSpace, params: SkewParams, x, y) -> float:
    """Skew ratio at a single unit pair; errors on non-unit inputs."""
    xv = as_vector(x, space.dim)
    yv = as_vector(y, space.dim)
    _check_unit(space, xv, "x")
    _check_unit(space, yv, "y")
    return float(_skew_pair_values(space, params, xv[None, :], yv[None, :])[0])


def james_objective(space: NormedSpace, x, y) -> float:
    """min(||x+y||, ||x-y||) at a single unit pair."""
    xv = as_vector(x, space.dim)
    yv = as_vector(y, space.dim)
    _check_unit(space, xv, "x")
    _check_unit(space, yv, "y")
    return min(space.norm(xv + yv), space.norm(xv - yv))


# ---------------------------------------------------------------------------
# cached sphere grids (2-d)
# ---------------------------------------------------------------------------


def _sphere_units(space, steps):
    """Angular grid of unit vectors, cached per (space, steps)."""
    key = ("units", steps)
    if key not in space._memo:
        thetas = np.linspace(0.0, 2.0 * np.pi, steps, endpoint=False)
        dirs = np.column_stack([np.cos(thetas), np.sin(thetas)])
        units = dirs / space.norm_many(dirs)[:, None]
        space._memo[key] = (thetas, units)
    return space._memo[key]


def _mesh_pairs(space, steps):
    """All ordered grid pairs as stacked arrays (steps^2, 2).  Not cached:
    transient buffers, rebuilt per mesh to bound memory."""
    _, U = _sphere_units(space, steps)
    X = np.repeat(U, steps, axis=0)
    Y = np.tile(U, (steps, 1))
    return X, Y


def _sum_diff_mesh(space, steps):
    """||x+y|| and ||x-y|| on the full angular grid, cached per space.

    Shared by the symmetric skew mesh, the James mesh, and every modulus
    evaluation, so a parameter sweep pays for the grid once.
    """
    key = ("sumdiff", steps)
    if key not in space._memo:
        X, Y = _mesh_pairs(space, steps)
        S = space.norm_many(X + Y).reshape(steps, steps)
        D = space.norm_many(X - Y).reshape(steps, steps)
        space._memo[key] = (S, D)
    return space._memo[key]


def _skew_mesh(space, params, steps) -> np.ndarray:
    if params.xi == params.nu:
        # ||xi(x+y)|| = xi ||x+y||: reuse the shared mesh
        S, D = _sum_diff_mesh(space, steps)
        xi, p = params.xi, params.p
        num = (xi * S) ** p + (xi * D) ** p
        return num / (2.0 ** (p - 1.0) * (params.xi**p + params.nu**p))
    X, Y = _mesh_pairs(space, steps)
    return _skew_pair_values(space, params, X, Y).reshape(steps, steps)


def _unit_from_theta(space, theta: float) -> np.ndarray:
    d = np.array([math.cos(theta), math.sin(theta)])
    return d / space.norm(d)


# ---------------------------------------------------------------------------
# derivative-free search primitives
# ---------------------------------------------------------------------------


def _golden_max(f, lo, hi, tol, counter: _Counter):
    """Scalar golden-section maximization tracking the best probe seen."""
    a, b = float(lo), float(hi)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    counter.add(2)
    if fc >= fd:
        best_x, best_f = c, fc
    else:
        best_x, best_f = d, fd
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
            counter.add()
            if fc > best_f:
                best_x, best_f = c, fc
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
            counter.add()
            if fd > best_f:
                best_x, best_f = d, fd
    return best_x, best_f


def _cyclic_refine(f, coords, half_widths, step_tol, counter, clips=None):
    """Maximize f(*coords) by golden sections per coordinate on windows that
    halve each sweep.  Only improving moves are accepted, so the result is
    never worse than the starting point."""
    coords = [float(c) for c in coords]
    h = [float(w) for w in half_widths]
    best = f(*coords)
    counter.add()
    while max(h) > step_tol:
        for j in range(len(coords)):
            lo, hi = coords[j] - h[j], coords[j] + h[j]
            if clips is not None and clips[j] is not None:
                lo = max(lo, clips[j][0])
                hi = min(hi, clips[j][1])
                if hi - lo <= 0.0:
                    continue

            def fj(t, j=j):
                c = list(coords)
                c[j] = t
                return f(*c)

            x, fx = _golden_max(fj, lo, hi, max(h[j] * 0.02, step_tol * 0.1), counter)
            if fx > best:
                best = fx
                coords[j] = x
        h = [v * 0.5 for v in h]
    return coords, best, max(h)


def _top_cells(vals: np.ndarray, k: int, sep: int):
    """Indices of up to k local-maximum cells, pairwise separated on the
    torus by more than `sep` cells in at least one axis."""
    n0, n1 = vals.shape
    order = np.argsort(vals, axis=None)[::-1]
    chosen: list[tuple[int, int]] = []
    for idx in order[: max(400, 80 * k)]:
        i, j = divmod(int(idx), n1)
        crowded = False
        for ci, cj in chosen:
            di = min(abs(i - ci), n0 - abs(i - ci))
            dj = min(abs(j - cj), n1 - abs(j - cj))
            if di <= sep and dj <= sep:
                crowded = True
                break
        if not crowded:
            chosen.append((i, j))
            if len(chosen) == k:
                break
    return chosen


def _golden_max_vec(f, lo, hi, iters, counter):
    """Vectorized golden-section maximization: one bracket per row of lo/hi.

    f maps an array of probe positions (s,) to objective values (s,).
    Returns the best probe and value per row.
    """
    a = np.array(lo, dtype=float)
    b = np.array(hi, dtype=float)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    counter.add(2 * a.size)
    best_x = np.where(fc >= fd, c, d)
    best_f = np.maximum(fc, fd)
    for _ in range(iters):
        take = fc >= fd  # keep [a, d] where True, [c, b] where False
        b = np.where(take, d, b)
        a = np.where(take, a, c)
        nc = b - _INVPHI * (b - a)
        nd = a + _INVPHI * (b - a)
        probe = np.where(take, nc, nd)
        fp = f(probe)
        counter.add(a.size)
        c_next = np.where(take, nc, d)
        d_next = np.where(take, c, nd)
        fc_next = np.where(take, fp, fd)
        fd_next = np.where(take, fc, fp)
        c, d, fc, fd = c_next, d_next, fc_next, fd_next
        gain = fp > best_f
        best_x = np.where(gain, probe, best_x)
        best_f = np.where(gain, fp, best_f)
    return best_x, best_f


def _dirs_from_angles(A: np.ndarray, dim: int) -> np.ndarray:
    """Hyperspherical angles (s, dim-1) -> Euclidean-unit directions (s, dim)."""
    s = A.shape[0]
    out = np.empty((s, dim))
    prod = np.ones(s)
    for i in range(dim - 1):
        out[:, i] = prod * np.cos(A[:, i])
        prod = prod * np.sin(A[:, i])
    out[:, -1] = prod
    return out


def _multistart_max(f_matrix, n_coords, init, opts, counter, clips=None):
    """Coordinate descent over many starts at once.

    f_matrix maps a (starts, n_coords) matrix to (starts,) values.  Windows
    shrink geometrically; only improving moves are accepted per start.
    Returns (best_coords, best_value, final_window).
    """
    A = np.array(init, dtype=float)
    fcur = f_matrix(A)
    counter.add(A.shape[0])
    w = math.pi / 2.0
    searches = 0
    while w > opts.step_tol and searches < opts.max_iters:
        for j in range(n_coords):
            lo = A[:, j] - w
            hi = A[:, j] + w
            if clips is not None and clips[j] is not None:
                lo = np.maximum(lo, clips[j][0])
                hi = np.minimum(hi, clips[j][1])

            def fj(t, j=j):
                B = A.copy()
                B[:, j] = t
                return f_matrix(B)

            x, fx = _golden_max_vec(fj, lo, hi, opts.golden_iters, counter)
            better = fx > fcur
            A[better, j] = x[better]
            fcur = np.where(better, fx, fcur)
            searches += 1
            if searches >= opts.max_iters:
                break
        w *= 0.6
    k = int(np.argmax(fcur))
    return A[k], float(fcur[k]), w


def _multistart_init(seed, starts, n_coords, scales):
    """Deterministic start matrix: row k comes from substream (seed, k)."""
    rows = []
    for k in range(starts):
        rng = np.random.default_rng([seed, k])
        rows.append(rng.uniform(0.0, 1.0, n_coords) * np.asarray(scales))
    return np.array(rows)


# ---------------------------------------------------------------------------
# estimate memoization
# ---------------------------------------------------------------------------


def _memoized(space, key, builder):
    if key not in space._memo:
        space._memo[key] = builder()
    return space._memo[key]


def _opts_key(opts: SearchOptions):
    return opts  # frozen dataclass, hashable


# ---------------------------------------------------------------------------
# sphere-restricted skew constant
# ---------------------------------------------------------------------------


def extreme_point_supremum(space: NormedSpace, params: SkewParams) -> Estimate:
    """Exact skew value by enumerating ordered extreme-point pairs.

    Valid because the objective is convex in each argument separately, so
    its maximum over the ball is attained at extreme points, which all lie
    on the sphere.  Errors when the space has no finite extreme point set.
    """
    E = space.extreme_points()
    if E is None:
        raise ValueError(f"{space.name}: no finite extreme point set")

    def build():
        m = len(E)
        X = np.repeat(E, m, axis=0)
        Y = np.tile(E, (m, 1))
        vals = _skew_pair_values(space, params, X, Y)
        k = int(np.argmax(vals))
        x, y = X[k].copy(), Y[k].copy()
        value = skew_nj_objective(space, params, x, y)
        wit = Witness(x=x, y=y, value=value)
        return Estimate(
            value=value,
            witness=wit,
            method="extreme_point",
            evaluations=m * m,
            resolution=0.0,
            certified=True,
        )

    return _memoized(space, ("skew_ext", params), build)


def _skew_grid2d(space, params, opts) -> Estimate:
    steps = opts.grid_steps
    counter = _Counter()
    vals = _skew_mesh(space, params, steps)
    counter.add(steps * steps)
    thetas, _ = _sphere_units(space, steps)
    cell = 2.0 * math.pi / steps

    def scalar(tx, ty):
        x = _unit_from_theta(space, tx)
        y = _unit_from_theta(space, ty)
        return float(_skew_pair_values(space, params, x[None, :], y[None, :])[0])

    best_val = -math.inf
    best_coords = (0.0, 0.0)
    resolution = cell
    for i, j in _top_cells(vals, opts.refine_candidates, 3):
        coords, v, h = _cyclic_refine(
            scalar, [thetas[i], thetas[j]], [cell, cell], opts.step_tol, counter
        )
        if v > best_val:
            best_val = v
            best_coords = (coords[0], coords[1])
            resolution = h
    x = _unit_from_theta(space, best_coords[0])
    y = _unit_from_theta(space, best_coords[1])
    value = skew_nj_objective(space, params, x, y)
    wit = Witness(x=x, y=y, value=value)
    return Estimate(
        value=value,
        witness=wit,
        method="grid2d",
        evaluations=counter.n,
        resolution=resolution,
        certified=False,
    )


def _skew_multistart(space, params, opts, seed) -> Estimate:
    na = space.dim - 1
    counter = _Counter()

    def f_matrix(A):
        DX = _dirs_from_angles(A[:, :na], space.dim)
        DY = _dirs_from_angles(A[:, na:], space.dim)
        X = DX / space.norm_many(DX)[:, None]
        Y = DY / space.norm_many(DY)[:, None]
        return _skew_pair_values(space, params, X, Y)

    init = _multistart_init(seed, opts.starts, 2 * na, [2.0 * math.pi] * (2 * na))
    coords, _, w = _multistart_max(f_matrix, 2 * na, init, opts, counter)
    A = coords[None, :]
    x = _dirs_from_angles(A[:, :na], space.dim)[0]
    y = _dirs_from_angles(A[:, na:], space.dim)[0]
    x = x / space.norm(x)
    y = y / space.norm(y)
    value = skew_nj_objective(space, params, x, y)
    wit = Witness(x=x, y=y, value=value)
    return Estimate(
        value=value,
        witness=wit,
        method="multistart",
        evaluations=counter.n,
        resolution=w,
        certified=False,
    )


def estimate_skew_nj(
    space: NormedSpace,
    params: SkewParams,
    opts: SearchOptions | None = None,
    seed: int = 0,
    method: str = "auto",
) -> Estimate:
    """Estimate the sphere-restricted skew constant.

    Dispatch: certified extreme-point enumeration when the unit ball has a
    finite vertex set, a dense angular grid with golden-section refinement
    in dimension 2, multistart coordinate descent otherwise.  `method`
    forces one strategy ('extreme', 'grid', 'multistart').
    """
    opts = opts or _DEFAULT_OPTS
    if method == "auto":
        if space.extreme_points() is not None:
            method = "extreme"
        elif space.dim == 2:
            method = "grid"
        else:
            method = "multistart"
    if method == "extreme":
        return extreme_point_supremum(space, params)
    if method == "grid":
        if space.dim != 2:
            raise ValueError("grid search requires dimension 2")
        return _memoized(
            space,
            ("skew_grid", params, _opts_key(opts)),
            lambda: _skew_grid2d(space, params, opts),
        )
    if method == "multistart":
        return _memoized(
            space,
            ("skew_ms", params, _opts_key(opts), seed),
            lambda: _skew_multistart(space, params, opts, seed),
        )
    raise ValueError(f"unknown method {method!r}")


def estimate_gen_nj_tilde(
    space: NormedSpace,
    p: float,
    opts: SearchOptions | None = None,
    seed: int = 0,
) -> Estimate:
    """The symmetric sphere constant: the skew estimate at xi = nu = 1."""
    return estimate_skew_nj(space, SkewParams(1.0, 1.0, p), opts=opts, seed=seed)


# ---------------------------------------------------------------------------
# unrestricted constant
# ---------------------------------------------------------------------------


def _global_scalar(space, params):
    def g(tx, ty, t):
        x = _unit_from_theta(space, tx)
        yu = _unit_from_theta(space, ty)
        return float(_global_pair_values(space, params, x[None, :], yu[None, :], t)[0])

    return g


def _global_from_vertices(space, params, opts) -> Estimate:
    E = space.extreme_points()
    m = len(E)
    X = np.repeat(E, m, axis=0)
    Yu = np.tile(E, (m, 1))
    counter = _Counter()
    ts = np.linspace(0.0, 1.0, opts.t_steps)
    best = (-math.inf, 0, 0.0)  # value, pair index, t
    for t in ts:
        vals = _global_pair_values(space, params, X, Yu, float(t))
        counter.add(m * m)
        k = int(np.argmax(vals))
        if vals[k] > best[0]:
            best = (float(vals[k]), k, float(t))
    _, k, t0 = best
    x, yu = X[k], Yu[k]
    dt = 1.0 / (opts.t_steps - 1)

    def g(t):
        return float(_global_pair_values(space, params, x[None, :], yu[None, :], t)[0])

    lo, hi = max(0.0, t0 - dt), min(1.0, t0 + dt)
    t_best, v_best = _golden_max(g, lo, hi, opts.step_tol, counter)
    if g(t0) >= v_best:
        t_best, v_best = t0, g(t0)
    y = t_best * yu
    value = g(t_best)
    wit = Witness(x=x.copy(), y=y.copy(), value=value)
    return Estimate(
        value=value,
        witness=wit,
        method="extreme_point",
        evaluations=counter.n,
        resolution=opts.step_tol,
        certified=False,  # the scale t is searched, not enumerated
    )


def _global_grid2d(space, params, opts) -> Estimate:
    steps = opts.grid_steps
    counter = _Counter()
    X, Yu = _mesh_pairs(space, steps)
    thetas, _ = _sphere_units(space, steps)
    ts = np.linspace(0.0, 1.0, opts.t_steps)
    best = (-math.inf, 0, 0.0)
    for t in ts:
        vals = _global_pair_values(space, params, X, Yu, float(t))
        counter.add(steps * steps)
        k = int(np.argmax(vals))
        if vals[k] > best[0]:
            best = (float(vals[k]), k, float(t))
    _, k, t0 = best
    i, j = divmod(k, steps)
    cell = 2.0 * math.pi / steps
    dt = 1.0 / (opts.t_steps - 1)
    g = _global_scalar(space, params)
    coords, value, h = _cyclic_refine(
        g,
        [thetas[i], thetas[j], t0],
        [cell, cell, dt],
        opts.step_tol,
        counter,
        clips=[None, None, (0.0, 1.0)],
    )
    x = _unit_from_theta(space, coords[0])
    yu = _unit_from_theta(space, coords[1])
    t = coords[2]
    value = g(coords[0], coords[1], t)
    wit = Witness(x=x, y=t * yu, value=value)
    return Estimate(
        value=value,
        witness=wit,
        method="grid2d",
        evaluations=counter.n,
        resolution=h,
        certified=False,
    )


def _global_multistart(space, params, opts, seed) -> Estimate:
    na = space.dim - 1
    n_coords = 2 * na + 1
    counter = _Counter()

    def f_matrix(A):
        DX = _dirs_from_angles(A[:, :na], space.dim)
        DY = _dirs_from_angles(A[:, na : 2 * na], space.dim)
        X = DX / space.norm_many(DX)[:, None]
        Yu = DY / space.norm_many(DY)[:, None]
        t = np.clip(A[:, -1], 0.0, 1.0)
        return _global_pair_values(space, params, X, Yu, t)

    scales = [2.0 * math.pi] * (2 * na) + [1.0]
    init = _multistart_init(seed, opts.starts, n_coords, scales)
    clips = [None] * (2 * na) + [(0.0, 1.0)]
    coords, _, w = _multistart_max(f_matrix, n_coords, init, opts, counter, clips)
    A = coords[None, :]
    x = _dirs_from_angles(A[:, :na], space.dim)[0]
    yu = _dirs_from_angles(A[:, na : 2 * na], space.dim)[0]
    x = x / space.norm(x)
    yu = yu / space.norm(yu)
    t = float(np.clip(coords[-1], 0.0, 1.0))
    value = float(_global_pair_values(space, params, x[None, :], yu[None, :], t)[0])
    wit = Witness(x=x, y=t * yu, value=value)
    return Estimate(
        value=value,
        witness=wit,
        method="multistart",
        evaluations=counter.n,
        resolution=w,
        certified=False,
    )


def estimate_skew_nj_global(
    space: NormedSpace,
    params: SkewParams,
    opts: SearchOptions | None = None,
    seed: int = 0,
) -> Estimate:
    """Estimate the unrestricted skew constant (pairs over the whole space).

    By homogeneity and the swap symmetry (x, y) -> (y, -x) the search
    reduces to ||x|| = 1, ||y|| = t in [0, 1].  For fixed t the objective is
    convex in each vector, so on polyhedral balls the vector search is an
    exact vertex enumeration and only the scale t is searched numerically;
    the result is therefore accurate but not marked certified.
    """
    opts = opts or _DEFAULT_OPTS
    if space.extreme_points() is not None:
        return _memoized(
            space,
            ("glob_ext", params, _opts_key(opts)),
            lambda: _global_from_vertices(space, params, opts),
        )
    if space.dim == 2:
        return _memoized(
            space,
            ("glob_grid", params, _opts_key(opts)),
            lambda: _global_grid2d(space, params, opts),
        )
    return _memoized(
        space,
        ("glob_ms", params, _opts_key(opts), seed),
        lambda: _global_multistart(space, params, opts, seed),
    )


# ---------------------------------------------------------------------------
# James constant
# ---------------------------------------------------------------------------


def _james_grid2d(space, opts) -> Estimate:
    steps = opts.grid_steps
    counter = _Counter()
    S, D = _sum_diff_mesh(space, steps)
    counter.add(steps * steps)
    vals = np.minimum(S, D)
    thetas, _ = _sphere_units(space, steps)
    cell = 2.0 * math.pi / steps

    def scalar(tx, ty):
        x = _unit_from_theta(space, tx)
        y = _unit_from_theta(space, ty)
        return min(space.norm(x + y), space.norm(x - y))

    best_val = -math.inf
    best_pair = None
    resolution = cell
    for i, j in _top_cells(vals, opts.refine_candidates, 3):
        coords, v, h = _cyclic_refine(
            scalar, [thetas[i], thetas[j]], [cell, cell], opts.step_tol, counter
        )
        if v > best_val:
            best_val = v
            best_pair = (
                _unit_from_theta(space, coords[0]),
                _unit_from_theta(space, coords[1]),
            )
            resolution = h
    # Vertex pairs are exact sphere points; keep them when they win.  They
    # do not certify the value: on some polyhedral balls the James maximum
    # is attained strictly between vertices.
    E = space.extreme_points()
    if E is not None:
        m = len(E)
        X = np.repeat(E, m, axis=0)
        Y = np.tile(E, (m, 1))
        vv = np.minimum(space.norm_many(X + Y), space.norm_many(X - Y))
        counter.add(m * m)
        k = int(np.argmax(vv))
        if vv[k] > best_val:
            best_val = float(vv[k])
            best_pair = (X[k].copy(), Y[k].copy())
            resolution = 0.0
    x, y = best_pair
    value = james_objective(space, x, y)
    wit = Witness(x=x, y=y, value=value)
    return Estimate(
        value=value,
        witness=wit,
        method="grid2d",
        evaluations=counter.n,
        resolution=resolution,
        certified=False,
    )


def _james_multistart(space, opts, seed) -> Estimate:
    na = space.dim - 1
    counter = _Counter()

    def f_matrix(A):
        DX = _dirs_from_angles(A[:, :na], space.dim)
        DY = _dirs_from_angles(A[:, na:], space.dim)
        X = DX / space.norm_many(DX)[:, None]
        Y = DY / space.norm_many(DY)[:, None]
        return np.minimum(space.norm_many(X + Y), space.norm_many(X - Y))

    init = _multistart_init(seed, opts.starts, 2 * na, [2.0 * math.pi] * (2 * na))
    coords, _, w = _multistart_max(f_matrix, 2 * na, init, opts, counter)
    A = coords[None, :]
    x = _dirs_from_angles(A[:, :na], space.dim)[0]
    y = _dirs_from_angles(A[:, na:], space.dim)[0]
    x = x / space.norm(x)
    y = y / space.norm(y)
    value = james_objective(space, x, y)
    wit = Witness(x=x, y=y, value=value)
    return Estimate(
        value=value,
        witness=wit,
        method="multistart",
        evaluations=counter.n,
        resolution=w,
        certified=False,
    )


def estimate_james(
    space: NormedSpace,
    opts: SearchOptions | None = None,
    seed: int = 0,
) -> Estimate:
    """Estimate the James constant sup min(||x+y||, ||x-y||) on unit pairs.

    Always uncertified: the min of two convex functions is not convex, so
    extreme-point enumeration does not apply (and provably misses the
    maximum on the hexagonal-ball space).  Vertex pairs are still used as
    extra candidates when available.
    """
    opts = opts or _DEFAULT_OPTS
    if space.dim == 2:
        return _memoized(
            space, ("james_grid", _opts_key(opts)), lambda: _james_grid2d(space, opts)
        )
    return _memoized(
        space,
        ("james_ms", _opts_key(opts), seed),
        lambda: _james_multistart(space, opts, seed),
    )


# ---------------------------------------------------------------------------
# modulus of convexity
# ---------------------------------------------------------------------------


_FEAS_TOL = 1e-12  # slack on the ||x - y|| >= eps constraint


def _delta_grid2d(space, eps, opts) -> ConvexityEstimate:
    steps = opts.grid_steps
    thetas, _ = _sphere_units(space, steps)
    S, D = _sum_diff_mesh(space, steps)
    feas = D >= eps - _FEAS_TOL
    masked = np.where(feas, 1.0 - S / 2.0, np.inf)
    k = int(np.argmin(masked))
    i, j = divmod(k, steps)
    tx, ty = float(thetas[i]), float(thetas[j])
    best = float(masked[i, j])
    h = 2.0 * math.pi / steps
    n = opts.zoom_points

    # local zoom: fresh masked grids on shrinking windows around the argmin
    while h > 1e-10:
        gx = tx + np.linspace(-h, h, n)
        gy = ty + np.linspace(-h, h, n)
        dx = np.column_stack([np.cos(gx), np.sin(gx)])
        dy = np.column_stack([np.cos(gy), np.sin(gy)])
        ux = dx / space.norm_many(dx)[:, None]
        uy = dy / space.norm_many(dy)[:, None]
        X = np.repeat(ux, n, axis=0)
        Y = np.tile(uy, (n, 1))
        Dl = space.norm_many(X - Y)
        Sl = space.norm_many(X + Y)
        vloc = np.where(Dl >= eps - _FEAS_TOL, 1.0 - Sl / 2.0, np.inf)
        kk = int(np.argmin(vloc))
        if vloc[kk] <= best:
            best = float(vloc[kk])
            tx = float(gx[kk // n])
            ty = float(gy[kk % n])
        h *= 0.45

    x = _unit_from_theta(space, tx)
    y = _unit_from_theta(space, ty)

    # boundary polish: on ties, prefer a witness with ||x - y|| = eps
    def gap(t):
        return space.norm(x - _unit_from_theta(space, t)) - eps

    g0 = gap(ty)
    if g0 > 1e-13:
        span = 1e-4
        t_in = None
        for sgn in (1.0, -1.0):
            t_try = ty
            for _ in range(12):
                t_try += sgn * span
                if gap(t_try) < 0.0:
                    t_in = t_try
                    break
            if t_in is not None:
                break
        if t_in is not None:
            a, b = ty, t_in  # gap(a) >= 0 > gap(b)
            for _ in range(80):
                mid = 0.5 * (a + b)
                if gap(mid) >= 0.0:
                    a = mid
                else:
                    b = mid
            yb = _unit_from_theta(space, a)
            vb = 1.0 - space.norm(x + yb) / 2.0
            if vb <= best + 1e-12:
                best = min(best, vb)
                ty, y = a, yb

    delta = max(best, 0.0)
    return ConvexityEstimate(eps=eps, delta=delta, witness=Witness(x=x, y=y, value=delta))


def _delta_multistart(space, eps, opts, seed) -> ConvexityEstimate:
    na = space.dim - 1
    n_coords = 2 * na

    def f_matrix(A):
        DX = _dirs_from_angles(A[:, :na], space.dim)
        DY = _dirs_from_angles(A[:, na:], space.dim)
        X = DX / space.norm_many(DX)[:, None]
        Y = DY / space.norm_many(DY)[:, None]
        gap = space.norm_many(X - Y)
        vals = 1.0 - space.norm_many(X + Y) / 2.0
        return np.where(gap >= eps - _FEAS_TOL, vals, np.inf)

    # seed half the starts at exact antipodes (always feasible: ||x+x|| = 2),
    # the rest jittered; a +pi shift of the first angle negates the direction
    base = _multistart_init(seed, opts.starts, na, [2.0 * math.pi] * na)
    A = np.empty((opts.starts, n_coords))
    A[:, :na] = base
    A[:, na:] = base
    A[:, na] += math.pi
    jitter = np.array(
        [np.random.default_rng([seed, k, 1]).normal(0.0, 0.2, na) for k in range(opts.starts)]
    )
    half = opts.starts // 2
    A[half:, na:] += jitter[half:]

    fcur = f_matrix(A)
    w = math.pi / 2.0
    scan = 25
    searches = 0
    while w > 1e-9 and searches < opts.max_iters:
        for j in range(n_coords):
            offs = np.linspace(-w, w, scan)
            for o in offs:
                B = A.copy()
                B[:, j] += o
                fb = f_matrix(B)
                better = fb < fcur
                A[better, j] += o
                fcur = np.where(better, fb, fcur)
            searches += 1
            if searches >= opts.max_iters:
                break
        w *= 0.6
    k = int(np.argmin(fcur))
    coords = A[k]
    x = _dirs_from_angles(coords[None, :na], space.dim)[0]
    y = _dirs_from_angles(coords[None, na:], space.dim)[0]
    x = x / space.norm(x)
    y = y / space.norm(y)
    delta = max(float(fcur[k]), 0.0)
    return ConvexityEstimate(eps=eps, delta=delta, witness=Witness(x=x, y=y, value=delta))


def estimate_convexity_modulus(
    space: NormedSpace,
    eps: float,
    opts: SearchOptions | None = None,
    seed: int = 0,
) -> ConvexityEstimate:
    """Estimate the modulus of convexity

        delta(eps) = inf { 1 - ||x+y||/2 : x, y unit, ||x-y|| >= eps }.

    In dimension 2 a cached angular pair mesh is masked by the constraint
    and the argmin refined on shrinking local grids, with a final bisection
    onto the constraint boundary; higher dimensions use a feasible-start
    multistart scan.  delta(0) = 0 exactly (witness y = x).
    """
    if not (0.0 <= eps <= 2.0):
        raise ValueError("eps must lie in [0, 2]")
    opts = opts or _DEFAULT_OPTS
    if eps == 0.0:
        x = _unit_from_theta(space, 0.0) if space.dim == 2 else space.normalize(
            np.eye(space.dim)[0]
        )
        return ConvexityEstimate(eps=0.0, delta=0.0, witness=Witness(x=x, y=x.copy(), value=0.0))

    def build():
        if space.dim == 2:
            return _delta_grid2d(space, eps, opts)
        return _delta_multistart(space, eps, opts, seed)

    return _memoized(space, ("delta", eps, _opts_key(opts), seed), build)


def estimate_convexity_characteristic(
    space: NormedSpace,
    opts: SearchOptions | None = None,
    seed: int = 0,
) -> float:
    """Estimate eps_0 = sup { eps : delta(eps) = 0 } by bisection.

    "Zero" means the delta estimate falls below opts.zero_tol; the result
    is resolved to opts.eps0_resolution.  Returns 2.0 when delta(2) itself
    vanishes (the least convex case).
    """
    opts = opts or _DEFAULT_OPTS

    def delta(e):
        return estimate_convexity_modulus(space, e, opts, seed).delta

    if delta(2.0) <= opts.zero_tol:
        return 2.0
    lo, hi = 0.0, 2.0
    while hi - lo > opts.eps0_resolution:
        mid = 0.5 * (lo + hi)
        if delta(mid) <= opts.zero_tol:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# p = 2 specializations
# ---------------------------------------------------------------------------


def estimate_lyj(
    space: NormedSpace,
    xi: float,
    nu: float,
    mode: str = "sphere",
    opts: SearchOptions | None = None,
    seed: int = 0,
) -> Estimate:
    """The two p = 2 constants: 'sphere' restricts pairs to the unit sphere
    (identical to the skew estimate at p = 2), 'global' ranges over the
    whole space (identical to the unrestricted estimate at p = 2)."""
    params = SkewParams(xi, nu, 2.0)
    if mode == "sphere":
        return estimate_skew_nj(space, params, opts=opts, seed=seed)
    if mode == "global":
        return estimate_skew_nj_global(space, params, opts=opts, seed=seed)
    raise ValueError(f"unknown mode {mode!r} (expected 'sphere' or 'global')")
