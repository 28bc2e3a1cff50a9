"""Delone point sets: generation, geometric certification, pattern counting.

All cube geometry uses the sup-norm: Lambda_L(y) is the open cube of side
L centred at y, and distances between points are max-coordinate distances.
Supported generators are the hypercubic lattice q*Z^d, a bounded random
perturbation of it, and the two-spacing annulus construction whose pattern
frequencies oscillate between the two lattice densities.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from itertools import product

import numpy as np
from scipy.spatial import cKDTree

LATTICE = "lattice"
PERTURBED = "perturbed_lattice"
ANNULUS = "annulus_example"


@dataclass(frozen=True)
class PointSetSpec:
    """Rule describing an infinite point set, materializable in any window."""

    kind: str
    d: int
    q: float = 1.0
    max_shift: float = 0.0
    shift_seed: int = 0
    q1: int = 1
    q2: int = 2
    annulus_alpha: float = 2.0
    L1: float = 8.0

    def __post_init__(self):
        if self.d not in (1, 2, 3):
            raise ValueError(f"dimension d={self.d} not in (1, 2, 3)")
        if self.kind in (LATTICE, PERTURBED):
            if self.q <= 0:
                raise ValueError("lattice spacing q must be > 0")
        if self.kind == PERTURBED:
            if not 0 <= self.max_shift < self.q / 2:
                raise ValueError("max_shift must lie in [0, q/2)")
        elif self.kind == ANNULUS:
            if int(self.q1) != self.q1 or int(self.q2) != self.q2 or self.q1 < 1 or self.q2 < 1:
                raise ValueError("annulus spacings q1, q2 must be positive integers")
            if self.q1 == self.q2:
                raise ValueError("annulus_example requires q1 != q2")
            if self.annulus_alpha <= 1:
                raise ValueError("annulus growth exponent must exceed 1")
            if self.L1 <= 1:
                raise ValueError("annulus initial side L1 must exceed 1")
        elif self.kind != LATTICE:
            raise ValueError(f"unknown point-set kind {self.kind!r}")

    @property
    def label(self) -> str:
        if self.kind == LATTICE:
            return f"lattice(q={self.q},d={self.d})"
        if self.kind == PERTURBED:
            return f"perturbed(q={self.q},s={self.max_shift},seed={self.shift_seed},d={self.d})"
        return (
            f"annulus(q1={self.q1},q2={self.q2},alpha={self.annulus_alpha},"
            f"L1={self.L1},d={self.d})"
        )


def lattice(q: float, d: int) -> PointSetSpec:
    return PointSetSpec(kind=LATTICE, d=d, q=q)


def perturbed_lattice(q: float, max_shift: float, shift_seed: int, d: int) -> PointSetSpec:
    return PointSetSpec(kind=PERTURBED, d=d, q=q, max_shift=max_shift, shift_seed=shift_seed)


def annulus_example(q1: int, q2: int, annulus_alpha: float, L1: float, d: int) -> PointSetSpec:
    return PointSetSpec(kind=ANNULUS, d=d, q1=q1, q2=q2, annulus_alpha=annulus_alpha, L1=L1)


@dataclass(frozen=True)
class Window:
    """Open cube of side `side` centred at `center` (length-d vector)."""

    center: tuple
    side: float

    def __post_init__(self):
        if self.side <= 0:
            raise ValueError("window side must be > 0")
        object.__setattr__(self, "center", tuple(float(c) for c in np.atleast_1d(self.center)))

    @property
    def d(self) -> int:
        return len(self.center)

    def lo(self) -> np.ndarray:
        return np.asarray(self.center) - self.side / 2

    def hi(self) -> np.ndarray:
        return np.asarray(self.center) + self.side / 2

    def contains(self, pts: np.ndarray) -> np.ndarray:
        """Boolean mask of points strictly inside the open cube."""
        pts = np.atleast_2d(pts)
        return np.all((pts > self.lo()) & (pts < self.hi()), axis=1)

    def shifted(self, x) -> "Window":
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return Window(tuple(np.asarray(self.center) + x), self.side)


@dataclass(frozen=True)
class Pattern:
    """Finite point configuration with a compact support cube.

    The support cube of side `support_side` is centred on the bounding-box
    centre of the points and must contain all of them; the anchor (the
    lexicographically smallest point) is the reference that gets matched
    onto candidate points of a set.
    """

    points: np.ndarray
    support_side: float

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        if pts.shape[0] == 0:
            raise ValueError("pattern must contain at least one point")
        order = np.lexsort(pts.T[::-1])
        pts = pts[order]
        if len(np.unique(pts, axis=0)) != len(pts):
            raise ValueError("pattern points must be pairwise distinct")
        object.__setattr__(self, "points", pts)
        if self.support_side <= 0:
            raise ValueError("support_side must be > 0")
        rel = np.abs(pts - self.cube_center)
        if rel.max() > self.support_side / 2 + 1e-12:
            raise ValueError("pattern points exceed the support cube")

    @property
    def anchor(self) -> np.ndarray:
        return self.points[0]

    @property
    def cube_center(self) -> np.ndarray:
        pts = self.points
        return 0.5 * (pts.min(axis=0) + pts.max(axis=0))

    @property
    def relative(self) -> np.ndarray:
        return self.points - self.points[0]


@dataclass(frozen=True)
class DeloneCertificate:
    """Numerically verified (r, R) radii for a materialized window."""

    r_hat: float
    R_hat: float
    window_checked: Window
    probe_spacing: float

    def __post_init__(self):
        if not (0 < self.r_hat <= self.R_hat):
            raise ValueError("certificate requires 0 < r_hat <= R_hat")


def _lexsorted(pts: np.ndarray) -> np.ndarray:
    if len(pts) == 0:
        return pts.reshape(0, pts.shape[1] if pts.ndim == 2 else 1)
    return pts[np.lexsort(pts.T[::-1])]


def _axis_indices(lo: float, hi: float, q: float) -> np.ndarray:
    """Integers k with lo < q*k < hi (strict)."""
    k_lo = math.floor(lo / q) + 1
    k_hi = math.ceil(hi / q) - 1
    ks = np.arange(k_lo, k_hi + 1)
    vals = q * ks
    return ks[(vals > lo) & (vals < hi)]


def _lattice_points(w: Window, q: float) -> np.ndarray:
    lo, hi = w.lo(), w.hi()
    axes = [_axis_indices(lo[a], hi[a], q) for a in range(w.d)]
    if any(len(ax) == 0 for ax in axes):
        return np.empty((0, w.d))
    grids = np.meshgrid(*axes, indexing="ij")
    ks = np.stack([g.ravel() for g in grids], axis=1)
    return q * ks.astype(float)


def annulus_sides(spec: PointSetSpec, up_to: float) -> list[float]:
    """Sides L_1 < L_2 < ... with L_{k+1} = L_k^alpha, until L_k/2 covers `up_to`.

    Each side is computed by direct exponentiation of the previous one, so
    integer alpha keeps the boundary values exact in floating point (shell
    membership of boundary lattice points depends on it).
    """
    sides = [float(spec.L1)]
    while sides[-1] / 2 < up_to:
        if math.log(sides[-1]) * spec.annulus_alpha > 700:
            raise ValueError("annulus window exceeds representable side lengths")
        sides.append(sides[-1] ** spec.annulus_alpha)
    return sides


def _annulus_shell(spec: PointSetSpec, norms: np.ndarray, sides: list[float]) -> np.ndarray:
    """Index k (1-based) of the annulus A_k containing each sup-norm value.

    A_k is the closed cube of side L_k minus the open cube of side L_{k-1};
    boundary points belong to the smaller k.
    """
    arr = np.asarray(sides) / 2
    # smallest k with |x|_inf <= L_k/2
    return np.searchsorted(arr, norms, side="left") + 1


def materialize(spec: PointSetSpec, w: Window) -> np.ndarray:
    """All points of the infinite set strictly inside the open cube, lex-sorted."""
    if w.d != spec.d:
        raise ValueError(f"window dimension {w.d} != spec dimension {spec.d}")
    if spec.kind == LATTICE:
        return _lexsorted(_lattice_points(w, spec.q))
    if spec.kind == PERTURBED:
        # A perturbed point can enter the window from a base point outside it.
        grown = Window(w.center, w.side + 2 * spec.max_shift + 1e-9)
        base = _lattice_points(grown, spec.q)
        if len(base) == 0:
            return np.empty((0, spec.d))
        ks = np.rint(base / spec.q).astype(np.int64)
        pts = base + _lattice_shifts(spec, ks)
        return _lexsorted(pts[w.contains(pts)])
    # annulus construction: shells alternate between the two sublattices,
    # odd shells (including the innermost cube) carry q2, even shells q1
    max_norm = float(np.max(np.abs(np.concatenate([w.lo(), w.hi()]))))
    sides = annulus_sides(spec, max_norm)
    cands = []
    for qi in {int(spec.q1), int(spec.q2)}:
        cands.append(_lattice_points(w, float(qi)))
    pts = np.unique(np.vstack([c for c in cands if len(c)]), axis=0) if cands else np.empty((0, spec.d))
    if len(pts) == 0:
        return pts
    ints = np.rint(pts).astype(np.int64)
    norms = np.max(np.abs(pts), axis=1) if spec.d > 1 else np.abs(pts[:, 0])
    shell = _annulus_shell(spec, norms, sides)
    q_here = np.where(shell % 2 == 0, int(spec.q1), int(spec.q2))
    keep = np.all(ints % q_here[:, None] == 0, axis=1)
    return _lexsorted(pts[keep])


def _lattice_shifts(spec: PointSetSpec, ks: np.ndarray) -> np.ndarray:
    """Deterministic per-site shifts in [-s, s]^d keyed by the lattice index."""
    from . import colouring  # local import; colouring owns the keyed RNG

    n, d = ks.shape
    shifts = np.empty((n, d))
    for a in range(d):
        u = colouring.keyed_uniforms((spec.shift_seed, colouring.STREAM_SHIFT, a), ks)
        shifts[:, a] = spec.max_shift * (2.0 * u - 1.0)
    return shifts


def canonical_index(spec: PointSetSpec, pts: np.ndarray) -> np.ndarray:
    """Integer index of each point in the spec's generating frame.

    Lattice kinds use the lattice index (recoverable because shifts stay
    below q/2); the annulus set is integer-coordinated by construction.
    """
    pts = np.atleast_2d(pts)
    if spec.kind in (LATTICE, PERTURBED):
        return np.rint(pts / spec.q).astype(np.int64)
    return np.rint(pts).astype(np.int64)


def nominal_radii(spec: PointSetSpec) -> tuple[float, float]:
    """A-priori (r, R) for the generator, before numerical certification."""
    if spec.kind == LATTICE:
        return spec.q, 2 * spec.q
    if spec.kind == PERTURBED:
        return spec.q - 2 * spec.max_shift, 2 * spec.q + 2 * spec.max_shift
    qmin, qmax = min(spec.q1, spec.q2), max(spec.q1, spec.q2)
    return float(qmin), 2.0 * qmax


def min_pairwise_gap(pts: np.ndarray) -> float:
    """Minimal pairwise sup-norm distance."""
    pts = np.atleast_2d(pts)
    if len(pts) < 2:
        raise ValueError("need at least two points")
    tree = cKDTree(pts)
    dist, _ = tree.query(pts, k=2, p=np.inf)
    return float(dist[:, 1].min())


def verify_delone(spec: PointSetSpec, w: Window, probe_spacing: float) -> DeloneCertificate:
    """Probe-grid certification of uniform discreteness and relative denseness.

    r_hat is the minimal pairwise gap of the materialized points.  R_hat is
    the smallest integer multiple of r_hat such that every probe point x in
    the shrunken window sees at least one point in the open cube of side
    R_hat around x.  The counting bound L^d/R^d <= |Lambda_L ^ P| <= L^d/r^d
    is checked on interior sub-windows and a violation raises (it would
    indicate a generator bug).
    """
    pts = materialize(spec, w)
    if len(pts) < 2:
        raise ValueError("window too small: fewer than two points materialized")
    r_hat = min_pairwise_gap(pts)
    if probe_spacing > r_hat / 4:
        raise ValueError(
            f"probe_spacing {probe_spacing} exceeds r_hat/4 = {r_hat / 4}"
        )
    tree = cKDTree(pts)
    d = spec.d
    R_hat = None
    for k in range(1, int(math.ceil(w.side / r_hat)) + 1):
        R = k * r_hat
        span = w.side - R
        if span <= 0:
            break
        n_probe = max(2, int(math.ceil(span / probe_spacing)) + 1)
        axis = np.linspace(-span / 2, span / 2, n_probe)
        probes = np.stack(
            [g.ravel() for g in np.meshgrid(*([axis] * d), indexing="ij")], axis=1
        ) + np.asarray(w.center)
        dmin, _ = tree.query(probes, k=1, p=np.inf)
        if np.all(2.0 * dmin < R):
            R_hat = R
            break
    if R_hat is None:
        raise ValueError("relative denseness not certifiable inside this window")

    _check_counting_bound(pts, w, r_hat, R_hat)
    return DeloneCertificate(r_hat=r_hat, R_hat=R_hat, window_checked=w, probe_spacing=probe_spacing)


def _check_counting_bound(pts: np.ndarray, w: Window, r_hat: float, R_hat: float):
    side = 2.0 * R_hat
    if side > w.side:
        return
    d = pts.shape[1]
    offsets = [-0.25 * (w.side - side), 0.0, 0.25 * (w.side - side)]
    for center_off in product(offsets, repeat=d):
        sub = Window(tuple(np.asarray(w.center) + np.asarray(center_off)), side)
        count = int(np.count_nonzero(sub.contains(pts)))
        lo = side**d / R_hat**d
        hi = side**d / r_hat**d
        if not (lo <= count <= hi + 1e-9):
            raise AssertionError(
                f"counting bound violated on sub-window {sub}: "
                f"{lo} <= {count} <= {hi} fails (generator bug)"
            )


def pattern_frequency(
    spec: PointSetSpec,
    Q: Pattern,
    x,
    L: float,
    match_tol: float | None = None,
) -> float:
    """Per-volume count of translated copies of Q anchored inside x + Lambda_L.

    A copy is an anchor point p such that the set restricted to the closed
    support cube around p equals Q - anchor(Q) + p within match_tol, with
    the support cube contained in the open window.  match_tol defaults to
    a hundredth of the minimal pairwise gap.
    """
    if L <= Q.support_side:
        raise ValueError("window side must exceed the pattern support side")
    w = Window(tuple(np.atleast_1d(np.asarray(x, dtype=float))), L)
    pts = materialize(spec, w)
    if len(pts) == 0:
        return 0.0
    tree = cKDTree(pts)
    if len(pts) >= 2:
        gap = tree.query(pts, k=2, p=np.inf)[0][:, 1].min()
        if match_tol is None:
            match_tol = gap / 100
        if match_tol >= gap / 2:
            raise ValueError(f"match_tol {match_tol} must stay below r_hat/2 = {gap / 2}")
    elif match_tol is None:
        match_tol = 1e-9
    half = Q.support_side / 2
    rel = Q.relative
    center_off = Q.cube_center - Q.anchor
    lo, hi = w.lo(), w.hi()
    count = 0
    for p in pts:
        center = p + center_off
        if np.any(center - half <= lo) or np.any(center + half >= hi):
            continue
        in_cube = tree.query_ball_point(center, r=half + match_tol, p=np.inf)
        if len(in_cube) != len(rel):
            continue
        target = rel + p
        dist, _ = tree.query(target, k=1, p=np.inf)
        if np.all(dist <= match_tol):
            count += 1
    return count / L**spec.d


def export_points_csv(path, pts: np.ndarray):
    """One row per point, columns x1..xd."""
    pts = np.atleast_2d(pts)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"x{a + 1}" for a in range(pts.shape[1])])
        for row in pts:
            writer.writerow([repr(float(v)) for v in row])
