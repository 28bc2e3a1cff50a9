"""Random coupling constants attached to point sets, reproducibly.

Every coupling is drawn from its own counter-based stream keyed by
(master_seed, sample_index, canonical lattice index of the point), so two
windows of the same set agree coupling-by-coupling on shared points and
results never depend on evaluation order or thread schedule.  The key is
hashed with a splitmix64-style mixer, which is platform-stable.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from . import pointset
from .pointset import PointSetSpec, Window

UNIFORM = "uniform"
POWER_LAW = "power_law"

# stream tags keep unrelated consumers of the keyed RNG independent
STREAM_COLOUR = 0x11
STREAM_SHIFT = 0x22
STREAM_TRANSLATE = 0x33
STREAM_BOOT = 0x44

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def _mix64(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def _fold(h, k) -> np.ndarray:
    return _mix64((h + _GOLDEN) ^ (np.uint64(k) * _MIX2 + _GOLDEN))


def _fold_array(h, ks: np.ndarray) -> np.ndarray:
    return _mix64((h + _GOLDEN) ^ (ks * _MIX2 + _GOLDEN))


def keyed_uniforms(base: tuple, idx: np.ndarray) -> np.ndarray:
    """One uniform in [0,1) per row of the integer index array `idx`.

    `base` is a tuple of scalar integers (seeds, stream tags); `idx` has
    shape (n, d) or (n,).  Fully vectorized and order-independent.
    """
    with np.errstate(over="ignore"):
        h = np.uint64(0)
        for k in base:
            h = _fold(h, np.int64(k).view(np.uint64))
        idx = np.asarray(idx, dtype=np.int64)
        if idx.ndim == 1:
            idx = idx[:, None]
        hs = np.full(idx.shape[0], h, dtype=np.uint64)
        for a in range(idx.shape[1]):
            col = idx[:, a].view(np.uint64) + np.uint64(a + 1) * _GOLDEN
            hs = _fold_array(hs, col)
        return (_mix64(hs) >> np.uint64(11)).astype(np.float64) * 2.0**-53


def keyed_uniform(*ints) -> float:
    """Scalar convenience wrapper around keyed_uniforms."""
    return float(keyed_uniforms(tuple(ints[:-1]), np.asarray([[ints[-1]]]))[0])


@dataclass(frozen=True)
class SingleSiteDistribution:
    """Coupling law on [0, w): uniform, or the power-law family rho ~ v^(beta-1).

    The power-law density rho(v) = beta v^(beta-1) / w^beta integrates to
    exactly C_rho * eps^beta on [0, eps] with C_rho = w^(-beta); uniform is
    the beta = 1 member.
    """

    kind: str
    w: float
    beta: float = 1.0

    def __post_init__(self):
        if self.kind not in (UNIFORM, POWER_LAW):
            raise ValueError(f"unknown distribution kind {self.kind!r}")
        if self.w <= 0:
            raise ValueError("support bound w must be > 0")
        if self.kind == UNIFORM:
            object.__setattr__(self, "beta", 1.0)
        elif self.beta <= 0:
            raise ValueError("power-law exponent beta must be > 0")

    @property
    def C_rho(self) -> float:
        return self.w**-self.beta

    def draw(self, u: np.ndarray) -> np.ndarray:
        """Inverse-CDF transform of uniforms in [0,1)."""
        u = np.asarray(u, dtype=float)
        if self.kind == UNIFORM:
            return self.w * u
        return self.w * u ** (1.0 / self.beta)

    def cdf(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        return np.clip(v / self.w, 0.0, 1.0) ** self.beta

    def mean(self) -> float:
        # E[w U^(1/beta)] = w beta/(beta+1)
        return self.w * self.beta / (self.beta + 1.0)


def uniform_dist(w: float) -> SingleSiteDistribution:
    return SingleSiteDistribution(kind=UNIFORM, w=w)


def power_law_dist(w: float, beta: float) -> SingleSiteDistribution:
    return SingleSiteDistribution(kind=POWER_LAW, w=w, beta=beta)


def cdf_check(dist: SingleSiteDistribution, eps: float) -> float:
    """Closed-form mass of [0, eps]; compare against C_rho * eps^beta."""
    if not 0 < eps <= dist.w:
        raise ValueError("eps must lie in (0, w]")
    return float((eps / dist.w) ** dist.beta)


@dataclass(frozen=True)
class ColouredWindow:
    """Finite piece of a coloured point set: points and aligned couplings."""

    spec: PointSetSpec
    window: Window
    dist: SingleSiteDistribution
    master_seed: int
    sample_index: int
    points: np.ndarray
    couplings: np.ndarray

    def __post_init__(self):
        if len(self.points) != len(self.couplings):
            raise ValueError("points and couplings must align")

    def __eq__(self, other):
        return (
            isinstance(other, ColouredWindow)
            and self.spec == other.spec
            and self.window == other.window
            and self.dist == other.dist
            and self.master_seed == other.master_seed
            and self.sample_index == other.sample_index
            and np.array_equal(self.points, other.points)
            and np.array_equal(self.couplings, other.couplings)
        )


def sample_colouring(
    spec: PointSetSpec,
    w: Window,
    dist: SingleSiteDistribution,
    master_seed: int,
    sample_index: int,
) -> ColouredWindow:
    """Draw the couplings of every point inside the window.

    Streams are keyed per point, so enlarging or shifting the window keeps
    the couplings of shared points bit-identical.
    """
    pts = pointset.materialize(spec, w)
    if len(pts) == 0:
        coup = np.empty(0)
    else:
        idx = pointset.canonical_index(spec, pts)
        u = keyed_uniforms((master_seed, sample_index, STREAM_COLOUR), idx)
        coup = dist.draw(u)
    return ColouredWindow(
        spec=spec,
        window=w,
        dist=dist,
        master_seed=master_seed,
        sample_index=sample_index,
        points=pts,
        couplings=coup,
    )


def constant_colouring(
    spec: PointSetSpec, w: Window, value: float = 1.0
) -> ColouredWindow:
    """Deterministic colouring omega = value (used for periodic references)."""
    pts = pointset.materialize(spec, w)
    # carrier distribution only has to satisfy value in [0, w)
    dist = uniform_dist(w=value * (1 + 1e-12) if value > 0 else 1.0)
    return ColouredWindow(
        spec=spec,
        window=w,
        dist=dist,
        master_seed=0,
        sample_index=0,
        points=pts,
        couplings=np.full(len(pts), float(value)),
    )


def translate(cw: ColouredWindow, x) -> ColouredWindow:
    """Shift points and window by x; each coupling rides along with its point."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    return ColouredWindow(
        spec=cw.spec,
        window=cw.window.shifted(x),
        dist=cw.dist,
        master_seed=cw.master_seed,
        sample_index=cw.sample_index,
        points=cw.points + x,
        couplings=cw.couplings.copy(),
    )


def export_colouring_csv(path, cw: ColouredWindow):
    """One row per point, columns x1..xd, omega."""
    pts = np.atleast_2d(cw.points)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"x{a + 1}" for a in range(pts.shape[1])] + ["omega"])
        for row, om in zip(pts, cw.couplings):
            writer.writerow([repr(float(v)) for v in row] + [repr(float(om))])
