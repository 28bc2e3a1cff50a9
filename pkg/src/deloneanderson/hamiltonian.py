"""Sparse finite-difference Hamiltonians -Delta + V on cubes.

Discretization: second-order central differences on a cell-centered grid
with m = L/h nodes per axis, node j at y - L/2 + (j+1/2)h.  Dirichlet uses
zero ghost values (every diagonal keeps 2d/h^2), Neumann reflects ghosts
(boundary diagonals lose one 1/h^2 per missing neighbour).  On the same
node set H^D - H^N is therefore a nonnegative diagonal supported on the
boundary, which makes Dirichlet/Neumann eigenvalue ordering exact sample
by sample, and grids of nested cubes share node positions exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import pointset
from .colouring import ColouredWindow
from .pointset import Window

DIRICHLET = "dirichlet"
NEUMANN = "neumann"

BOX = "box"
BUMP = "bump"


@dataclass(frozen=True)
class SingleSitePotential:
    """Compactly supported impurity profile, supported on the open cube of side 2a.

    box:  u = u_plus on the cube (bounds u- = u+ = u_plus, eps_u = delta_u = 2a).
    bump: C^1 mollified box, u = u_plus on the half-size cube, smoothstep
          falloff to zero (recorded bounds u- = u_plus/2, eps_u = a, delta_u = 2a).
    """

    kind: str
    u_plus: float
    a: float

    def __post_init__(self):
        if self.kind not in (BOX, BUMP):
            raise ValueError(f"unknown single-site potential kind {self.kind!r}")
        if self.u_plus <= 0 or self.a <= 0:
            raise ValueError("u_plus and a must be > 0")

    @property
    def delta_u(self) -> float:
        return 2 * self.a

    @property
    def eps_u(self) -> float:
        return 2 * self.a if self.kind == BOX else self.a

    @property
    def u_minus(self) -> float:
        return self.u_plus if self.kind == BOX else self.u_plus / 2

    def profile1d(self, t: np.ndarray) -> np.ndarray:
        """Per-axis factor of the separable profile."""
        t = np.abs(np.asarray(t, dtype=float))
        if self.kind == BOX:
            return np.where(t < self.a, 1.0, 0.0)
        inner = self.a / 2
        ramp = np.clip((self.a - t) / inner, 0.0, 1.0)
        smooth = ramp * ramp * (3.0 - 2.0 * ramp)
        return np.where(t <= inner, 1.0, np.where(t < self.a, smooth, 0.0))

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """u at offsets x (shape (n, d))."""
        x = np.atleast_2d(x)
        out = np.full(len(x), self.u_plus)
        for axis in range(x.shape[1]):
            out *= self.profile1d(x[:, axis])
        return out


def box_potential(u_plus: float, a: float) -> SingleSitePotential:
    return SingleSitePotential(kind=BOX, u_plus=u_plus, a=a)


def bump_potential(u_plus: float, a: float) -> SingleSitePotential:
    return SingleSitePotential(kind=BUMP, u_plus=u_plus, a=a)


def overlap_bound(u: SingleSitePotential, r: float, d: int) -> float:
    """A-priori bound v_0 with sum_p |u(.-p)| <= v_0 for r-discrete sets."""
    return u.u_plus * (math.floor(2 * u.delta_u / r) + 1) ** d


def grid_axes(window: Window, h: float) -> list[np.ndarray]:
    """Cell-centered node coordinates per axis."""
    m = grid_points_per_axis(window.side, h)
    lo = window.lo()
    return [lo[a] + (np.arange(m) + 0.5) * h for a in range(window.d)]


def grid_points_per_axis(L: float, h: float) -> int:
    m = round(L / h)
    if m < 1 or abs(m * h - L) > 1e-9 * max(1.0, L):
        raise ValueError(f"window side {L} is not an integer multiple of h={h}")
    return m


def potential_on_grid(cw: ColouredWindow, u: SingleSitePotential, axes: list[np.ndarray]) -> np.ndarray:
    """V(node) = sum_p omega_p u(node - p) over the grid, C-order flattened.

    The coloured window must cover the grid with margin delta_u, so that
    impurities just outside the operator window still contribute.
    """
    d = len(axes)
    lo = np.array([ax[0] for ax in axes])
    hi = np.array([ax[-1] for ax in axes])
    need_lo = lo - u.delta_u
    need_hi = hi + u.delta_u
    wlo, whi = cw.window.lo(), cw.window.hi()
    if np.any(need_lo < wlo - 1e-12) or np.any(need_hi > whi + 1e-12):
        raise ValueError(
            "coloured window margin insufficient: potential support reaches "
            f"[{need_lo}, {need_hi}] but colouring covers ({wlo}, {whi})"
        )
    shape = tuple(len(ax) for ax in axes)
    V = np.zeros(shape)
    for p, om in zip(np.atleast_2d(cw.points), cw.couplings):
        slices = []
        factors = []
        for a in range(d):
            ax = axes[a]
            j_lo = int(np.searchsorted(ax, p[a] - u.a, side="right"))
            j_hi = int(np.searchsorted(ax, p[a] + u.a, side="left"))
            if j_hi <= j_lo:
                slices = None
                break
            slices.append(slice(j_lo, j_hi))
            factors.append(u.profile1d(ax[j_lo:j_hi] - p[a]))
        if slices is None:
            continue
        patch = factors[0]
        for f in factors[1:]:
            patch = np.multiply.outer(patch, f)
        V[tuple(slices)] += om * u.u_plus * patch
    return V.ravel()


@dataclass(eq=False)
class OperatorMatrix:
    """Symmetric finite-difference Hamiltonian on a cube, in banded form.

    Off-diagonal structure is implied by the regular grid (value -1/h^2
    between axis neighbours); the diagonal combines the boundary-condition
    dependent Laplacian part with the sampled potential.
    """

    shape: tuple
    h: float
    bc: str
    window: Window
    potential: np.ndarray
    v_inf_bound: float

    def __post_init__(self):
        if self.bc not in (DIRICHLET, NEUMANN):
            raise ValueError(f"bc must be dirichlet or neumann, got {self.bc!r}")
        self.shape = tuple(int(m) for m in self.shape)
        if len(self.potential) != self.n:
            raise ValueError("potential length does not match grid size")

    @property
    def n(self) -> int:
        return int(np.prod(self.shape))

    @property
    def d(self) -> int:
        return len(self.shape)

    @property
    def bandwidth(self) -> int:
        return int(np.prod(self.shape[1:]))

    @cached_property
    def _neighbour_masks(self) -> list[np.ndarray]:
        """Per axis: mask of nodes with a forward neighbour along that axis."""
        idx = np.arange(self.n)
        masks = []
        for a in range(self.d):
            stride = int(np.prod(self.shape[a + 1 :]))
            along = (idx // stride) % self.shape[a]
            masks.append(along < self.shape[a] - 1)
        return masks

    @cached_property
    def diagonal(self) -> np.ndarray:
        inv_h2 = 1.0 / self.h**2
        if self.bc == DIRICHLET:
            lap = np.full(self.n, 2 * self.d * inv_h2)
        else:
            counts = np.zeros(self.n)
            idx = np.arange(self.n)
            for a in range(self.d):
                stride = int(np.prod(self.shape[a + 1 :]))
                along = (idx // stride) % self.shape[a]
                counts += (along > 0).astype(int) + (along < self.shape[a] - 1).astype(int)
            lap = counts * inv_h2
        return lap + self.potential

    def band(self) -> np.ndarray:
        """Fresh (n, bandwidth+1) lower-band array: band[j,t] = A[j+t, j]."""
        b = self.bandwidth
        out = np.zeros((self.n, b + 1))
        out[:, 0] = self.diagonal
        inv_h2 = 1.0 / self.h**2
        for a, mask in enumerate(self._neighbour_masks):
            stride = int(np.prod(self.shape[a + 1 :]))
            out[mask, stride] = -inv_h2
        return out

    def to_dense(self) -> np.ndarray:
        band = self.band()
        n = self.n
        A = np.zeros((n, n))
        A[np.arange(n), np.arange(n)] = band[:, 0]
        for t in range(1, band.shape[1]):
            rows = np.nonzero(band[: n - t, t])[0]
            A[rows + t, rows] = band[rows, t]
            A[rows, rows + t] = band[rows, t]
        return A

    def inf_norm(self) -> float:
        """Max absolute row sum, cheap from the band structure."""
        band = self.band()
        sums = np.abs(band[:, 0]).copy()
        for t in range(1, band.shape[1]):
            off = np.abs(band[: self.n - t, t])
            sums[: self.n - t] += off
            sums[t:] += off
        return float(sums.max())

    def export_coo(self, path):
        """Debug export in `i j value` text format (1-based indices)."""
        band = self.band()
        with open(path, "w") as fh:
            for j in range(self.n):
                fh.write(f"{j + 1} {j + 1} {band[j, 0]!r}\n")
                for t in range(1, band.shape[1]):
                    if j + t < self.n and band[j, t] != 0.0:
                        fh.write(f"{j + t + 1} {j + 1} {band[j, t]!r}\n")


def assemble(
    cw: ColouredWindow,
    u: SingleSitePotential,
    L: float,
    y,
    h: float,
    bc: str,
) -> OperatorMatrix:
    """Hamiltonian of the cube Lambda_L(y) with the given boundary condition."""
    if h >= u.a:
        raise ValueError(f"grid spacing h={h} does not resolve the potential (a={u.a})")
    window = Window(tuple(np.atleast_1d(np.asarray(y, dtype=float))), L)
    m = grid_points_per_axis(L, h)
    axes = grid_axes(window, h)
    V = potential_on_grid(cw, u, axes)
    r, _ = pointset.nominal_radii(cw.spec)
    v0 = overlap_bound(u, r, window.d)
    return OperatorMatrix(
        shape=(m,) * window.d,
        h=h,
        bc=bc,
        window=window,
        potential=V,
        v_inf_bound=cw.dist.w * v0,
    )


def free_eigenvalues(d: int, m: int, h: float, bc: str) -> np.ndarray:
    """Closed-form spectrum of the V = 0 operator (discrete sine/cosine modes)."""
    if bc == DIRICHLET:
        modes = 4 * np.sin(np.arange(1, m + 1) * np.pi / (2 * (m + 1))) ** 2 / h**2
    else:
        modes = 4 * np.sin(np.arange(0, m) * np.pi / (2 * m)) ** 2 / h**2
    evs = modes
    for _ in range(d - 1):
        evs = (evs[:, None] + modes[None, :]).ravel()
    return np.sort(evs)
