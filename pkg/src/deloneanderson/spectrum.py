"""Exact eigenvalue counting and ground-state energies for banded operators.

Counting uses Sylvester's law: the number of negative pivots of the
LDL^T factorization of M - E*I equals the number of eigenvalues below E.
Zero pivots (E effectively on the spectrum of M or of a leading minor)
trigger a deterministic upward jitter of E; the counts are exact integers
and independent of the kernel backend.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded

from . import kernels
from .hamiltonian import OperatorMatrix

DENSE_CUTOFF = 2000
JITTER_REL = 1e-10
PIVOT_REL = 1e-13
MAX_JITTER = 8


class EOnSpectrumError(RuntimeError):
    """Raised when jittering cannot move E off a (near-)singular pivot."""


def _as_band(M) -> tuple[np.ndarray, float]:
    """Lower-band form plus an inf-norm scale, for OperatorMatrix or ndarray."""
    if isinstance(M, OperatorMatrix):
        return M.band(), M.inf_norm()
    A = np.asarray(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("expected a square matrix or an OperatorMatrix")
    if not np.array_equal(A, A.T):
        raise ValueError("matrix must be symmetric")
    n = A.shape[0]
    nz = np.nonzero(A)
    b = int(np.max(np.abs(nz[0] - nz[1]))) if len(nz[0]) else 0
    band = np.zeros((n, b + 1))
    for t in range(b + 1):
        band[: n - t, t] = np.diagonal(A, -t)
    return band, float(np.abs(A).sum(axis=1).max())


def count_below(M, E: float, method: str = "ldlt", backend: str | None = None) -> int:
    """Number of eigenvalues of M that are <= E.

    method "ldlt" runs the banded inertia kernel (with jitter protection),
    "dense" runs the full symmetric eigendecomposition (n <= 2000 only) and
    serves as the independent oracle.
    """
    if method == "dense":
        return count_below_dense(M, E)
    if method != "ldlt":
        raise ValueError(f"unknown method {method!r}")
    band, scale = _as_band(M)
    scale = max(scale, 1.0)
    pivot_floor = PIVOT_REL * scale
    jitter = JITTER_REL * scale
    for k in range(MAX_JITTER + 1):
        work = band.copy()
        work[:, 0] -= E + k * jitter
        neg, ok = kernels.ldlt_negcount(work, pivot_floor, backend=backend)
        if ok:
            return int(neg)
    raise EOnSpectrumError(
        f"E_ON_SPECTRUM: pivot below {pivot_floor} after {MAX_JITTER} jitter retries at E={E}"
    )


def count_below_dense(M, E: float) -> int:
    if isinstance(M, OperatorMatrix):
        if M.n > DENSE_CUTOFF:
            raise ValueError(f"dense path limited to n <= {DENSE_CUTOFF}")
        A = M.to_dense()
    else:
        A = np.asarray(M, dtype=float)
        if A.shape[0] > DENSE_CUTOFF:
            raise ValueError(f"dense path limited to n <= {DENSE_CUTOFF}")
    return int(np.count_nonzero(np.linalg.eigvalsh(A) <= E))


def _gershgorin(band: np.ndarray) -> tuple[float, float]:
    n = band.shape[0]
    radius = np.zeros(n)
    for t in range(1, band.shape[1]):
        off = np.abs(band[: n - t, t])
        radius[: n - t] += off
        radius[t:] += off
    return float((band[:, 0] - radius).min()), float((band[:, 0] + radius).max())


def _band_matvec(band: np.ndarray, v: np.ndarray) -> np.ndarray:
    out = band[:, 0] * v
    n = len(v)
    for t in range(1, band.shape[1]):
        col = band[: n - t, t]
        out[t:] += col * v[: n - t]
        out[: n - t] += col * v[t:]
    return out


def _band_to_general(band: np.ndarray, shift: float) -> np.ndarray:
    """(2b+1, n) banded storage of M - shift*I for scipy.solve_banded."""
    n, bp1 = band.shape
    b = bp1 - 1
    ab = np.zeros((2 * b + 1, n))
    ab[b, :] = band[:, 0] - shift
    for t in range(1, bp1):
        ab[b + t, : n - t] = band[: n - t, t]  # subdiagonal t
        ab[b - t, t:] = band[: n - t, t]  # superdiagonal t
    return ab


def ground_state_energy(M, tol: float = 1e-10, max_iter: int = 200) -> float:
    """Smallest eigenvalue to absolute tolerance tol.

    Bisection on count_below brackets the eigenvalue; shifted inverse
    iteration then polishes inside the bracket.  The bisection safeguard
    guarantees convergence even when the shift lands between clustered
    eigenvalues.
    """
    band, scale = _as_band(M)
    lo, hi = _gershgorin(band)
    if lo == hi:
        return lo
    b = band.shape[1] - 1
    # bracket [lo, hi] with count(lo) = 0, count(hi) >= 1
    while _count_band(band, lo, scale) > 0:
        lo -= max(1.0, abs(lo))
    coarse = max(tol * 100, (hi - lo) * 1e-3)
    while hi - lo > coarse:
        mid = 0.5 * (lo + hi)
        if _count_band(band, mid, scale) >= 1:
            hi = mid
        else:
            lo = mid
    # inverse iteration from the bracket midpoint
    shift = 0.5 * (lo + hi)
    rng = np.random.default_rng(1234)
    v = rng.standard_normal(band.shape[0])
    v /= np.linalg.norm(v)
    lam = shift
    converged = False
    for _ in range(max_iter):
        ab = _band_to_general(band, shift)
        try:
            w = solve_banded((b, b), ab, v)
        except np.linalg.LinAlgError:
            shift += 10 * tol
            continue
        w /= np.linalg.norm(w)
        lam = float(w @ _band_matvec(band, w))
        resid = float(np.linalg.norm(_band_matvec(band, w) - lam * w))
        v = w
        if resid <= 0.5 * tol:
            converged = True
            break
        # keep the safeguard bracket in sync
        if lam < lo or lam > hi:
            mid = 0.5 * (lo + hi)
            if _count_band(band, mid, scale) >= 1:
                hi = mid
            else:
                lo = mid
            shift = 0.5 * (lo + hi)
        else:
            shift = lam
        if hi - lo <= 0.5 * tol:
            break
    # certify with the counting bracket down to the requested tolerance
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if _count_band(band, mid, scale) >= 1:
            hi = mid
        else:
            lo = mid
    else:
        raise RuntimeError("ground-state bisection did not converge")
    if converged and lo - tol <= lam <= hi + tol:
        return lam
    return 0.5 * (lo + hi)


def _count_band(band: np.ndarray, E: float, scale: float) -> int:
    pivot_floor = PIVOT_REL * max(scale, 1.0)
    jitter = JITTER_REL * max(scale, 1.0)
    for k in range(MAX_JITTER + 1):
        work = band.copy()
        work[:, 0] -= E + k * jitter
        neg, ok = kernels.ldlt_negcount(work, pivot_floor)
        if ok:
            return int(neg)
    raise EOnSpectrumError(f"E_ON_SPECTRUM at E={E}")


@dataclass
class IDSCurve:
    """Monotone map E -> eigenvalue count per unit volume, with metadata."""

    energies: np.ndarray
    values: np.ndarray
    stderr: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.energies = np.asarray(self.energies, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if np.any(np.diff(self.energies) < 0):
            raise ValueError("energy grid must be ascending")
        if np.any(np.diff(self.values) < -1e-12):
            raise ValueError("IDS values must be nondecreasing")

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["E", "value", "stderr"])
            err = self.stderr if self.stderr is not None else [float("nan")] * len(self.values)
            for e, v, s in zip(self.energies, self.values, err):
                writer.writerow([repr(float(e)), repr(float(v)), repr(float(s))])

    def to_json(self, path):
        payload = {
            "meta": self.meta,
            "energies": [float(e) for e in self.energies],
            "values": [float(v) for v in self.values],
            "stderr": None if self.stderr is None else [float(s) for s in self.stderr],
        }
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")


def finite_volume_ids(M: OperatorMatrix, E_grid) -> IDSCurve:
    """Counting function of the finite-volume operator, normalized by volume."""
    E_grid = np.asarray(E_grid, dtype=float)
    if np.any(np.diff(E_grid) < 0):
        raise ValueError("energy grid must be ascending")
    vol = M.window.side**M.d
    values = np.array([count_below(M, E) / vol for E in E_grid])
    return IDSCurve(
        energies=E_grid,
        values=values,
        stderr=None,
        meta={"L": M.window.side, "bc": M.bc, "n": M.n, "samples": 1},
    )
