"""Oscillation diagnostics for the two-spacing annulus point set.

Along the superexponential window sequence L_{k+1} = L_k^alpha the annulus
set looks like the q1-lattice for even k and like the q2-lattice for odd k:
single-point pattern frequencies oscillate between the two lattice
densities, and the finite-volume IDS of the undisordered operator
oscillates between the two periodic reference curves, so neither has a
limit along the full sequence.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import pointset, spectrum
from .colouring import constant_colouring
from .hamiltonian import NEUMANN, SingleSitePotential, assemble
from .pointset import Pattern, PointSetSpec, Window, annulus_example, lattice


@dataclass
class OscillationReport:
    """Per-k values of an annulus diagnostic plus subsequence estimates."""

    kind: str
    k_list: list
    L_values: list
    log_L_values: list
    values: list
    even_estimate: float
    odd_estimate: float
    gap: float
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "k_list": self.k_list,
            "L_values": self.L_values,
            "log_L_values": self.log_L_values,
            "values": self.values,
            "even_estimate": self.even_estimate,
            "odd_estimate": self.odd_estimate,
            "gap": self.gap,
            "extra": self.extra,
        }

    def to_json(self, path):
        with open(path, "w") as fh:
            json.dump(self.as_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["k", "L_k", "value", "parity"])
            for k, L, v in zip(self.k_list, self.L_values, self.values):
                writer.writerow([k, repr(float(L)), repr(float(v)), "even" if k % 2 == 0 else "odd"])


def window_sides(L1: float, annulus_alpha: float, k_max: int, L_budget: float = 1e7) -> list[float]:
    """L_1 .. L_{k_max}, refusing to materialize beyond the point budget."""
    sides = [float(L1)]
    for _ in range(k_max - 1):
        nxt = sides[-1] ** annulus_alpha
        if nxt > L_budget:
            raise ValueError(
                f"window side {nxt:g} exceeds the materialization budget {L_budget:g}; "
                "reduce k_max, annulus_alpha or L1"
            )
        sides.append(nxt)
    return sides


def _subsequence_estimates(k_list, values) -> tuple[float, float, float]:
    evens = [v for k, v in zip(k_list, values) if k % 2 == 0]
    odds = [v for k, v in zip(k_list, values) if k % 2 == 1]
    if not evens or not odds:
        raise ValueError("need at least one even and one odd k")
    return evens[-1], odds[-1], abs(evens[-1] - odds[-1])


def frequency_sequence(
    q1: int,
    q2: int,
    annulus_alpha: float,
    L1: float,
    k_max: int,
    Q: Pattern | None = None,
    d: int = 1,
    match_tol: float = 1e-3,
    L_budget: float = 1e7,
) -> OscillationReport:
    """Pattern frequency over the window sequence Lambda_{L_k}.

    Even-k windows are dominated by the q1 sublattice, odd-k windows by
    q2; for the single-point pattern the subsequence limits are q1^-d and
    q2^-d.  Asserts the observed even/odd gap exceeds half the limit gap.
    """
    spec = annulus_example(q1, q2, annulus_alpha, L1, d)
    if Q is None:
        Q = Pattern(points=np.zeros((1, d)), support_side=min(q1, q2))
    sides = window_sides(L1, annulus_alpha, k_max, L_budget)
    values = [
        pointset.pattern_frequency(spec, Q, (0.0,) * d, L, match_tol) for L in sides
    ]
    k_list = list(range(1, k_max + 1))
    even_est, odd_est, gap = _subsequence_estimates(k_list, values)
    limit_gap = abs(q1 ** -float(d) - q2 ** -float(d))
    if gap <= 0.5 * limit_gap:
        raise AssertionError(
            f"frequency oscillation gap {gap} did not exceed {0.5 * limit_gap}"
        )
    return OscillationReport(
        kind="pattern_frequency",
        k_list=k_list,
        L_values=[float(s) for s in sides],
        log_L_values=[annulus_alpha ** k * math.log(L1) for k in range(k_max)],
        values=[float(v) for v in values],
        even_estimate=even_est,
        odd_estimate=odd_est,
        gap=gap,
        extra={"limit_even": q1 ** -float(d), "limit_odd": q2 ** -float(d)},
    )


def _nu_windowed(spec: PointSetSpec, u: SingleSitePotential, E: float, L: float, h: float) -> float:
    cw = constant_colouring(spec, Window((0.0,) * spec.d, L + 2 * (u.delta_u + h)), 1.0)
    M = assemble(cw, u, L, (0.0,) * spec.d, h, NEUMANN)
    return spectrum.count_below(M, E) / L**spec.d


def ids_oscillation(
    q1: int,
    q2: int,
    annulus_alpha: float,
    L1: float,
    k_max: int,
    E: float,
    h: float,
    u: SingleSitePotential,
    d: int = 1,
    min_reference_gap: float = 0.05,
    L_budget: float = 1e7,
) -> OscillationReport:
    """Finite-volume IDS of the undisordered annulus operator along L_k.

    Couplings are identically one, so the only randomness-free mechanism
    left is the geometry: even-k values approach the q1-lattice reference,
    odd-k values the q2-lattice reference.  The even/odd gap must exceed
    three times the finite-size error estimate.
    """
    sides = window_sides(L1, annulus_alpha, k_max, L_budget)
    L_ref = sides[-1]
    spec = annulus_example(q1, q2, annulus_alpha, L1, d)

    ref = {}
    fs_err = {}
    for qi in (q1, q2):
        lat = lattice(float(qi), d)
        full = _nu_windowed(lat, u, E, L_ref, h)
        half = _nu_windowed(lat, u, E, L_ref / 2, h)
        ref[qi] = full
        fs_err[qi] = abs(full - half)
    ref_gap = abs(ref[q1] - ref[q2])
    if ref_gap < min_reference_gap:
        raise ValueError(
            f"reference IDS values at E={E} differ by {ref_gap:.4f} < {min_reference_gap}; "
            "pick a different E"
        )

    values = [_nu_windowed(spec, u, E, L, h) for L in sides]
    k_list = list(range(1, k_max + 1))
    even_est, odd_est, gap = _subsequence_estimates(k_list, values)

    # finite-size error: the inner region remembers the other sublattice
    # (area fraction (L_{k-1}/L_k)^d) plus the half-window Cauchy gap of the
    # periodic references
    memory = (sides[-2] / sides[-1]) ** d if k_max >= 2 else 0.0
    fs_estimate = memory * ref_gap + max(fs_err[q1], fs_err[q2])
    if gap < 3.0 * fs_estimate:
        raise AssertionError(
            f"IDS oscillation gap {gap} below 3x finite-size estimate {fs_estimate}"
        )
    # each subsequence must track its own periodic reference
    cauchy = max(fs_err[q1], fs_err[q2])
    for k, value, L in zip(k_list, values, sides):
        if k < k_max - 1:
            continue
        target = ref[q1] if k % 2 == 0 else ref[q2]
        err_k = (sides[k - 2] / L) ** d * ref_gap + cauchy if k >= 2 else ref_gap
        if abs(value - target) > 3.0 * err_k:
            raise AssertionError(
                f"k={k} IDS value {value} strays from its reference {target} "
                f"beyond 3x error estimate {err_k}"
            )
    return OscillationReport(
        kind="ids_oscillation",
        k_list=k_list,
        L_values=[float(s) for s in sides],
        log_L_values=[annulus_alpha ** k * math.log(L1) for k in range(k_max)],
        values=[float(v) for v in values],
        even_estimate=even_est,
        odd_estimate=odd_est,
        gap=gap,
        extra={
            "E": E,
            "reference_q1": ref[q1],
            "reference_q2": ref[q2],
            "reference_gap": ref_gap,
            "finite_size_estimate": fs_estimate,
        },
    )
