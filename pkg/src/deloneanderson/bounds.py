"""Closed-form localization thresholds and the constants they depend on.

The model-dependent prefactors (C1, C2, C1', C2', C3, p) are existential
in origin; they enter here as plain inputs with default 1, and only the
scaling structure in R, L and d is meaningful.  Logarithms are natural
(use log_base to evaluate the log10 reading instead).
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass


def temple_constants(
    u_plus: float, u_minus: float, eps_u: float, delta_u: float, r: float, d: int
) -> tuple[float, float]:
    """Coupling-truncation constant alpha and ground-state constant c_u.

    alpha = [u+ (2 delta_u / r)^d]^-1,  c_u = 2^(-d-1) u- eps_u^d.
    """
    if min(u_plus, u_minus, eps_u, delta_u, r) <= 0:
        raise ValueError("all Temple inputs must be positive")
    if eps_u > delta_u:
        raise ValueError("eps_u must not exceed delta_u")
    if u_minus > u_plus:
        raise ValueError("u_minus must not exceed u_plus")
    alpha = 1.0 / (u_plus * (2.0 * delta_u / r) ** d)
    c_u = 2.0 ** (-d - 1) * u_minus * eps_u**d
    return alpha, c_u


def c_r(C3: float, R: float, d: int) -> float:
    """Lifshitz-tail rate constant C3 * R^(-d - d^2/2)."""
    if C3 <= 0 or R <= 0:
        raise ValueError("C3 and R must be positive")
    return C3 * R ** -(d + d * d / 2.0)


def e_star(L: float, C_R: float, p: int, d: int) -> float:
    """Initial-scale localization energy (1/2) (C_R / ((p+2) d ln L))^(2/d)."""
    if L <= 1:
        raise ValueError("L must exceed 1")
    return 0.5 * (C_R / ((p + 2) * d * math.log(L))) ** (2.0 / d)


def lt_exponent(d: int) -> float:
    # single division keeps the value exactly at the rational d + 2 + 8/(3d)
    return (3 * d * d + 6 * d + 8) / (3 * d)


def sa_exponent(d: int) -> float:
    return 4.0 * d + 4.0


def _log(v: float, base: str) -> float:
    if v <= 1.0:
        raise ValueError(f"log argument {v} outside domain (need C2*R > 1)")
    return math.log(v) if base == "ln" else math.log10(v)


def e_lt(R: float, C1: float, C2: float, d: int, log_base: str = "ln") -> float:
    """Localization threshold from the Lifshitz-tail route."""
    return C1 * R ** -lt_exponent(d) * _log(C2 * R, log_base) ** (-2.0 / d)


def e_sa(R: float, C1p: float, C2p: float, d: int, log_base: str = "ln") -> float:
    """Localization threshold from the space-averaging route."""
    return C1p * R ** -sa_exponent(d) * _log(C2p * R, log_base) ** (-2.0 / d)


def crossover_radius(
    C1: float,
    C2: float,
    C1p: float,
    C2p: float,
    d: int,
    tol: float = 1e-12,
    R_max: float = 1e9,
    log_base: str = "ln",
) -> float | None:
    """Smallest radius beyond which the Lifshitz-tail bound wins.

    Bisection root of e_lt(R) = e_sa(R) on (max(1/C2, 1/C2p) + eps, R_max];
    returns None when no sign change exists in range (then one bound
    dominates everywhere).  Beyond the crossing the ratio e_lt/e_sa is
    strictly increasing, so the first crossing is the only one.
    """

    def diff(R: float) -> float:
        return e_lt(R, C1, C2, d, log_base) - e_sa(R, C1p, C2p, d, log_base)

    lo = max(1.0 / C2, 1.0 / C2p) * (1 + 1e-9) + 1e-15
    # scan for a sign change on a geometric grid, then bisect
    grid = [lo * (R_max / lo) ** (i / 400.0) for i in range(401)]
    prev = None
    bracket = None
    for R in grid:
        val = diff(R)
        if val == 0.0:
            return R
        if prev is not None and prev[1] * val < 0:
            bracket = (prev[0], R)
            break
        prev = (R, val)
    if bracket is None:
        return None
    a, b = bracket
    while b - a > tol * max(1.0, a):
        mid = 0.5 * (a + b)
        if diff(a) * diff(mid) <= 0:
            b = mid
        else:
            a = mid
    root = 0.5 * (a + b)
    # certify LT dominance beyond the crossing
    for mult in (1.5, 2.0, 10.0, 100.0):
        R = root * mult
        if R <= R_max and diff(R) <= 0:
            raise AssertionError("e_lt did not dominate e_sa beyond the crossing")
    return root


@dataclass
class BoundsReport:
    """Evaluated constants and thresholds for one parameter set."""

    inputs: dict
    temple_alpha: float
    c_u: float
    C_R: float
    e_star_samples: list
    E_LT: float
    E_SA: float
    R_star: float | None
    log_base: str = "ln"

    def to_json(self, path):
        payload = {
            "inputs": self.inputs,
            "temple_alpha": self.temple_alpha,
            "c_u": self.c_u,
            "C_R": self.C_R,
            "e_star_samples": self.e_star_samples,
            "E_LT": self.E_LT,
            "E_SA": self.E_SA,
            "R_star": self.R_star,
            "log_base": self.log_base,
        }
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")


def bounds_report(
    d: int,
    R: float,
    r: float = 1.0,
    p: int = 1,
    u_plus: float = 1.0,
    u_minus: float = 1.0,
    eps_u: float = 0.5,
    delta_u: float = 0.5,
    C1: float = 1.0,
    C2: float = math.e,
    C1p: float = 1.0,
    C2p: float = math.e,
    C3: float = 1.0,
    L_samples: tuple = (8.0, 16.0, 32.0, 64.0, 128.0),
    log_base: str = "ln",
) -> BoundsReport:
    alpha, cu = temple_constants(u_plus, u_minus, eps_u, delta_u, r, d)
    C_R = c_r(C3, R, d)
    samples = [(float(L), e_star(L, C_R, p, d)) for L in L_samples]
    return BoundsReport(
        inputs={
            "d": d, "R": R, "r": r, "p": p,
            "u_plus": u_plus, "u_minus": u_minus, "eps_u": eps_u, "delta_u": delta_u,
            "C1": C1, "C2": C2, "C1p": C1p, "C2p": C2p, "C3": C3,
        },
        temple_alpha=alpha,
        c_u=cu,
        C_R=C_R,
        e_star_samples=samples,
        E_LT=e_lt(R, C1, C2, d, log_base),
        E_SA=e_sa(R, C1p, C2p, d, log_base),
        R_star=crossover_radius(C1, C2, C1p, C2p, d, log_base=log_base),
        log_base=log_base,
    )


def export_threshold_sweep(path, d, C1, C2, C1p, C2p, R_values, log_base="ln"):
    """Two-column-per-bound (R, E) CSV sweep for plotting."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["R", "E_LT", "E_SA"])
        for R in R_values:
            writer.writerow(
                [repr(float(R)), repr(e_lt(R, C1, C2, d, log_base)), repr(e_sa(R, C1p, C2p, d, log_base))]
            )
