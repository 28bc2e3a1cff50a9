"""Monte Carlo and translate-averaged finite-volume IDS experiments.

The hull average is approximated by drawing window centers uniformly over
one lattice period (or over the denseness radius for aperiodic sets) and
fresh couplings for every (sample, translate) pair.  Every random draw is
keyed off the master seed, so each experiment is a pure function of its
configuration; fixed-order reductions keep results independent of the
parallelism degree.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import bounds, hamiltonian, pointset
from .colouring import (
    STREAM_BOOT,
    STREAM_COLOUR,
    STREAM_TRANSLATE,
    SingleSiteDistribution,
    keyed_uniform,
    keyed_uniforms,
    sample_colouring,
)
from .hamiltonian import DIRICHLET, NEUMANN, SingleSitePotential, assemble
from .pointset import PointSetSpec, Window
from .spectrum import count_below, ground_state_energy


@dataclass(frozen=True)
class ExperimentConfig:
    spec: PointSetSpec
    u: SingleSitePotential
    dist: SingleSiteDistribution
    h: float
    master_seed: int = 0
    n_samples: int = 8
    n_translates: int = 1
    E_grid: tuple = ()
    L_list: tuple = ()
    bc: tuple = (DIRICHLET, NEUMANN)
    threads: int = 1
    # window rule for energy-dependent runs: L(E) = L_factor E^(-1/2), capped
    L_factor: float = 4.0
    L_max: float = 128.0

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        if len(self.L_list) > 1 and any(np.diff(self.L_list) <= 0):
            raise ValueError("L_list must be ascending")
        if len(self.E_grid) > 1 and any(np.diff(self.E_grid) <= 0):
            raise ValueError("E_grid must be ascending")


def _map_ordered(fn, tasks, threads: int):
    """Order-preserving map; the reduction order never depends on threads."""
    if threads <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, tasks))


def translate_period(spec: PointSetSpec) -> float:
    """Range of the window-center draws approximating the hull average."""
    if spec.kind in (pointset.LATTICE, pointset.PERTURBED):
        return spec.q
    return pointset.nominal_radii(spec)[1]


def _translate_center(cfg: ExperimentConfig, s: int, t: int) -> np.ndarray:
    period = translate_period(cfg.spec)
    return np.array(
        [
            period * keyed_uniform(cfg.master_seed, STREAM_TRANSLATE, s, t, a)
            for a in range(cfg.spec.d)
        ]
    )


def _colouring_window(cfg: ExperimentConfig, y: np.ndarray, L: float) -> Window:
    margin = cfg.u.delta_u + cfg.h
    return Window(tuple(y), L + 2 * margin)


def _sample_matrix(cfg: ExperimentConfig, s: int, t: int, L: float, bc: str):
    y = _translate_center(cfg, s, t)
    cw = sample_colouring(
        cfg.spec,
        _colouring_window(cfg, y, L),
        cfg.dist,
        cfg.master_seed,
        s * max(cfg.n_translates, 1) + t,
    )
    return assemble(cw, cfg.u, L, y, cfg.h, bc), cw, y


def nu_values(cfg: ExperimentConfig, E: float, L: float, bc: str) -> np.ndarray:
    """Finite-volume IDS value per (sample, translate) pair, in fixed order."""
    tasks = [(s, t) for s in range(cfg.n_samples) for t in range(cfg.n_translates)]
    vol = L**cfg.spec.d

    def one(st):
        M, _, _ = _sample_matrix(cfg, st[0], st[1], L, bc)
        return count_below(M, E) / vol

    return np.array(_map_ordered(one, tasks, cfg.threads))


def nu_curve_values(cfg: ExperimentConfig, E_grid, L: float, bc: str) -> np.ndarray:
    """Per-trial IDS curves over a whole energy grid, one assembly per trial.

    Returns shape (n_samples * n_translates, len(E_grid)); rows are monotone.
    """
    E_grid = [float(E) for E in E_grid]
    tasks = [(s, t) for s in range(cfg.n_samples) for t in range(cfg.n_translates)]
    vol = L**cfg.spec.d

    def one(st):
        M, _, _ = _sample_matrix(cfg, st[0], st[1], L, bc)
        return [count_below(M, E) / vol for E in E_grid]

    return np.array(_map_ordered(one, tasks, cfg.threads))


def mc_expected_ids(cfg: ExperimentConfig, E: float, L: float, bc: str) -> tuple[float, float]:
    """Mean and standard error of the finite-volume IDS over the MC ensemble."""
    vals = nu_values(cfg, E, L, bc)
    mean = float(vals.mean())
    stderr = float(vals.std(ddof=1) / math.sqrt(len(vals))) if len(vals) > 1 else 0.0
    return mean, stderr


@dataclass
class BracketReport:
    E: float
    L: float
    dirichlet_mean: float
    dirichlet_stderr: float
    neumann_mean: float
    neumann_stderr: float
    pathwise_violations: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def bracketing_check(cfg: ExperimentConfig, E: float, L: float) -> BracketReport:
    """Dirichlet/Neumann counting comparison on shared (window, colouring) pairs."""
    tasks = [(s, t) for s in range(cfg.n_samples) for t in range(cfg.n_translates)]
    vol = L**cfg.spec.d

    def one(st):
        s, t = st
        y = _translate_center(cfg, s, t)
        cw = sample_colouring(
            cfg.spec,
            _colouring_window(cfg, y, L),
            cfg.dist,
            cfg.master_seed,
            s * max(cfg.n_translates, 1) + t,
        )
        cd = count_below(assemble(cw, cfg.u, L, y, cfg.h, DIRICHLET), E)
        cn = count_below(assemble(cw, cfg.u, L, y, cfg.h, NEUMANN), E)
        return cd, cn

    pairs = _map_ordered(one, tasks, cfg.threads)
    cds = np.array([p[0] for p in pairs], dtype=float) / vol
    cns = np.array([p[1] for p in pairs], dtype=float) / vol
    n = len(pairs)
    return BracketReport(
        E=E,
        L=L,
        dirichlet_mean=float(cds.mean()),
        dirichlet_stderr=float(cds.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0,
        neumann_mean=float(cns.mean()),
        neumann_stderr=float(cns.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0,
        pathwise_violations=int(np.count_nonzero(cds > cns)),
    )


def subadditivity_check(cfg: ExperimentConfig, E: float, L_small: float, k: int) -> dict:
    """Counting (in)equalities for the decomposition of a cube into k^d subcubes.

    Neumann counts are subadditive and Dirichlet counts superadditive for
    the same colouring on the exactly aligned grids; slacks are reported in
    eigenvalue counts.
    """
    K = k * L_small
    d = cfg.spec.d
    offsets_1d = -K / 2 + (np.arange(k) + 0.5) * L_small
    grids = np.meshgrid(*([offsets_1d] * d), indexing="ij")
    sub_offsets = np.stack([g.ravel() for g in grids], axis=1)

    def one(s):
        y = _translate_center(cfg, s, 0)
        cw = sample_colouring(
            cfg.spec, _colouring_window(cfg, y, K), cfg.dist, cfg.master_seed, s
        )
        out = {}
        for bc in (NEUMANN, DIRICHLET):
            big = count_below(assemble(cw, cfg.u, K, y, cfg.h, bc), E)
            subs = sum(
                count_below(assemble(cw, cfg.u, L_small, y + off, cfg.h, bc), E)
                for off in sub_offsets
            )
            out[bc] = (big, subs)
        return out

    results = _map_ordered(one, list(range(cfg.n_samples)), cfg.threads)
    neumann_slacks = [r[NEUMANN][1] - r[NEUMANN][0] for r in results]
    dirichlet_slacks = [r[DIRICHLET][0] - r[DIRICHLET][1] for r in results]
    return {
        "E": E,
        "L_small": L_small,
        "k": k,
        "K": K,
        "neumann_slacks": neumann_slacks,
        "dirichlet_slacks": dirichlet_slacks,
        "neumann_violations": int(sum(s < 0 for s in neumann_slacks)),
        "dirichlet_violations": int(sum(s < 0 for s in dirichlet_slacks)),
    }


def ids_convergence(cfg: ExperimentConfig, E: float) -> dict:
    """Stabilization table of the finite-volume IDS along cfg.L_list."""
    if len(cfg.L_list) < 3:
        raise ValueError("need at least 3 window sides for a convergence table")
    table = {}
    for bc in cfg.bc:
        rows = []
        for L in cfg.L_list:
            mean, err = mc_expected_ids(cfg, E, float(L), bc)
            rows.append({"L": float(L), "mean": mean, "stderr": err})
        gaps = [
            abs(rows[i + 1]["mean"] - rows[i]["mean"]) for i in range(len(rows) - 1)
        ]
        table[bc] = {"rows": rows, "cauchy_gaps": gaps}
    return {"E": E, "table": table}


def temple_check(
    cfg: ExperimentConfig, L: float, n_samples: int, h_slack: float = 0.05
) -> dict:
    """Per-sample test of the truncated-coupling lower bound on E_1(H^N).

    The right-hand side is (c_u / L^d) sum_p min(omega_p, alpha/L^2) over
    points inside the open cube; violations beyond the relative
    discretization slack are counted.
    """
    if L <= cfg.u.delta_u:
        raise ValueError("window side must exceed the potential support")
    r, _ = pointset.nominal_radii(cfg.spec)
    alpha, c_u = bounds.temple_constants(
        cfg.u.u_plus, cfg.u.u_minus, cfg.u.eps_u, cfg.u.delta_u, r, cfg.spec.d
    )
    vol = L**cfg.spec.d

    def one(s):
        y = _translate_center(cfg, s, 0)
        cw = sample_colouring(
            cfg.spec, _colouring_window(cfg, y, L), cfg.dist, cfg.master_seed, s
        )
        M = assemble(cw, cfg.u, L, y, cfg.h, NEUMANN)
        inside = Window(tuple(y), L).contains(cw.points)
        truncated = np.minimum(cw.couplings[inside], alpha / L**2)
        rhs = c_u / vol * float(truncated.sum())
        lhs = ground_state_energy(M, tol=max(1e-12, 1e-6 * rhs))
        return lhs, rhs

    results = _map_ordered(one, list(range(n_samples)), cfg.threads)
    margins = [
        (lhs - rhs) / rhs if rhs > 0 else math.inf for lhs, rhs in results
    ]
    violations = int(sum(m < -h_slack for m in margins))
    return {
        "L": L,
        "n_samples": n_samples,
        "alpha": alpha,
        "c_u": c_u,
        "h_slack": h_slack,
        "violations": violations,
        "min_margin": min(margins),
    }


def large_deviation_rate(
    dist: SingleSiteDistribution,
    r: float,
    R: float,
    L_list,
    E_level: float,
    n_samples: int,
    d: int = 1,
    master_seed: int = 0,
    trunc: float | None = None,
) -> dict:
    """Volume scaling of P(L^-d sum_p min(omega_p, trunc) <= E_level).

    Probabilities are estimated on the spacing-r lattice, the negative log
    is regressed on L^d/R^d, and MC-zero probabilities are censored out of
    the fit.  trunc=None disables the coupling truncation.
    """
    if E_level >= dist.mean() * r**-d:
        raise ValueError("E_level must sit below the mean of the summed couplings")
    rows = []
    for L in L_list:
        spec = pointset.lattice(r, d)
        pts = pointset.materialize(spec, Window((0.0,) * d, float(L)))
        idx = pointset.canonical_index(spec, pts)
        n_pts = len(pts)
        # one keyed stream per (sample, point) pair, fully vectorized
        keys = np.concatenate(
            [
                np.repeat(np.arange(n_samples, dtype=np.int64), n_pts)[:, None],
                np.tile(idx, (n_samples, 1)),
            ],
            axis=1,
        )
        u = keyed_uniforms((master_seed, STREAM_COLOUR, 0x1D), keys)
        omega = dist.draw(u).reshape(n_samples, n_pts)
        if trunc is not None:
            omega = np.minimum(omega, trunc)
        sums = omega.sum(axis=1) / float(L) ** d
        hits = int(np.count_nonzero(sums <= E_level))
        prob = hits / n_samples
        rows.append(
            {
                "L": float(L),
                "x": float(L) ** d / R**d,
                "n_points": n_pts,
                "hits": hits,
                "prob": prob,
                "censored": hits == 0,
            }
        )
    fit_rows = [row for row in rows if not row["censored"]]
    if len(fit_rows) < 2:
        return {"rows": rows, "censored": len(rows) - len(fit_rows), "slope": None, "r_squared": None}
    x = np.array([row["x"] for row in fit_rows])
    y = -np.log(np.array([row["prob"] for row in fit_rows]))
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - float((resid**2).sum()) / ss_tot if ss_tot > 0 else 1.0
    return {
        "rows": rows,
        "censored": len(rows) - len(fit_rows),
        "slope": float(slope),
        "intercept": float(intercept),
        "r_squared": r2,
        "E_level": E_level,
        "R": R,
    }


def wegner_scan(cfg: ExperimentConfig, E0: float, width_list, L: float) -> dict:
    """Mean eigenvalue count in shrinking intervals around E0 (Dirichlet).

    Reports the per-volume linear coefficient of the count in the interval
    width plus the doubling ratios used as the linearity diagnostic.
    """
    widths = sorted(float(w) for w in width_list)
    tasks = [(s, t) for s in range(cfg.n_samples) for t in range(cfg.n_translates)]

    def one(st):
        M, _, _ = _sample_matrix(cfg, st[0], st[1], L, DIRICHLET)
        return [
            count_below(M, E0 + w / 2) - count_below(M, E0 - w / 2) for w in widths
        ]

    counts = np.array(_map_ordered(one, tasks, cfg.threads), dtype=float)
    means = counts.mean(axis=0)
    stderrs = counts.std(axis=0, ddof=1) / math.sqrt(len(tasks)) if len(tasks) > 1 else 0 * means
    x = np.array(widths)
    if len(widths) >= 2:
        slope, intercept = np.polyfit(x, means, 1)
    else:
        slope, intercept = means[0] / x[0], 0.0
    ratios = [float(means[i + 1] / means[i]) if means[i] > 0 else math.inf for i in range(len(widths) - 1)]
    return {
        "E0": E0,
        "L": L,
        "widths": widths,
        "means": [float(v) for v in means],
        "stderrs": [float(v) for v in stderrs],
        "slope": float(slope),
        "intercept": float(intercept),
        "slope_per_volume": float(slope) / L**cfg.spec.d,
        "doubling_ratios": ratios,
        "max_count_bound": int(round(L / cfg.h)) ** cfg.spec.d,
    }


def lifshitz_window(cfg: ExperimentConfig, E: float) -> float:
    """Window side L(E) = L_factor E^(-1/2), snapped to the grid and capped."""
    target = cfg.L_factor / math.sqrt(E)
    m = max(4, int(math.ceil(target / cfg.h)))
    m_cap = int(round(cfg.L_max / cfg.h))
    return min(m, m_cap) * cfg.h


def lifshitz_fit(
    cfg: ExperimentConfig,
    bc: str = NEUMANN,
    n_bootstrap: int = 200,
) -> dict:
    """Double-logarithmic tail exponent of the IDS at the spectral bottom.

    For each energy the finite-volume IDS is averaged at the admissible
    window size L(E); MC-zero estimates are censored.  The slope of
    ln|ln nu| against ln E estimates the tail exponent (-d/2 for Lifshitz
    behaviour); a bootstrap over the MC trials gives the confidence
    interval.
    """
    per_e = []
    for E in cfg.E_grid:
        L = lifshitz_window(cfg, E)
        vals = nu_values(cfg, float(E), L, bc)
        per_e.append({"E": float(E), "L": L, "vals": vals, "mean": float(vals.mean())})

    def fit(means):
        pts = [
            (math.log(rec["E"]), math.log(abs(math.log(m))))
            for rec, m in zip(per_e, means)
            if 0.0 < m < 1.0
        ]
        if len(pts) < 2:
            return None, 0
        x = np.array([p[0] for p in pts])
        y = np.array([p[1] for p in pts])
        return float(np.polyfit(x, y, 1)[0]), len(pts)

    slope, n_used = fit([rec["mean"] for rec in per_e])
    censored = sum(1 for rec in per_e if rec["mean"] <= 0.0)

    boot_slopes = []
    for b in range(n_bootstrap):
        means = []
        for ei, rec in enumerate(per_e):
            vals = rec["vals"]
            n = len(vals)
            u = keyed_uniforms(
                (cfg.master_seed, STREAM_BOOT, b, ei), np.arange(n, dtype=np.int64)
            )
            means.append(float(vals[np.floor(u * n).astype(int)].mean()))
        s, _ = fit(means)
        if s is not None:
            boot_slopes.append(s)
    ci = (
        (float(np.percentile(boot_slopes, 2.5)), float(np.percentile(boot_slopes, 97.5)))
        if boot_slopes
        else (None, None)
    )
    return {
        "bc": bc,
        "slope": slope,
        "ci": ci,
        "n_uncensored": n_used,
        "censored": censored,
        "points": [
            {"E": rec["E"], "L": rec["L"], "nu": rec["mean"]} for rec in per_e
        ],
    }


def lifshitz_free_control(cfg: ExperimentConfig, bc: str = NEUMANN) -> dict:
    """Same double-log fit for the disorder-free operator (van Hove regime).

    Uses the closed-form discrete spectra at the largest admissible window
    (exact and free of Monte Carlo cost), so small-count staircase effects
    do not pollute the control slope.
    """
    m = int(round(cfg.L_max / cfg.h))
    L = m * cfg.h
    evs = hamiltonian.free_eigenvalues(cfg.spec.d, m, cfg.h, bc)
    pts = []
    for E in cfg.E_grid:
        nu = float(np.count_nonzero(evs <= E)) / L**cfg.spec.d
        pts.append({"E": float(E), "L": L, "nu": nu})
    fit_pts = [
        (math.log(p["E"]), math.log(abs(math.log(p["nu"]))))
        for p in pts
        if 0.0 < p["nu"] < 1.0
    ]
    slope = None
    if len(fit_pts) >= 2:
        x = np.array([p[0] for p in fit_pts])
        y = np.array([p[1] for p in fit_pts])
        slope = float(np.polyfit(x, y, 1)[0])
    return {"bc": bc, "slope": slope, "points": pts, "n_uncensored": len(fit_pts)}


def detect_growth(energies: np.ndarray, trials: np.ndarray, z: float = 2.0) -> np.ndarray:
    """Mask of grid intervals where the averaged IDS strictly increases.

    trials has shape (n_trials, n_energies); an interval counts as growth
    when the mean increment exceeds z standard errors (and is positive).
    """
    trials = np.atleast_2d(trials)
    inc = np.diff(trials, axis=1)
    mean = inc.mean(axis=0)
    if trials.shape[0] > 1:
        se = inc.std(axis=0, ddof=1) / math.sqrt(trials.shape[0])
    else:
        se = np.zeros_like(mean)
    return (mean > z * se) & (mean > 1e-15)


def growth_point_check(cfg: ExperimentConfig, E_grid) -> dict:
    """Diagnostic comparison of IDS growth intervals with sampled spectra."""
    E_grid = np.asarray(E_grid, dtype=float)
    L = float(cfg.L_list[-1]) if cfg.L_list else 16.0
    bc = cfg.bc[-1] if cfg.bc else NEUMANN
    vol = L**cfg.spec.d
    tasks = [(s, t) for s in range(cfg.n_samples) for t in range(cfg.n_translates)]

    def one(st):
        M, _, _ = _sample_matrix(cfg, st[0], st[1], L, bc)
        evs = np.linalg.eigvalsh(M.to_dense())
        curve = np.searchsorted(evs, E_grid, side="right") / vol
        return curve, evs[evs <= E_grid[-1]]

    out = _map_ordered(one, tasks, cfg.threads)
    trials = np.array([o[0] for o in out])
    spectra = np.sort(np.concatenate([o[1] for o in out])) if out else np.array([])
    growth = detect_growth(E_grid, trials)
    spec_flags = np.array(
        [
            bool(np.any((spectra > E_grid[i]) & (spectra <= E_grid[i + 1])))
            for i in range(len(E_grid) - 1)
        ]
    )
    widths = np.diff(E_grid)
    sym_diff = float(widths[growth ^ spec_flags].sum())
    return {
        "L": L,
        "bc": bc,
        "E_grid": [float(e) for e in E_grid],
        "growth_intervals": [bool(g) for g in growth],
        "spectrum_intervals": [bool(s) for s in spec_flags],
        "sym_diff_measure": sym_diff,
        "n_eigenvalues": int(len(spectra)),
    }
