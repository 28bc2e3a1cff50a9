"""Batch experiment driver: config in, reports plus a run manifest out.

Every run writes machine-readable JSON, plot-ready CSV and a manifest
listing the produced files together with the exact config snapshot needed
to reproduce them.  Outputs are a pure function of (config, seed); the
parallelism degree never changes any report byte (the manifest's wall
clock is the single non-reproducible field).
"""

from __future__ import annotations

import argparse
import copy
import csv
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, bounds, colouring, counterexample, ids, pointset
from .hamiltonian import SingleSitePotential
from .ids import ExperimentConfig
from .pointset import PointSetSpec, Window
from .spectrum import EOnSpectrumError

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2
EXIT_INTERNAL = 3

OUT_ENV = "DELONE_LAB_OUT"


class ConfigError(ValueError):
    pass


class NumericalFailure(RuntimeError):
    pass


def _geomspace(lo, hi, n):
    return [float(v) for v in np.geomspace(lo, hi, n)]


PRESETS = {
    "bracketing": {
        "spec": {"kind": "lattice", "d": 1, "q": 1.0},
        "potential": {"kind": "box", "u_plus": 1.0, "a": 0.5},
        "dist": {"kind": "uniform", "w": 1.0},
        "h": 0.25,
        "n_samples": 30,
        "n_translates": 4,
        "L": 16.0,
        "E_grid": [round(0.1 * i, 2) for i in range(1, 11)],
    },
    "convergence": {
        "spec": {"kind": "lattice", "d": 1, "q": 1.0},
        "potential": {"kind": "box", "u_plus": 1.0, "a": 0.5},
        "dist": {"kind": "uniform", "w": 1.0},
        "h": 0.25,
        "n_samples": 40,
        "n_translates": 2,
        "E": 0.5,
        "L_list": [8.0, 16.0, 32.0, 64.0],
    },
    "subadditivity": {
        "spec": {"kind": "lattice", "d": 1, "q": 1.0},
        "potential": {"kind": "box", "u_plus": 1.0, "a": 0.5},
        "dist": {"kind": "uniform", "w": 0.3},
        "h": 0.25,
        "n_samples": 100,
        "E": 0.13,
        "L_small": 8.0,
        "k": 2,
    },
    "temple": {
        "spec": {"kind": "lattice", "d": 1, "q": 1.0},
        "potential": {"kind": "box", "u_plus": 1.0, "a": 0.5},
        "dist": {"kind": "uniform", "w": 1.0},
        "h": 0.25,
        "n_samples": 100,
        "L_list": [8.0, 16.0, 32.0],
        "h_slack": 0.05,
    },
    "ld-rate": {
        "dist": {"kind": "uniform", "w": 1.0},
        "r": 1.0,
        "R": 2.0,
        "L_list": [8.0, 16.0, 24.0, 32.0],
        "E_level": 0.35,
        "n_samples": 10000,
        "d": 1,
    },
    "wegner": {
        "spec": {"kind": "lattice", "d": 1, "q": 1.0},
        "potential": {"kind": "box", "u_plus": 1.0, "a": 0.5},
        "dist": {"kind": "uniform", "w": 1.0},
        "h": 0.25,
        "n_samples": 600,
        "n_translates": 2,
        "E0": 0.6,
        "widths": [0.02, 0.04, 0.08],
        "L_list": [16.0, 32.0],
    },
    "lifshitz-d1": {
        "spec": {"kind": "lattice", "d": 1, "q": 8.0},
        "potential": {"kind": "box", "u_plus": 1.0, "a": 2.5},
        "dist": {"kind": "uniform", "w": 1.0},
        "h": 2.0,
        "n_samples": 2500,
        "n_translates": 2,
        "E_grid": _geomspace(0.01, 0.125, 10),
        "L_factor": 4.0,
        "L_max": 256.0,
        "n_bootstrap": 100,
        "min_uncensored": 6,
    },
    "lifshitz-d2": {
        "spec": {"kind": "lattice", "d": 2, "q": 16.0},
        "potential": {"kind": "box", "u_plus": 1.0, "a": 5.0},
        "dist": {"kind": "uniform", "w": 1.0},
        "h": 4.0,
        "n_samples": 80,
        "n_translates": 2,
        "E_grid": _geomspace(0.01, 0.1, 8),
        "L_factor": 4.0,
        "L_max": 128.0,
        "n_bootstrap": 50,
        "min_uncensored": 4,
    },
    "counterexample": {
        "q1": 1,
        "q2": 2,
        "annulus_alpha": 2.0,
        "L1": 8.0,
        "k_max": 3,
        "d": 1,
        "E": 1.5,
        "h": 0.25,
        "potential": {"kind": "box", "u_plus": 2.0, "a": 0.5},
    },
    "bounds": {
        "d": 1,
        "R": 10.0,
        "r": 1.0,
        "p": 1,
        "C1": 1.0,
        "C2": float(np.e),
        "C1p": 1.0,
        "C2p": float(np.e),
        "C3": 1.0,
    },
    "generate": {
        "spec": {"kind": "lattice", "d": 1, "q": 1.0},
        "dist": {"kind": "uniform", "w": 1.0},
        "window_center": [0.0],
        "window_side": 32.0,
    },
    "verify": {
        "spec": {"kind": "lattice", "d": 1, "q": 1.0},
        "window_center": [0.0],
        "window_side": 32.0,
        "probe_spacing": 0.25,
    },
    "ids": {
        "spec": {"kind": "lattice", "d": 1, "q": 1.0},
        "potential": {"kind": "box", "u_plus": 1.0, "a": 0.5},
        "dist": {"kind": "uniform", "w": 1.0},
        "h": 0.25,
        "n_samples": 40,
        "n_translates": 2,
        "L": 32.0,
        "E_grid": [round(0.1 * i, 2) for i in range(0, 21)],
    },
}

DEFAULT_PRESET = {
    "generate": "generate",
    "verify": "verify",
    "ids": "ids",
    "convergence": "convergence",
    "bracketing": "bracketing",
    "subadditivity": "subadditivity",
    "temple": "temple",
    "ld-rate": "ld-rate",
    "wegner": "wegner",
    "lifshitz": "lifshitz-d1",
    "counterexample": "counterexample",
    "bounds": "bounds",
}


def _need(cfg: dict, key: str, types):
    if key not in cfg:
        raise ConfigError(f"missing config key '{key}'")
    val = cfg[key]
    if not isinstance(val, types):
        raise ConfigError(f"config key '{key}' has type {type(val).__name__}")
    return val


def parse_spec(cfg: dict) -> PointSetSpec:
    raw = _need(cfg, "spec", dict)
    kind = _need(raw, "kind", str)
    d = int(_need(raw, "d", int))
    try:
        if kind == "lattice":
            return pointset.lattice(float(raw.get("q", 1.0)), d)
        if kind == "perturbed_lattice":
            return pointset.perturbed_lattice(
                float(raw.get("q", 1.0)),
                float(raw.get("max_shift", 0.0)),
                int(raw.get("shift_seed", 0)),
                d,
            )
        if kind == "annulus_example":
            return pointset.annulus_example(
                int(raw.get("q1", 1)),
                int(raw.get("q2", 2)),
                float(raw.get("annulus_alpha", 2.0)),
                float(raw.get("L1", 8.0)),
                d,
            )
    except ValueError as exc:
        raise ConfigError(f"config key 'spec': {exc}") from exc
    raise ConfigError(f"config key 'spec.kind' unknown: {kind!r}")


def parse_potential(cfg: dict) -> SingleSitePotential:
    raw = _need(cfg, "potential", dict)
    try:
        return SingleSitePotential(
            kind=_need(raw, "kind", str),
            u_plus=float(_need(raw, "u_plus", (int, float))),
            a=float(_need(raw, "a", (int, float))),
        )
    except ValueError as exc:
        raise ConfigError(f"config key 'potential': {exc}") from exc


def parse_dist(cfg: dict) -> colouring.SingleSiteDistribution:
    raw = _need(cfg, "dist", dict)
    try:
        return colouring.SingleSiteDistribution(
            kind=_need(raw, "kind", str),
            w=float(_need(raw, "w", (int, float))),
            beta=float(raw.get("beta", 1.0)),
        )
    except ValueError as exc:
        raise ConfigError(f"config key 'dist': {exc}") from exc


def build_experiment_config(cfg: dict, seed: int, threads: int) -> ExperimentConfig:
    try:
        return ExperimentConfig(
            spec=parse_spec(cfg),
            u=parse_potential(cfg),
            dist=parse_dist(cfg),
            h=float(_need(cfg, "h", (int, float))),
            master_seed=seed,
            n_samples=int(cfg.get("n_samples", 8)),
            n_translates=int(cfg.get("n_translates", 1)),
            E_grid=tuple(cfg.get("E_grid", ())),
            L_list=tuple(cfg.get("L_list", ())),
            threads=threads,
            L_factor=float(cfg.get("L_factor", 4.0)),
            L_max=float(cfg.get("L_max", 128.0)),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def write_json(path: Path, payload) -> Path:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def write_csv(path: Path, header, rows) -> Path:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(v)) if isinstance(v, float) else v for v in row])
    return path


# ---------------------------------------------------------------------------
# subcommand implementations; each returns (outputs, censoring) dictionaries


def run_generate(cfg, seed, threads, out):
    spec = parse_spec(cfg)
    center = cfg.get("window_center", [0.0] * spec.d)
    w = Window(tuple(float(c) for c in center), float(_need(cfg, "window_side", (int, float))))
    pts = pointset.materialize(spec, w)
    p_csv = out / "points.csv"
    pointset.export_points_csv(p_csv, pts)
    outputs = {"points": str(p_csv)}
    if "dist" in cfg:
        cw = colouring.sample_colouring(spec, w, parse_dist(cfg), seed, 0)
        c_csv = out / "coloured.csv"
        colouring.export_colouring_csv(c_csv, cw)
        outputs["coloured"] = str(c_csv)
    return outputs, {}


def run_verify(cfg, seed, threads, out):
    spec = parse_spec(cfg)
    center = cfg.get("window_center", [0.0] * spec.d)
    w = Window(tuple(float(c) for c in center), float(_need(cfg, "window_side", (int, float))))
    cert = pointset.verify_delone(spec, w, float(_need(cfg, "probe_spacing", (int, float))))
    path = write_json(
        out / "certificate.json",
        {
            "r_hat": cert.r_hat,
            "R_hat": cert.R_hat,
            "probe_spacing": cert.probe_spacing,
            "window_center": list(cert.window_checked.center),
            "window_side": cert.window_checked.side,
            "spec": cfg["spec"],
        },
    )
    return {"certificate": str(path)}, {}


def run_ids(cfg, seed, threads, out):
    ecfg = build_experiment_config(cfg, seed, threads)
    L = float(_need(cfg, "L", (int, float)))
    outputs = {}
    n_trials = ecfg.n_samples * ecfg.n_translates
    for bc in ecfg.bc:
        trials = ids.nu_curve_values(ecfg, ecfg.E_grid, L, bc)
        means = [float(v) for v in trials.mean(axis=0)]
        if n_trials > 1:
            errs = [float(v) for v in trials.std(axis=0, ddof=1) / np.sqrt(n_trials)]
        else:
            errs = [0.0] * len(means)
        rows = list(zip([float(e) for e in ecfg.E_grid], means, errs))
        outputs[f"curve_{bc}_csv"] = str(
            write_csv(out / f"ids_{bc}.csv", ["E", "value", "stderr"], rows)
        )
        outputs[f"curve_{bc}_json"] = str(
            write_json(
                out / f"ids_{bc}.json",
                {
                    "meta": {"L": L, "bc": bc, "samples": ecfg.n_samples * ecfg.n_translates},
                    "energies": [float(e) for e in ecfg.E_grid],
                    "values": means,
                    "stderr": errs,
                },
            )
        )
    return outputs, {}


def run_convergence(cfg, seed, threads, out):
    ecfg = build_experiment_config(cfg, seed, threads)
    report = ids.ids_convergence(ecfg, float(_need(cfg, "E", (int, float))))
    rows = []
    for bc, tab in report["table"].items():
        for row in tab["rows"]:
            rows.append((bc, row["L"], row["mean"], row["stderr"]))
    outputs = {
        "report": str(write_json(out / "convergence.json", report)),
        "table": str(write_csv(out / "convergence.csv", ["bc", "L", "mean", "stderr"], rows)),
    }
    return outputs, {}


def run_bracketing(cfg, seed, threads, out):
    ecfg = build_experiment_config(cfg, seed, threads)
    L = float(_need(cfg, "L", (int, float)))
    energies = list(ecfg.E_grid) or [float(_need(cfg, "E", (int, float)))]
    reports = [ids.bracketing_check(ecfg, float(E), L) for E in energies]
    total_viol = sum(r.pathwise_violations for r in reports)
    rows = [
        (r.E, r.dirichlet_mean, r.dirichlet_stderr, r.neumann_mean, r.neumann_stderr, r.pathwise_violations)
        for r in reports
    ]
    outputs = {
        "report": str(
            write_json(
                out / "bracketing.json",
                {"L": L, "reports": [r.as_dict() for r in reports], "total_violations": total_viol},
            )
        ),
        "table": str(
            write_csv(
                out / "bracketing.csv",
                ["E", "dirichlet_mean", "dirichlet_stderr", "neumann_mean", "neumann_stderr", "violations"],
                rows,
            )
        ),
    }
    if total_viol:
        raise AssertionError(f"{total_viol} pathwise bracketing violations")
    return outputs, {}


def run_subadditivity(cfg, seed, threads, out):
    ecfg = build_experiment_config(cfg, seed, threads)
    rep = ids.subadditivity_check(
        ecfg,
        float(_need(cfg, "E", (int, float))),
        float(_need(cfg, "L_small", (int, float))),
        int(_need(cfg, "k", int)),
    )
    outputs = {"report": str(write_json(out / "subadditivity.json", rep))}
    if rep["neumann_violations"] or rep["dirichlet_violations"]:
        raise AssertionError("cube-decomposition inequality violated")
    return outputs, {}


def run_temple(cfg, seed, threads, out):
    ecfg = build_experiment_config(cfg, seed, threads)
    reports = [
        ids.temple_check(ecfg, float(L), int(cfg.get("n_samples", 100)), float(cfg.get("h_slack", 0.05)))
        for L in _need(cfg, "L_list", list)
    ]
    outputs = {"report": str(write_json(out / "temple.json", {"reports": reports}))}
    if any(r["violations"] for r in reports):
        raise AssertionError("Temple lower bound violated beyond slack")
    return outputs, {}


def run_ld_rate(cfg, seed, threads, out):
    rep = ids.large_deviation_rate(
        parse_dist(cfg),
        float(_need(cfg, "r", (int, float))),
        float(_need(cfg, "R", (int, float))),
        [float(L) for L in _need(cfg, "L_list", list)],
        float(_need(cfg, "E_level", (int, float))),
        int(_need(cfg, "n_samples", int)),
        d=int(cfg.get("d", 1)),
        master_seed=seed,
        trunc=cfg.get("trunc"),
    )
    rows = [(r["L"], r["x"], r["prob"], int(r["censored"])) for r in rep["rows"]]
    outputs = {
        "report": str(write_json(out / "ld_rate.json", rep)),
        "table": str(write_csv(out / "ld_rate.csv", ["L", "x", "prob", "censored"], rows)),
    }
    censoring = {"ld_censored": rep["censored"]}
    if rep["slope"] is None:
        raise NumericalFailure("all large-deviation probabilities censored")
    if rep["slope"] <= 0:
        raise AssertionError(f"large-deviation rate {rep['slope']} not positive")
    if rep["r_squared"] < 0.9:
        raise AssertionError(f"volume scaling not linear: R^2 = {rep['r_squared']:.3f}")
    return outputs, censoring


def run_wegner(cfg, seed, threads, out):
    ecfg = build_experiment_config(cfg, seed, threads)
    reports = [
        ids.wegner_scan(
            ecfg,
            float(_need(cfg, "E0", (int, float))),
            [float(w) for w in _need(cfg, "widths", list)],
            float(L),
        )
        for L in _need(cfg, "L_list", list)
    ]
    rows = []
    for rep in reports:
        for w, m, s in zip(rep["widths"], rep["means"], rep["stderrs"]):
            rows.append((rep["L"], w, m, s))
    outputs = {
        "report": str(write_json(out / "wegner.json", {"reports": reports})),
        "table": str(write_csv(out / "wegner.csv", ["L", "width", "mean_count", "stderr"], rows)),
    }
    if any(rep["slope"] <= 0 for rep in reports):
        raise AssertionError("interval count slope not positive")
    return outputs, {}


def run_lifshitz(cfg, seed, threads, out):
    ecfg = build_experiment_config(cfg, seed, threads)
    fit = ids.lifshitz_fit(ecfg, n_bootstrap=int(cfg.get("n_bootstrap", 100)))
    control = ids.lifshitz_free_control(ecfg)
    payload = {"fit": fit, "control": control}
    rows = [(p["E"], p["L"], p["nu"]) for p in fit["points"]]
    outputs = {
        "report": str(write_json(out / "lifshitz.json", payload)),
        "table": str(write_csv(out / "lifshitz.csv", ["E", "L", "nu"], rows)),
    }
    censoring = {"lifshitz_censored": fit["censored"]}
    if fit["n_uncensored"] < int(cfg.get("min_uncensored", 6)):
        raise NumericalFailure(
            f"only {fit['n_uncensored']} uncensored energies (need {cfg.get('min_uncensored', 6)})"
        )
    return outputs, censoring


def run_counterexample(cfg, seed, threads, out):
    q1, q2 = int(_need(cfg, "q1", int)), int(_need(cfg, "q2", int))
    alpha = float(_need(cfg, "annulus_alpha", (int, float)))
    L1 = float(_need(cfg, "L1", (int, float)))
    k_max = int(_need(cfg, "k_max", int))
    d = int(cfg.get("d", 1))
    freq = counterexample.frequency_sequence(q1, q2, alpha, L1, k_max, d=d)
    osc = counterexample.ids_oscillation(
        q1,
        q2,
        alpha,
        L1,
        k_max,
        E=float(_need(cfg, "E", (int, float))),
        h=float(_need(cfg, "h", (int, float))),
        u=parse_potential(cfg),
        d=d,
    )
    freq.to_json(out / "frequency.json")
    freq.to_csv(out / "frequency.csv")
    osc.to_json(out / "ids_oscillation.json")
    osc.to_csv(out / "ids_oscillation.csv")
    outputs = {
        "frequency_json": str(out / "frequency.json"),
        "frequency_csv": str(out / "frequency.csv"),
        "ids_oscillation_json": str(out / "ids_oscillation.json"),
        "ids_oscillation_csv": str(out / "ids_oscillation.csv"),
    }
    return outputs, {}


def run_bounds(cfg, seed, threads, out):
    rep = bounds.bounds_report(
        d=int(_need(cfg, "d", int)),
        R=float(_need(cfg, "R", (int, float))),
        r=float(cfg.get("r", 1.0)),
        p=int(cfg.get("p", 1)),
        u_plus=float(cfg.get("u_plus", 1.0)),
        u_minus=float(cfg.get("u_minus", 1.0)),
        eps_u=float(cfg.get("eps_u", 0.5)),
        delta_u=float(cfg.get("delta_u", 0.5)),
        C1=float(cfg.get("C1", 1.0)),
        C2=float(cfg.get("C2", np.e)),
        C1p=float(cfg.get("C1p", 1.0)),
        C2p=float(cfg.get("C2p", np.e)),
        C3=float(cfg.get("C3", 1.0)),
        log_base=str(cfg.get("log_base", "ln")),
    )
    rep.to_json(out / "bounds.json")
    sweep = out / "thresholds.csv"
    R_values = np.geomspace(max(2.0 / rep.inputs["C2"], 1.5), 1e4, 60)
    bounds.export_threshold_sweep(
        sweep,
        rep.inputs["d"],
        rep.inputs["C1"],
        rep.inputs["C2"],
        rep.inputs["C1p"],
        rep.inputs["C2p"],
        R_values,
        log_base=rep.log_base,
    )
    print(json.dumps(json.load(open(out / "bounds.json")), indent=2, sort_keys=True))
    return {"report": str(out / "bounds.json"), "sweep": str(sweep)}, {}


RUNNERS = {
    "generate": run_generate,
    "verify": run_verify,
    "ids": run_ids,
    "convergence": run_convergence,
    "bracketing": run_bracketing,
    "subadditivity": run_subadditivity,
    "temple": run_temple,
    "ld-rate": run_ld_rate,
    "wegner": run_wegner,
    "lifshitz": run_lifshitz,
    "counterexample": run_counterexample,
    "bounds": run_bounds,
}


def apply_override(cfg: dict, item: str):
    if "=" not in item:
        raise ConfigError(f"override '{item}' is not KEY=VALUE")
    key, raw = item.split("=", 1)
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    node = cfg
    parts = key.split(".")
    for part in parts[:-1]:
        if part not in node or not isinstance(node[part], dict):
            node[part] = {}
        node = node[part]
    node[parts[-1]] = value


def load_config(args) -> dict:
    cfg: dict = {}
    if args.preset:
        if args.preset not in PRESETS:
            raise ConfigError(f"unknown preset '{args.preset}' (have: {', '.join(sorted(PRESETS))})")
        cfg = copy.deepcopy(PRESETS[args.preset])
    elif args.config is None:
        default = DEFAULT_PRESET[args.subcommand]
        cfg = copy.deepcopy(PRESETS[default])
    if args.config:
        path = Path(args.config)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        try:
            loaded = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ConfigError("config file must hold a JSON object")
        cfg.update(loaded)
    for item in args.override or []:
        apply_override(cfg, item)
    return cfg


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="delone-lab",
        description="Finite-volume spectral experiments for random operators on Delone sets",
    )
    parser.add_argument("subcommand", choices=sorted(RUNNERS))
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--preset", help="named preset configuration")
    parser.add_argument("--seed", type=int, default=11, help="master seed")
    parser.add_argument("--out", help=f"output directory (default ${OUT_ENV} or ./out)")
    parser.add_argument("--threads", type=int, default=0, help="worker threads (0 = all cores)")
    parser.add_argument(
        "--override",
        action="append",
        metavar="KEY=VALUE",
        help="config override, dotted keys allowed (repeatable)",
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.time()
    try:
        cfg = load_config(args)
        out = Path(args.out or os.environ.get(OUT_ENV, "out")) / args.subcommand
        out.mkdir(parents=True, exist_ok=True)
        threads = args.threads if args.threads > 0 else (os.cpu_count() or 1)
        outputs, censoring = RUNNERS[args.subcommand](cfg, args.seed, threads, out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (AssertionError, EOnSpectrumError) as exc:
        print(f"internal assertion: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        # precondition violations from the experiment layer count as
        # configuration problems (the message names the offending quantity)
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    # wall clock is the single non-reproducible manifest field; the
    # parallelism degree is deliberately not recorded next to results
    manifest = {
        "subcommand": args.subcommand,
        "config": cfg,
        "code_version": __version__,
        "master_seed": args.seed,
        "wall_clock_s": round(time.time() - t0, 3),
        "outputs": {k: str(Path(v).name) for k, v in outputs.items()},
        "censoring": censoring,
    }
    write_json(out / "manifest.json", manifest)
    print(f"wrote {len(outputs)} report file(s) to {out}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
