"""Benchmark the compiled inertia kernel against the pure-numpy fallback.

Representative workloads: tridiagonal chains (d=1 windows), banded 2-D and
3-D grids.  Both backends must return identical counts; the table reports
wall time per factorization and the speedup.

Run:
    python benchmarks/bench_inertia.py
"""

import time

from deloneanderson import kernels
from deloneanderson.colouring import sample_colouring, uniform_dist
from deloneanderson.hamiltonian import assemble, box_potential
from deloneanderson.pointset import Window, lattice


def build_case(d, m, h=0.5):
    L = m * h
    cw = sample_colouring(lattice(1.0, d), Window((0.0,) * d, L + 6), uniform_dist(1.0), 7, 0)
    M = assemble(cw, box_potential(1.0, 1.6 * h), L, (0.0,) * d, h, "neumann")
    band = M.band()
    band[:, 0] -= 0.8  # shift into the indefinite regime
    return band


def time_backend(band, backend, repeats):
    counts = []
    best = float("inf")
    for _ in range(repeats):
        work = band.copy()
        t0 = time.perf_counter()
        neg, ok = kernels.ldlt_negcount(work, 1e-13, backend=backend)
        best = min(best, time.perf_counter() - t0)
        assert ok
        counts.append(neg)
    assert len(set(counts)) == 1
    return counts[0], best


def main():
    if kernels.BACKEND != "cython":
        print("note: compiled kernel unavailable, timing the fallback against itself")
    cases = [
        ("d=1 chain, n=1024", build_case(1, 1024)),
        ("d=1 chain, n=16384", build_case(1, 16384)),
        ("d=2 grid, 32x32", build_case(2, 32)),
        ("d=2 grid, 64x64", build_case(2, 64)),
        ("d=3 grid, 10x10x10", build_case(3, 10, h=1.0)),
    ]
    print(f"{'case':24} {'n':>7} {'band':>5} {'python':>12} {'cython':>12} {'speedup':>8}")
    for name, band in cases:
        n, bw = band.shape[0], band.shape[1] - 1
        reps = 3 if n * bw * bw > 5_000_000 else 10
        count_py, t_py = time_backend(band, "python", reps)
        if kernels.BACKEND == "cython":
            count_cy, t_cy = time_backend(band, "cython", reps)
            assert count_py == count_cy, "backend counts disagree"
            print(
                f"{name:24} {n:>7} {bw:>5} {t_py * 1e3:>10.2f}ms {t_cy * 1e3:>10.2f}ms "
                f"{t_py / t_cy:>7.1f}x"
            )
        else:
            print(f"{name:24} {n:>7} {bw:>5} {t_py * 1e3:>10.2f}ms {'-':>12} {'-':>8}")


if __name__ == "__main__":
    main()
