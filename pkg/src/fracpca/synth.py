"""Synthetic low-rank + sparse benchmark problems and the experiment grids.

A problem is an m-by-m matrix M = L + S where L = (1/m) A B for A (m-by-r)
and B (r-by-m) with i.i.d. uniform [0,1) entries, and S places +-1 spikes
(fair coin per spike) on round(spr * m^2) support positions drawn without
replacement.  All randomness comes from numpy's seeded PCG64 generator in
a fixed draw order (A, B, support, signs), so problems are reproducible
cross-platform from (m, r, spr, seed) alone.
"""

import hashlib
import time
from dataclasses import dataclass

import numpy as np

from .solver import SolverConfig, solve
from .thresholding import matrix_rank


@dataclass(frozen=True)
class SyntheticProblem:
    """Ground truth (L_true, S_true) and observation M = L_true + S_true."""

    m: int
    r: int
    spr: float
    seed: int
    L_true: np.ndarray
    S_true: np.ndarray
    M: np.ndarray


@dataclass(frozen=True)
class TrialReport:
    """One benchmark cell outcome (one generated problem, one solve)."""

    a1: float
    a2: float
    m: int
    r: int
    spr: float
    seed: int
    rel_err_M: float
    rel_err_L: float
    rel_err_S: float
    recovered_rank: int
    recovered_nnz: int
    iterations: int
    wall_time: float
    status: str = "ok"


def generate_problem(m, r, spr, seed):
    """Build one seeded problem instance.

    Requires 1 <= r < m and 0 <= spr <= 1.  nnz(S_true) is exactly
    round(spr * m^2) and every nonzero of S_true is exactly +1 or -1.
    L_true is adjusted on the corruption support (by one ulp-level nudge
    per entry) so that M - L_true - S_true is exactly the zero matrix in
    floating point; rank is unaffected at the package rank tolerance.
    """
    if not 1 <= r < m:
        raise ValueError(f"need 1 <= r < m, got r={r}, m={m}")
    if not 0.0 <= spr <= 1.0:
        raise ValueError(f"need 0 <= spr <= 1, got {spr}")
    rng = np.random.default_rng(seed)
    A = rng.random((m, r))
    B = rng.random((r, m))
    L = (1.0 / m) * (A @ B)
    nnz = round(spr * m * m)
    support = rng.choice(m * m, size=nnz, replace=False)
    signs = np.where(rng.random(nnz) < 0.5, -1.0, 1.0)
    S = np.zeros(m * m)
    S[support] = signs
    S = S.reshape(m, m)
    M = L + S
    L.flat[support] = M.flat[support] - signs
    return SyntheticProblem(m=m, r=r, spr=spr, seed=seed, L_true=L, S_true=S, M=M)


def relative_errors(problem, result):
    """Frobenius relative errors (rel_err_M, rel_err_L, rel_err_S).

    Each uses a max(1, ||.||_F) denominator guard; rel_err_M measures the
    split residual M - L* - S*, the others distance to ground truth.
    """
    if result.L_star.shape != problem.M.shape:
        raise ValueError("result and problem shapes differ")
    rel_m = float(np.linalg.norm(problem.M - result.L_star - result.S_star)) / max(
        1.0, float(np.linalg.norm(problem.M))
    )
    rel_l = float(np.linalg.norm(problem.L_true - result.L_star)) / max(
        1.0, float(np.linalg.norm(problem.L_true))
    )
    rel_s = float(np.linalg.norm(problem.S_true - result.S_star)) / max(
        1.0, float(np.linalg.norm(problem.S_true))
    )
    return rel_m, rel_l, rel_s


def cell_seed(base_seed, a1, a2, m, r, spr, trial):
    """Deterministic per-cell seed: base_seed XOR sha256(cell coordinates).

    Documented so any table cell can be re-run in isolation:
    the hash input is "a1|a2|m|r|spr|trial" with floats in repr form.
    """
    key = f"{a1!r}|{a2!r}|{m}|{r}|{spr!r}|{trial}".encode()
    h = int.from_bytes(hashlib.sha256(key).digest()[:8], "little")
    return (int(base_seed) ^ h) & (2**64 - 1)


def table_cells(table):
    """The (a1, a2, m, r, spr) grids of the three benchmark tables."""
    if table == 1:
        return [
            (float(a), float(a), 400, r, 0.15)
            for a in (1, 5, 10, 50, 80)
            for r in (35, 40, 50)
        ]
    if table == 2:
        spr = 0.20
    elif table == 3:
        spr = 0.25
    else:
        raise ValueError(f"unknown table {table!r}; expected 1, 2 or 3")
    return [
        (1.0, 1.0, m, r, spr)
        for m in (500, 600, 700, 800)
        for r in (m // 10, m // 10 + 10, m // 10 + 20)
    ]


def run_table(cells, trials_per_cell=1, base_seed=0, **config_overrides):
    """Run one solve per (cell, trial) and collect TrialReports.

    Every cell gets a fresh problem seeded from (base_seed, cell, trial)
    and is solved with target_sparsity = nnz(S_true).  Extra keyword
    arguments (tol, max_iter, rho_factor, ...) are forwarded to
    SolverConfig.  A failing cell is recorded with status "failed: ..."
    and NaN metrics instead of aborting the run; report order follows
    cell order regardless of failures.
    """
    reports = []
    for a1, a2, m, r, spr in cells:
        for trial in range(trials_per_cell):
            seed = cell_seed(base_seed, a1, a2, m, r, spr, trial)
            start = time.perf_counter()
            try:
                problem = generate_problem(m, r, spr, seed)
                gamma = int(np.count_nonzero(problem.S_true))
                config = SolverConfig(
                    target_sparsity=gamma, a1=a1, a2=a2, **config_overrides
                )
                result = solve(problem.M, config)
                rel_m, rel_l, rel_s = relative_errors(problem, result)
                reports.append(TrialReport(
                    a1=a1, a2=a2, m=m, r=r, spr=spr, seed=seed,
                    rel_err_M=rel_m, rel_err_L=rel_l, rel_err_S=rel_s,
                    recovered_rank=result.recovered_rank,
                    recovered_nnz=result.recovered_nnz,
                    iterations=result.iterations,
                    wall_time=time.perf_counter() - start,
                ))
            except Exception as exc:  # record, keep going
                reports.append(TrialReport(
                    a1=a1, a2=a2, m=m, r=r, spr=spr, seed=seed,
                    rel_err_M=float("nan"), rel_err_L=float("nan"),
                    rel_err_S=float("nan"), recovered_rank=-1,
                    recovered_nnz=-1, iterations=0,
                    wall_time=time.perf_counter() - start,
                    status=f"failed: {exc}",
                ))
    return reports


def true_rank(problem):
    """Rank of the generated low-rank component at the package tolerance."""
    return matrix_rank(problem.L_true)
