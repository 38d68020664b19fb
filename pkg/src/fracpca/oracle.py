"""Brute-force grid oracle for the scalar prox, and the self-check harness.

The oracle minimizes the prox objective

    f(beta) = 0.5 * (beta - gamma)^2 + tau * a|beta| / (a|beta| + 1)

directly on a dense grid, independently of the closed form it validates:
a coarse sweep over [-(|gamma|+1), |gamma|+1] locates candidate basins,
each of which is then refined on a grid of the requested fine step.  The
objective has at most one interior local minimum per half-axis plus the
kink at zero, so a handful of refined candidates (0 and gamma always
among them) covers every basin the full fine grid would see.
"""

from dataclasses import dataclass

import numpy as np

from .fraction_prox import PenaltyParams, prox_scalar

OBJ_GAP_TOL = 1e-9
ARG_GAP_TOL = 2e-4

A_CHOICES = (0.5, 1.0, 5.0, 10.0, 50.0)
TAU_LOG10_RANGE = (-4.0, 1.0)
GAMMA_RANGE = (-5.0, 5.0)


def prox_objective(a, tau, gamma, beta):
    """f(beta) for scalar or array beta."""
    beta = np.asarray(beta, dtype=np.float64)
    ab = a * np.abs(beta)
    return 0.5 * (beta - gamma) ** 2 + tau * ab / (ab + 1.0)


def grid_prox_oracle(a, tau, gamma, step=1e-6, coarse_step=1e-4, n_candidates=12):
    """Grid argmin of the prox objective; returns (argmin, minimum).

    Equivalent to a full sweep at ``step`` over [-(|gamma|+1), |gamma|+1]
    but evaluated hierarchically: the ``n_candidates`` best coarse points
    (deduplicated by basin) plus the fixed candidates {0, gamma} each get
    a fine sweep of half-width 2 * coarse_step.
    """
    span = abs(gamma) + 1.0
    xs = np.arange(-span, span + coarse_step, coarse_step)
    f = prox_objective(a, tau, gamma, xs)
    k = min(n_candidates, xs.size)
    idx = np.argpartition(f, k - 1)[:k]
    idx = idx[np.argsort(f[idx])]
    centers = []
    for i in idx:
        c = xs[i]
        if all(abs(c - s) >= 2.0 * coarse_step for s in centers):
            centers.append(float(c))
    centers.extend([0.0, float(gamma)])

    best_arg, best_val = 0.0, float(prox_objective(a, tau, gamma, 0.0))
    for c in centers:
        ys = np.arange(c - 2.0 * coarse_step, c + 2.0 * coarse_step + step, step)
        fy = prox_objective(a, tau, gamma, ys)
        j = int(np.argmin(fy))
        if fy[j] < best_val:
            best_val, best_arg = float(fy[j]), float(ys[j])
    return best_arg, best_val


@dataclass(frozen=True)
class ProxCheckSample:
    """One oracle-vs-closed-form comparison."""

    index: int
    a: float
    tau: float
    gamma: float
    prox: float
    oracle_arg: float
    obj_gap: float
    arg_gap: float
    passed: bool


def sample_parameters(rng):
    """Draw one (a, tau, gamma) triple from the check distribution."""
    a = float(rng.choice(A_CHOICES))
    tau = float(10.0 ** rng.uniform(*TAU_LOG10_RANGE))
    gamma = float(rng.uniform(*GAMMA_RANGE))
    return a, tau, gamma


def run_proxcheck(samples, seed=0, grid_step=1e-6, prox_fn=None):
    """Compare the closed-form prox to the grid oracle on seeded samples.

    A sample passes when the closed form's objective is within OBJ_GAP_TOL
    of the oracle minimum and its argument within ARG_GAP_TOL of the
    oracle argmin.  ``prox_fn(params, gamma)`` defaults to the library
    prox; injectable so the harness itself can be meta-tested against a
    deliberately broken operator.
    """
    if prox_fn is None:
        prox_fn = prox_scalar
    rng = np.random.default_rng(seed)
    rows = []
    for i in range(samples):
        a, tau, gamma = sample_parameters(rng)
        p = float(prox_fn(PenaltyParams(a, tau), gamma))
        oracle_arg, oracle_val = grid_prox_oracle(a, tau, gamma, step=grid_step)
        obj_gap = float(prox_objective(a, tau, gamma, p)) - oracle_val
        arg_gap = abs(p - oracle_arg)
        rows.append(ProxCheckSample(
            index=i, a=a, tau=tau, gamma=gamma, prox=p,
            oracle_arg=oracle_arg, obj_gap=obj_gap, arg_gap=arg_gap,
            passed=(obj_gap <= OBJ_GAP_TOL and arg_gap <= ARG_GAP_TOL),
        ))
    return rows


def write_proxcheck_report(path, rows):
    """Per-sample CSV report of the check (header always written)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("index,a,tau,gamma,prox,oracle_arg,obj_gap,arg_gap,passed\n")
        for r in rows:
            fh.write(
                f"{r.index},{r.a:.17g},{r.tau:.17g},{r.gamma:.17g},"
                f"{r.prox:.17g},{r.oracle_arg:.17g},{r.obj_gap:.17g},"
                f"{r.arg_gap:.17g},{int(r.passed)}\n"
            )
