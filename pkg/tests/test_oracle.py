"""Meta-tests of the grid oracle itself."""

import numpy as np
import pytest

from fracpca import PenaltyParams
from fracpca.fraction_prox import threshold_value
from fracpca.oracle import (
    grid_prox_oracle,
    prox_objective,
    run_proxcheck,
    write_proxcheck_report,
)


def full_grid_argmin(a, tau, gamma, step=1e-6):
    """The literal dense grid sweep the hierarchical oracle must match."""
    span = abs(gamma) + 1.0
    best_arg, best_val = 0.0, float(prox_objective(a, tau, gamma, 0.0))
    # chunked to keep memory flat
    edges = np.linspace(-span, span, 25)
    for lo, hi in zip(edges[:-1], edges[1:]):
        xs = np.arange(lo, hi, step)
        f = prox_objective(a, tau, gamma, xs)
        j = int(np.argmin(f))
        if f[j] < best_val:
            best_val, best_arg = float(f[j]), float(xs[j])
    return best_arg, best_val


@pytest.mark.parametrize("a,tau,gamma", [
    (1.0, 0.1, 1.0),
    (5.0, 0.01, -0.8),
    (1.0, 0.5, 0.55),     # just above the dead zone
    (10.0, 0.004, 0.05),  # near-threshold, soft branch
    (0.5, 2.0, 2.2),      # hard branch
])
def test_hierarchical_oracle_matches_full_grid(a, tau, gamma):
    h_arg, h_val = grid_prox_oracle(a, tau, gamma)
    f_arg, f_val = full_grid_argmin(a, tau, gamma)
    assert h_val <= f_val + 1e-12
    assert abs(h_arg - f_arg) <= 2e-6


def test_oracle_beats_nothing_below_dead_zone():
    a, tau = 1.0, 0.5
    t = threshold_value(PenaltyParams(a, tau))
    arg, val = grid_prox_oracle(a, tau, 0.9 * t)
    assert arg == 0.0
    assert val == prox_objective(a, tau, 0.9 * t, 0.0)


def test_run_proxcheck_passes():
    rows = run_proxcheck(50, seed=123)
    assert len(rows) == 50
    assert all(r.passed for r in rows)
    assert max(r.obj_gap for r in rows) <= 1e-9


def test_run_proxcheck_empty():
    assert run_proxcheck(0, seed=0) == []


def test_proxcheck_catches_negated_phase_bug():
    """A sign error inside the closed form must be flagged, not absorbed."""
    import math

    def broken_prox(params, gamma):
        t = threshold_value(params)
        if abs(gamma) <= t:
            return 0.0
        a, tau = params.a, params.tau
        q = 1.0 + a * abs(gamma)
        c = min(1.0, max(-1.0, 27.0 * tau * a * a / (2.0 * q ** 3) - 1.0))
        phi = -math.acos(c)  # negated phase
        r = ((q / 3.0) * (1.0 + 2.0 * math.cos(phi / 3.0 - math.pi / 3.0)) - 1.0) / a
        return math.copysign(r, gamma)

    rows = run_proxcheck(40, seed=7, prox_fn=broken_prox)
    assert any(not r.passed for r in rows)


def test_proxcheck_report_roundtrip(tmp_path):
    rows = run_proxcheck(5, seed=3)
    path = tmp_path / "report.csv"
    write_proxcheck_report(path, rows)
    lines = path.read_text().splitlines()
    assert lines[0].startswith("index,a,tau,gamma")
    assert len(lines) == 6


def test_proxcheck_sampling_is_seeded():
    a = run_proxcheck(10, seed=42)
    b = run_proxcheck(10, seed=42)
    assert [(r.a, r.tau, r.gamma) for r in a] == [(r.a, r.tau, r.gamma) for r in b]
