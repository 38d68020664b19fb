"""Kernel backend selection and numba/numpy agreement."""

import subprocess
import sys

import numpy as np
import pytest

from fracpca import PenaltyParams, available_backends, get_backend, prox_elementwise, set_backend
from fracpca._kernels_numpy import apply_prox as np_apply_prox
from fracpca.backend_bench import format_benchmark, run_backend_benchmark

numba_available = "numba" in available_backends()
needs_numba = pytest.mark.skipif(not numba_available, reason="numba not importable")


@pytest.fixture
def restore_backend():
    before = get_backend()
    yield
    set_backend(before)


def test_default_backend_resolves():
    assert get_backend() in ("numba", "numpy")


def test_env_var_selects_numpy():
    code = "import fracpca; print(fracpca.get_backend())"
    out = subprocess.run(
        [sys.executable, "-c", code],
        env={"PATH": "/usr/bin:/bin", "FRACPCA_BACKEND": "numpy"},
        capture_output=True, text=True,
    )
    assert out.stdout.strip() == "numpy"


def test_env_var_invalid_rejected():
    code = (
        "import fracpca\n"
        "try:\n"
        "    fracpca.get_backend()\n"
        "    print('no error')\n"
        "except fracpca.ConfigError as e:\n"
        "    print('ConfigError')\n"
    )
    out = subprocess.run(
        [sys.executable, "-c", code],
        env={"PATH": "/usr/bin:/bin", "FRACPCA_BACKEND": "cuda"},
        capture_output=True, text=True,
    )
    assert out.stdout.strip() == "ConfigError"


def test_set_backend_switches(restore_backend):
    set_backend("numpy")
    assert get_backend() == "numpy"
    with pytest.raises(Exception):
        set_backend("fortran")


@needs_numba
def test_backends_agree_to_last_ulp(restore_backend):
    rng = np.random.default_rng(60)
    X = rng.uniform(-5, 5, (40, 30))
    results = {}
    for name in ("numba", "numpy"):
        set_backend(name)
        results[name] = prox_elementwise(PenaltyParams(1.0, 0.1), X)
    a, b = results["numba"], results["numpy"]
    assert np.allclose(a, b, rtol=1e-13, atol=1e-15)
    # the dead zone is exact zero on both
    assert np.array_equal(a == 0.0, b == 0.0)


@needs_numba
def test_backends_same_dead_zone_boundary(restore_backend):
    # boundary membership decided on the same floats on both backends
    p = PenaltyParams(2.0, 0.1)
    t = 0.2  # threshold_value(p)
    X = np.array([[t, np.nextafter(t, 1.0), -t, 0.0]])
    for name in ("numba", "numpy"):
        set_backend(name)
        out = prox_elementwise(p, X)
        assert out[0, 0] == 0.0
        assert out[0, 1] != 0.0
        assert out[0, 2] == 0.0
        assert out[0, 3] == 0.0


def test_repeated_calls_bitwise_stable():
    rng = np.random.default_rng(61)
    X = rng.standard_normal((25, 25))
    p = PenaltyParams(5.0, 0.05)
    a = prox_elementwise(p, X)
    b = prox_elementwise(p, X)
    assert np.array_equal(a, b)


def test_numpy_kernel_bad_index_reporting():
    vals = np.array([1.0, np.nan, 2.0])
    out = np.empty(3)
    assert np_apply_prox(vals, 1.0, 0.1, 0.1, 1e-12, out) == 1


def test_backend_benchmark_runs():
    rows = run_backend_benchmark(size=64, solve_size=24, repeats=1)
    backends = {r.backend for r in rows}
    assert "numpy" in backends
    if numba_available:
        assert "numba" in backends
    text = format_benchmark(rows)
    assert "elementwise prox" in text
    assert "solve" in text
