"""Numba-compiled hot kernels (elementwise fraction-function prox)."""

import math

from numba import njit

_THIRD_PI = math.pi / 3.0


@njit(cache=True)
def apply_prox(values, a, tau, thresh, slack, out):
    """Elementwise prox of a flat float64 array; -1 on success, else first bad index."""
    for i in range(values.size):
        v = values[i]
        if not math.isfinite(v):
            return i
        av = abs(v)
        if av <= thresh:
            out[i] = 0.0
        else:
            q = 1.0 + a * av
            c = 27.0 * tau * a * a / (2.0 * q * q * q) - 1.0
            if c > 1.0 + slack:
                return i
            if c > 1.0:
                c = 1.0
            elif c < -1.0:
                c = -1.0
            r = ((q / 3.0) * (1.0 + 2.0 * math.cos(math.acos(c) / 3.0 - _THIRD_PI)) - 1.0) / a
            if r < 0.0:  # cancellation near the dead zone can round below 0
                r = 0.0
            out[i] = -r if v < 0.0 else r
    return -1


@njit(cache=True)
def apply_root(values, a, tau, slack, out):
    """Nonzero prox root everywhere, no dead-zone branch; -1 or first bad index."""
    for i in range(values.size):
        v = values[i]
        if not math.isfinite(v):
            return i
        av = abs(v)
        q = 1.0 + a * av
        c = 27.0 * tau * a * a / (2.0 * q * q * q) - 1.0
        if c > 1.0 + slack:
            return i
        if c > 1.0:
            c = 1.0
        elif c < -1.0:
            c = -1.0
        r = ((q / 3.0) * (1.0 + 2.0 * math.cos(math.acos(c) / 3.0 - _THIRD_PI)) - 1.0) / a
        if r < 0.0:
            r = 0.0
        out[i] = -r if v < 0.0 else r
    return -1
