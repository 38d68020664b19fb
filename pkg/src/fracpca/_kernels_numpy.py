"""Pure-numpy fallback kernels.

Same contracts as the numba kernels: results may differ from the numba
path in the last ulp (numpy ufuncs vs libm), never more.
"""

import numpy as np

_THIRD_PI = np.pi / 3.0


def apply_prox(values, a, tau, thresh, slack, out):
    """Elementwise fraction-function prox of a flat float64 array.

    Entries with |v| <= thresh map to exact zero; the rest get the
    closed-form nonzero root.  Returns the first offending flat index
    (non-finite entry, or arccos argument > 1 + slack) or -1 on success.
    """
    finite = np.isfinite(values)
    if not finite.all():
        return int(np.argmin(finite))
    av = np.abs(values)
    keep = av > thresh
    out[:] = 0.0
    if keep.any():
        q = 1.0 + a * av[keep]
        c = 27.0 * tau * a * a / (2.0 * q * q * q) - 1.0
        over = c > 1.0 + slack
        if over.any():
            return int(np.flatnonzero(keep)[np.argmax(over)])
        np.clip(c, -1.0, 1.0, out=c)
        root = ((q / 3.0) * (1.0 + 2.0 * np.cos(np.arccos(c) / 3.0 - _THIRD_PI)) - 1.0) / a
        np.maximum(root, 0.0, out=root)  # cancellation near the dead zone can round below 0
        out[keep] = np.where(values[keep] < 0.0, -root, root)
    return -1


def apply_root(values, a, tau, slack, out):
    """Nonzero prox root for every entry, no dead-zone branch.

    Returns the first flat index whose arccos argument exceeds 1 + slack
    (the entry is below the formula's domain), or -1 on success.
    """
    finite = np.isfinite(values)
    if not finite.all():
        return int(np.argmin(finite))
    av = np.abs(values)
    q = 1.0 + a * av
    c = 27.0 * tau * a * a / (2.0 * q * q * q) - 1.0
    over = c > 1.0 + slack
    if over.any():
        return int(np.argmax(over))
    np.clip(c, -1.0, 1.0, out=c)
    root = ((q / 3.0) * (1.0 + 2.0 * np.cos(np.arccos(c) / 3.0 - _THIRD_PI)) - 1.0) / a
    np.maximum(root, 0.0, out=root)
    out[:] = np.where(values < 0.0, -root, root)
    return -1
