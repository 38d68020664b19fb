"""Kernel backend selection.

The elementwise prox kernels exist twice: a numba ``@njit`` build and a
pure-numpy fallback.  The active backend is chosen by the FRACPCA_BACKEND
environment variable ("numba", "numpy", or "auto"; default "auto", which
prefers numba and silently falls back to numpy when numba is missing).
``set_backend`` overrides the choice at runtime, e.g. for benchmarking.
"""

import os

from .errors import ConfigError

_ENV_VAR = "FRACPCA_BACKEND"
_VALID = ("auto", "numba", "numpy")

_requested = None  # set_backend override; None means "use the env var"
_resolved = None   # cached (name, module) once a kernel module is loaded


def _load(name):
    if name == "numpy":
        from . import _kernels_numpy
        return "numpy", _kernels_numpy
    if name == "numba":
        from . import _kernels_numba
        return "numba", _kernels_numba
    # auto: numba if importable
    try:
        from . import _kernels_numba
        return "numba", _kernels_numba
    except ImportError:
        from . import _kernels_numpy
        return "numpy", _kernels_numpy


def _resolve():
    global _resolved
    if _resolved is None:
        name = _requested if _requested is not None else os.environ.get(_ENV_VAR, "auto")
        if name not in _VALID:
            raise ConfigError(
                f"invalid {_ENV_VAR}={name!r}; expected one of {', '.join(_VALID)}"
            )
        try:
            _resolved = _load(name)
        except ImportError as exc:
            raise ConfigError(f"backend {name!r} is unavailable: {exc}") from exc
    return _resolved


def get_backend():
    """Name of the active kernel backend ("numba" or "numpy")."""
    return _resolve()[0]


def set_backend(name):
    """Force a backend for the rest of the process (overrides the env var)."""
    global _requested, _resolved
    if name not in _VALID:
        raise ConfigError(f"invalid backend {name!r}; expected one of {', '.join(_VALID)}")
    _requested = name
    _resolved = None


def available_backends():
    """Backends importable in this environment."""
    names = []
    try:
        from . import _kernels_numba  # noqa: F401
        names.append("numba")
    except ImportError:
        pass
    names.append("numpy")
    return tuple(names)


def kernels():
    """The active kernel module (apply_prox / apply_root)."""
    return _resolve()[1]
