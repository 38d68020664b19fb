"""Scalar fraction-function penalty and its closed-form proximal operator.

The penalty is the nonconvex fraction function

    rho_a(t) = a|t| / (a|t| + 1),    a > 0,

which interpolates between |t| (small a, up to scale) and the 0/1
indicator of t != 0 (a -> inf).  The prox of tau * rho_a,

    prox(gamma) = argmin_beta  0.5 * (beta - gamma)^2 + tau * rho_a(beta),

has a closed form: it is exactly zero inside a dead zone
|gamma| <= threshold_value(a, tau) and otherwise equals the nonzero root
of the stationarity cubic, expressed trigonometrically (Cartan's
root-finding formula).  The closed form is validated against a
brute-force grid oracle in :mod:`fracpca.oracle`.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import DomainError

# Tolerated overshoot of the arccos argument past 1 before the input is
# declared out of domain (plain rounding noise stays far below this).
ACOS_SLACK = 1e-12


@dataclass(frozen=True)
class PenaltyParams:
    """One prox instance: shape parameter ``a`` and prox weight ``tau``, both > 0."""

    a: float
    tau: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0.0):
            raise ValueError(f"penalty shape a must be a positive finite real, got {self.a!r}")
        if not (math.isfinite(self.tau) and self.tau > 0.0):
            raise ValueError(f"prox weight tau must be a positive finite real, got {self.tau!r}")


def fraction_penalty(params, t):
    """Evaluate rho_a(t) = a|t|/(a|t|+1).

    Accepts scalars or arrays; values lie in [0, 1), are even in t and
    strictly increasing in |t|.
    """
    at = params.a * np.abs(t)
    return at / (at + 1.0)


def threshold_value(params):
    """Dead-zone radius of the prox: inputs with |gamma| <= t map to exact zero.

    t = tau * a               when tau <= 1 / (2 a^2)
    t = sqrt(2 tau) - 1/(2a)  when tau >  1 / (2 a^2)

    The two branches agree at tau = 1 / (2 a^2); the result is always
    strictly positive.
    """
    a, tau = params.a, params.tau
    if tau <= 1.0 / (2.0 * a * a):
        return tau * a
    return math.sqrt(2.0 * tau) - 1.0 / (2.0 * a)


def prox_root(params, gamma):
    """Nonzero stationary root of the prox objective at |gamma| above threshold.

    sign(gamma) * ( (1 + a|gamma|)/3 * (1 + 2 cos(phi/3 - pi/3)) - 1 ) / a
    with phi = arccos( 27 tau a^2 / (2 (1 + a|gamma|)^3) - 1 ).

    The result has the sign of gamma and magnitude strictly between 0 and
    |gamma|.  Raises DomainError when the arccos argument exceeds 1 by
    more than ACOS_SLACK, i.e. |gamma| is below the formula's domain.
    """
    buf = np.empty(1)
    bad = _backend.kernels().apply_root(
        np.array([gamma], dtype=np.float64), params.a, params.tau, ACOS_SLACK, buf
    )
    if bad >= 0:
        raise DomainError(
            f"prox root undefined at gamma={gamma!r} for a={params.a}, tau={params.tau}: "
            "arccos argument outside [-1, 1] beyond slack"
        )
    return float(buf[0])


def prox_scalar(params, gamma):
    """Closed-form prox of tau * rho_a: zero in the dead zone, else the nonzero root.

    Globally minimizes 0.5*(beta - gamma)^2 + tau*rho_a(beta); ties at
    |gamma| == threshold_value go to the zero branch.
    """
    if abs(gamma) <= threshold_value(params):
        return 0.0
    return prox_root(params, gamma)
