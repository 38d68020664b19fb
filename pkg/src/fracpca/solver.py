"""Adaptive ADMM for the penalized low-rank + sparse split M = L + S.

Each iteration alternates a singular-value prox (L-update), an
elementwise prox with a sparsity-driven weight (S-update), and a dual
ascent step on the multiplier Y, while the quadratic-coupling weight mu
grows geometrically up to a cap.  The sparsity weight lambda is re-chosen
every iteration from the order statistics of the S-update input so that
the prox dead zone lands between the target_sparsity-th and the next
largest entry.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInput
from .fraction_prox import PenaltyParams, threshold_value
from .thresholding import _svt, prox_elementwise, rank_from_sigma

# Relative scale of the lambda floor used when the (gamma+1)-th order
# statistic is exactly zero (the formula would give lambda = 0, which is
# outside the prox's tau > 0 domain).
LAMBDA_FLOOR_SCALE = 1e-12


@dataclass(frozen=True)
class SolverConfig:
    """Tunables of the adaptive solver.

    target_sparsity is the assumed number of nonzeros of the sparse
    component; it drives the per-iteration lambda rule and must satisfy
    1 <= target_sparsity < m*n (checked in solve).  fixed_lambda disables
    the adaptive rule; combined with mu_bar_multiplier=1.0 it gives the
    plain fixed-parameter iteration.
    """

    target_sparsity: int
    a1: float = 1.0
    a2: float = 1.0
    rho_factor: float = 1.5
    epsilon: float = 0.01
    mu0_override: float | None = None
    mu_bar_multiplier: float = 1e7
    tol: float = 1e-6
    max_iter: int = 1000
    fixed_lambda: float | None = None

    def __post_init__(self):
        if not (isinstance(self.target_sparsity, (int, np.integer)) and self.target_sparsity >= 1):
            raise ValueError(f"target_sparsity must be a positive integer, got {self.target_sparsity!r}")
        if self.a1 <= 0 or self.a2 <= 0:
            raise ValueError("a1 and a2 must be positive")
        if self.rho_factor <= 1.0:
            raise ValueError("rho_factor must exceed 1")
        if not (0.0 < self.epsilon < 1.0):
            raise ValueError("epsilon must lie in (0, 1)")
        if self.mu0_override is not None and self.mu0_override <= 0:
            raise ValueError("mu0_override must be positive")
        if self.mu_bar_multiplier <= 0:
            raise ValueError("mu_bar_multiplier must be positive")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.fixed_lambda is not None and self.fixed_lambda <= 0:
            raise ValueError("fixed_lambda must be positive")


@dataclass
class SolverState:
    """Mutable per-iteration state of one solve."""

    L: np.ndarray
    S: np.ndarray
    Y: np.ndarray
    mu: float
    lambda_current: float
    k: int
    residual: float


@dataclass(frozen=True)
class DecompositionResult:
    """Final iterates plus run diagnostics.

    trace holds one (k, mu, lambda, residual) tuple per iteration;
    converged is final_residual <= tol.
    """

    L_star: np.ndarray
    S_star: np.ndarray
    iterations: int
    final_residual: float
    recovered_rank: int
    recovered_nnz: int
    converged: bool
    trace: list = field(default_factory=list)


def initial_mu(M, a1):
    """Starting coupling weight from the spectral norm of M:

        mu0 = min{ 2 / (0.99 ||M||_2 + 1/(2 a1))^2 ,  a1 / (0.99 ||M||_2) }

    Both candidates place the first L-update's dead zone at 0.99 ||M||_2,
    so the first iterate keeps at most the leading singular direction.
    """
    arr = np.ascontiguousarray(M, dtype=np.float64)
    s2 = float(np.linalg.norm(arr, 2))
    if s2 == 0.0:
        raise DegenerateInput("initial_mu needs a nonzero matrix")
    return min(2.0 / (0.99 * s2 + 1.0 / (2.0 * a1)) ** 2, a1 / (0.99 * s2))


def update_mu(mu_k, rho_factor, mu_bar):
    """Geometric continuation step mu -> min(rho * mu, mu_bar)."""
    return min(rho_factor * mu_k, mu_bar)


def select_lambda(T, gamma, mu_k, a2, epsilon):
    """Sparsity weight for the S-update, from the order statistics of |T|.

    With h_g / h_g1 the gamma-th and (gamma+1)-th largest absolute
    entries of T (1-based):

        lambda = mu_k h_g1 / a2                          if mu_k h_g1/a2 <= mu_k/(2 a2^2)
        lambda = (1-eps) mu_k (2 a2 h_g + 1)^2 / (8 a2^2) otherwise

    and the matching prox dead-zone radius is returned alongside
    (h_g1 in the first branch, sqrt(2 lambda/mu) - 1/(2 a2) in the
    second).  A zero h_g1 would give lambda = 0; that degenerate case is
    floored at mu_k * 1e-12 * max(1, max|T|) to keep the prox weight
    positive while leaving supra-threshold entries essentially unshrunk.
    """
    at = np.abs(np.ascontiguousarray(T, dtype=np.float64)).ravel()
    size = at.size
    if not 1 <= gamma <= size - 1:
        raise DegenerateInput(
            f"target sparsity {gamma} needs gamma+1 <= {size} absolute entries"
        )
    part = np.partition(at, (size - gamma - 1, size - gamma))
    h_g = float(part[size - gamma])        # gamma-th largest
    h_g1 = float(part[size - gamma - 1])   # (gamma+1)-th largest
    if mu_k * h_g1 / a2 <= mu_k / (2.0 * a2 * a2):
        lam = mu_k * h_g1 / a2
        thresh = lam / mu_k * a2
        if lam <= 0.0:
            lam = mu_k * LAMBDA_FLOOR_SCALE * max(1.0, float(at.max()))
            thresh = lam / mu_k * a2
    else:
        lam = (1.0 - epsilon) * mu_k * (2.0 * a2 * h_g + 1.0) ** 2 / (8.0 * a2 * a2)
        thresh = math.sqrt(2.0 * lam / mu_k) - 1.0 / (2.0 * a2)
    return lam, thresh


def _solve_tall(M, config, S0, Y0):
    m, n = M.shape
    gamma = int(config.target_sparsity)
    if gamma >= m * n:
        raise ValueError(f"target_sparsity must be < m*n = {m * n}, got {gamma}")

    if config.mu0_override is not None:
        mu = float(config.mu0_override)
    elif not np.any(M):
        mu = 1.0  # all-zero input: any positive weight converges in one step
    else:
        mu = initial_mu(M, config.a1)
    mu_bar = mu * config.mu_bar_multiplier

    state = SolverState(
        L=np.zeros_like(M), S=S0.copy(), Y=Y0.copy(),
        mu=mu, lambda_current=0.0, k=0, residual=math.inf,
    )
    norm_M = max(1.0, float(np.linalg.norm(M)))
    trace = []
    sigma_L = np.zeros(n)

    for k in range(1, config.max_iter + 1):
        state.k = k
        inv_mu = 1.0 / state.mu

        Z = M - state.S + inv_mu * state.Y
        params_L = PenaltyParams(config.a1, inv_mu)
        state.L, sigma_L = _svt(params_L, Z, thresh=threshold_value(params_L))

        T = M - state.L + inv_mu * state.Y
        if config.fixed_lambda is not None:
            lam = config.fixed_lambda
            thresh_S = None  # derive from (a2, lam/mu) inside the prox
        else:
            lam, thresh_S = select_lambda(T, gamma, state.mu, config.a2, config.epsilon)
        state.lambda_current = lam
        state.S = prox_elementwise(PenaltyParams(config.a2, lam * inv_mu), T, thresh=thresh_S)

        R = M - state.L - state.S
        state.Y = state.Y + state.mu * R
        state.residual = float(np.linalg.norm(R)) / norm_M
        trace.append((k, state.mu, lam, state.residual))
        if state.residual <= config.tol:
            break
        state.mu = update_mu(state.mu, config.rho_factor, mu_bar)

    return DecompositionResult(
        L_star=state.L,
        S_star=state.S,
        iterations=state.k,
        final_residual=state.residual,
        recovered_rank=rank_from_sigma(sigma_L),
        recovered_nnz=int(np.count_nonzero(state.S)),
        converged=state.residual <= config.tol,
        trace=trace,
    )


def solve(M, config, S0=None, Y0=None):
    """Run the adaptive ADMM on M until rel.err(M) <= tol or max_iter.

    rel.err(M) = ||M - L - S||_F / max(1, ||M||_F) is evaluated after the
    dual update of every iteration.  Wide inputs (m < n) are solved
    transposed and the factors transposed back.  S0 and Y0 default to
    zero matrices.  The run is deterministic: no randomness, and both
    per-entry prox updates are closed-form.
    """
    arr = np.ascontiguousarray(M, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("solve requires finite entries")
    transposed = arr.shape[0] < arr.shape[1]
    if transposed:
        arr = np.ascontiguousarray(arr.T)
        S0 = None if S0 is None else np.ascontiguousarray(np.asarray(S0, dtype=np.float64).T)
        Y0 = None if Y0 is None else np.ascontiguousarray(np.asarray(Y0, dtype=np.float64).T)
    S0 = np.zeros_like(arr) if S0 is None else np.ascontiguousarray(S0, dtype=np.float64)
    Y0 = np.zeros_like(arr) if Y0 is None else np.ascontiguousarray(Y0, dtype=np.float64)
    if S0.shape != arr.shape or Y0.shape != arr.shape:
        raise ValueError("S0 and Y0 must match the shape of M")

    result = _solve_tall(arr, config, S0, Y0)
    if transposed:
        result = DecompositionResult(
            L_star=result.L_star.T.copy(),
            S_star=result.S_star.T.copy(),
            iterations=result.iterations,
            final_residual=result.final_residual,
            recovered_rank=result.recovered_rank,
            recovered_nnz=result.recovered_nnz,
            converged=result.converged,
            trace=result.trace,
        )
    return result
