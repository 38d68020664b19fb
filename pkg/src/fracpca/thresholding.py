"""Vector, matrix-element, and singular-value lifts of the scalar prox.

Matrices are plain 2-D float64 ``numpy.ndarray`` throughout the package.
The singular-value operator follows the tall convention m >= n; the
solver transposes wide problems before reaching this module.
"""

import numpy as np

from . import _backend
from .errors import ConvergenceError, DomainError, FracpcaError
from .fraction_prox import ACOS_SLACK, threshold_value

# Orthogonality / reconstruction tolerance for a verified SVD.
SVD_TOL = 1e-10
# A singular value counts as nonzero iff > RANK_REL_TOL * max(1, sigma_1).
RANK_REL_TOL = 1e-10
# Thresholded singular values may invert by at most this much (fp noise).
ORDER_SLACK = 1e-12


def _as_vector(x):
    arr = np.ascontiguousarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {arr.shape}")
    return arr


def _as_matrix(B):
    arr = np.ascontiguousarray(B, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {arr.shape}")
    return arr


def prox_vector(params, x, thresh=None):
    """Apply the scalar prox to every entry of a vector.

    ``thresh`` overrides the dead-zone radius (callers that already
    computed threshold_value pass it through so the boundary is decided
    on exactly the same float); the nonzero-branch values are identical
    either way.  Raises DomainError with the offending index attached.
    """
    arr = _as_vector(x)
    t = threshold_value(params) if thresh is None else thresh
    out = np.empty_like(arr)
    bad = _backend.kernels().apply_prox(arr, params.a, params.tau, t, ACOS_SLACK, out)
    if bad >= 0:
        raise DomainError(
            f"prox undefined at index {bad} (value {arr[bad]!r}) "
            f"for a={params.a}, tau={params.tau}",
            index=int(bad),
        )
    return out


def prox_elementwise(params, B, thresh=None):
    """Apply the scalar prox to every entry of a matrix.

    Sub-threshold entries become exact zeros, so the output never has
    more nonzeros than the input.  Raises DomainError carrying the
    offending (row, col).
    """
    arr = _as_matrix(B)
    t = threshold_value(params) if thresh is None else thresh
    flat = arr.reshape(-1)
    out = np.empty_like(flat)
    bad = _backend.kernels().apply_prox(flat, params.a, params.tau, t, ACOS_SLACK, out)
    if bad >= 0:
        row, col = divmod(int(bad), arr.shape[1])
        raise DomainError(
            f"prox undefined at ({row}, {col}) (value {flat[bad]!r}) "
            f"for a={params.a}, tau={params.tau}",
            index=(row, col),
        )
    return out.reshape(arr.shape)


class SingularValueDecomposition:
    """Full SVD A = U [Diag(sigma); 0] V^T with U m-by-m, V n-by-n.

    sigma has length n, is nonnegative and nonincreasing.  Instances are
    produced by :func:`svd`, which verifies orthogonality and
    reconstruction to SVD_TOL before returning.
    """

    __slots__ = ("U", "sigma", "V")

    def __init__(self, U, sigma, V):
        self.U = U
        self.sigma = sigma
        self.V = V

    def reconstruct(self):
        n = self.sigma.size
        return (self.U[:, :n] * self.sigma) @ self.V.T


def svd(A):
    """Verified full SVD of a tall matrix (m >= n, finite entries).

    Raises ConvergenceError if LAPACK fails or the factors miss the
    orthogonality / reconstruction tolerance.
    """
    arr = _as_matrix(A)
    m, n = arr.shape
    if m < n:
        raise ValueError(f"svd requires m >= n, got {m}x{n}; transpose the problem")
    if not np.all(np.isfinite(arr)):
        raise ValueError("svd requires finite entries")
    try:
        U, s, Vt = np.linalg.svd(arr, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"SVD failed to converge: {exc}") from exc
    V = Vt.T
    eye_m = np.eye(m)
    eye_n = np.eye(n)
    if (
        np.max(np.abs(U.T @ U - eye_m)) > SVD_TOL
        or np.max(np.abs(V.T @ V - eye_n)) > SVD_TOL
    ):
        raise ConvergenceError("SVD factors are not orthogonal to tolerance")
    recon = (U[:, :n] * s) @ Vt
    denom = max(1e-300, float(np.linalg.norm(arr)))
    if float(np.linalg.norm(arr - recon)) / denom > SVD_TOL:
        raise ConvergenceError("SVD reconstruction misses relative tolerance")
    return SingularValueDecomposition(U, s, V)


def _threshold_sigma(params, sigma, thresh):
    """Prox the singular-value vector and enforce nonincreasing order."""
    out = prox_vector(params, sigma, thresh=thresh)
    if out.size > 1:
        inv = np.max(np.diff(out))
        if inv > ORDER_SLACK * max(1.0, float(out[0])):
            raise FracpcaError(
                "thresholded singular values out of order beyond fp noise "
                f"(max inversion {inv:.3e})"
            )
        if inv > 0.0:
            out = np.sort(out)[::-1]
    return out


def _svt(params, N, thresh=None):
    """Singular-value thresholding; returns (matrix, thresholded sigma)."""
    arr = _as_matrix(N)
    m, n = arr.shape
    if m < n:
        raise ValueError(f"singular-value prox requires m >= n, got {m}x{n}")
    t = threshold_value(params) if thresh is None else thresh
    try:
        U, s, Vt = np.linalg.svd(arr, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"SVD failed to converge: {exc}") from exc
    s_thr = _threshold_sigma(params, s, t)
    return (U * s_thr) @ Vt, s_thr


def prox_singular_values(params, N, thresh=None):
    """Prox of tau * sum_i rho_a(sigma_i(Z)) plus 0.5*||Z - N||_F^2.

    Computes the SVD of N, proxes the singular values, and reassembles
    with the original singular vectors.  Singular values at or below the
    dead-zone radius are annihilated exactly, so the output rank never
    exceeds rank(N).
    """
    out, _ = _svt(params, N, thresh=thresh)
    return out


def rank_from_sigma(sigma):
    """Nonzero count of a singular-value vector at the package rank tolerance."""
    s = np.asarray(sigma, dtype=np.float64)
    if s.size == 0:
        return 0
    return int(np.count_nonzero(s > RANK_REL_TOL * max(1.0, float(np.max(s)))))


def matrix_rank(A):
    """Rank of a dense matrix: singular values above RANK_REL_TOL * max(1, sigma_1)."""
    arr = _as_matrix(A)
    if min(arr.shape) == 0:
        return 0
    s = np.linalg.svd(arr if arr.shape[0] >= arr.shape[1] else arr.T, compute_uv=False)
    return rank_from_sigma(s)
