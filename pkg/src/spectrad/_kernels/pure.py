"""Numpy implementations of the hot kernels.

Mirrors the surface of the compiled extension ``_core`` exactly; selected
at import time when the extension is unavailable.  See ``_core.pyx`` for
the algebra behind ``aluthge_step``.
"""

import numpy as np

from spectrad.errors import NumericalFailureError

BACKEND_NAME = "python"

_EPS = float(np.finfo(np.float64).eps)


def svdvals(a):
    """Singular values of a square complex matrix, descending."""
    try:
        return np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(f"SVD did not converge: {exc}") from exc


def svd(a):
    """Full SVD ``a = u @ diag(s) @ vh`` with s descending."""
    try:
        return np.linalg.svd(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(f"SVD did not converge: {exc}") from exc


def eigh(h):
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(f"Hermitian eigensolver failed: {exc}") from exc
    return w, v


def eigvalsh(h):
    """Eigenvalues of a Hermitian matrix, ascending."""
    try:
        return np.linalg.eigvalsh(h)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(f"Hermitian eigensolver failed: {exc}") from exc


def aluthge_step(a, lam, tol_override=-1.0):
    """One lambda-weighted Aluthge application via a single SVD.

    With a = v diag(s) wh, the result is wh* B wh where
    B[i, j] = s[i]**lam * s[j]**(1-lam) * d[j] * (wh @ v)[i, j]
    and d masks singular values at or below the rank tolerance.
    """
    u, s, vh = svd(a)
    n = a.shape[0]
    tol = tol_override if tol_override >= 0.0 else n * _EPS * (s[0] if n else 0.0)
    d = s > tol
    m = vh @ u
    # 0.0 ** 0.0 == 1.0 keeps the lam in {0, 1} endpoints exact.
    b = (s**lam)[:, None] * m * (np.where(d, s ** (1.0 - lam), 0.0))[None, :]
    return (vh.conj().T @ b) @ vh


def realpart_top_eig_grid(a, thetas):
    """Largest eigenvalue of Re(exp(i*theta) * a) for each theta."""
    z = np.exp(1j * np.asarray(thetas, dtype=np.float64))
    ah = a.conj().T
    stack = 0.5 * (z[:, None, None] * a + np.conj(z)[:, None, None] * ah)
    try:
        w = np.linalg.eigvalsh(stack)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(f"Hermitian eigensolver failed: {exc}") from exc
    return np.ascontiguousarray(w[:, -1])
