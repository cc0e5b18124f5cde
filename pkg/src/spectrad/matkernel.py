"""Dense complex-matrix primitives: norms, spectra, and Hermitian matrix functions.

Every other module consumes these.  All operations are pure functions of
their inputs; matrices are plain complex128 ndarrays validated on entry.
"""

import hashlib
from dataclasses import dataclass

import numpy as np

from . import _kernels as kern
from .errors import (
    InvalidInputError,
    NotPositiveSemidefiniteError,
    NumericalFailureError,
    RangeOverflowError,
)

DIM_CAP = 256
EPS = float(np.finfo(np.float64).eps)

# scale * lam_max above this would overflow exp(); reject rather than saturate
EXP_ARG_LIMIT = 700.0


def as_matrix(a, name="matrix"):
    """Validate and return a square, finite complex128 matrix.

    Accepts anything ``np.asarray`` can digest.  Raises
    :class:`InvalidInputError` for non-square shapes, dimensions outside
    ``1..DIM_CAP``, or non-finite entries.
    """
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidInputError(f"{name} must be a square 2-D array, got shape {m.shape}")
    n = m.shape[0]
    if n < 1 or n > DIM_CAP:
        raise InvalidInputError(f"{name} dimension must be in 1..{DIM_CAP}, got {n}")
    if not np.isfinite(m).all():
        raise InvalidInputError(f"{name} has non-finite entries")
    return m


def matrix_hash(t):
    """Hex sha256 of a matrix's shape and entry bytes (for error reports)."""
    m = np.ascontiguousarray(t, dtype=np.complex128)
    h = hashlib.sha256()
    h.update(str(m.shape).encode())
    h.update(m.tobytes())
    return h.hexdigest()


def hermitize(a):
    """Exactly Hermitian symmetrization (A + A*)/2.

    IEEE addition is commutative, so the result satisfies
    ``h[i, j] == conj(h[j, i])`` bit-for-bit and the diagonal is real.
    """
    h = (a + a.conj().T) / 2.0
    return h


def as_hermitian(a, name="matrix"):
    """Validate a Hermitian matrix and return its exact symmetrization.

    Tolerates floating-point asymmetry up to ``16 n eps max|A|``; anything
    larger is treated as a genuinely non-Hermitian input.
    """
    m = as_matrix(a, name)
    scale = float(np.abs(m).max()) if m.size else 0.0
    tol = 16.0 * m.shape[0] * EPS * max(scale, 1.0)
    if float(np.abs(m - m.conj().T).max()) > tol:
        raise InvalidInputError(f"{name} is not Hermitian")
    return hermitize(m)


def rank_tolerance(n, sigma_max, override=None):
    """Threshold below which a singular value counts as zero."""
    if override is not None:
        if override < 0:
            raise InvalidInputError("rank tolerance override must be nonnegative")
        return float(override)
    return n * EPS * sigma_max


def operator_norm(t):
    """Largest singular value."""
    m = as_matrix(t)
    return float(kern.svdvals(m)[0])


def _arg01(z):
    """Argument normalized into [0, 2*pi)."""
    a = np.angle(z)
    return np.where(a < 0.0, a + 2.0 * np.pi, a)


def eigenvalues(t):
    """All eigenvalues, sorted by descending modulus, ties by ascending argument."""
    m = as_matrix(t)
    try:
        vals = np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(
            f"eigenvalue iteration failed: {exc}", matrix_hash=matrix_hash(m)
        ) from exc
    order = np.lexsort((_arg01(vals), -np.abs(vals)))
    return vals[order]


def spectral_radius_oracle(t):
    """Maximum eigenvalue modulus; the ground truth every estimator is tested against."""
    return float(np.abs(eigenvalues(t)).max())


@dataclass(frozen=True)
class Eigendecomposition:
    """Eigenvalues (descending for Hermitian input) and, when available, eigenvectors."""

    values: np.ndarray
    vectors: np.ndarray | None
    hermitian: bool


def hermitian_eig(h):
    """Eigendecomposition of a Hermitian matrix, eigenvalues real and descending."""
    m = as_hermitian(h)
    w, v = kern.eigh(m)
    return Eigendecomposition(values=w[::-1].copy(), vectors=v[:, ::-1].copy(), hermitian=True)


def matrix_exp_hermitian(a, scale=1.0):
    """exp(scale * A) for Hermitian A, via the eigendecomposition.

    Rejects arguments that would overflow double precision rather than
    saturating, so inverse pairs exp(A) exp(-A) stay trustworthy.
    """
    m = as_hermitian(a)
    w, v = kern.eigh(m)
    if w.size and scale * float(w[-1] if scale >= 0 else w[0]) > EXP_ARG_LIMIT:
        raise RangeOverflowError(
            f"exp argument {scale * float(w[-1] if scale >= 0 else w[0]):.3g} exceeds {EXP_ARG_LIMIT}"
        )
    e = np.exp(scale * w)
    return hermitize((v * e) @ v.conj().T)


def fractional_power_psd(p, exponent):
    """P**exponent for positive semidefinite P and exponent in [0, 1].

    Eigenvalues within the PSD tolerance of zero are clamped to zero;
    0**exponent is 0 for exponent > 0 and 1 for exponent == 0.
    """
    if not 0.0 <= exponent <= 1.0:
        raise InvalidInputError(f"exponent must be in [0, 1], got {exponent}")
    m = as_hermitian(p)
    w, v = kern.eigh(m)
    lam_max = float(w[-1]) if w.size else 0.0
    tol = m.shape[0] * EPS * max(lam_max, 0.0)
    if float(w[0]) < -tol:
        raise NotPositiveSemidefiniteError(
            f"eigenvalue {float(w[0]):.3g} below -{tol:.3g}"
        )
    w = np.clip(w, 0.0, None)
    pw = w**exponent
    return hermitize((v * pw) @ v.conj().T)
