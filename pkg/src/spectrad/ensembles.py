"""Seeded matrix ensembles for tests, benchmarks, and the CLI.

Randomness comes from numpy's Philox counter-based generator, so a fixed
seed reproduces the same matrix across runs and platforms.  Ensemble runs
derive per-matrix seeds as ``seed XOR index``.
"""

from dataclasses import dataclass

import numpy as np

from . import matkernel as mk
from .errors import InvalidInputError

KINDS = (
    "ginibre",
    "jordan",
    "nilpotent_shift",
    "normal_random",
    "unitary_random",
    "companion",
    "unipotent",
)


@dataclass(frozen=True)
class EnsembleSpec:
    """Which ensemble, the dimension, the seed, and kind-specific parameters."""

    kind: str
    dim: int
    seed: int = 0
    params: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInputError(f"unknown ensemble kind {self.kind!r}")
        if not 1 <= self.dim <= mk.DIM_CAP:
            raise InvalidInputError(f"dim must be in 1..{mk.DIM_CAP}, got {self.dim}")
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))


def _rng(seed):
    return np.random.Generator(np.random.Philox(seed))


def _cnormal(rng, shape):
    """Standard complex Gaussian: unit total variance per entry."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def _haar_unitary(rng, n):
    q, r = np.linalg.qr(_cnormal(rng, (n, n)))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def generate(spec):
    """Deterministic matrix of the requested kind."""
    n = spec.dim
    rng = _rng(spec.seed)
    kind = spec.kind

    if kind == "ginibre":
        if spec.params:
            raise InvalidInputError("ginibre takes no params")
        return _cnormal(rng, (n, n)) / np.sqrt(n)

    if kind == "jordan":
        if len(spec.params) > 2:
            raise InvalidInputError("jordan takes at most (re, im) of the eigenvalue")
        lam = complex(*(list(spec.params) + [0.0, 0.0])[:2])
        m = np.eye(n, dtype=np.complex128) * lam
        m += np.diag(np.ones(n - 1), 1)
        return m

    if kind == "nilpotent_shift":
        if len(spec.params) != n - 1:
            raise InvalidInputError(
                f"nilpotent_shift needs {n - 1} weights, got {len(spec.params)}"
            )
        m = np.zeros((n, n), dtype=np.complex128)
        if n > 1:
            m += np.diag(np.asarray(spec.params, dtype=np.float64), 1)
        return m

    if kind == "normal_random":
        if len(spec.params) > 1:
            raise InvalidInputError("normal_random takes at most a scale param")
        scale = spec.params[0] if spec.params else 1.0
        d = scale * _cnormal(rng, n)
        q = _haar_unitary(rng, n)
        return (q * d) @ q.conj().T

    if kind == "unitary_random":
        if spec.params:
            raise InvalidInputError("unitary_random takes no params")
        return _haar_unitary(rng, n)

    if kind == "companion":
        # monic p(z) = z^n + c[n-1] z^(n-1) + ... + c[0]; params are (c0, ..., c[n-1])
        if len(spec.params) != n:
            raise InvalidInputError(f"companion needs {n} coefficients, got {len(spec.params)}")
        c = np.asarray(spec.params, dtype=np.float64)
        m = np.zeros((n, n), dtype=np.complex128)
        m[0, :] = -c[::-1]
        if n > 1:
            m[np.arange(1, n), np.arange(n - 1)] = 1.0
        return m

    # unipotent: identity plus a random strict upper triangle
    if len(spec.params) > 1:
        raise InvalidInputError("unipotent takes at most a scale param")
    scale = spec.params[0] if spec.params else 1.0
    m = np.eye(n, dtype=np.complex128)
    if n > 1:
        iu = np.triu_indices(n, 1)
        m[iu] = scale * _cnormal(rng, len(iu[0]))
    return m
