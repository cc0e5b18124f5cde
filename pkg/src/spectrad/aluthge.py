"""Polar decomposition and the lambda-weighted Aluthge transform with iteration traces.

The transform maps T = U|T| to |T|**lam U |T|**(1-lam).  Iterating it
leaves the spectrum alone while the operator norm decreases toward the
spectral radius, which is what the estimators exploit.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as kern
from . import matkernel as mk
from .errors import InvalidInputError


@dataclass(frozen=True)
class AluthgeConfig:
    """Transform weight and optional rank-tolerance override.

    ``lam = 0.5`` is the classical transform, ``lam = 1`` the Duggal
    variant; anything in [0, 1] is accepted.
    """

    lam: float = 0.5
    rank_tolerance_override: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.lam <= 1.0:
            raise InvalidInputError(f"lam must be in [0, 1], got {self.lam}")
        if self.rank_tolerance_override is not None and self.rank_tolerance_override < 0:
            raise InvalidInputError("rank_tolerance_override must be nonnegative")


@dataclass(frozen=True)
class PolarFactors:
    """The pair (U, P) with T = U P, P = |T| PSD, and ker(U) = ker(T)."""

    u: np.ndarray
    p: np.ndarray


def polar_decompose(t, rank_tolerance_override=None):
    """Polar factors via the SVD T = V S W*.

    P = W S W* and U = V D W*, where D zeroes the directions whose singular
    value sits at or below the rank tolerance.  That makes U a partial
    isometry vanishing exactly on the null space of T, rather than the
    unitary completion a plain ``V @ W*`` would give.
    """
    m = mk.as_matrix(t)
    v, s, wh = kern.svd(m)
    tol = mk.rank_tolerance(m.shape[0], float(s[0]) if s.size else 0.0, rank_tolerance_override)
    d = (s > tol).astype(np.float64)
    w = wh.conj().T
    p = mk.hermitize((w * s) @ wh)
    u = (v * d) @ wh
    return PolarFactors(u=u, p=p)


def aluthge(t, cfg=AluthgeConfig()):
    """One application of the lambda-weighted Aluthge transform.

    Computed from a single SVD (see the kernel), which equals
    ``|T|**lam @ U @ |T|**(1-lam)`` with the same rank-tolerance handling
    as :func:`polar_decompose`.  ``lam = 0`` therefore returns the
    recomposed U |T|, identical to T up to rank-tolerance effects.
    """
    m = mk.as_matrix(t)
    tol = -1.0 if cfg.rank_tolerance_override is None else float(cfg.rank_tolerance_override)
    return kern.aluthge_step(m, cfg.lam, tol)


def aluthge_iterate(t, cfg=AluthgeConfig(), n=1):
    """The n-th iterate; n = 0 returns T itself (a copy, entries untouched)."""
    if n < 0:
        raise InvalidInputError(f"iterate count must be >= 0, got {n}")
    m = mk.as_matrix(t)
    if n == 0:
        return m.copy()
    tol = -1.0 if cfg.rank_tolerance_override is None else float(cfg.rank_tolerance_override)
    for _ in range(n):
        m = kern.aluthge_step(m, cfg.lam, tol)
    return m


def _hausdorff(a, b):
    """Hausdorff distance between two finite point sets in the complex plane."""
    a = np.asarray(a).reshape(-1, 1)
    b = np.asarray(b).reshape(1, -1)
    d = np.abs(a - b)
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


@dataclass
class IterateTrace:
    """Per-iterate records of an Aluthge run.

    ``norms[k]`` is the operator norm of the k-th iterate (index 0 is the
    input itself), non-increasing up to floating-point slack.
    ``spectra_drift[k]`` is the Hausdorff distance between the eigenvalue
    sets of the k-th iterate and the input; it stays near zero because the
    transform preserves the spectrum.
    """

    iterates_recorded: int
    norms: list[float]
    numerical_radii: list[float] | None
    spectra_drift: list[float] = field(default_factory=list)

    def to_csv(self):
        cols = ["n", "norm"]
        if self.numerical_radii is not None:
            cols.append("numerical_radius")
        cols.append("spectra_drift")
        lines = [",".join(cols)]
        for k in range(self.iterates_recorded + 1):
            row = [str(k), _f17(self.norms[k])]
            if self.numerical_radii is not None:
                row.append(_f17(self.numerical_radii[k]))
            row.append(_f17(self.spectra_drift[k]))
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"

    def to_json_dict(self):
        d = {
            "iterates_recorded": self.iterates_recorded,
            "norms": self.norms,
            "spectra_drift": self.spectra_drift,
        }
        if self.numerical_radii is not None:
            d["numerical_radii"] = self.numerical_radii
        return d

    def to_json(self):
        return json.dumps(self.to_json_dict())


def _f17(x):
    return format(float(x), ".17g")


def iterate_trace(t, cfg=AluthgeConfig(), n_max=100, record_w=False):
    """Run n_max iterates, recording norms, optional numerical radii, and spectral drift."""
    if n_max < 1:
        raise InvalidInputError(f"n_max must be >= 1, got {n_max}")
    from .numrange import numerical_radius  # local import; numrange never imports us

    m = mk.as_matrix(t)
    tol = -1.0 if cfg.rank_tolerance_override is None else float(cfg.rank_tolerance_override)
    base_eigs = mk.eigenvalues(m)
    norms = []
    radii = [] if record_w else None
    drift = []
    cur = m
    for k in range(n_max + 1):
        norms.append(float(kern.svdvals(cur)[0]))
        if record_w:
            radii.append(numerical_radius(cur).w)
        drift.append(_hausdorff(mk.eigenvalues(cur), base_eigs))
        if k < n_max:
            cur = kern.aluthge_step(cur, cfg.lam, tol)
    return IterateTrace(
        iterates_recorded=n_max, norms=norms, numerical_radii=radii, spectra_drift=drift
    )
