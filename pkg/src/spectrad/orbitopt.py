"""Similarity-orbit minimization over Hermitian generators.

The orbit objectives measure a conjugated matrix exp(A) T exp(-A) through
the Aluthge transform, the operator norm, the numerical radius, or a
rotated real part.  Restricting the conjugating factor to exp(A) with A
Hermitian loses nothing (the unitary polar factor drops out of every
objective) and keeps the conjugation invertible by construction.

Minimization is derivative-free: Nelder-Mead restarts over the real
coordinates of A inside a Frobenius ball, with the zero start mandatory so
the result never exceeds the unconjugated objective value.
"""

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from . import _kernels as kern
from . import matkernel as mk
from .errors import InvalidInputError, RangeOverflowError
from .numrange import Angle, numerical_radius

OBJECTIVE_KINDS = (
    "delta_norm",
    "delta_numrad",
    "rotated_realpart_norm",
    "rotated_realpart_numrad",
    "plain_norm",
)

_ROTATED = ("rotated_realpart_norm", "rotated_realpart_numrad")


@dataclass(frozen=True)
class OrbitObjective:
    """Which orbit functional to evaluate, with its transform weight and depth."""

    kind: str
    lam: float = 0.5
    n: int = 1
    theta: Angle | None = None

    def __post_init__(self):
        if self.kind not in OBJECTIVE_KINDS:
            raise InvalidInputError(f"unknown objective kind {self.kind!r}")
        if not 0.0 <= self.lam <= 1.0:
            raise InvalidInputError(f"lam must be in [0, 1], got {self.lam}")
        if self.n < 0:
            raise InvalidInputError(f"n must be >= 0, got {self.n}")
        rotated = self.kind in _ROTATED
        if rotated and self.theta is None:
            raise InvalidInputError(f"{self.kind} requires theta")
        if not rotated and self.theta is not None:
            raise InvalidInputError(f"{self.kind} does not take theta")


@dataclass(frozen=True)
class HermitianParams:
    """Real coordinates of a Hermitian matrix: diagonal first, then the
    strict upper triangle row-major as (re, im) pairs."""

    dim: int
    coords: np.ndarray

    def __post_init__(self):
        c = np.ascontiguousarray(self.coords, dtype=np.float64)
        object.__setattr__(self, "coords", c)
        if c.shape != (self.dim * self.dim,):
            raise InvalidInputError(
                f"coords must have length {self.dim * self.dim}, got {c.shape}"
            )
        if not np.isfinite(c).all():
            raise InvalidInputError("coords must be finite")

    def materialize(self):
        n = self.dim
        a = np.zeros((n, n), dtype=np.complex128)
        idx = np.arange(n)
        a[idx, idx] = self.coords[:n]
        if n > 1:
            iu = np.triu_indices(n, 1)
            off = self.coords[n:]
            z = off[0::2] + 1j * off[1::2]
            a[iu] = z
            a[(iu[1], iu[0])] = np.conj(z)
        return a

    @classmethod
    def from_matrix(cls, a):
        h = mk.as_hermitian(a)
        n = h.shape[0]
        coords = np.empty(n * n, dtype=np.float64)
        coords[:n] = h.diagonal().real
        if n > 1:
            iu = np.triu_indices(n, 1)
            z = h[iu]
            coords[n::2] = z.real
            coords[n + 1 :: 2] = z.imag
        return cls(dim=n, coords=coords)

    def frobenius_norm(self):
        return _coords_fro(self.coords, self.dim)


def _coords_fro(coords, n):
    d = coords[:n]
    off = coords[n:]
    return math.sqrt(float(d @ d) + 2.0 * float(off @ off))


@dataclass
class OrbitResult:
    """Best orbit value found, the generator achieving it, and the search record.

    ``boundary_hit`` flags an optimum pressing the Frobenius radius bound,
    the signature of an infimum approached only at infinity (nilpotent
    inputs, for instance).
    """

    best_value: float
    best_a: HermitianParams
    evaluations: int
    boundary_hit: bool
    history: list

    def to_json_dict(self):
        return {
            "best_value": self.best_value,
            "boundary_hit": self.boundary_hit,
            "evaluations": self.evaluations,
            "best_coords": [float(x) for x in self.best_a.coords],
            "history": [[i, v] for i, v in self.history],
        }

    def to_json(self):
        return json.dumps(self.to_json_dict())


_EXP_LIMIT = 700.0


def evaluate_objective(t, obj, a):
    """The orbit objective at one Hermitian generator.

    ``a`` may be a :class:`HermitianParams` or a Hermitian matrix.  Raises
    :class:`RangeOverflowError` when exp(A) would overflow.
    """
    m = mk.as_matrix(t)
    h = a.materialize() if isinstance(a, HermitianParams) else mk.as_hermitian(a)
    if h.shape[0] != m.shape[0]:
        raise InvalidInputError("generator dimension does not match the matrix")
    w, v = kern.eigh(h)
    if max(abs(float(w[0])), abs(float(w[-1]))) > _EXP_LIMIT:
        raise RangeOverflowError("exp(A) would overflow double precision")
    vh = v.conj().T
    e = np.exp(w)
    conj = ((v * e) @ vh) @ m @ ((v / e) @ vh)

    s = conj
    if obj.kind in _ROTATED:
        s = np.exp(1j * obj.theta.theta) * s
    if obj.kind != "plain_norm":
        for _ in range(obj.n):
            s = kern.aluthge_step(s, obj.lam, -1.0)

    if obj.kind in ("plain_norm", "delta_norm"):
        return float(kern.svdvals(s)[0])
    if obj.kind == "delta_numrad":
        return numerical_radius(s).w
    # rotated kinds: the real part is Hermitian, where the numerical radius
    # and the operator norm coincide at max |eigenvalue|
    w2 = kern.eigvalsh(mk.hermitize(s))
    return float(max(abs(w2[0]), abs(w2[-1])))


class _BudgetExhausted(Exception):
    pass


def _project_ball(x, n, radius):
    fro = _coords_fro(x, n)
    if fro <= radius:
        return x, fro
    return x * (radius / fro), fro


def minimize_orbit(t, obj, budget=5000, radius=8.0, seed=0, restarts=4,
                   eval_callback=None):
    """Derivative-free minimization of an orbit objective inside a Frobenius ball.

    Runs ``restarts`` Nelder-Mead passes.  Initial simplexes are drawn from
    a seeded Gaussian of scale radius/10: the first is anchored at the
    mandatory A = 0 start (so the result never exceeds the unconjugated
    objective), later ones alternate between re-centering on the incumbent
    best (recovers from collapsed simplexes in higher dimensions) and pure
    random exploration.  Evaluations outside the ball are projected onto it
    and penalized, so every recorded value is a genuine objective value at
    a feasible generator.  ``eval_callback``, when given, sees every
    objective value as it is computed (handy for auditing lower bounds).
    """
    m = mk.as_matrix(t)
    if budget < 1:
        raise InvalidInputError(f"budget must be >= 1, got {budget}")
    if radius <= 0:
        raise InvalidInputError(f"radius must be positive, got {radius}")
    if restarts < 1:
        raise InvalidInputError(f"restarts must be >= 1, got {restarts}")
    n = m.shape[0]
    ncoords = n * n
    rng = np.random.Generator(np.random.Philox(seed))

    state = {"count": 0, "stop_at": 0, "best": math.inf, "best_x": np.zeros(ncoords)}
    history = []

    def fun(x):
        if state["count"] >= state["stop_at"]:
            raise _BudgetExhausted
        xf, fro = _project_ball(np.asarray(x, dtype=np.float64), n, radius)
        value = evaluate_objective(m, obj, HermitianParams(dim=n, coords=xf))
        state["count"] += 1
        if eval_callback is not None:
            eval_callback(value)
        if value < state["best"]:
            state["best"] = value
            state["best_x"] = xf.copy()
            history.append((state["count"], value))
        if fro > radius:
            over = fro - radius
            return value + (1.0 + abs(value)) * over * over
        return value

    scale = radius / 10.0
    per_run = max(1, budget // restarts)
    for run in range(restarts):
        if state["count"] >= budget:
            break
        last = run == restarts - 1
        state["stop_at"] = budget if last else min(budget, state["count"] + per_run)
        cloud = rng.normal(scale=scale, size=(ncoords, ncoords))
        if run == 0:
            simplex = np.vstack([np.zeros(ncoords), cloud])
        elif run % 2 == 1:
            simplex = state["best_x"] + np.vstack([np.zeros(ncoords), cloud])
        else:
            extra = rng.normal(scale=scale, size=(1, ncoords))
            simplex = np.vstack([extra, cloud])
        options = {
            "xatol": 1e-12,
            "fatol": 1e-12,
            "maxiter": 10**9,
            "maxfev": 10**9,
            "initial_simplex": simplex,
        }
        try:
            minimize(fun, simplex[0], method="Nelder-Mead", options=options)
        except _BudgetExhausted:
            pass

    best_params = HermitianParams(dim=n, coords=state["best_x"])
    return OrbitResult(
        best_value=state["best"],
        best_a=best_params,
        evaluations=state["count"],
        boundary_hit=best_params.frobenius_norm() >= 0.99 * radius,
        history=history,
    )


def orbit_gap(t, obj, budget=5000, radius=8.0, seed=0):
    """Excess of the found orbit minimum over the eigenvalue oracle (clipped at 0)."""
    best = minimize_orbit(t, obj, budget=budget, radius=radius, seed=seed).best_value
    return max(0.0, best - mk.spectral_radius_oracle(t))
