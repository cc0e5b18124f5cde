"""Limit-based spectral radius estimators behind one common result type.

Four routes to r(T): the norm power limit ||T^k||^(1/k), the Aluthge
iterate limit ||iterate_n(T)||, the combined ||iterate_n(T^k)||^(1/k), and
the numerical radius variant w(iterate_n(T^k))^(1/k).  Every route
approaches r(T) from above, so the traces double as rigorous upper bounds.

Powers are held in log-scaled form (unit-norm matrix plus accumulated log
norm), which keeps k up to 4096 overflow-free; re-attaching the logarithm
commutes with the transform and with w because both scale linearly under
positive scalars.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as kern
from . import matkernel as mk
from .aluthge import AluthgeConfig
from .errors import InvalidInputError
from .numrange import numerical_radius

METHODS = ("gelfand", "aluthge_iterate", "aluthge_power", "numrad_power")

K_MAX_LIMIT = 4096

# matrix products per Aluthge application in the fused kernel
_MATMULS_PER_STEP = 3


def _doubling(k_max):
    ks = []
    k = 1
    while k <= k_max:
        ks.append(k)
        k *= 2
    return tuple(ks)


@dataclass(frozen=True)
class PowerSchedule:
    """Strictly increasing power exponents, doubling by default."""

    k_values: tuple = _doubling(1024)

    def __post_init__(self):
        ks = tuple(int(k) for k in self.k_values)
        object.__setattr__(self, "k_values", ks)
        if not ks:
            raise InvalidInputError("schedule must contain at least one exponent")
        if ks[0] < 1 or any(b <= a for a, b in zip(ks, ks[1:])):
            raise InvalidInputError("k_values must be strictly increasing positive integers")
        if ks[-1] > K_MAX_LIMIT:
            raise InvalidInputError(f"k_max capped at {K_MAX_LIMIT}, got {ks[-1]}")

    @classmethod
    def doubling(cls, k_max=1024):
        if k_max < 1:
            raise InvalidInputError(f"k_max must be >= 1, got {k_max}")
        return cls(_doubling(k_max))


@dataclass(frozen=True)
class ToleranceConfig:
    """Cauchy-style stopping rule for the iterative estimators."""

    rtol: float = 1e-6
    atol: float = 1e-12
    max_iterations: int = 300

    def __post_init__(self):
        if self.rtol <= 0 or self.atol <= 0:
            raise InvalidInputError("rtol and atol must be positive")
        if self.max_iterations < 1:
            raise InvalidInputError("max_iterations must be >= 1")


@dataclass(frozen=True)
class BudgetUsed:
    iterations: int
    matmuls: int


@dataclass
class SpectralEstimate:
    """An estimator run: final value, per-step trace, and diagnostics.

    ``converged`` reports the Cauchy test on the last two trace entries;
    slow limits legitimately finish with ``converged=False`` and a full
    trace.
    """

    value: float
    method: str
    trace: list = field(default_factory=list)
    converged: bool = False
    budget_used: BudgetUsed = BudgetUsed(0, 0)

    def to_json_dict(self):
        return {
            "method": self.method,
            "value": self.value,
            "converged": self.converged,
            "budget": {
                "iterations": self.budget_used.iterations,
                "matmuls": self.budget_used.matmuls,
            },
            "trace": [[k, v] for k, v in self.trace],
        }

    def to_json(self):
        return json.dumps(self.to_json_dict())


def _cauchy(trace, tolc):
    if len(trace) < 2:
        return False
    a = trace[-2][1]
    b = trace[-1][1]
    return abs(b - a) <= tolc.rtol * abs(b) + tolc.atol


class _ScaledPower:
    """T^k as (unit-norm matrix, accumulated log norm), built by binary powering."""

    __slots__ = ("mat", "log_norm", "matmuls")

    def __init__(self, mat, log_norm, matmuls):
        self.mat = mat
        self.log_norm = log_norm
        self.matmuls = matmuls


def _normalize(m, log_acc, matmuls):
    nm = float(kern.svdvals(m)[0])
    if nm == 0.0:
        return _ScaledPower(np.zeros_like(m), -math.inf, matmuls)
    return _ScaledPower(m / nm, log_acc + math.log(nm), matmuls)


def _scaled_power(t, k):
    """Log-scaled T^k via repeated squaring; exact zero powers collapse to -inf."""
    base = _normalize(t, 0.0, 0)
    if base.log_norm == -math.inf:
        return base
    result = None
    matmuls = 0
    while k:
        if k & 1:
            if result is None:
                result = _ScaledPower(base.mat.copy(), base.log_norm, 0)
            else:
                matmuls += 1
                result = _normalize(result.mat @ base.mat, result.log_norm + base.log_norm, 0)
                if result.log_norm == -math.inf:
                    break
        k >>= 1
        if k:
            matmuls += 1
            base = _normalize(base.mat @ base.mat, 2.0 * base.log_norm, 0)
            if base.log_norm == -math.inf and result is None:
                # remaining factors are all zero
                return _ScaledPower(base.mat, -math.inf, matmuls)
    result.matmuls = matmuls
    return result


def _restore(log_norm, k):
    """exp(log_norm / k) with the zero flag mapped to 0."""
    if log_norm == -math.inf:
        return 0.0
    return math.exp(log_norm / k)


def estimate_gelfand(t, schedule=PowerSchedule(), tolc=ToleranceConfig()):
    """Trace of ||T^k||^(1/k) over the schedule; the classical norm power limit."""
    m = mk.as_matrix(t)
    trace = []
    matmuls = 0
    for k in schedule.k_values:
        p = _scaled_power(m, k)
        matmuls += p.matmuls
        trace.append((k, _restore(p.log_norm, k)))
    return SpectralEstimate(
        value=trace[-1][1],
        method="gelfand",
        trace=trace,
        converged=_cauchy(trace, tolc),
        budget_used=BudgetUsed(iterations=len(trace), matmuls=matmuls),
    )


def estimate_aluthge_iterate(t, cfg=AluthgeConfig(), tolc=ToleranceConfig()):
    """Trace of ||iterate_n(T)|| until the Cauchy test or the iteration cap fires.

    The sequence decreases to r(T), so the value is always an upper
    approximation.
    """
    m = mk.as_matrix(t)
    tol = -1.0 if cfg.rank_tolerance_override is None else float(cfg.rank_tolerance_override)
    trace = [(0, float(kern.svdvals(m)[0]))]
    matmuls = 0
    converged = False
    cur = m
    for n in range(1, tolc.max_iterations + 1):
        cur = kern.aluthge_step(cur, cfg.lam, tol)
        matmuls += _MATMULS_PER_STEP
        trace.append((n, float(kern.svdvals(cur)[0])))
        if _cauchy(trace, tolc):
            converged = True
            break
    return SpectralEstimate(
        value=trace[-1][1],
        method="aluthge_iterate",
        trace=trace,
        converged=converged,
        budget_used=BudgetUsed(iterations=len(trace) - 1, matmuls=matmuls),
    )


def _power_then_iterate(t, cfg, n, schedule):
    """Yield (k, iterate_n of the unit-norm T^k, log restore) plus a matmul tally."""
    m = mk.as_matrix(t)
    tol = -1.0 if cfg.rank_tolerance_override is None else float(cfg.rank_tolerance_override)
    for k in schedule.k_values:
        p = _scaled_power(m, k)
        matmuls = p.matmuls
        cur = p.mat
        if p.log_norm != -math.inf:
            for _ in range(n):
                cur = kern.aluthge_step(cur, cfg.lam, tol)
                matmuls += _MATMULS_PER_STEP
        yield k, cur, p.log_norm, matmuls


def estimate_aluthge_power(t, cfg=AluthgeConfig(), n=1, schedule=PowerSchedule(),
                           tolc=ToleranceConfig()):
    """Trace of ||iterate_n(T^k)||^(1/k) over the schedule.

    The transform is applied to the unit-norm power and the accumulated
    logarithm is re-attached afterwards, which is exact because the
    transform commutes with positive scalar scaling.
    """
    if n < 0:
        raise InvalidInputError(f"n must be >= 0, got {n}")
    trace = []
    matmuls = 0
    for k, cur, log_norm, used in _power_then_iterate(t, cfg, n, schedule):
        matmuls += used
        if log_norm == -math.inf:
            trace.append((k, 0.0))
            continue
        if n == 0:
            # the power was normalized by this exact norm; re-measuring the
            # unit matrix would only add roundoff
            trace.append((k, _restore(log_norm, k)))
            continue
        nm = float(kern.svdvals(cur)[0])
        log_val = -math.inf if nm == 0.0 else log_norm + math.log(nm)
        trace.append((k, _restore(log_val, k)))
    return SpectralEstimate(
        value=trace[-1][1],
        method="aluthge_power",
        trace=trace,
        converged=_cauchy(trace, tolc),
        budget_used=BudgetUsed(iterations=len(trace), matmuls=matmuls),
    )


def estimate_numrad_power(t, cfg=AluthgeConfig(), n=1, schedule=PowerSchedule(),
                          tolc=ToleranceConfig()):
    """Trace of w(iterate_n(T^k))^(1/k); w scales linearly, so the same log trick applies."""
    if n < 0:
        raise InvalidInputError(f"n must be >= 0, got {n}")
    trace = []
    matmuls = 0
    for k, cur, log_norm, used in _power_then_iterate(t, cfg, n, schedule):
        matmuls += used
        if log_norm == -math.inf:
            trace.append((k, 0.0))
            continue
        w = numerical_radius(cur).w
        log_val = -math.inf if w <= 0.0 else log_norm + math.log(w)
        trace.append((k, _restore(log_val, k)))
    return SpectralEstimate(
        value=trace[-1][1],
        method="numrad_power",
        trace=trace,
        converged=_cauchy(trace, tolc),
        budget_used=BudgetUsed(iterations=len(trace), matmuls=matmuls),
    )


def rota_scaled(t, epsilon):
    """T / (r(T) + epsilon); its spectral radius is strictly below 1.

    The scaled matrix is similar to a contraction, which is what the orbit
    minimizer is expected to rediscover.
    """
    if epsilon <= 0:
        raise InvalidInputError(f"epsilon must be positive, got {epsilon}")
    m = mk.as_matrix(t)
    return m / (mk.spectral_radius_oracle(m) + epsilon)
