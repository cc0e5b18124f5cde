"""Normaloid detection (r(T) = ||T||) and its orbit/power characterizations.

A matrix is normaloid exactly when no similarity can pull the measured
size below the norm: the Aluthge orbit, the plain orbit, the rotated
real-part orbit, and the power equalities ||T||^k = ||transform(T^k)||
all certify the same verdict.  The orbit-based checks are one-sided under
a finite search budget: a found value below the norm refutes normaloid,
while failing to find one is consistent with it.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from . import matkernel as mk
from .aluthge import AluthgeConfig
from .errors import InvalidInputError
from .estimators import PowerSchedule, estimate_aluthge_power
from .numrange import peripheral_angle
from .orbitopt import OrbitObjective, minimize_orbit

CHECKS = (
    "cor22_aluthge_orbit",
    "cor23_plain_orbit",
    "cor24_power_norm",
    "cor31_rotated_realpart",
)

_TINY = float(np.finfo(np.float64).tiny)


@dataclass(frozen=True)
class CharacterizationCheck:
    """One characterization's verdict: does it agree with the norm-vs-radius oracle?

    ``evidence`` is the extremal value the check found; for the power
    check, ``witness_k`` is the exponent exhibiting the violation (powers
    k >= 2 are preferred as witnesses, since k = 1 merely repeats the
    single-step contraction)."""

    which: str
    holds: bool
    evidence: float
    witness_k: int | None = None


@dataclass
class NormaloidVerdict:
    is_normaloid: bool
    r: float
    norm: float
    relative_gap: float
    witnesses: list = field(default_factory=list)

    def to_json_dict(self):
        return {
            "is_normaloid": self.is_normaloid,
            "r": self.r,
            "norm": self.norm,
            "relative_gap": self.relative_gap,
            "witnesses": [
                {
                    "which": c.which,
                    "holds": c.holds,
                    "evidence": c.evidence,
                    "witness_k": c.witness_k,
                }
                for c in self.witnesses
            ],
        }

    def to_json(self):
        return json.dumps(self.to_json_dict())


def normaloid_check(t, decision_rtol=1e-8):
    """Compare the eigenvalue oracle with the operator norm."""
    if decision_rtol <= 0:
        raise InvalidInputError(f"decision_rtol must be positive, got {decision_rtol}")
    m = mk.as_matrix(t)
    r = mk.spectral_radius_oracle(m)
    norm = mk.operator_norm(m)
    gap = (norm - r) / max(norm, _TINY)
    return NormaloidVerdict(
        is_normaloid=gap <= decision_rtol,
        r=r,
        norm=norm,
        relative_gap=gap,
        witnesses=[],
    )


def _orbit_check(which, t, kind, theta, budget, seed, norm, is_normaloid, decision_rtol):
    obj = OrbitObjective(kind=kind, lam=0.5, n=1, theta=theta)
    best = minimize_orbit(t, obj, budget=budget, radius=8.0, seed=seed).best_value
    claims_normaloid = best >= norm * (1.0 - decision_rtol)
    return CharacterizationCheck(
        which=which, holds=claims_normaloid == is_normaloid, evidence=best
    )


def _power_check(t, schedule, norm, is_normaloid, decision_rtol, lam):
    est = estimate_aluthge_power(t, AluthgeConfig(lam=lam), n=1, schedule=schedule)
    scale = max(norm, _TINY)
    worst_dev = 0.0
    worst_k = None
    first_bad_k = None
    first_bad_k_ge2 = None
    for k, val in est.trace:
        dev = abs(val - norm) / scale
        if dev > worst_dev:
            worst_dev = dev
            worst_k = k
        if dev > decision_rtol:
            if first_bad_k is None:
                first_bad_k = k
            if k >= 2 and first_bad_k_ge2 is None:
                first_bad_k_ge2 = k
    claims_normaloid = worst_dev <= decision_rtol
    witness = None
    if not claims_normaloid:
        witness = first_bad_k_ge2 if first_bad_k_ge2 is not None else first_bad_k
        if witness is None:
            witness = worst_k
    return CharacterizationCheck(
        which="cor24_power_norm",
        holds=claims_normaloid == is_normaloid,
        evidence=worst_dev,
        witness_k=witness,
    )


def verify_characterizations(t, budget=2000, seed=0, decision_rtol=1e-8, lam=0.5,
                             k_max=64):
    """Run all four characterizations and report agreement with the oracle verdict.

    Disagreement is surfaced per check (``holds=False`` plus the
    evidence), never silently resolved.
    """
    if budget < 1:
        raise InvalidInputError(f"budget must be >= 1, got {budget}")
    m = mk.as_matrix(t)
    verdict = normaloid_check(m, decision_rtol=decision_rtol)
    schedule = PowerSchedule.doubling(k_max)
    theta = peripheral_angle(m)
    checks = [
        _orbit_check("cor22_aluthge_orbit", m, "delta_norm", None, budget, seed,
                     verdict.norm, verdict.is_normaloid, decision_rtol),
        _orbit_check("cor23_plain_orbit", m, "plain_norm", None, budget, seed ^ 1,
                     verdict.norm, verdict.is_normaloid, decision_rtol),
        _power_check(m, schedule, verdict.norm, verdict.is_normaloid, decision_rtol, lam),
        _orbit_check("cor31_rotated_realpart", m, "rotated_realpart_numrad", theta,
                     budget, seed ^ 2, verdict.norm, verdict.is_normaloid, decision_rtol),
    ]
    verdict.witnesses = checks
    return verdict
