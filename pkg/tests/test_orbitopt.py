import json
import math

import numpy as np
import pytest

import spectrad as sp
from conftest import ginibre, random_normal_matrix
from spectrad import matkernel as mk
from spectrad.errors import InvalidInputError, RangeOverflowError
from spectrad.numrange import Angle
from spectrad.orbitopt import HermitianParams, OrbitObjective, minimize_orbit, orbit_gap


class TestHermitianParams:
    def test_round_trip(self):
        h = mk.hermitize(ginibre(4, 1))
        params = HermitianParams.from_matrix(h)
        np.testing.assert_allclose(params.materialize(), h, atol=1e-15)

    def test_materialize_exactly_hermitian(self):
        rng = np.random.default_rng(2)
        params = HermitianParams(dim=3, coords=rng.standard_normal(9))
        a = params.materialize()
        assert np.array_equal(a, a.conj().T)

    def test_frobenius_matches_numpy(self):
        rng = np.random.default_rng(3)
        params = HermitianParams(dim=4, coords=rng.standard_normal(16))
        assert params.frobenius_norm() == pytest.approx(
            np.linalg.norm(params.materialize(), "fro"), rel=1e-12
        )

    def test_rejects_wrong_length(self):
        with pytest.raises(InvalidInputError):
            HermitianParams(dim=3, coords=np.zeros(5))

    def test_rejects_non_finite(self):
        with pytest.raises(InvalidInputError):
            HermitianParams(dim=2, coords=np.array([np.nan, 0, 0, 0]))


class TestOrbitObjective:
    def test_rotated_requires_theta(self):
        with pytest.raises(InvalidInputError):
            OrbitObjective(kind="rotated_realpart_norm")

    def test_plain_rejects_theta(self):
        with pytest.raises(InvalidInputError):
            OrbitObjective(kind="delta_norm", theta=Angle(0.3))

    def test_unknown_kind(self):
        with pytest.raises(InvalidInputError):
            OrbitObjective(kind="nonsense")


class TestEvaluateObjective:
    def test_zero_generator_delta_norm(self):
        t = ginibre(4, 5)
        v = sp.evaluate_objective(t, OrbitObjective(kind="delta_norm", n=1),
                                  HermitianParams(dim=4, coords=np.zeros(16)))
        assert v == pytest.approx(mk.operator_norm(sp.aluthge(t)), rel=1e-12)

    def test_diagonal_scaling_closed_form(self, j2):
        # conjugating by exp(diag(-t, t)) scales the corner entry by exp(-2t)
        for t_ in (0.5, 1.0, 2.0):
            params = HermitianParams(dim=2, coords=np.array([-t_, t_, 0.0, 0.0]))
            v = sp.evaluate_objective(j2, OrbitObjective(kind="plain_norm"), params)
            assert v == pytest.approx(math.exp(-2 * t_), rel=1e-12)

    def test_normal_at_zero_equals_radius(self, normal_diag):
        v = sp.evaluate_objective(normal_diag, OrbitObjective(kind="delta_norm"),
                                  HermitianParams(dim=2, coords=np.zeros(4)))
        assert v == pytest.approx(2.0, abs=1e-12)

    def test_accepts_hermitian_matrix(self, j2):
        v = sp.evaluate_objective(j2, OrbitObjective(kind="plain_norm"), np.zeros((2, 2)))
        assert v == pytest.approx(1.0, abs=1e-12)

    def test_overflow_rejected(self, j2):
        big = HermitianParams(dim=2, coords=np.array([900.0, 0.0, 0.0, 0.0]))
        with pytest.raises(RangeOverflowError):
            sp.evaluate_objective(j2, OrbitObjective(kind="plain_norm"), big)

    def test_dimension_mismatch(self, j2):
        with pytest.raises(InvalidInputError):
            sp.evaluate_objective(j2, OrbitObjective(kind="plain_norm"),
                                  HermitianParams(dim=3, coords=np.zeros(9)))

    def test_kind_dominance_at_same_generator(self):
        t = ginibre(3, 8)
        rng = np.random.default_rng(9)
        theta = sp.peripheral_angle(t)
        for _ in range(5):
            params = HermitianParams(dim=3, coords=0.5 * rng.standard_normal(9))
            v_norm = sp.evaluate_objective(t, OrbitObjective(kind="delta_norm"), params)
            v_numrad = sp.evaluate_objective(t, OrbitObjective(kind="delta_numrad"), params)
            v_rot = sp.evaluate_objective(
                t, OrbitObjective(kind="rotated_realpart_norm", theta=theta), params
            )
            assert v_numrad <= v_norm + 1e-9
            assert v_rot <= v_norm + 1e-9


class TestMinimizeOrbit:
    def test_normal_reaches_radius(self, normal_diag):
        res = minimize_orbit(normal_diag, OrbitObjective(kind="delta_norm"),
                             budget=2000, seed=1)
        assert res.best_value == pytest.approx(2.0, abs=1e-6)

    def test_nilpotent_delta_attained_at_zero(self, j2):
        # the transform of a rank-1 nilpotent is exactly 0, so the zero
        # start already reaches the infimum
        res = minimize_orbit(j2, OrbitObjective(kind="delta_norm"), budget=5000,
                             radius=8.0, seed=1)
        assert res.best_value <= 0.05

    def test_nilpotent_plain_presses_boundary(self, j2):
        res = minimize_orbit(j2, OrbitObjective(kind="plain_norm"), budget=5000,
                             radius=8.0, seed=1)
        assert res.best_value <= 0.05
        assert res.boundary_hit

    def test_unipotent_approaches_one(self, unipotent2):
        res = minimize_orbit(unipotent2, OrbitObjective(kind="delta_norm"),
                             budget=5000, radius=8.0, seed=1)
        assert res.best_value <= 1.05
        assert res.boundary_hit

    def test_lower_bound_on_every_evaluation(self):
        t = ginibre(3, 15)
        r = mk.spectral_radius_oracle(t)
        seen = []
        minimize_orbit(t, OrbitObjective(kind="delta_norm"), budget=600, seed=2,
                       eval_callback=seen.append)
        assert seen
        assert min(seen) >= r - 1e-6

    def test_zero_start_bounds_best(self):
        t = ginibre(4, 16)
        at_zero = mk.operator_norm(sp.aluthge(t))
        res = minimize_orbit(t, OrbitObjective(kind="delta_norm"), budget=50, seed=3)
        assert res.best_value <= at_zero + 1e-12

    def test_history_non_increasing(self, unipotent2):
        res = minimize_orbit(unipotent2, OrbitObjective(kind="plain_norm"),
                             budget=1500, seed=4)
        vals = [v for _, v in res.history]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_best_value_reproducible_from_best_a(self, unipotent2):
        obj = OrbitObjective(kind="delta_norm")
        res = minimize_orbit(unipotent2, obj, budget=1500, seed=5)
        again = sp.evaluate_objective(unipotent2, obj, res.best_a)
        assert abs(again - res.best_value) <= 1e-12

    def test_seed_determinism(self):
        t = ginibre(3, 17)
        obj = OrbitObjective(kind="plain_norm")
        a = minimize_orbit(t, obj, budget=800, seed=42)
        b = minimize_orbit(t, obj, budget=800, seed=42)
        assert a.best_value == b.best_value
        assert a.evaluations == b.evaluations
        assert a.history == b.history
        assert np.array_equal(a.best_a.coords, b.best_a.coords)

    def test_budget_respected(self, unipotent2):
        res = minimize_orbit(unipotent2, OrbitObjective(kind="plain_norm"),
                             budget=137, seed=6)
        assert res.evaluations <= 137

    def test_budget_one_still_evaluates_zero_start(self, unipotent2):
        res = minimize_orbit(unipotent2, OrbitObjective(kind="delta_norm"),
                             budget=1, seed=7)
        assert res.evaluations == 1
        assert res.best_value == pytest.approx(
            mk.operator_norm(sp.aluthge(unipotent2)), rel=1e-12
        )

    def test_rejects_bad_budget_and_radius(self, j2):
        with pytest.raises(InvalidInputError):
            minimize_orbit(j2, OrbitObjective(kind="plain_norm"), budget=0)
        with pytest.raises(InvalidInputError):
            minimize_orbit(j2, OrbitObjective(kind="plain_norm"), radius=-1.0)

    def test_rota_consistency(self):
        t = ginibre(3, 18)
        s = sp.rota_scaled(t, 0.1)
        res = minimize_orbit(s, OrbitObjective(kind="plain_norm"), budget=5000, seed=1)
        assert res.best_value <= 1.05


class TestOrbitGap:
    def test_normal_gap_near_zero(self, normal_diag):
        gap = orbit_gap(normal_diag, OrbitObjective(kind="delta_norm"), budget=2000, seed=1)
        assert gap <= 1e-6

    def test_unipotent_gap_small(self, unipotent2):
        gap = orbit_gap(unipotent2, OrbitObjective(kind="delta_norm"), budget=5000, seed=1)
        assert gap <= 0.05

    def test_jordan_nilpotent_gap_small(self):
        t = sp.generate(sp.EnsembleSpec(kind="jordan", dim=3, seed=0))
        gap = orbit_gap(t, OrbitObjective(kind="delta_norm"), budget=5000, seed=1)
        assert gap <= 0.05


def test_orbit_result_json(unipotent2):
    res = minimize_orbit(unipotent2, OrbitObjective(kind="plain_norm"), budget=400, seed=8)
    doc = json.loads(res.to_json())
    assert doc["best_value"] == res.best_value
    assert doc["boundary_hit"] == res.boundary_hit
    assert doc["evaluations"] == res.evaluations
    assert len(doc["best_coords"]) == 4
    assert doc["history"] == [[i, v] for i, v in res.history]
