import math

import numpy as np
import pytest

import spectrad as sp
from conftest import ginibre, haar_unitary, random_normal_matrix
from spectrad import matkernel as mk
from spectrad._kernels import realpart_top_eig_grid
from spectrad.errors import InvalidInputError
from spectrad.numrange import Angle


class TestRealPart:
    def test_hermitian_fixed(self):
        h = mk.hermitize(ginibre(3, 1))
        np.testing.assert_allclose(sp.real_part(h), h, atol=1e-15)

    def test_skew_hermitian_vanishes(self):
        a = ginibre(3, 2)
        k = (a - a.conj().T) / 2
        assert np.abs(sp.real_part(k)).max() < 1e-15

    def test_nilpotent(self, j2):
        np.testing.assert_allclose(sp.real_part(j2), [[0, 0.5], [0.5, 0]], atol=1e-15)


class TestNumericalRadius:
    def test_hermitian_equals_spectral_radius(self):
        res = sp.numerical_radius(np.diag([1.0, -2.0]))
        assert res.w == pytest.approx(2.0, abs=1e-9)

    def test_nilpotent_half(self, j2):
        res = sp.numerical_radius(j2)
        assert res.w == pytest.approx(0.5, abs=1e-9)

    def test_nilpotent_sweep_is_flat(self, j2):
        # independent oracle: the rotated real part has eigenvalues +-1/2
        # at every angle, so the sweep is constant
        g = realpart_top_eig_grid(j2, np.linspace(0, 2 * math.pi, 1001))
        np.testing.assert_allclose(g, 0.5, atol=1e-12)

    @pytest.mark.parametrize("seed", range(4))
    def test_normal_equals_oracle(self, seed):
        t = random_normal_matrix(4, seed)
        res = sp.numerical_radius(t)
        assert res.w == pytest.approx(mk.spectral_radius_oracle(t), abs=1e-9)

    def test_argmax_reproduces_w(self):
        t = ginibre(5, 9)
        res = sp.numerical_radius(t)
        g = float(realpart_top_eig_grid(t, np.array([res.argmax_angle]))[0])
        assert g == pytest.approx(res.w, abs=1e-9)

    @pytest.mark.parametrize("seed", range(6))
    def test_sandwich(self, seed):
        t = ginibre(2 + seed % 4, 50 + seed)
        r = mk.spectral_radius_oracle(t)
        norm = mk.operator_norm(t)
        w = sp.numerical_radius(t).w
        assert r - 1e-9 <= w <= norm + 1e-9
        assert w >= norm / 2 - 1e-9

    def test_unitary_invariance(self):
        t = ginibre(4, 31)
        q = haar_unitary(4, 32)
        assert sp.numerical_radius(q @ t @ q.conj().T).w == pytest.approx(
            sp.numerical_radius(t).w, abs=1e-9
        )

    def test_scaling(self):
        t = ginibre(3, 41)
        alpha = 0.7 - 1.9j
        assert sp.numerical_radius(alpha * t).w == pytest.approx(
            abs(alpha) * sp.numerical_radius(t).w, abs=1e-9
        )

    def test_zero_matrix(self):
        res = sp.numerical_radius(np.zeros((3, 3)))
        assert res.w == 0.0
        assert res.argmax_angle == 0.0

    def test_rejects_nonpositive_tol(self, j2):
        with pytest.raises(InvalidInputError):
            sp.numerical_radius(j2, tol=0.0)

    def test_optional_boundary_samples(self, j2):
        res = sp.numerical_radius(j2, boundary_samples=32)
        assert len(res.boundary_samples) == 32
        assert max(abs(z) for z in res.boundary_samples) <= res.w + 1e-9
        assert sp.numerical_radius(j2).boundary_samples is None

    def test_matches_dense_grid_oracle(self):
        th = np.linspace(0, 2 * math.pi, 20001)
        for seed in range(3):
            t = ginibre(5, 60 + seed)
            dense = float(realpart_top_eig_grid(t, th).max())
            assert sp.numerical_radius(t).w >= dense - 1e-10


class TestFovBoundary:
    def test_normal_segment(self):
        # W(diag(1, i)) is the segment from 1 to i
        pts = np.array(sp.fov_boundary(np.diag([1.0, 1j]), 64))
        seg_dir = (1j - 1.0) / abs(1j - 1.0)
        for z in pts:
            s = ((z - 1.0) / seg_dir).real
            proj = 1.0 + np.clip(s, 0, abs(1j - 1.0)) * seg_dir
            assert abs(z - proj) < 1e-9

    def test_nilpotent_disk(self, j2):
        pts = np.array(sp.fov_boundary(j2, 720))
        assert np.abs(pts).max() <= 0.5 + 1e-9
        center = pts.mean()
        order = np.argsort(np.angle(pts - center))
        p = pts[order]
        area = 0.5 * abs(np.sum(p.real * np.roll(p.imag, -1) - np.roll(p.real, -1) * p.imag))
        assert area == pytest.approx(math.pi / 4, abs=1e-3)

    def test_scalar_matrix(self):
        z = 0.3 - 2.0j
        pts = sp.fov_boundary(np.array([[z]]), 8)
        np.testing.assert_allclose(pts, [z] * 8, atol=1e-12)

    def test_points_bounded_by_radius(self):
        t = ginibre(4, 71)
        w = sp.numerical_radius(t).w
        pts = np.array(sp.fov_boundary(t, 128))
        assert np.abs(pts).max() <= w + 1e-9

    def test_rejects_too_few_samples(self, j2):
        with pytest.raises(InvalidInputError):
            sp.fov_boundary(j2, 2)


class TestPeripheralAngle:
    def test_imaginary_peripheral(self):
        ang = sp.peripheral_angle(np.diag([2j, 1.0]))
        assert ang.theta == pytest.approx(3 * math.pi / 2, abs=1e-12)
        rotated = np.exp(1j * ang.theta) * 2j
        assert rotated == pytest.approx(2.0, abs=1e-12)

    def test_positive_spectrum_gives_zero(self, unipotent2):
        assert sp.peripheral_angle(unipotent2).theta == pytest.approx(0.0, abs=1e-9)

    def test_negative_peripheral(self):
        assert sp.peripheral_angle(np.diag([-3.0, 1.0])).theta == pytest.approx(math.pi, abs=1e-12)

    def test_zero_matrix(self):
        assert sp.peripheral_angle(np.zeros((2, 2))).theta == 0.0

    def test_tie_break_smallest_argument(self):
        # both eigenvalues peripheral; 1 has argument 0, i has pi/2
        assert sp.peripheral_angle(np.diag([1j, 1.0])).theta == pytest.approx(0.0, abs=1e-12)


class TestRotatedRealpartNorm:
    def test_positive_diagonal(self):
        assert sp.rotated_realpart_norm(np.diag([2.0, 1.0]), Angle(0.0)) == pytest.approx(2.0)

    def test_nilpotent_constant_half(self, j2):
        for theta in (0.0, 0.3, 1.2, 4.0):
            assert sp.rotated_realpart_norm(j2, Angle(theta)) == pytest.approx(0.5, abs=1e-12)

    def test_pi_shift_invariance(self):
        t = ginibre(4, 81)
        a = sp.rotated_realpart_norm(t, Angle(0.7))
        b = sp.rotated_realpart_norm(t, Angle(0.7 + math.pi))
        assert a == pytest.approx(b, abs=1e-12)

    def test_accepts_plain_float(self, j2):
        assert sp.rotated_realpart_norm(j2, 0.5) == pytest.approx(0.5, abs=1e-12)


def test_angle_normalization():
    assert Angle(-math.pi / 2).theta == pytest.approx(3 * math.pi / 2)
    assert Angle(2 * math.pi).theta == pytest.approx(0.0)
    assert 0.0 <= Angle(100.0).theta < 2 * math.pi
