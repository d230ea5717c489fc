"""
SO(3) 基本演算のテスト
"""

import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from conftest import randomRotations, randomUnitVectors
from src.errors import GeometryError
from src.geometry.so3 import (
    AxisAngle,
    geodesicAngle,
    hat,
    isRotation,
    logAxisAngle,
    projectToSO3,
    psiMap,
    rodrigues,
    rotationAbout,
    symEigen,
    vee,
)


def test_hat_matches_cross_product(rng):
    for x, y in zip(rng.standard_normal((20, 3)), rng.standard_normal((20, 3))):
        assert np.allclose(hat(x) @ y, np.cross(x, y), atol=1e-14)
        assert np.allclose(vee(hat(x)), x)
        assert np.allclose(psiMap(hat(x)), x)


def test_hat_batched(rng):
    vectors = rng.standard_normal((5, 3))
    batched = hat(vectors)
    assert batched.shape == (5, 3, 3)
    for v, H in zip(vectors, batched):
        assert np.array_equal(H, hat(v))


def test_vee_rejects_non_antisymmetric():
    with pytest.raises(GeometryError):
        vee(np.eye(3))


def test_psi_map_ignores_symmetric_part(rng):
    S = rng.standard_normal((3, 3))
    S = S + S.T
    w = rng.standard_normal(3)
    assert np.allclose(psiMap(S + hat(w)), w)


def test_rotation_about_matches_rotvec(rng):
    for axis, theta in zip(randomUnitVectors(rng, 20), rng.uniform(-2 * np.pi, 2 * np.pi, 20)):
        R = rotationAbout(theta, axis)
        assert isRotation(R)
        assert np.allclose(R, Rotation.from_rotvec(theta * axis).as_matrix(), atol=1e-12)


def test_geodesic_angle_folds_into_zero_pi():
    axis = np.array([0.0, 0.6, 0.8])
    assert geodesicAngle(rotationAbout(1.2, axis)) == pytest.approx(1.2, abs=1e-12)
    assert geodesicAngle(rotationAbout(1.15 * np.pi, axis)) == pytest.approx(0.85 * np.pi, abs=1e-9)
    assert geodesicAngle(np.eye(3)) == 0.0


def test_geodesic_angle_small_angles():
    axis = np.array([0.0, 0.0, 1.0])
    for angle in (1e-10, 1e-9, 1e-7, 1e-4):
        R = rotationAbout(angle, axis)
        assert geodesicAngle(R) == pytest.approx(angle, rel=1e-6)
        aa = logAxisAngle(R)
        assert aa.angle == pytest.approx(angle, rel=1e-6)
        assert np.allclose(rodrigues(aa), R, atol=1e-14)
    batched = geodesicAngle(rotationAbout(np.array([1e-9, 0.5, 3.0]), np.tile(axis, (3, 1))))
    assert np.allclose(batched, [1e-9, 0.5, 3.0], rtol=1e-6, atol=0.0)


def test_log_round_trip(rng):
    for R in randomRotations(rng, 200):
        aa = logAxisAngle(R)
        assert 0.0 <= aa.angle <= np.pi
        assert np.allclose(rodrigues(aa), R, atol=1e-9)


def test_log_at_half_turn_picks_positive_first_component():
    axis = np.array([-0.37, 0.0, 0.93])
    axis = axis / np.linalg.norm(axis)
    aa = logAxisAngle(rotationAbout(np.pi, axis))
    assert aa.angle == pytest.approx(np.pi)
    assert np.allclose(aa.axis, -axis, atol=1e-9)
    assert aa.axis[0] > 0.0


def test_log_near_half_turn_keeps_sign():
    axis = np.array([0.0, 0.6, -0.8])
    aa = logAxisAngle(rotationAbout(np.pi - 1e-8, axis))
    assert np.allclose(aa.axis, axis, atol=1e-6)


def test_log_identity():
    aa = logAxisAngle(np.eye(3))
    assert aa.angle == 0.0
    assert np.allclose(aa.axis, [1.0, 0.0, 0.0])


def test_axis_angle_validation():
    with pytest.raises(GeometryError):
        AxisAngle(np.array([1.0, 1.0, 0.0]), 0.5)
    with pytest.raises(GeometryError):
        AxisAngle(np.array([1.0, 0.0, 0.0]), 4.0)


def test_sym_eigen_right_handed(rng):
    for _ in range(50):
        A = rng.standard_normal((3, 3))
        A = A + A.T
        spec = symEigen(A)
        assert np.all(np.diff(spec.values) >= 0.0)
        assert np.linalg.det(spec.vectors) == pytest.approx(1.0)
        assert np.allclose(spec.vectors @ np.diag(spec.values) @ spec.vectors.T, A, atol=1e-10)


def test_sym_eigen_rejects_non_symmetric():
    with pytest.raises(GeometryError):
        symEigen(np.array([[1.0, 2.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]))


def test_project_to_so3(rng):
    R = randomRotations(rng, 1)[0]
    noisy = R + 1e-6 * rng.standard_normal((3, 3))
    projected = projectToSO3(noisy)
    assert isRotation(projected)
    assert np.linalg.norm(projected - R) < 1e-5
    with pytest.raises(GeometryError):
        projectToSO3(-np.eye(3))
