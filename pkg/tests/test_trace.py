"""
修正トレース関数のテスト
"""

import numpy as np
import pytest

from conftest import randomRotations, randomUnitVectors
from src.errors import ShapeError
from src.geometry.so3 import rotationAbout
from src.potential.trace import (
    InertialVectorSet,
    SpectrumClass,
    TraceShape,
    classify,
    deltaVU,
    psiRho,
    psiValue,
    shapeFromVectors,
    wahbaCost,
)


@pytest.mark.parametrize(
    "diagonal, expected",
    [
        ([0.4, 0.4, 0.4], SpectrumClass.ALL_EQUAL),
        ([0.2, 0.4, 0.4], SpectrumClass.TWO_LARGE_EQUAL_POS_MIN),
        ([0.0, 0.5, 0.5], SpectrumClass.TWO_LARGE_EQUAL_ANY_MIN),
        ([0.2, 0.2, 0.6], SpectrumClass.TWO_SMALL_EQUAL),
        ([0.1, 0.3, 0.6], SpectrumClass.ALL_DISTINCT),
    ],
)
def test_classification(diagonal, expected):
    assert TraceShape.fromMatrix(np.diag(diagonal)).spectrumClass == expected


def test_item2_shape(item2Shape):
    assert item2Shape.xi == pytest.approx(0.75)
    assert item2Shape.lambdaMaxG == pytest.approx(0.8)
    assert np.allclose(item2Shape.tag.lambdaG, [0.6, 0.6, 0.8])
    # 孤立固有ベクトルは枠の3列目
    assert abs(item2Shape.tag.frame[0, 2]) == pytest.approx(1.0)


def test_classification_respects_tolerance():
    shape = TraceShape.fromMatrix(np.diag([0.2, 0.4, 0.4 + 1e-6]))
    assert shape.spectrumClass == SpectrumClass.ALL_DISTINCT
    assert classify(shape, multTol=1e-4).spectrumClass == SpectrumClass.TWO_LARGE_EQUAL_POS_MIN


def test_invalid_shapes():
    with pytest.raises(ShapeError):
        TraceShape.fromMatrix(np.diag([-0.1, 0.4, 0.4]))
    with pytest.raises(ShapeError):
        TraceShape.fromMatrix(np.diag([0.0, 0.0, 1.0]))


def test_inertial_vector_validation():
    with pytest.raises(ShapeError):
        InertialVectorSet(np.array([[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]]), np.array([1.0, 1.0]))
    with pytest.raises(ShapeError):
        InertialVectorSet(np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]), np.array([1.0, -1.0]))
    with pytest.raises(ShapeError):
        InertialVectorSet(np.array([[2.0, 0.0, 0.0], [0.0, 1.0, 0.0]]), np.array([1.0, 1.0]))


def test_shape_from_vectors():
    vs = InertialVectorSet.normalized([[2.0, 0.0, 0.0], [0.0, 1.0, 0.0]], [1.0, 1.0])
    shape = shapeFromVectors(vs)
    assert np.allclose(shape.M, np.diag([1.0, 1.0, 0.0]))
    assert shape.spectrumClass == SpectrumClass.TWO_LARGE_EQUAL_ANY_MIN


def test_psi_value_range(item2Shape, rng):
    assert psiValue(item2Shape, np.eye(3)) == pytest.approx(0.0)
    values = psiValue(item2Shape, randomRotations(rng, 1000))
    assert np.all(values >= -1e-12)
    assert np.all(values <= 2.0 * item2Shape.lambdaMaxG + 1e-12)


def test_psi_at_half_turns(item2Shape):
    for i in range(3):
        v = item2Shape.specM.vector(i)
        lambdaG = item2Shape.traceM - item2Shape.specM.values[i]
        assert psiValue(item2Shape, rotationAbout(np.pi, v)) == pytest.approx(2.0 * lambdaG)


def test_psi_rho_finite_difference(item2Shape, rng):
    h = 1e-6
    for X, omega in zip(randomRotations(rng, 1000), randomUnitVectors(rng, 1000)):
        plus = psiValue(item2Shape, X @ rotationAbout(h, omega))
        minus = psiValue(item2Shape, X @ rotationAbout(-h, omega))
        numeric = (plus - minus) / (2.0 * h)
        analytic = 2.0 * psiRho(item2Shape, X) @ omega
        assert abs(analytic - numeric) <= 1e-5 * abs(numeric) + 1e-8


def test_delta_identity(rng):
    shape = TraceShape.fromMatrix(np.diag([0.1, 0.3, 0.6]))
    for i in range(3):
        v = shape.specM.vector(i)
        for u, theta in zip(randomUnitVectors(rng, 20), rng.uniform(0.0, np.pi, 20)):
            left = psiValue(shape, rotationAbout(np.pi, v) @ rotationAbout(theta, u))
            right = 2.0 * (shape.traceM - shape.specM.values[i]) - (1.0 - np.cos(theta)) * deltaVU(shape, v, u)
            assert left == pytest.approx(right, abs=1e-12)


def test_delta_special_directions(item2Shape, rng):
    frame = item2Shape.tag.frame
    lambdaM = item2Shape.tag.lambdaM
    for i in range(3):
        v = frame[:, i]
        assert deltaVU(item2Shape, v, v) == pytest.approx(item2Shape.traceM - lambdaM[i], abs=1e-14)
        for w in randomUnitVectors(rng, 20):
            u = w - (w @ v) * v
            u = u / np.linalg.norm(u)
            expected = item2Shape.traceM - 2.0 * lambdaM[i] - float(u @ item2Shape.M @ u)
            assert deltaVU(item2Shape, v, u) == pytest.approx(expected, abs=1e-14)


def test_delta_rejects_non_eigenvector(item2Shape):
    with pytest.raises(ShapeError):
        deltaVU(item2Shape, np.array([0.6, 0.8, 0.0]), np.array([1.0, 0.0, 0.0]))


def test_wahba_cost_matches_psi(rng):
    vs = InertialVectorSet.normalized([[1.0, 0.2, 0.0], [0.0, 1.0, 0.3], [0.3, 0.0, 1.0]], [0.5, 1.0, 2.0])
    shape = shapeFromVectors(vs)
    for R, Rd in zip(randomRotations(rng, 50), randomRotations(rng, 50)):
        assert wahbaCost(vs, R, Rd) == pytest.approx(float(psiValue(shape, R @ Rd.T)), abs=1e-12)
