"""
非中心的族のテスト
"""

import numpy as np
import pytest

from conftest import randomRotations, randomUnitVectors
from src.errors import ConfigError
from src.geometry.so3 import rotationAbout
from src.controller.noncs import NONCS_MODES, NonCSParams, noncsErrors, noncsValues


@pytest.mark.parametrize(
    "kwargs",
    [
        {"alpha": 2.0},
        {"beta": 0.6},
        {"delta": 0.2},
        {"delta": 0.0},
        {"b1": np.array([2.0, 0.0, 0.0])},
        {"b2": np.array([1.0, 0.0, 0.0])},
    ],
)
def test_params_validation(kwargs):
    with pytest.raises(ConfigError):
        NonCSParams(**kwargs)


def test_values_at_identity():
    params = NonCSParams()
    assert np.allclose(noncsValues(params, np.eye(3)), [0.0, params.alpha, params.alpha])
    assert np.allclose(noncsErrors(params, np.eye(3), 1)[1], 0.0)
    assert np.allclose(params.b3, [0.0, 0.0, 1.0])


def test_error_vector_finite_difference(rng):
    params = NonCSParams()
    h = 1e-6
    for X, e in zip(randomRotations(rng, 300), randomUnitVectors(rng, 300)):
        for q in NONCS_MODES:
            plus, _ = noncsErrors(params, rotationAbout(-h, e) @ X, q)
            minus, _ = noncsErrors(params, rotationAbout(h, e) @ X, q)
            _, errorVector = noncsErrors(params, X, q)
            assert (plus - minus) / (2.0 * h) == pytest.approx(errorVector @ e, abs=1e-8)


def test_unknown_mode():
    with pytest.raises(ConfigError) as excinfo:
        noncsErrors(NonCSParams(), np.eye(3), 0)
    assert excinfo.value.exitCode == 1
