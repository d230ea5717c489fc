"""
テスト共通フィクスチャ
"""

import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from src.potential.trace import TraceShape
from src.synergy.family import SynergisticFamily

ITEM2_M = np.diag([0.2, 0.4, 0.4])


def randomRotations(rng: np.random.Generator, count: int) -> np.ndarray:
    """一様ランダムな回転行列（形状 (count, 3, 3)）"""
    return Rotation.random(count, random_state=rng).as_matrix()


def randomUnitVectors(rng: np.random.Generator, count: int) -> np.ndarray:
    vectors = rng.standard_normal((count, 3))
    return vectors / np.linalg.norm(vectors, axis=1, keepdims=True)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240531)


@pytest.fixture(scope="session")
def item2Shape() -> TraceShape:
    return TraceShape.fromMatrix(ITEM2_M)


@pytest.fixture(scope="session")
def item2Family(item2Shape) -> SynergisticFamily:
    return SynergisticFamily.build(item2Shape, 0.465)


@pytest.fixture(scope="session")
def item3Family(item2Shape) -> SynergisticFamily:
    return SynergisticFamily.build(item2Shape, 0.465, scheme=3)


@pytest.fixture(scope="session")
def item4Family() -> SynergisticFamily:
    return SynergisticFamily.build(TraceShape.fromMatrix(np.diag([0.2, 0.2, 0.6])), 0.3, branchGrid=180)
