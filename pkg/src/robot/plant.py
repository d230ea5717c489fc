"""
剛体の回転運動モデル

Ṙ = R ω^,  J ω̇ = −ω^ J ω + τ
"""

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from ..errors import ConfigError
from ..geometry.so3 import cross, hat

DEFAULT_INERTIA = (0.5, 0.7, 0.3)


@dataclass(frozen=True)
class PlantParams:
    """
    剛体パラメータ

    Attributes:
        J: 慣性行列 [kg·m²]（対称正定値）
    """
    J: np.ndarray = field(default_factory=lambda: np.diag(DEFAULT_INERTIA))
    Jinv: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        J = np.asarray(self.J, dtype=float)
        if J.shape == (3,):
            J = np.diag(J)
        if J.shape != (3, 3) or not np.allclose(J, J.T, atol=1e-12):
            raise ConfigError(f"慣性行列は対称な 3×3 行列である必要があります: J={J.tolist()}")
        if np.linalg.eigvalsh(J)[0] <= 0.0:
            raise ConfigError(f"慣性行列が正定値ではありません: J={J.tolist()}")
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "Jinv", np.linalg.inv(J))


def plantDerivative(params: PlantParams, R: np.ndarray, omega: np.ndarray, tau: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    運動方程式の右辺

    Args:
        params: 剛体パラメータ
        R: 姿勢
        omega: 機体角速度
        tau: 制御トルク

    Returns:
        (Ṙ, ω̇)
    """
    Jomega = params.J @ omega
    omegaDot = params.Jinv @ (tau - cross(omega, Jomega))
    return R @ hat(omega), omegaDot
