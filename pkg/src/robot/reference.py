"""
参照姿勢軌道

主な機能:
- 追従用の参照角速度 ω_d(t) = (t e^{−t/2}, 0.6 sin 0.4t, 0.6 sin 0.7t) と解析的な微分
- 静止参照（ω_d ≡ 0）
- 上界 |ω_d| ≤ c_ω, |ω̇_d| ≤ c_a の実行時検査

制限事項:
- 参照姿勢 R_d は制御器内部の状態としてプラントと同じ積分器で積分する
"""

from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

from ..errors import ConfigError, SimulationError
from ..geometry.so3 import isRotation


class ReferenceKind(IntEnum):
    """参照軌道の種類"""
    TRACKING = 0    # 時変角速度
    STILL = 1       # 静止


@dataclass(frozen=True)
class ReferenceConfig:
    """
    参照軌道の設定

    Attributes:
        kind: 種類
        Rd0: 初期参照姿勢
        cOmega: |ω_d| の上界 [rad/s]
        cA: |ω̇_d| の上界 [rad/s²]
    """
    kind: ReferenceKind = ReferenceKind.TRACKING
    Rd0: np.ndarray = field(default_factory=lambda: np.eye(3))
    cOmega: float = 1.2
    cA: float = 1.2

    def __post_init__(self):
        if not isRotation(self.Rd0):
            raise ConfigError("初期参照姿勢が回転行列ではありません")
        if not (self.cOmega > 0.0 and self.cA > 0.0):
            raise ConfigError(f"参照軌道の上界は正である必要があります: cOmega={self.cOmega}, cA={self.cA}")

    def omegaD(self, t: float) -> np.ndarray:
        """参照角速度 ω_d(t)"""
        if self.kind == ReferenceKind.STILL:
            return np.zeros(3)
        return np.array([t * np.exp(-0.5 * t), 0.6 * np.sin(0.4 * t), 0.6 * np.sin(0.7 * t)])

    def omegaDDot(self, t: float) -> np.ndarray:
        """参照角加速度 ω̇_d(t)"""
        if self.kind == ReferenceKind.STILL:
            return np.zeros(3)
        return np.array([np.exp(-0.5 * t) * (1.0 - 0.5 * t), 0.24 * np.cos(0.4 * t), 0.42 * np.cos(0.7 * t)])

    def checkBounds(self, t: float) -> None:
        """
        上界の検査

        Raises:
            SimulationError: 上界を超えた場合
        """
        speed = float(np.linalg.norm(self.omegaD(t)))
        accel = float(np.linalg.norm(self.omegaDDot(t)))
        if speed > self.cOmega or accel > self.cA:
            raise SimulationError(
                f"参照軌道が上界を超えました: |omegaD|={speed:.4f} (cOmega={self.cOmega}), "
                f"|omegaDDot|={accel:.4f} (cA={self.cA})",
                time=t,
            )
