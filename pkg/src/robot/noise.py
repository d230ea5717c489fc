"""
計測ノイズ

姿勢 R̄ = R R_a(α_r, n_r)、角速度 ω̄ = ω + n_ω の計測ノイズを生成する

主な機能:
- α_r ~ Uniform(0, α_max)、n_r = n/|n|（n は標準正規）
- n_ω ~ Normal(0, σ_ω²) を成分ごとに独立
- numpy の PCG64 生成器によるシード付き再現

制限事項:
- 1サンプルあたりの乱数消費順は 軸(3) → 角度(1) → ジャイロ(3) で固定
- ノイズ幅が 0 の成分は乱数を消費しない
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..errors import ConfigError
from ..geometry.so3 import rotationAbout

DEFAULT_ALPHA_MAX = 0.01 * np.pi
DEFAULT_SIGMA_OMEGA = 0.01


@dataclass(frozen=True)
class NoiseConfig:
    """
    計測ノイズ設定

    Attributes:
        alphaMax: 姿勢ノイズの最大回転角 [rad]
        sigmaOmega: ジャイロノイズの標準偏差 [rad/s]
    """
    alphaMax: float = DEFAULT_ALPHA_MAX
    sigmaOmega: float = DEFAULT_SIGMA_OMEGA

    def __post_init__(self):
        if self.alphaMax < 0.0 or self.sigmaOmega < 0.0:
            raise ConfigError(
                f"ノイズ幅は非負である必要があります: alphaMax={self.alphaMax}, sigmaOmega={self.sigmaOmega}"
            )

    @property
    def isZero(self) -> bool:
        return self.alphaMax == 0.0 and self.sigmaOmega == 0.0

    @classmethod
    def zero(cls) -> "NoiseConfig":
        return cls(alphaMax=0.0, sigmaOmega=0.0)


class MeasurementNoise:
    """
    計測ノイズ生成器

    Attributes:
        config: ノイズ設定
    """

    def __init__(self, config: NoiseConfig, seed: Optional[int] = None):
        """
        初期化

        Args:
            config: ノイズ設定
            seed: 乱数シード
        """
        self.config = config
        self._rng = np.random.default_rng(seed)

    def sample(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        1ステップ分のノイズ

        Returns:
            (姿勢摂動 R_a(α_r, n_r), ジャイロノイズ n_ω)
        """
        perturbation = np.eye(3)
        if self.config.alphaMax > 0.0:
            axis = self._rng.standard_normal(3)
            axis = axis / np.linalg.norm(axis)
            alpha = self._rng.uniform(0.0, self.config.alphaMax)
            perturbation = rotationAbout(alpha, axis)
        gyro = np.zeros(3)
        if self.config.sigmaOmega > 0.0:
            gyro = self._rng.normal(0.0, self.config.sigmaOmega, 3)
        return perturbation, gyro
