"""
非中心的シナジーポテンシャル（比較用ベースライン）

慣性ベクトル b1, b2 による3つのポテンシャル V(X,q), q ∈ {1, 2, 3} と誤差ベクトル e_H(X,q)

主な機能:
- Ψ_{N_i}(X) = 1 − b_iᵀ X b_i,  e_{N_i}(X) = (X b_i) × b_i
- Ψ_{E_i}(X) = α + β b_iᵀ X (b1 × b2),  e_{E_i}(X) = β b_i × X(b1 × b2)
- V(X,1) = Ψ_{N1} + Ψ_{N2},  V(X,q) = Ψ_{N_{q−1}} + Ψ_{E_{4−q}}（q = 2, 3）

制限事項:
- 誤差行列は X = Rᵀ R_d（中心的族の R̃ とは向きが異なる）
- Ẋ = −ẽ^ X に沿って dΨ/dt = eᵀẽ（係数2は付かない）
"""

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from ..errors import ConfigError
from ..geometry.so3 import cross

NONCS_MODES = (1, 2, 3)


@dataclass(frozen=True)
class NonCSParams:
    """
    非中心的族のパラメータ

    Attributes:
        alpha: 1 < α < 2
        beta: |β| < α − 1
        delta: 0 < δ < min{2 − α, α − |β| − 1}
        b1: 単位ベクトル
        b2: b1 に直交する単位ベクトル
    """
    alpha: float = 1.5
    beta: float = 0.4
    delta: float = 0.025
    b1: np.ndarray = field(default_factory=lambda: np.array([1.0, 0.0, 0.0]))
    b2: np.ndarray = field(default_factory=lambda: np.array([0.0, 1.0, 0.0]))

    def __post_init__(self):
        b1 = np.asarray(self.b1, dtype=float)
        b2 = np.asarray(self.b2, dtype=float)
        if not (1.0 < self.alpha < 2.0):
            raise ConfigError(f"NonCS の α は (1, 2) の範囲である必要があります: alpha={self.alpha}")
        if not abs(self.beta) < self.alpha - 1.0:
            raise ConfigError(f"NonCS の β は |β| < α − 1 を満たす必要があります: beta={self.beta}")
        upper = min(2.0 - self.alpha, self.alpha - abs(self.beta) - 1.0)
        if not (0.0 < self.delta < upper):
            raise ConfigError(f"NonCS の δ は (0, {upper:.6f}) の範囲である必要があります: delta={self.delta}")
        if abs(np.linalg.norm(b1) - 1.0) > 1e-9 or abs(np.linalg.norm(b2) - 1.0) > 1e-9:
            raise ConfigError("NonCS の b1, b2 は単位ベクトルである必要があります")
        if abs(float(b1 @ b2)) > 1e-9:
            raise ConfigError(f"NonCS の b1, b2 は直交する必要があります: b1ᵀb2={float(b1 @ b2)}")
        object.__setattr__(self, "b1", b1)
        object.__setattr__(self, "b2", b2)

    @property
    def b3(self) -> np.ndarray:
        return cross(self.b1, self.b2)

    def basis(self, index: int) -> np.ndarray:
        """b_i（i = 1, 2）"""
        return self.b1 if index == 1 else self.b2


def psiN(params: NonCSParams, X: np.ndarray, index: int) -> Tuple[float, np.ndarray]:
    """(Ψ_{N_i}(X), e_{N_i}(X))"""
    b = params.basis(index)
    Xb = X @ b
    return 1.0 - float(b @ Xb), cross(Xb, b)


def psiE(params: NonCSParams, X: np.ndarray, index: int) -> Tuple[float, np.ndarray]:
    """(Ψ_{E_i}(X), e_{E_i}(X))"""
    b = params.basis(index)
    Xb3 = X @ params.b3
    return params.alpha + params.beta * float(b @ Xb3), params.beta * cross(b, Xb3)


def noncsErrors(params: NonCSParams, X: np.ndarray, q: int) -> Tuple[float, np.ndarray]:
    """
    ポテンシャル値と誤差ベクトル

    Args:
        params: パラメータ
        X: 誤差行列 RᵀR_d
        q: モード（1, 2, 3）

    Returns:
        (V(X,q), e_H(X,q))
    """
    if q == 1:
        v1, e1 = psiN(params, X, 1)
        v2, e2 = psiN(params, X, 2)
    elif q in (2, 3):
        v1, e1 = psiN(params, X, q - 1)
        v2, e2 = psiE(params, X, 4 - q)
    else:
        raise ConfigError(f"NonCS のモードは 1, 2, 3 のいずれかです: q={q}")
    return v1 + v2, e1 + e2


def noncsValues(params: NonCSParams, X: np.ndarray) -> np.ndarray:
    """V(X,1), V(X,2), V(X,3)"""
    return np.array([noncsErrors(params, X, q)[0] for q in NONCS_MODES])
