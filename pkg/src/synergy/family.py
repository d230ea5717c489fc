"""
中心的シナジーポテンシャル族

修正トレース関数を角度ワーピング T(X,q) = X R_a(θ(X), u_q) で変形した族 V(X,q) = Ψ_M(T(X,q))

主な機能:
- ワーピング角 θ(X) = 2 arcsin(kΨ_M(X)/(2λ_max^G)) と変形 T(X,q)
- 変形のヤコビ行列 Θ(X,q) と勾配ベクトル ρ_V(X,q) = Θᵀ ψ(M T)
- シナジーギャップ π_V（比較対象 Q_q）と μ_V（全体 Q）
- 臨界点における合成回転 R_a(θ,−u_q) R_a(θ,u_p) の軸角

制限事項:
- ゲイン k は 0 < k < 1/√(6 − max{1, 4ξ²}) の範囲
- X の入力は形状 (..., 3, 3) のバッチを許容（ギャップ・合成回転は単一のみ）
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from ..errors import FamilyError
from ..geometry.so3 import AxisAngle, cross, psiMap, rotationAbout
from ..potential.trace import TraceShape, psiValue
from ..utils.logger import get_logger
from .directions import WarpingDirections, selectDirections

logger = get_logger("synergy_so3.synergy")

DEFAULT_DELTA_FRACTION = 0.8
RADICAND_FLOOR = 1e-12


def gainBound(xi: float) -> float:
    """ワーピングゲインの上限 1/√(6 − max{1, 4ξ²})"""
    return 1.0 / np.sqrt(6.0 - max(1.0, 4.0 * xi * xi))


@dataclass(frozen=True)
class WarpedFamily:
    """
    ワーピングされたポテンシャル族（ヒステリシス幅を持たない）

    Attributes:
        shape: 修正トレース関数の形状
        dirs: ワーピング方向集合
        k: ワーピングゲイン
    """
    shape: TraceShape
    dirs: WarpingDirections
    k: float

    def __post_init__(self):
        bound = gainBound(self.shape.xi)
        if not (0.0 < self.k < bound):
            raise FamilyError(
                f"ワーピングゲインが許容範囲外です: k={self.k}, bound={bound:.6f}, xi={self.shape.xi:.6f}"
            )

    @property
    def size(self) -> int:
        """|Q|"""
        return self.dirs.size

    @property
    def lambdaMaxG(self) -> float:
        return self.shape.lambdaMaxG

    def modes(self) -> range:
        return range(self.dirs.size)


@dataclass(frozen=True)
class SynergisticFamily(WarpedFamily):
    """
    ヒステリシス幅付きのシナジーポテンシャル族

    Attributes:
        deltaBar: 各 q のギャップ下界 δ̄_q
        deltaHyst: 各 q のヒステリシス幅 δ(q)（0 < δ(q) < δ̄_q）
    """
    deltaBar: Tuple[float, ...] = ()
    deltaHyst: Tuple[float, ...] = ()

    def __post_init__(self):
        super().__post_init__()
        if len(self.deltaBar) != self.size or len(self.deltaHyst) != self.size:
            raise FamilyError(
                f"δ̄ と δ の個数が方向数と一致しません: size={self.size}, "
                f"deltaBar={len(self.deltaBar)}, deltaHyst={len(self.deltaHyst)}"
            )
        for q, (bar, hyst) in enumerate(zip(self.deltaBar, self.deltaHyst)):
            if not bar > 0.0:
                raise FamilyError(f"ギャップ下界が正ではありません: q={q}, deltaBar={bar}")
            if not (0.0 < hyst < bar):
                raise FamilyError(
                    f"ヒステリシス幅は 0 < δ(q) < δ̄_q を満たす必要があります: q={q}, "
                    f"delta={hyst}, deltaBar={bar}"
                )

    @classmethod
    def build(
        cls,
        shape: TraceShape,
        k: float,
        scheme: Optional[int] = None,
        deltaFraction: float = DEFAULT_DELTA_FRACTION,
        deltaHyst: Optional[Sequence[float]] = None,
        branchGrid: int = 720,
        sphereGrid: int = 10000,
    ) -> "SynergisticFamily":
        """
        形状とゲインから族を構成（δ̄ は閉形式または数値認証で決定）

        Args:
            shape: 形状
            k: ワーピングゲイン
            scheme: 方向集合の方式の上書き
            deltaFraction: δ(q) = deltaFraction·δ̄_q（deltaHyst 未指定時）
            deltaHyst: q ごとのヒステリシス幅の明示指定
            branchGrid: 固有ベクトル連続体の分割数（数値認証で使用）
            sphereGrid: 全固有値等しい場合の球面サンプル数

        Returns:
            SynergisticFamily: 族

        Raises:
            FamilyError: 構成条件を満たさない場合
        """
        from .bounds import gapLowerBound

        dirs = selectDirections(shape, scheme)
        base = WarpedFamily(shape=shape, dirs=dirs, k=k)
        bar = gapLowerBound(base, branchGrid=branchGrid, sphereGrid=sphereGrid)
        deltaBar = tuple(float(bar) for _ in range(dirs.size))
        if deltaHyst is None:
            if not (0.0 < deltaFraction < 1.0):
                raise FamilyError(f"deltaFraction は (0, 1) の範囲である必要があります: {deltaFraction}")
            hyst = tuple(deltaFraction * value for value in deltaBar)
        else:
            hyst = tuple(float(value) for value in deltaHyst)
        family = cls(shape=shape, dirs=dirs, k=k, deltaBar=deltaBar, deltaHyst=hyst)
        logger.info(
            f"ポテンシャル族を構成: class={shape.spectrumClass.name}, scheme={dirs.scheme.value}, "
            f"|Q|={dirs.size}, k={k}, deltaBar={bar:.6f}, delta={hyst[0]:.6f}"
        )
        return family


# ============================================================
# ワーピング
# ============================================================

def _sinHalfWarp(fam: WarpedFamily, psi):
    return fam.k * psi / (2.0 * fam.lambdaMaxG)


def warpAngle(fam: WarpedFamily, X: np.ndarray):
    """
    ワーピング角 θ(X) = 2 arcsin(kΨ_M(X)/(2λ_max^G))

    Returns:
        [0, 2 arcsin(k)] の角度
    """
    s = _sinHalfWarp(fam, psiValue(fam.shape, X))
    return 2.0 * np.arcsin(np.clip(s, 0.0, 1.0))


def warp(fam: WarpedFamily, X: np.ndarray, q: int) -> np.ndarray:
    """変形 T(X,q) = X R_a(θ(X), u_q)"""
    return X @ rotationAbout(warpAngle(fam, X), fam.dirs.direction(q))


def _warpCoefficient(fam: WarpedFamily, psi):
    s = _sinHalfWarp(fam, psi)
    radicand = 1.0 - s * s
    if np.any(radicand <= RADICAND_FLOOR):
        raise FamilyError(f"ワーピング角の微分が特異です: minRadicand={np.min(radicand):.3e}")
    return fam.k / (fam.lambdaMaxG * np.sqrt(radicand))


def thetaMatrix(fam: WarpedFamily, X: np.ndarray, q: int) -> np.ndarray:
    """
    変形のヤコビ行列 Θ(X,q) = R_a(θ,u_q)ᵀ + 2 u_q (c(X) ψ(MX))ᵀ

    Ẋ = Xω^ のとき d/dt T = T(Θω)^ を満たす。
    """
    psi = psiValue(fam.shape, X)
    u = fam.dirs.direction(q)
    rot = rotationAbout(2.0 * np.arcsin(np.clip(_sinHalfWarp(fam, psi), 0.0, 1.0)), u)
    coeff = np.asarray(_warpCoefficient(fam, psi))
    grad = coeff[..., None] * psiMap(fam.shape.M @ X)
    return np.swapaxes(rot, -1, -2) + 2.0 * u[:, None] * grad[..., None, :]


def familyValue(fam: WarpedFamily, X: np.ndarray, q: int):
    """V(X,q) = Ψ_M(T(X,q))"""
    return psiValue(fam.shape, warp(fam, X, q))


def _rhoVSingle(fam: WarpedFamily, X: np.ndarray, q: int) -> np.ndarray:
    M = fam.shape.M
    psi = fam.shape.traceM - float(np.sum(M * X))
    s = min(max(_sinHalfWarp(fam, psi), 0.0), 1.0)
    radicand = 1.0 - s * s
    if radicand <= RADICAND_FLOOR:
        raise FamilyError(f"ワーピング角の微分が特異です: minRadicand={radicand:.3e}")
    coeff = fam.k / (fam.lambdaMaxG * math.sqrt(radicand))
    u = fam.dirs.direction(q)
    rot = rotationAbout(2.0 * math.asin(s), u)
    gradX = psiMap(M @ X)
    gradT = psiMap(M @ (X @ rot))
    return rot @ gradT + (2.0 * coeff * float(gradT @ u)) * gradX


def rhoV(fam: WarpedFamily, X: np.ndarray, q: int) -> np.ndarray:
    """
    勾配ベクトル ρ_V(X,q) = Θ(X,q)ᵀ ψ(M T(X,q))

    Ẋ = Xω^ に沿って dV/dt = 2 ρ_Vᵀ ω を満たす。
    """
    X = np.asarray(X, dtype=float)
    if X.ndim == 2:
        return _rhoVSingle(fam, X, q)
    psi = psiValue(fam.shape, X)
    u = fam.dirs.direction(q)
    rot = rotationAbout(2.0 * np.arcsin(np.clip(_sinHalfWarp(fam, psi), 0.0, 1.0)), u)
    T = X @ rot
    coeff = np.asarray(_warpCoefficient(fam, psi))
    gradX = coeff[..., None] * psiMap(fam.shape.M @ X)
    gradT = psiMap(fam.shape.M @ T)
    # Θᵀ g = R g + 2 (uᵀg) c ψ(MX)
    return np.einsum("...ij,...j->...i", rot, gradT) + 2.0 * np.asarray(gradT @ u)[..., None] * gradX


def familyValues(fam: WarpedFamily, X: np.ndarray, indices: Sequence[int]) -> np.ndarray:
    """
    複数の q について V(X,q) を評価（θ(X) は共通に一度だけ計算）

    A = MX として tr(A R_a(θ,u)) = tr A − 2 sin θ uᵀψ(A) + (1 − cos θ)(uᵀAu − tr A)。

    Args:
        fam: 族
        X: 回転行列（単一）
        indices: 評価する q の列

    Returns:
        np.ndarray: indices と同順の値
    """
    A = fam.shape.M @ np.asarray(X, dtype=float)
    traceA = A[0, 0] + A[1, 1] + A[2, 2]
    psi = fam.shape.traceM - traceA
    theta = 2.0 * math.asin(min(max(_sinHalfWarp(fam, psi), 0.0), 1.0))
    U = fam.dirs.directions[list(indices)]
    quadratic = np.einsum("ni,ij,nj->n", U, A, U)
    traceWarped = traceA - 2.0 * math.sin(theta) * (U @ psiMap(A)) + (1.0 - math.cos(theta)) * (quadratic - traceA)
    return fam.shape.traceM - traceWarped


# ============================================================
# ギャップ
# ============================================================

def refinedGap(fam: WarpedFamily, X: np.ndarray, q: int) -> float:
    """π_V(X,q) = V(X,q) − min_{p ∈ Q_q ∪ {q}} V(X,p)"""
    values = familyValues(fam, X, (q,) + tuple(fam.dirs.subset(q)))
    return float(values[0] - values.min())


def fullGap(fam: WarpedFamily, X: np.ndarray, q: int) -> float:
    """μ_V(X,q) = V(X,q) − min_{p ∈ Q} V(X,p)"""
    values = familyValues(fam, X, tuple(fam.modes()))
    return float(values[q] - values.min())


# ============================================================
# 合成回転
# ============================================================

def composeWarps(theta: float, up: np.ndarray, uq: np.ndarray) -> AxisAngle:
    """
    R_a(θ, −u_q) R_a(θ, u_p) の軸角（sin(θ_pq/2) > 0 の向き）

    cos(θ_pq/2) = cos²(θ/2) + u_pᵀu_q sin²(θ/2)
    u_pq = ((u_p − u_q) sin θ/2 + u_p × u_q sin²(θ/2)) / sin(θ_pq/2)

    Raises:
        FamilyError: 合成が恒等回転になる場合
    """
    c = np.cos(0.5 * theta)
    s = np.sin(0.5 * theta)
    cosHalf = c * c + float(up @ uq) * s * s
    vec = (up - uq) * (s * c) + cross(up, uq) * (s * s)
    sinHalf = float(np.linalg.norm(vec))
    if sinHalf <= RADICAND_FLOOR:
        raise FamilyError(f"合成回転が恒等回転です（回転軸が定まりません）: theta={theta}")
    axis = vec / sinHalf
    angle = 2.0 * np.arctan2(sinHalf, cosHalf)
    if angle > np.pi:
        angle, axis = 2.0 * np.pi - angle, -axis
    return AxisAngle(axis, angle)


def composedRotation(fam: WarpedFamily, Y: np.ndarray, p: int, q: int) -> AxisAngle:
    """
    臨界点 Y における合成回転 (θ_pq, u_pq)

    Raises:
        FamilyError: p = q の場合、θ(Y) ∉ (0, π) の場合
    """
    if p == q:
        raise FamilyError(f"合成回転には p ≠ q が必要です: p={p}, q={q}")
    theta = float(warpAngle(fam, Y))
    if not (0.0 < theta < np.pi):
        raise FamilyError(f"ワーピング角が (0, π) の範囲外です: theta={theta}")
    return composeWarps(theta, fam.dirs.direction(p), fam.dirs.direction(q))
