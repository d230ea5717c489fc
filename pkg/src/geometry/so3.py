"""
SO(3) 基本演算

3次元ベクトル・3×3行列の基本演算と SO(3) のパラメータ表現

主な機能:
- hat / vee 写像、反対称部分の取り出し ψ(A)
- ロドリゲスの公式による軸角 → 回転行列、およびその逆写像
- 対称行列の固有分解（右手系の固有基底）
- 一般行列の SO(3) への射影（極分解）

制限事項:
- 3×3 専用
- 回転行列の判定は Frobenius ノルムで許容誤差 Tolerances.structural
- hat, psiMap, rotationAbout, geodesicAngle は末尾次元に対してバッチ入力を受け付ける
"""

from dataclasses import dataclass
from typing import Union

import numpy as np
import scipy.linalg

from ..errors import GeometryError


# ============================================================
# 許容誤差
# ============================================================

@dataclass(frozen=True)
class Tolerances:
    """
    数値許容誤差

    Attributes:
        structural: 構造的条件（直交性、対称性、反対称性）の許容誤差
        algebraic: 単位ベクトル長などの代数的条件の許容誤差
        smallAngle: 軸の抽出で sin θ が小さいとみなす閾値
    """
    structural: float = 1e-9
    algebraic: float = 1e-12
    smallAngle: float = 1e-6


TOL = Tolerances()


def setTolerances(tolerances: Tolerances) -> None:
    """
    パッケージ全体の許容誤差を置き換える

    Args:
        tolerances: 新しい許容誤差
    """
    global TOL
    TOL = tolerances


def getTolerances() -> Tolerances:
    """現在の許容誤差"""
    return TOL


# ============================================================
# 型
# ============================================================

Vec3 = np.ndarray
Mat3 = np.ndarray
Rotation = np.ndarray

IDENTITY = np.eye(3)


@dataclass(frozen=True)
class AxisAngle:
    """
    軸角表現

    Attributes:
        axis: 単位回転軸
        angle: 回転角 [rad]、[0, π]
    """
    axis: np.ndarray
    angle: float

    def __post_init__(self):
        axis = np.asarray(self.axis, dtype=float)
        if axis.shape != (3,):
            raise GeometryError(f"回転軸は3次元ベクトルである必要があります: shape={axis.shape}")
        if abs(np.linalg.norm(axis) - 1.0) > 1e3 * TOL.algebraic:
            raise GeometryError(f"回転軸が単位ベクトルではありません: norm={np.linalg.norm(axis)}")
        if not (0.0 <= self.angle <= np.pi + TOL.algebraic):
            raise GeometryError(f"回転角が [0, π] の範囲外です: angle={self.angle}")
        object.__setattr__(self, "axis", axis)
        object.__setattr__(self, "angle", float(min(max(self.angle, 0.0), np.pi)))


@dataclass(frozen=True)
class Spectrum3:
    """
    対称行列の固有分解

    Attributes:
        values: 昇順の固有値 (λ1 ≤ λ2 ≤ λ3)
        vectors: 列が固有ベクトル v1, v2, v3 の直交行列（v3 = v1 × v2）
    """
    values: np.ndarray
    vectors: np.ndarray

    def vector(self, index: int) -> np.ndarray:
        """index 番目の固有ベクトル（0始まり）"""
        return self.vectors[:, index]

    @property
    def minValue(self) -> float:
        return float(self.values[0])

    @property
    def maxValue(self) -> float:
        return float(self.values[2])


# ============================================================
# ベクトル・行列演算
# ============================================================

def cross(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """単一ベクトル同士の外積（np.cross より軽量）"""
    return np.array([
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ])


def normalize(v) -> np.ndarray:
    """
    ベクトルの正規化

    Raises:
        GeometryError: ゼロベクトルの場合
    """
    v = np.asarray(v, dtype=float)
    norm = np.linalg.norm(v)
    if norm <= TOL.algebraic:
        raise GeometryError(f"ゼロベクトルは正規化できません: v={v}")
    return v / norm


def hat(v: np.ndarray) -> np.ndarray:
    """
    hat 写像 (x^∧ y = x × y)

    Args:
        v: 3次元ベクトル（形状 (..., 3)）

    Returns:
        np.ndarray: 反対称行列（形状 (..., 3, 3)）
    """
    v = np.asarray(v, dtype=float)
    if v.ndim == 1:
        return np.array([
            [0.0, -v[2], v[1]],
            [v[2], 0.0, -v[0]],
            [-v[1], v[0], 0.0],
        ])
    out = np.zeros(v.shape[:-1] + (3, 3))
    out[..., 0, 1] = -v[..., 2]
    out[..., 0, 2] = v[..., 1]
    out[..., 1, 0] = v[..., 2]
    out[..., 1, 2] = -v[..., 0]
    out[..., 2, 0] = -v[..., 1]
    out[..., 2, 1] = v[..., 0]
    return out


def vee(A: np.ndarray) -> np.ndarray:
    """
    vee 写像（hat の逆）

    Args:
        A: 反対称行列

    Returns:
        np.ndarray: 3次元ベクトル

    Raises:
        GeometryError: 反対称でない場合
    """
    A = np.asarray(A, dtype=float)
    asym = np.max(np.abs(A + np.swapaxes(A, -1, -2)))
    if asym > TOL.structural:
        raise GeometryError(f"反対称行列ではありません: max|A + Aᵀ|={asym:.3e}")
    return np.stack([A[..., 2, 1], A[..., 0, 2], A[..., 1, 0]], axis=-1)


def psiMap(A: np.ndarray) -> np.ndarray:
    """
    反対称部分の vee: ψ(A) = ((A − Aᵀ)/2)^∨

    Args:
        A: 3×3 行列（形状 (..., 3, 3)）

    Returns:
        np.ndarray: 3次元ベクトル
    """
    A = np.asarray(A, dtype=float)
    if A.ndim == 2:
        return np.array([
            0.5 * (A[2, 1] - A[1, 2]),
            0.5 * (A[0, 2] - A[2, 0]),
            0.5 * (A[1, 0] - A[0, 1]),
        ])
    return 0.5 * np.stack([
        A[..., 2, 1] - A[..., 1, 2],
        A[..., 0, 2] - A[..., 2, 0],
        A[..., 1, 0] - A[..., 0, 1],
    ], axis=-1)


# ============================================================
# 回転表現
# ============================================================

def rotationAbout(theta: Union[float, np.ndarray], axis: np.ndarray) -> np.ndarray:
    """
    ロドリゲスの公式 R_a(θ, u) = I + sin θ u^ + (1 − cos θ)(u^)²

    θ は任意の実数を許容する（負角・2π 超も可）。

    Args:
        theta: 回転角 [rad]（スカラーまたは形状 (...,)）
        axis: 単位回転軸（形状 (..., 3)）

    Returns:
        np.ndarray: 回転行列
    """
    theta = np.asarray(theta, dtype=float)
    K = hat(axis)
    if theta.ndim == 0 and K.ndim == 2:
        return IDENTITY + np.sin(theta) * K + (1.0 - np.cos(theta)) * (K @ K)
    s = np.sin(theta)[..., None, None]
    c = (1.0 - np.cos(theta))[..., None, None]
    return IDENTITY + s * K + c * (K @ K)


def rodrigues(aa: AxisAngle) -> np.ndarray:
    """
    軸角表現から回転行列

    Args:
        aa: 軸角

    Returns:
        np.ndarray: 回転行列
    """
    return rotationAbout(aa.angle, aa.axis)


def geodesicAngle(R: np.ndarray) -> Union[float, np.ndarray]:
    """
    単位行列からの測地距離 ϑ(R) = atan2(|ψ(R)|, (tr R − 1)/2)

    恒等付近でも相対精度を保つ（角度 1e-9 rad でも丸め誤差程度）。

    Args:
        R: 回転行列（形状 (..., 3, 3)）

    Returns:
        回転角 [rad]
    """
    R = np.asarray(R, dtype=float)
    tr = np.trace(R, axis1=-2, axis2=-1)
    sinAngle = np.linalg.norm(psiMap(R), axis=-1)
    return np.arctan2(sinAngle, 0.5 * (tr - 1.0))


def _positiveFirstComponent(axis: np.ndarray) -> np.ndarray:
    for component in axis:
        if abs(component) > TOL.structural:
            return axis if component > 0.0 else -axis
    return axis


def logAxisAngle(R: np.ndarray) -> AxisAngle:
    """
    回転行列から軸角表現（角度は [0, π]）

    角度 0 では軸 e1、角度 π では最初の非零成分が正となる符号を採る。

    Args:
        R: 回転行列

    Returns:
        AxisAngle: 軸角

    Raises:
        GeometryError: 回転行列でない場合
    """
    R = checkRotation(R)
    angle = float(geodesicAngle(R))
    antisym = psiMap(R)  # = sin θ · u

    if np.sin(angle) > TOL.smallAngle:
        return AxisAngle(antisym / np.linalg.norm(antisym), angle)

    if angle < 0.5 * np.pi:
        # θ ≈ 0: 軸は反対称部分から（消えていれば e1）
        norm = np.linalg.norm(antisym)
        axis = antisym / norm if norm > TOL.algebraic else np.array([1.0, 0.0, 0.0])
        return AxisAngle(axis, angle)

    # θ ≈ π: 対称部分 (R + Rᵀ)/2 = cos θ I + (1 − cos θ) u uᵀ から軸を取り出す
    sym = 0.5 * (R + R.T)
    outer = (sym - np.cos(angle) * IDENTITY) / (1.0 - np.cos(angle))
    column = int(np.argmax(np.diag(outer)))
    axis = outer[:, column] / np.sqrt(max(outer[column, column], TOL.algebraic))
    axis = axis / np.linalg.norm(axis)
    sinPart = float(antisym @ axis)
    if abs(sinPart) > 10.0 * np.finfo(float).eps:
        axis = axis if sinPart > 0.0 else -axis
    else:
        axis = _positiveFirstComponent(axis)
    return AxisAngle(axis, angle)


# ============================================================
# 固有分解・射影
# ============================================================

def symEigen(A: np.ndarray) -> Spectrum3:
    """
    対称行列の固有分解

    Args:
        A: 対称 3×3 行列

    Returns:
        Spectrum3: 昇順固有値と右手系の固有基底

    Raises:
        GeometryError: 対称でない場合
    """
    A = np.asarray(A, dtype=float)
    if A.shape != (3, 3):
        raise GeometryError(f"3×3 行列である必要があります: shape={A.shape}")
    scale = max(1.0, float(np.max(np.abs(A))))
    asym = float(np.max(np.abs(A - A.T)))
    if asym > TOL.structural * scale:
        raise GeometryError(f"対称行列ではありません: max|A − Aᵀ|={asym:.3e}")

    values, vectors = np.linalg.eigh(0.5 * (A + A.T))
    vectors = vectors.copy()
    vectors[:, 2] = cross(vectors[:, 0], vectors[:, 1])
    return Spectrum3(values=values, vectors=vectors)


def projectToSO3(A: np.ndarray) -> np.ndarray:
    """
    最近傍の回転行列への射影（極分解 A = U P の直交因子）

    Args:
        A: det A > 0 の 3×3 行列

    Returns:
        np.ndarray: 回転行列

    Raises:
        GeometryError: det A ≤ 0 の場合
    """
    A = np.asarray(A, dtype=float)
    det = np.linalg.det(A)
    if not det > 0.0:
        raise GeometryError(f"det ≤ 0 の行列は SO(3) に射影できません: det={det}")
    unitary, _ = scipy.linalg.polar(A)
    return unitary


def isRotation(R: np.ndarray, tol: float = None) -> bool:
    """回転行列かどうか（RᵀR = I, det R = 1）"""
    tol = TOL.structural if tol is None else tol
    R = np.asarray(R, dtype=float)
    if R.shape != (3, 3) or not np.all(np.isfinite(R)):
        return False
    orth = np.linalg.norm(R.T @ R - IDENTITY)
    return bool(orth <= tol and abs(np.linalg.det(R) - 1.0) <= tol)


def checkRotation(R) -> np.ndarray:
    """
    回転行列の検証

    Raises:
        GeometryError: 回転行列でない場合
    """
    R = np.asarray(R, dtype=float)
    if not isRotation(R):
        raise GeometryError(f"回転行列ではありません: shape={R.shape}")
    return R
