"""
修正トレース関数

Ψ_M(X) = tr(M(I − X)) の構成・評価・勾配と、臨界点構造の場合分け

主な機能:
- 重み付き慣性ベクトル集合からの形状行列 M = Σ wᵢ aᵢ aᵢᵀ の構成
- Ψ_M の値と勾配ベクトル ψ(MX) の評価
- 半回転 R_a(π, v) 近傍での評価係数 Δ(v, u)
- M の固有値重複度による5分類と、分類ごとの固有基底の並べ替え
- Wahba コストの評価

制限事項:
- M は半正定値かつ rank ≥ 2（G = tr(M)I − M が正定値）であること
- 重複判定は相対ギャップ < multTol（既定 1e-9）
"""

from dataclasses import dataclass
from enum import IntEnum
from typing import Optional

import numpy as np

from ..errors import ShapeError
from ..geometry.so3 import Spectrum3, cross, getTolerances, psiMap, symEigen
from ..utils.logger import get_logger

logger = get_logger("synergy_so3.potential")

DEFAULT_MULT_TOL = 1e-9


class SpectrumClass(IntEnum):
    """
    形状行列 M の固有値重複度による分類

    値は方向集合の構成規則（1〜5）に対応する
    """
    ALL_EQUAL = 1                  # λ1 = λ2 = λ3 > 0
    TWO_LARGE_EQUAL_POS_MIN = 2    # λ1 = λ2 > λ3 > 0
    TWO_LARGE_EQUAL_ANY_MIN = 3    # λ1 = λ2 > λ3 = 0
    TWO_SMALL_EQUAL = 4            # 0 < λ1 = λ2 < λ3
    ALL_DISTINCT = 5               # 0 ≤ λ1 < λ2 < λ3


@dataclass(frozen=True)
class MulticlassTag:
    """
    分類結果と分類ごとの並べ替え済み固有基底

    2大固有値が等しい場合は繰り返し対を v1, v2、残りを v3 とする。
    それ以外は昇順のまま。

    Attributes:
        spectrumClass: 分類
        lambdaM: 並べ替え後の M の固有値 (λ1^M, λ2^M, λ3^M)
        lambdaG: 対応する G の固有値 (λi^G = tr(M) − λi^M)
        frame: 列が v1, v2, v3 の右手系直交行列
    """
    spectrumClass: SpectrumClass
    lambdaM: np.ndarray
    lambdaG: np.ndarray
    frame: np.ndarray

    def vector(self, index: int) -> np.ndarray:
        """並べ替え後の固有ベクトル（0始まり）"""
        return self.frame[:, index]


@dataclass(frozen=True)
class InertialVectorSet:
    """
    重み付き慣性ベクトル集合

    Attributes:
        vectors: 慣性座標系の単位ベクトル aᵢ（形状 (n, 3)）
        weights: 正の重み wᵢ（形状 (n,)）
    """
    vectors: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        vectors = np.atleast_2d(np.asarray(self.vectors, dtype=float))
        weights = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if vectors.ndim != 2 or vectors.shape[1] != 3:
            raise ShapeError(f"慣性ベクトルは (n, 3) 配列である必要があります: shape={vectors.shape}")
        if vectors.shape[0] < 2:
            raise ShapeError(f"慣性ベクトルは2本以上必要です: n={vectors.shape[0]}")
        if weights.shape != (vectors.shape[0],):
            raise ShapeError(
                f"重みの個数がベクトル数と一致しません: n={vectors.shape[0]}, weights={weights.shape}"
            )
        norms = np.linalg.norm(vectors, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e3 * getTolerances().algebraic):
            raise ShapeError(f"慣性ベクトルが単位ベクトルではありません: norms={norms}")
        if np.any(weights <= 0.0):
            raise ShapeError(f"重みは正である必要があります: weights={weights}")

        nonCollinear = any(
            np.linalg.norm(cross(vectors[i], vectors[j])) > getTolerances().structural
            for i in range(len(vectors))
            for j in range(i + 1, len(vectors))
        )
        if not nonCollinear:
            raise ShapeError("慣性ベクトルがすべて共線です（非共線な対が少なくとも1組必要）")

        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def normalized(cls, vectors, weights) -> "InertialVectorSet":
        """各ベクトルを正規化してから構成する"""
        vectors = np.atleast_2d(np.asarray(vectors, dtype=float))
        norms = np.linalg.norm(vectors, axis=1, keepdims=True)
        if np.any(norms <= getTolerances().algebraic):
            raise ShapeError("ゼロベクトルは慣性ベクトルとして使用できません")
        return cls(vectors / norms, weights)

    def outerSum(self) -> np.ndarray:
        """M = Σ wᵢ aᵢ aᵢᵀ"""
        return np.einsum("i,ij,ik->jk", self.weights, self.vectors, self.vectors)


@dataclass(frozen=True)
class TraceShape:
    """
    修正トレース関数の形状

    Attributes:
        M: 半正定値対称行列
        G: tr(M)I − M（正定値）
        specM: M の固有分解（昇順）
        specG: G の固有分解（昇順、固有ベクトルは M と共通）
        xi: λ_min^G / λ_max^G
        tag: 重複度分類
        multTol: 分類に用いた相対許容誤差
    """
    M: np.ndarray
    G: np.ndarray
    specM: Spectrum3
    specG: Spectrum3
    xi: float
    tag: MulticlassTag
    multTol: float = DEFAULT_MULT_TOL
    traceM: float = 0.0

    @classmethod
    def fromMatrix(cls, M, multTol: float = DEFAULT_MULT_TOL) -> "TraceShape":
        """
        形状行列から構成

        Args:
            M: 対称 3×3 行列
            multTol: 重複判定の相対許容誤差

        Returns:
            TraceShape: 形状

        Raises:
            ShapeError: M が半正定値でない、または G が正定値でない場合
        """
        M = np.asarray(M, dtype=float)
        if M.shape != (3, 3) or not np.all(np.isfinite(M)):
            raise ShapeError(f"M は有限な 3×3 行列である必要があります: shape={M.shape}")
        M = 0.5 * (M + M.T)
        specM = symEigen(M)
        scale = max(float(np.max(np.abs(specM.values))), getTolerances().algebraic)
        if specM.values[0] < -getTolerances().structural * scale:
            raise ShapeError(f"M が半正定値ではありません: eigenvalues={specM.values}")

        traceM = float(np.trace(M))
        G = traceM * np.eye(3) - M
        # G の固有値は M の逆順、固有ベクトルは共通
        gVectors = specM.vectors[:, ::-1].copy()
        gVectors[:, 2] = cross(gVectors[:, 0], gVectors[:, 1])
        specG = Spectrum3(values=traceM - specM.values[::-1], vectors=gVectors)
        if specG.values[0] <= getTolerances().structural * scale:
            raise ShapeError(
                f"G = tr(M)I − M が正定値ではありません（rank(M) < 2）: eigenvaluesM={specM.values}"
            )

        tag = classifySpectrum(specM, traceM, multTol)
        return cls(
            M=M,
            G=G,
            specM=specM,
            specG=specG,
            xi=float(specG.values[0] / specG.values[2]),
            tag=tag,
            multTol=multTol,
            traceM=traceM,
        )

    @property
    def spectrumClass(self) -> SpectrumClass:
        return self.tag.spectrumClass

    @property
    def lambdaMaxG(self) -> float:
        return float(self.specG.values[2])

    @property
    def lambdaMinG(self) -> float:
        return float(self.specG.values[0])

    def isEigenvector(self, v: np.ndarray) -> bool:
        """v が M の単位固有ベクトルかどうか"""
        v = np.asarray(v, dtype=float)
        lam = float(v @ self.M @ v)
        scale = max(1.0, float(np.max(np.abs(self.M))))
        return bool(np.linalg.norm(self.M @ v - lam * v) <= getTolerances().structural * scale)


# ============================================================
# 分類
# ============================================================

def classifySpectrum(specM: Spectrum3, traceM: float, multTol: float) -> MulticlassTag:
    """
    M の固有値重複度による分類（昇順固有分解から）

    Args:
        specM: M の固有分解
        traceM: tr(M)
        multTol: 重複判定の相対許容誤差

    Returns:
        MulticlassTag: 分類
    """
    values = specM.values
    vectors = specM.vectors
    scale = max(float(np.max(np.abs(values))), getTolerances().algebraic)
    gapLow = (values[1] - values[0]) / scale
    gapHigh = (values[2] - values[1]) / scale

    for gap in (gapLow, gapHigh):
        if multTol <= gap < 10.0 * multTol:
            logger.warning(
                f"固有値が重複判定の境界付近です（方向集合の選択が不連続に変わります）: "
                f"relativeGap={gap:.3e}, multTol={multTol:.1e}"
            )

    equalLow = gapLow < multTol
    equalHigh = gapHigh < multTol

    if equalLow and equalHigh:
        spectrumClass = SpectrumClass.ALL_EQUAL
        order = [0, 1, 2]
    elif equalHigh:
        spectrumClass = (
            SpectrumClass.TWO_LARGE_EQUAL_ANY_MIN
            if values[0] < multTol * scale
            else SpectrumClass.TWO_LARGE_EQUAL_POS_MIN
        )
        order = [1, 2, 0]
    elif equalLow:
        spectrumClass = SpectrumClass.TWO_SMALL_EQUAL
        order = [0, 1, 2]
    else:
        spectrumClass = SpectrumClass.ALL_DISTINCT
        order = [0, 1, 2]

    frame = vectors[:, order].copy()
    frame[:, 2] = cross(frame[:, 0], frame[:, 1])
    lambdaM = values[order].copy()
    return MulticlassTag(
        spectrumClass=spectrumClass,
        lambdaM=lambdaM,
        lambdaG=traceM - lambdaM,
        frame=frame,
    )


def classify(shape: TraceShape, multTol: Optional[float] = None) -> MulticlassTag:
    """
    形状の重複度分類（許容誤差を変えて再分類する場合に使用）

    Args:
        shape: 形状
        multTol: 相対許容誤差（Noneなら形状構成時の値）

    Returns:
        MulticlassTag: 分類
    """
    if multTol is None or multTol == shape.multTol:
        return shape.tag
    return classifySpectrum(shape.specM, shape.traceM, multTol)


# ============================================================
# 構成・評価
# ============================================================

def shapeFromVectors(vs: InertialVectorSet, multTol: float = DEFAULT_MULT_TOL) -> TraceShape:
    """
    慣性ベクトル集合から形状を構成 (M = Σ wᵢ aᵢ aᵢᵀ)

    Raises:
        ShapeError: G が正定値にならない場合
    """
    return TraceShape.fromMatrix(vs.outerSum(), multTol)


def psiValue(shape: TraceShape, X: np.ndarray):
    """
    Ψ_M(X) = tr(M(I − X))

    Args:
        shape: 形状
        X: 回転行列（形状 (..., 3, 3) も可）

    Returns:
        関数値（[0, 2λ_max^G]）
    """
    return shape.traceM - np.einsum("ij,...ij->...", shape.M, X)


def psiRho(shape: TraceShape, X: np.ndarray) -> np.ndarray:
    """
    勾配ベクトル ψ(MX)（Ẋ = Xω^ に沿って dΨ/dt = 2 ψ(MX)ᵀω）
    """
    return psiMap(shape.M @ X)


def deltaUnchecked(M: np.ndarray, traceM: float, v: np.ndarray, u: np.ndarray):
    """
    Δ(v, u) の一般式（v が固有ベクトルであることは検証しない）

    Δ(v, u) = 2λ^M (vᵀu)² − uᵀMu + tr(M) − 2λ^M,  λ^M = vᵀMv

    v, u は形状 (..., 3) でブロードキャスト可能。
    """
    lam = np.einsum("...i,ij,...j->...", v, M, v)
    vu = np.einsum("...i,...i->...", v, u)
    uMu = np.einsum("...i,ij,...j->...", u, M, u)
    return 2.0 * lam * vu * vu - uMu + traceM - 2.0 * lam


def deltaVU(shape: TraceShape, v: np.ndarray, u: np.ndarray):
    """
    半回転近傍の係数 Δ(v, u)

    Ψ_M(R_a(π, v) R_a(θ, u)) = 2λ^G − (1 − cos θ) Δ(v, u) を満たす。

    Args:
        shape: 形状
        v: M の単位固有ベクトル
        u: 単位ベクトル（形状 (..., 3) も可）

    Returns:
        Δ(v, u)

    Raises:
        ShapeError: v が固有ベクトルでない場合
    """
    v = np.asarray(v, dtype=float)
    if not shape.isEigenvector(v):
        raise ShapeError(f"v が M の固有ベクトルではありません: v={v}")
    return deltaUnchecked(shape.M, shape.traceM, v, np.asarray(u, dtype=float))


def wahbaCost(vs: InertialVectorSet, R: np.ndarray, Rd: np.ndarray) -> float:
    """
    Wahba コスト J = ½ Σ wᵢ |bᵢ − R_dᵀ aᵢ|²（bᵢ = Rᵀ aᵢ）

    同じベクトル集合から構成した形状について psiValue(shape, R R_dᵀ) と一致する。
    """
    body = vs.vectors @ R          # 行ごとに (Rᵀ aᵢ)ᵀ
    desired = vs.vectors @ Rd
    return float(0.5 * np.sum(vs.weights * np.sum((body - desired) ** 2, axis=1)))
