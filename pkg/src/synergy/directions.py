"""
角度ワーピング方向集合

形状行列の分類ごとにワーピング方向 U と、各 q の比較対象集合 Q_q を構成する

主な機能:
- 分類 1〜5 に対応する方向集合の構成
- 分類 2 の形状に対する方式 3（π/3 間隔の6方向）の選択
- 分類 5 の方向探索（半球上 1° グリッド）

制限事項:
- 方式 4, 5 の方向は不等式条件を満たす一つの選び方であり最適化はしない
- 分類 5 で λ1^M = 0 の場合は条件を満たす方向が存在しないため構成できない
"""

from dataclasses import dataclass
from enum import IntEnum
from typing import Optional, Tuple

import numpy as np

from ..errors import FamilyError
from ..potential.trace import SpectrumClass, TraceShape, deltaUnchecked
from ..utils.logger import get_logger

logger = get_logger("synergy_so3.synergy")

ORTHOGONAL_TOL = 1e-12
NEIGHBOR_TOL = 1e-9
SEARCH_STEP_DEG = 1.0


class DirectionScheme(IntEnum):
    """方向集合の構成方式（分類番号と対応）"""
    SIX_AXES = 1          # ±v1, ±v2, ±v3
    FOUR_AXES = 2         # ±v1, ±v2
    HEXAGON = 3           # v1 cos(nπ/3) + v2 sin(nπ/3)
    TILTED_PAIR = 4       # ±(cos β v3 + sin β v1)
    SEARCHED_PAIR = 5     # ±u（格子探索）


DEFAULT_SCHEME = {
    SpectrumClass.ALL_EQUAL: DirectionScheme.SIX_AXES,
    SpectrumClass.TWO_LARGE_EQUAL_POS_MIN: DirectionScheme.FOUR_AXES,
    SpectrumClass.TWO_LARGE_EQUAL_ANY_MIN: DirectionScheme.HEXAGON,
    SpectrumClass.TWO_SMALL_EQUAL: DirectionScheme.TILTED_PAIR,
    SpectrumClass.ALL_DISTINCT: DirectionScheme.SEARCHED_PAIR,
}


@dataclass(frozen=True)
class WarpingDirections:
    """
    ワーピング方向集合

    Attributes:
        scheme: 構成方式
        directions: 単位方向 u_q（形状 (|U|, 3)）
        subsets: 各 q の比較対象インデックス集合 Q_q（q 自身は含まない）
    """
    scheme: DirectionScheme
    directions: np.ndarray
    subsets: Tuple[Tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return int(self.directions.shape[0])

    def direction(self, q: int) -> np.ndarray:
        return self.directions[q]

    def subset(self, q: int) -> Tuple[int, ...]:
        return self.subsets[q]

    def subsetDirections(self, q: int) -> np.ndarray:
        """U_q"""
        return self.directions[list(self.subsets[q])]


def _subsetsBy(directions: np.ndarray, predicate) -> Tuple[Tuple[int, ...], ...]:
    dots = directions @ directions.T
    subsets = []
    for q in range(len(directions)):
        subsets.append(tuple(p for p in range(len(directions)) if p != q and predicate(dots[p, q])))
    return tuple(subsets)


def _schemeFor(shape: TraceShape, scheme: Optional[int]) -> DirectionScheme:
    spectrumClass = shape.spectrumClass
    if scheme is None:
        return DEFAULT_SCHEME[spectrumClass]
    scheme = DirectionScheme(int(scheme))
    allowed = {DEFAULT_SCHEME[spectrumClass]}
    if spectrumClass == SpectrumClass.TWO_LARGE_EQUAL_POS_MIN:
        allowed.add(DirectionScheme.HEXAGON)
    if scheme not in allowed:
        raise FamilyError(
            f"方向集合の方式が形状の分類と整合しません: scheme={scheme.value}, "
            f"class={spectrumClass.name}"
        )
    return scheme


def searchPairDirection(shape: TraceShape, stepDeg: float = SEARCH_STEP_DEG) -> Tuple[np.ndarray, float]:
    """
    分類 5 の方向探索: min(Δ(v2,u), Δ(v3,u)) を半球上の格子で最大化

    Args:
        shape: 分類 5 の形状
        stepDeg: 格子間隔 [deg]

    Returns:
        (最良方向, そのときの min Δ)
    """
    frame = shape.tag.frame
    polar = np.deg2rad(np.arange(0.0, 90.0 + 0.5 * stepDeg, stepDeg))
    azimuth = np.deg2rad(np.arange(0.0, 360.0, stepDeg))
    P, A = np.meshgrid(polar, azimuth, indexing="ij")
    local = np.stack([np.sin(P) * np.cos(A), np.sin(P) * np.sin(A), np.cos(P)], axis=-1).reshape(-1, 3)
    candidates = local @ frame.T

    delta2 = deltaUnchecked(shape.M, shape.traceM, frame[:, 1], candidates)
    delta3 = deltaUnchecked(shape.M, shape.traceM, frame[:, 2], candidates)
    score = np.minimum(delta2, delta3)
    best = int(np.argmax(score))
    return candidates[best] / np.linalg.norm(candidates[best]), float(score[best])


def selectDirections(shape: TraceShape, scheme: Optional[int] = None) -> WarpingDirections:
    """
    ワーピング方向集合の構成

    Args:
        shape: 形状
        scheme: 方式の上書き（分類 2 の形状に方式 3 を使う場合など）

    Returns:
        WarpingDirections: 方向集合

    Raises:
        FamilyError: 方式と分類が整合しない場合、分類 5 の探索に失敗した場合
    """
    scheme = _schemeFor(shape, scheme)
    frame = shape.tag.frame
    v1, v2, v3 = frame[:, 0], frame[:, 1], frame[:, 2]

    if scheme == DirectionScheme.SIX_AXES:
        directions = np.array([v1, -v1, v2, -v2, v3, -v3])
        subsets = _subsetsBy(directions, lambda d: abs(d) < ORTHOGONAL_TOL)

    elif scheme == DirectionScheme.FOUR_AXES:
        directions = np.array([v1, -v1, v2, -v2])
        subsets = _subsetsBy(directions, lambda d: abs(d) < ORTHOGONAL_TOL)

    elif scheme == DirectionScheme.HEXAGON:
        angles = np.arange(6) * np.pi / 3.0
        directions = np.cos(angles)[:, None] * v1 + np.sin(angles)[:, None] * v2
        subsets = _subsetsBy(
            directions,
            lambda d: abs(d - 0.5) < NEIGHBOR_TOL or abs(d + 1.0) < NEIGHBOR_TOL,
        )

    elif scheme == DirectionScheme.TILTED_PAIR:
        lambdaG = shape.tag.lambdaG
        sinSq = 0.5 * min(1.0, lambdaG[2] / lambdaG[1])
        u = np.sqrt(1.0 - sinSq) * v3 + np.sqrt(sinSq) * v1
        directions = np.array([u, -u])
        subsets = ((1,), (0,))

    else:
        u, score = searchPairDirection(shape)
        if score <= 0.0:
            raise FamilyError(
                f"Δ(v2,u) > 0 かつ Δ(v3,u) > 0 を満たす方向が探索格子上にありません: "
                f"bestScore={score:.3e}, lambdaM={shape.tag.lambdaM}"
            )
        logger.debug(f"分類5の方向を選択: u={u}, minDelta={score:.6f}")
        directions = np.array([u, -u])
        subsets = ((1,), (0,))

    return WarpingDirections(scheme=scheme, directions=directions, subsets=subsets)
