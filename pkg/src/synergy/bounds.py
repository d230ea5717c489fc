"""
シナジーギャップ下界

方向集合の方式 1〜3 に対する閉形式のギャップ下界 δ̄_q と、方式 4, 5 の数値下界

主な機能:
- Ξ1, Ξ21, Ξ22 の評価
- 方式ごとの閉形式下界
- 補助関数 F(t) の格子最小値の検証

制限事項:
- 方式 4, 5 は数値認証の最小値に安全係数 0.99 を掛けた値を用いる
"""

from typing import Tuple

import numpy as np

from ..errors import FamilyError
from .directions import DirectionScheme
from .family import WarpedFamily

NUMERIC_SAFETY_FACTOR = 0.99
MIN_F_GRID_POINTS = 1_000_000


def xiTerms(k: float, xi: float) -> Tuple[float, float, float]:
    """
    (Ξ1, Ξ21, Ξ22)

    Ξ1 = 2k/(1 + √(1 + 4k²)), Ξ21 = 2k/(1 + √(1 + 4k²(1 − ξ))), Ξ22 = 2kξ/(1 + √(1 + 4k²ξ²))
    """
    xi1 = 2.0 * k / (1.0 + np.sqrt(1.0 + 4.0 * k * k))
    xi21 = 2.0 * k / (1.0 + np.sqrt(1.0 + 4.0 * k * k * (1.0 - xi)))
    xi22 = 2.0 * k * xi / (1.0 + np.sqrt(1.0 + 4.0 * k * k * xi * xi))
    return float(xi1), float(xi21), float(xi22)


def boundSixAxes(k: float, lam: float) -> float:
    """全固有値 λ が等しい場合: 2λ min{k², 2Ξ1²(1 − Ξ1²)}"""
    xi1, _, _ = xiTerms(k, 1.0)
    return 2.0 * lam * min(k * k, 2.0 * xi1 ** 2 * (1.0 - xi1 ** 2))


def boundFourAxes(k: float, xi: float, lambda3G: float) -> float:
    """
    2大固有値が等しく最小固有値が正の場合（方式 2）

    2λ3^G min{Ξ21²(1 + (1 − 2ξ)(1 − Ξ21²)), Ξ22²(1 − Ξ22²)(2ξ − 1)}
    """
    _, xi21, xi22 = xiTerms(k, xi)
    sq21 = xi21 ** 2
    sq22 = xi22 ** 2
    return 2.0 * lambda3G * min(
        sq21 * (1.0 + (1.0 - 2.0 * xi) * (1.0 - sq21)),
        sq22 * (1.0 - sq22) * (2.0 * xi - 1.0),
    )


def boundHexagon(k: float, xi: float, lambda3G: float) -> float:
    """
    π/3 間隔の6方向（方式 3）の下界

    λ3^G min{max{½Ξ21²(3 + (1 − 4ξ)(1 − Ξ21²)), 8Ξ21²(1 − Ξ21²)(1 − ξ)}, 2Ξ22²(1 − Ξ22²)(ξ − ¼)}
    """
    _, xi21, xi22 = xiTerms(k, xi)
    sq21 = xi21 ** 2
    sq22 = xi22 ** 2
    distinctBranch = max(
        0.5 * sq21 * (3.0 + (1.0 - 4.0 * xi) * (1.0 - sq21)),
        8.0 * sq21 * (1.0 - sq21) * (1.0 - xi),
    )
    pairBranch = 2.0 * sq22 * (1.0 - sq22) * (xi - 0.25)
    return lambda3G * min(distinctBranch, pairBranch)


def closedFormBound(fam: WarpedFamily) -> float:
    """
    方式 1〜3 の閉形式下界

    Raises:
        FamilyError: 方式 4, 5 の場合（閉形式なし）
    """
    tag = fam.shape.tag
    scheme = fam.dirs.scheme
    if scheme == DirectionScheme.SIX_AXES:
        return boundSixAxes(fam.k, float(tag.lambdaM[0]))
    if scheme == DirectionScheme.FOUR_AXES:
        return boundFourAxes(fam.k, fam.shape.xi, float(tag.lambdaG[2]))
    if scheme == DirectionScheme.HEXAGON:
        return boundHexagon(fam.k, fam.shape.xi, float(tag.lambdaG[2]))
    raise FamilyError(f"この方式には閉形式の下界がありません: scheme={scheme.value}")


def gapLowerBound(fam: WarpedFamily, branchGrid: int = 720, sphereGrid: int = 10000) -> float:
    """
    ギャップ下界 δ̄_q（全 q で共通）

    Args:
        fam: 族
        branchGrid: 数値認証での固有ベクトル連続体の分割数
        sphereGrid: 数値認証での球面サンプル数

    Returns:
        float: δ̄_q

    Raises:
        FamilyError: 下界が正にならない場合
    """
    if fam.dirs.scheme in (DirectionScheme.TILTED_PAIR, DirectionScheme.SEARCHED_PAIR):
        from .critical import certify

        report = certify(fam, branchGrid=branchGrid, sphereGrid=sphereGrid)
        bound = NUMERIC_SAFETY_FACTOR * report.minRefinedGap
    else:
        bound = closedFormBound(fam)
    if not bound > 0.0:
        raise FamilyError(f"ギャップ下界が正になりません: bound={bound}, scheme={fam.dirs.scheme.value}")
    return float(bound)


def minFCheck(xi: float, gridPoints: int = MIN_F_GRID_POINTS) -> float:
    """
    F(t) = max{4(ξ − sin²t), ξ − sin²(t + π/3), ξ − sin²(t − π/3)} の [0, π) 上の格子最小値

    理論値は ξ − ¼。

    Raises:
        FamilyError: ξ ∉ [½, 1] の場合
    """
    if not (0.5 <= xi <= 1.0):
        raise FamilyError(f"ξ は [0.5, 1] の範囲である必要があります: xi={xi}")
    t = np.linspace(0.0, np.pi, gridPoints, endpoint=False)
    shift = np.pi / 3.0
    values = np.maximum.reduce([
        4.0 * (xi - np.sin(t) ** 2),
        xi - np.sin(t + shift) ** 2,
        xi - np.sin(t - shift) ** 2,
    ])
    return float(values.min())
