"""
ポテンシャル族の断面

3本の回転軸に沿った X = R_a(θ, u)（θ ∈ [0, 2π]）で Ψ_M と V(·,q) を評価する
"""

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from ..geometry.so3 import normalize, rotationAbout
from ..potential.trace import psiValue
from .family import SynergisticFamily, familyValue

PROFILE_AXES = (
    (0.37, 0.0, 0.93),
    (0.25, 0.69, 0.69),
    (0.25, -0.69, 0.69),
)


@dataclass(frozen=True)
class FamilyProfile:
    """
    断面の評価結果

    Attributes:
        columns: 列名
        rows: 各サンプルの値
        referenceLevel: 2λ2^G（並べ替え後の2番目の固有値）
        bandLower: 2λ2^G − δ̄_q
    """
    columns: List[str]
    rows: List[List[float]]
    referenceLevel: float
    bandLower: float


def profileFamily(
    fam: SynergisticFamily,
    samplesPerAxis: int = 360,
    axes: Sequence[Sequence[float]] = PROFILE_AXES,
) -> FamilyProfile:
    """
    軸ごとに θ ∈ [0, 2π] を samplesPerAxis+1 点で評価

    列は s（軸をつないだ通し角）, theta, segment, psi, V_0, ..., V_{|Q|-1}
    """
    modes = list(fam.modes())
    columns = ["s", "theta", "segment", "psi"] + [f"V_{q}" for q in modes]
    thetas = np.linspace(0.0, 2.0 * np.pi, samplesPerAxis + 1)
    rows: List[List[float]] = []
    for segment, axis in enumerate(axes):
        X = rotationAbout(thetas, normalize(axis))
        psi = psiValue(fam.shape, X)
        values = [familyValue(fam, X, q) for q in modes]
        for i, theta in enumerate(thetas):
            rows.append(
                [2.0 * np.pi * segment + theta, theta, segment, float(psi[i])]
                + [float(v[i]) for v in values]
            )
    level = 2.0 * float(fam.shape.tag.lambdaG[1])
    return FamilyProfile(columns=columns, rows=rows, referenceLevel=level, bandLower=level - fam.deltaBar[0])
