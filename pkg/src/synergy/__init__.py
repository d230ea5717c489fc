"""
シナジーポテンシャル族モジュール

角度ワーピングによる中心的シナジー族の構成、ギャップ下界、臨界点の認証
"""

from .bounds import boundFourAxes, boundHexagon, boundSixAxes, closedFormBound, gapLowerBound, minFCheck, xiTerms
from .critical import CertificationReport, CriticalPointRecord, certify, criticalPointAt, solveCriticalPoints
from .directions import DirectionScheme, WarpingDirections, selectDirections
from .family import (
    SynergisticFamily,
    WarpedFamily,
    composeWarps,
    composedRotation,
    familyValue,
    familyValues,
    fullGap,
    gainBound,
    refinedGap,
    rhoV,
    thetaMatrix,
    warp,
    warpAngle,
)
from .profile import FamilyProfile, profileFamily

__all__ = [
    "CertificationReport",
    "CriticalPointRecord",
    "DirectionScheme",
    "FamilyProfile",
    "SynergisticFamily",
    "WarpedFamily",
    "WarpingDirections",
    "boundFourAxes",
    "boundHexagon",
    "boundSixAxes",
    "certify",
    "closedFormBound",
    "composeWarps",
    "composedRotation",
    "criticalPointAt",
    "familyValue",
    "familyValues",
    "fullGap",
    "gainBound",
    "gapLowerBound",
    "minFCheck",
    "profileFamily",
    "refinedGap",
    "rhoV",
    "selectDirections",
    "solveCriticalPoints",
    "thetaMatrix",
    "warp",
    "warpAngle",
    "xiTerms",
]
