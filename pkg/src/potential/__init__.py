"""
ポテンシャルモジュール

修正トレース関数とその固有値分類
"""

from .trace import (
    DEFAULT_MULT_TOL,
    InertialVectorSet,
    MulticlassTag,
    SpectrumClass,
    TraceShape,
    classify,
    deltaVU,
    psiRho,
    psiValue,
    shapeFromVectors,
    wahbaCost,
)

__all__ = [
    "DEFAULT_MULT_TOL",
    "InertialVectorSet",
    "MulticlassTag",
    "SpectrumClass",
    "TraceShape",
    "classify",
    "deltaVU",
    "psiRho",
    "psiValue",
    "shapeFromVectors",
    "wahbaCost",
]
