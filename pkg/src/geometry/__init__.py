"""
幾何モジュール

SO(3) 上の基本演算
"""

from .so3 import (
    AxisAngle,
    Spectrum3,
    Tolerances,
    IDENTITY,
    checkRotation,
    cross,
    geodesicAngle,
    getTolerances,
    hat,
    isRotation,
    logAxisAngle,
    normalize,
    projectToSO3,
    psiMap,
    rodrigues,
    rotationAbout,
    setTolerances,
    symEigen,
    vee,
)

__all__ = [
    "AxisAngle",
    "Spectrum3",
    "Tolerances",
    "IDENTITY",
    "checkRotation",
    "cross",
    "geodesicAngle",
    "getTolerances",
    "hat",
    "isRotation",
    "logAxisAngle",
    "normalize",
    "projectToSO3",
    "psiMap",
    "rodrigues",
    "rotationAbout",
    "setTolerances",
    "symEigen",
    "vee",
]
