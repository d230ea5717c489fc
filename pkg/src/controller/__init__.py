"""
制御則モジュール

シナジーポテンシャル族に基づくハイブリッド制御則と比較用の非中心的族
"""

from .hybrid import (
    KIND_LABELS,
    ControllerConfig,
    ControllerKind,
    SwitchDecision,
    attitudeError,
    controlTorque,
    lyapunov,
    potentialValue,
    proportionalTerm,
    switchDecision,
)
from .noncs import NONCS_MODES, NonCSParams, noncsErrors, noncsValues, psiE, psiN

__all__ = [
    "KIND_LABELS",
    "ControllerConfig",
    "ControllerKind",
    "SwitchDecision",
    "attitudeError",
    "controlTorque",
    "lyapunov",
    "potentialValue",
    "proportionalTerm",
    "switchDecision",
    "NONCS_MODES",
    "NonCSParams",
    "noncsErrors",
    "noncsValues",
    "psiE",
    "psiN",
]
