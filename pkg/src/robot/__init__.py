"""
剛体シミュレーションモジュール

剛体の回転運動、参照軌道、計測ノイズ、ハイブリッド閉ループの積分を担当するモジュール
"""

from .noise import DEFAULT_ALPHA_MAX, DEFAULT_SIGMA_OMEGA, MeasurementNoise, NoiseConfig
from .plant import DEFAULT_INERTIA, PlantParams, plantDerivative
from .reference import ReferenceConfig, ReferenceKind
from .simulator import HybridSimulator, RunSummary, Scenario, convergenceTime, runScenario, summarize
from .state import EVENT_COLUMNS, LOG_COLUMNS, HybridState, JumpEvent, SimLog

__all__ = [
    "DEFAULT_ALPHA_MAX",
    "DEFAULT_SIGMA_OMEGA",
    "MeasurementNoise",
    "NoiseConfig",
    "DEFAULT_INERTIA",
    "PlantParams",
    "plantDerivative",
    "ReferenceConfig",
    "ReferenceKind",
    "HybridSimulator",
    "RunSummary",
    "Scenario",
    "convergenceTime",
    "runScenario",
    "summarize",
    "EVENT_COLUMNS",
    "LOG_COLUMNS",
    "HybridState",
    "JumpEvent",
    "SimLog",
]
