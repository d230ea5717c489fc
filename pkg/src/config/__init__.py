"""
設定モジュール

YAML 実行設定の読み込み、組み込みプリセット、実行オブジェクトの構築
"""

from .builder import (
    CONTROLLER_KINDS,
    buildController,
    buildFamily,
    buildNoise,
    buildPlant,
    buildReference,
    buildScenarios,
    buildShape,
    initialAttitude,
)
from .loader import RunConfig, dumpConfig, loadConfig, parseConfig
from .presets import PRESETS, Preset, getPreset

__all__ = [
    "CONTROLLER_KINDS",
    "buildController",
    "buildFamily",
    "buildNoise",
    "buildPlant",
    "buildReference",
    "buildScenarios",
    "buildShape",
    "initialAttitude",
    "RunConfig",
    "dumpConfig",
    "loadConfig",
    "parseConfig",
    "PRESETS",
    "Preset",
    "getPreset",
]
