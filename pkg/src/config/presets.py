"""
組み込みプリセット

数値例・比較シミュレーションを再現する実行設定

主な機能:
- certify-item1〜5: 分類ごとの族の認証
- fig4a / fig4b: 族の断面プロファイル
- fig5 / fig6 / fig7: 4種の制御則の比較シミュレーション
- sweep-item2 / sweep-item3: ゲイン k に対する δ̄ の掃引
"""

import copy
from dataclasses import dataclass
from typing import Dict

import numpy as np

from ..errors import ConfigError
from .loader import RunConfig

ITEM2_MATRIX = [[0.2, 0.0, 0.0], [0.0, 0.4, 0.0], [0.0, 0.0, 0.4]]

CS_GAINS = {"k1": 60.0, "k2": 6.0}
NONCS_GAINS = {"k1": 30.0, "k2": 3.0, "alpha": 1.5, "beta": 0.4, "delta": 0.025}


@dataclass(frozen=True)
class Preset:
    """
    プリセット

    Attributes:
        name: 名前
        verb: 対応するコマンド（certify / simulate / profile / sweep）
        description: 説明
        data: 設定辞書
    """
    name: str
    verb: str
    description: str
    data: dict

    def toConfig(self) -> RunConfig:
        return RunConfig.fromDict(copy.deepcopy(self.data))


def _diag(values) -> list:
    return np.diag(values).tolist()


def _certify(name: str, matrix: list, k: float, scheme=None, description: str = "") -> Preset:
    family = {"k": k}
    if scheme is not None:
        family["scheme"] = scheme
    return Preset(name, "certify", description, {"name": name, "shape": {"matrix": matrix}, "family": family})


def _comparison(name: str, initial: dict, horizon: float, description: str) -> Preset:
    controllers = [
        {"kind": "solo", "q0": 0, **CS_GAINS},
        {"kind": "pics", "q0": 0, **CS_GAINS},
        {"kind": "mucs", "q0": 0, **CS_GAINS},
        {"kind": "noncs", "q0": 1, **NONCS_GAINS},
    ]
    return Preset(name, "simulate", description, {
        "name": name,
        "shape": {"matrix": ITEM2_MATRIX},
        "family": {"k": 0.465},
        "controllers": controllers,
        "initial": initial,
        "simulation": {"horizon": horizon},
    })


def _fixedModes() -> Preset:
    controllers = [
        {"kind": "pics", "q0": q, "switching": False, **CS_GAINS} for q in range(4)
    ] + [
        {"kind": "noncs", "q0": q, "switching": False, **NONCS_GAINS} for q in (1, 2, 3)
    ]
    return Preset("fig7", "simulate", "切替なしの各モード固定制御則（中心的族と NonCS）の比較", {
        "name": "fig7",
        "shape": {"matrix": ITEM2_MATRIX},
        "family": {"k": 0.465},
        "controllers": controllers,
        "initial": {"axis": [0.37, 0.0, 0.93], "angle": float(np.pi)},
        "simulation": {"horizon": 15.0},
    })


def _buildPresets() -> Dict[str, Preset]:
    presets = [
        _certify("certify-item1", _diag([0.4, 0.4, 0.4]), 0.3, description="全固有値が等しい形状（6軸）"),
        _certify("certify-item2", ITEM2_MATRIX, 0.465, description="大きい2固有値が等しく最小が正（4軸）"),
        _certify("certify-item3", ITEM2_MATRIX, 0.465, scheme=3, description="item2 の形状に六角形方向を適用"),
        _certify("certify-item4", _diag([0.2, 0.2, 0.6]), 0.3, description="小さい2固有値が等しい形状（傾斜対）"),
        _certify("certify-item5", _diag([0.1, 0.3, 0.6]), 0.3, description="全固有値が異なる形状（探索対）"),
        Preset("fig4a", "profile", "item2 の族の断面", {
            "name": "fig4a", "shape": {"matrix": ITEM2_MATRIX}, "family": {"k": 0.465},
        }),
        Preset("fig4b", "profile", "item3（六角形方向）の族の断面", {
            "name": "fig4b", "shape": {"matrix": ITEM2_MATRIX}, "family": {"k": 0.465, "scheme": 3},
        }),
        _comparison(
            "fig5",
            {"criticalPoint": {"q": 0, "v": [0.0, 0.0, 1.0]}},
            20.0,
            "V(·,0) の望まない臨界点から開始する4種の制御則の比較",
        ),
        _comparison(
            "fig6",
            {"axis": [0.25, -0.69, 0.69], "angle": float(1.15 * np.pi)},
            20.0,
            "長い測地線側の初期姿勢からの4種の制御則の比較（巻き戻り）",
        ),
        _fixedModes(),
        Preset("sweep-item2", "sweep", "item2 の δ̄ の k 掃引", {
            "name": "sweep-item2",
            "shape": {"matrix": ITEM2_MATRIX},
            "family": {"k": 0.465},
            "sweep": {"kValues": [0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.465, 0.5],
                      "xiValues": [0.5, 0.6, 0.75, 0.9, 1.0]},
        }),
        Preset("sweep-item3", "sweep", "item3 の δ̄ の k 掃引（数値認証との比較）", {
            "name": "sweep-item3",
            "shape": {"matrix": ITEM2_MATRIX},
            "family": {"k": 0.465, "scheme": 3},
            "sweep": {"kValues": [0.1, 0.2, 0.3, 0.4, 0.465, 0.5]},
        }),
    ]
    return {preset.name: preset for preset in presets}


PRESETS: Dict[str, Preset] = _buildPresets()


def getPreset(name: str) -> Preset:
    """
    名前からプリセットを取得

    Raises:
        ConfigError: 未知の名前
    """
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(f"未知のプリセットです: name={name}（presets で一覧を表示）") from None
