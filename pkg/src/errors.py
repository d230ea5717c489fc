"""
例外定義

パッケージ全体で使用する例外階層。CLI はこの階層を終了コードに対応付ける。

主な機能:
- SynergyError を基底とする例外階層
- 例外ごとの終了コード（exitCode 属性）
"""

from typing import Any, Optional


class SynergyError(Exception):
    """パッケージ共通の基底例外"""

    exitCode: int = 1


class GeometryError(SynergyError, ValueError):
    """SO(3) 上の幾何演算の入力不正（非反対称行列、det ≤ 0 など）"""


class ShapeError(SynergyError, ValueError):
    """トレース関数の形状行列 M や慣性ベクトル集合の不正"""


class FamilyError(SynergyError, ValueError):
    """ポテンシャル族の構成不能（ゲイン範囲外、方向探索失敗など）"""


class ConfigError(SynergyError):
    """
    設定ファイルの解析・検証エラー

    Attributes:
        line: エラー箇所の行番号（1始まり、不明ならNone）
    """

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CertificationError(SynergyError):
    """
    認証（ギャップ検証）失敗

    Attributes:
        report: 失敗した認証レポート
    """

    exitCode = 2

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report


class SimulationError(SynergyError):
    """
    シミュレーション中の異常（非有限な状態、参照軌道の上界違反）

    Attributes:
        time: 異常を検出した時刻 [s]
    """

    exitCode = 3

    def __init__(self, message: str, time: Optional[float] = None):
        self.time = time
        if time is not None:
            message = f"{message}: t={time:.6f}"
        super().__init__(message)
