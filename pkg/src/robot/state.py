"""
ハイブリッド閉ループ状態データクラス

剛体の姿勢・角速度、参照軌道、離散モード q とジャンプ回数をまとめて管理する

主な機能:
- ハイブリッド状態（流れと跳躍の両方で更新される値）の保持
- 追従誤差 R̃ = R R_dᵀ, ω̃ = ω − ω_d の導出
- ログ行とジャンプイベントの記録、CSV 出力

制限事項:
- ログ行は時刻順に追記される前提
"""

import csv
import os
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ..geometry.so3 import geodesicAngle

LOG_COLUMNS = (
    "t", "j", "q", "theta_err", "omega_err_norm", "torque_norm", "V", "U", "eval_count_cum",
)
EVENT_COLUMNS = ("t", "j", "q_minus", "q_plus", "gap_at_jump")


@dataclass
class HybridState:
    """
    ハイブリッド状態

    Attributes:
        q: 離散モード
        R: 姿勢（回転行列）
        omega: 機体角速度 [rad/s]
        Rd: 参照姿勢
        omegaD: 参照角速度 [rad/s]
        t: 時刻 [s]
        j: ジャンプ回数
    """
    q: int
    R: np.ndarray
    omega: np.ndarray
    Rd: np.ndarray = field(default_factory=lambda: np.eye(3))
    omegaD: np.ndarray = field(default_factory=lambda: np.zeros(3))
    t: float = 0.0
    j: int = 0

    @property
    def Rtilde(self) -> np.ndarray:
        """姿勢誤差 R̃ = R R_dᵀ"""
        return self.R @ self.Rd.T

    @property
    def omegaTilde(self) -> np.ndarray:
        """角速度誤差 ω̃ = ω − ω_d"""
        return self.omega - self.omegaD

    @property
    def attitudeErrorAngle(self) -> float:
        """ϑ(R̃) [rad]"""
        return float(geodesicAngle(self.Rtilde))

    def isFinite(self) -> bool:
        """R, ω, R_d がすべて有限か"""
        return bool(
            np.all(np.isfinite(self.R)) and np.all(np.isfinite(self.omega)) and np.all(np.isfinite(self.Rd))
        )


@dataclass(frozen=True)
class JumpEvent:
    """
    ジャンプイベント

    Attributes:
        t: 時刻 [s]
        j: ジャンプ後のジャンプ回数
        qMinus: ジャンプ前のモード
        qPlus: ジャンプ後のモード
        gap: ジャンプ判定に用いたギャップ
        lyapunovMinus: ジャンプ前の U（真の状態）
        lyapunovPlus: ジャンプ後の U（真の状態）
    """
    t: float
    j: int
    qMinus: int
    qPlus: int
    gap: float
    lyapunovMinus: float = 0.0
    lyapunovPlus: float = 0.0


@dataclass
class SimLog:
    """
    シミュレーションログ

    Attributes:
        name: 実行名（制御則ラベル）
        rows: LOG_COLUMNS 順のサンプル行
        events: ジャンプイベント
        initialLyapunov: 時刻0の判定前の U
    """
    name: str = ""
    rows: List[tuple] = field(default_factory=list)
    events: List[JumpEvent] = field(default_factory=list)
    initialLyapunov: Optional[float] = None

    def column(self, name: str) -> np.ndarray:
        """列を配列として取得"""
        index = LOG_COLUMNS.index(name)
        return np.array([row[index] for row in self.rows], dtype=float)

    @property
    def jumpCount(self) -> int:
        return len(self.events)

    @property
    def totalEvaluations(self) -> int:
        return int(self.rows[-1][LOG_COLUMNS.index("eval_count_cum")]) if self.rows else 0

    def writeCsv(self, path: str) -> None:
        """サンプル行を CSV に書き出す"""
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as fp:
            writer = csv.writer(fp)
            writer.writerow(LOG_COLUMNS)
            writer.writerows(self.rows)

    def writeEventsCsv(self, path: str) -> None:
        """ジャンプイベントを CSV に書き出す"""
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as fp:
            writer = csv.writer(fp)
            writer.writerow(EVENT_COLUMNS)
            for event in self.events:
                writer.writerow((event.t, event.j, event.qMinus, event.qPlus, event.gap))
