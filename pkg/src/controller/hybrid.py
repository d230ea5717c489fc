"""
ハイブリッド姿勢追従制御則

シナジーポテンシャル族に基づくヒステリシス切替付きの姿勢追従制御

主な機能:
- 制御トルク τ = Φ − k1 R_dᵀ ρ_V(R̃, q) − k2 ω̃（Φ はフィードフォワード）
- 切替判定: π_V（比較対象 Q_q のみ評価）または μ_V（全 Q を評価）
- 比較用: 切替なし（Solo）と非中心的族（NonCS）
- リアプノフ関数 U の評価と、判定ごとのポテンシャル評価回数の計数

制限事項:
- 切替は厳密な不等号（ギャップ > δ(q)）でのみ発生
- 切替先は Q 全体での最小値を与える最小インデックス
"""

from dataclasses import dataclass
from enum import IntEnum
from typing import TYPE_CHECKING, Optional

import numpy as np

from ..errors import ConfigError
from ..geometry.so3 import cross
from ..synergy.family import SynergisticFamily, familyValue, familyValues, rhoV
from .noncs import NONCS_MODES, NonCSParams, noncsErrors, noncsValues

if TYPE_CHECKING:
    from ..robot.plant import PlantParams
    from ..robot.state import HybridState


class ControllerKind(IntEnum):
    """
    制御則の種類
    """
    SOLO = 0      # 固定モード（切替なし）
    PI_CS = 1     # π_V による切替
    MU_CS = 2     # μ_V による切替
    NON_CS = 3    # 非中心的族


KIND_LABELS = {
    ControllerKind.SOLO: "Solo",
    ControllerKind.PI_CS: "piV-CS",
    ControllerKind.MU_CS: "muV-CS",
    ControllerKind.NON_CS: "NonCS",
}


@dataclass(frozen=True)
class ControllerConfig:
    """
    制御則の設定

    Attributes:
        kind: 種類
        k1: 比例ゲイン
        k2: 微分ゲイン
        q0: 初期モード（NonCS は 1〜3、それ以外は 0 始まり）
        switching: 切替の有無（Solo は常に False）
        noncs: NonCS のパラメータ
        label: 出力ファイル名などに使うラベル
    """
    kind: ControllerKind = ControllerKind.PI_CS
    k1: float = 60.0
    k2: float = 6.0
    q0: int = 0
    switching: bool = True
    noncs: Optional[NonCSParams] = None
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "kind", ControllerKind(self.kind))
        if not (self.k1 > 0.0 and self.k2 > 0.0):
            raise ConfigError(f"制御ゲインは正である必要があります: k1={self.k1}, k2={self.k2}")
        if self.kind == ControllerKind.SOLO:
            object.__setattr__(self, "switching", False)
        if self.kind == ControllerKind.NON_CS:
            if self.noncs is None:
                object.__setattr__(self, "noncs", NonCSParams())
            if self.q0 not in NONCS_MODES:
                raise ConfigError(f"NonCS の初期モードは 1, 2, 3 のいずれかです: q0={self.q0}")
        if not self.label:
            suffix = "" if self.switching or self.kind == ControllerKind.SOLO else "-fixed"
            object.__setattr__(self, "label", f"{KIND_LABELS[self.kind]}{suffix}-q{self.q0}")

    @property
    def usesFamily(self) -> bool:
        return self.kind != ControllerKind.NON_CS

    def hysteresis(self, fam: Optional[SynergisticFamily], q: int) -> float:
        """モード q のヒステリシス幅"""
        if self.kind == ControllerKind.NON_CS:
            return self.noncs.delta
        return fam.deltaHyst[q]


@dataclass(frozen=True)
class SwitchDecision:
    """
    切替判定の結果

    Attributes:
        jump: 切替するかどうか
        qNext: 判定後のモード
        gap: 判定に用いたギャップ
        evaluations: この判定でのポテンシャル評価回数
    """
    jump: bool
    qNext: int
    gap: float
    evaluations: int


def attitudeError(controller: ControllerConfig, R: np.ndarray, Rd: np.ndarray) -> np.ndarray:
    """制御則が用いる姿勢誤差（中心的族: R Rdᵀ、NonCS: Rᵀ Rd）"""
    if controller.kind == ControllerKind.NON_CS:
        return R.T @ Rd
    return R @ Rd.T


def proportionalTerm(
    controller: ControllerConfig,
    fam: Optional[SynergisticFamily],
    q: int,
    R: np.ndarray,
    Rd: np.ndarray,
) -> np.ndarray:
    """比例項（−k1 R_dᵀ ρ_V(R̃, q)、NonCS は −k1 e_H(X, q)）"""
    if controller.kind == ControllerKind.NON_CS:
        _, errorVector = noncsErrors(controller.noncs, R.T @ Rd, q)
        return -controller.k1 * errorVector
    return -controller.k1 * (Rd.T @ rhoV(fam, R @ Rd.T, q))


def controlTorque(
    controller: ControllerConfig,
    fam: Optional[SynergisticFamily],
    plant: "PlantParams",
    q: int,
    Rbar: np.ndarray,
    omegaBar: np.ndarray,
    Rd: np.ndarray,
    omegaD: np.ndarray,
    omegaDDot: np.ndarray,
) -> np.ndarray:
    """
    制御トルク

    Args:
        controller: 制御則の設定
        fam: ポテンシャル族（NonCS では不要）
        plant: 剛体パラメータ
        q: 現在のモード
        Rbar: 計測姿勢
        omegaBar: 計測角速度
        Rd: 参照姿勢
        omegaD: 参照角速度
        omegaDDot: 参照角加速度

    Returns:
        np.ndarray: トルク [N·m]
    """
    J = plant.J
    proportional = proportionalTerm(controller, fam, q, Rbar, Rd)
    if controller.kind == ControllerKind.NON_CS:
        X = Rbar.T @ Rd
        omegaRef = X @ omegaD
        velocityError = omegaBar - omegaRef
        feedforward = cross(omegaRef, J @ omegaRef) + J @ (X @ omegaDDot)
        return feedforward + proportional - controller.k2 * velocityError

    omegaTilde = omegaBar - omegaD
    feedforward = cross(omegaD, J @ omegaBar) + J @ omegaDDot
    return feedforward + proportional - controller.k2 * omegaTilde


def switchDecision(
    controller: ControllerConfig,
    fam: Optional[SynergisticFamily],
    error: np.ndarray,
    q: int,
) -> SwitchDecision:
    """
    切替判定

    評価回数は π_V で |Q_q|+1、μ_V で |Q|、NonCS で 3。
    切替時に未評価のモードがあれば追加で評価して計数する。

    Args:
        controller: 制御則の設定
        fam: ポテンシャル族
        error: attitudeError による姿勢誤差
        q: 現在のモード

    Returns:
        SwitchDecision: 判定結果
    """
    if not controller.switching:
        return SwitchDecision(jump=False, qNext=q, gap=0.0, evaluations=0)

    if controller.kind == ControllerKind.NON_CS:
        values = noncsValues(controller.noncs, error)
        gap = float(values[q - 1] - values.min())
        jump = gap > controller.noncs.delta
        qNext = int(np.argmin(values)) + 1 if jump else q
        return SwitchDecision(jump=jump, qNext=qNext, gap=gap, evaluations=len(NONCS_MODES))

    modes = list(fam.modes())
    delta = fam.deltaHyst[q]
    if controller.kind == ControllerKind.MU_CS:
        values = familyValues(fam, error, modes)
        gap = float(values[q] - values.min())
        jump = gap > delta
        return SwitchDecision(
            jump=jump, qNext=int(np.argmin(values)) if jump else q, gap=gap, evaluations=len(modes)
        )

    checked = (q,) + tuple(fam.dirs.subset(q))
    values = familyValues(fam, error, checked)
    gap = float(values[0] - values.min())
    evaluations = len(checked)
    if not gap > delta:
        return SwitchDecision(jump=False, qNext=q, gap=gap, evaluations=evaluations)

    allValues = np.empty(len(modes))
    allValues[list(checked)] = values
    remaining = [p for p in modes if p not in checked]
    if remaining:
        allValues[remaining] = familyValues(fam, error, remaining)
        evaluations += len(remaining)
    return SwitchDecision(jump=True, qNext=int(np.argmin(allValues)), gap=gap, evaluations=evaluations)


def lyapunov(
    controller: ControllerConfig,
    fam: Optional[SynergisticFamily],
    plant: "PlantParams",
    state: "HybridState",
    q: Optional[int] = None,
) -> float:
    """
    リアプノフ関数（真の状態で評価）

    中心的族: U = k1 V(R̃, q) + ω̃ᵀ J ω̃
    NonCS: U = k1 V(X, q) + ½ ẽᵀ J ẽ

    Args:
        controller: 制御則の設定
        fam: ポテンシャル族
        plant: 剛体パラメータ
        state: ハイブリッド状態
        q: 評価するモード（None なら state.q）

    Returns:
        float: U
    """
    q = state.q if q is None else q
    J = plant.J
    if controller.kind == ControllerKind.NON_CS:
        X = state.R.T @ state.Rd
        velocityError = state.omega - X @ state.omegaD
        value, _ = noncsErrors(controller.noncs, X, q)
        return float(controller.k1 * value + 0.5 * velocityError @ J @ velocityError)
    omegaTilde = state.omegaTilde
    return float(controller.k1 * familyValue(fam, state.Rtilde, q) + omegaTilde @ J @ omegaTilde)


def potentialValue(
    controller: ControllerConfig,
    fam: Optional[SynergisticFamily],
    state: "HybridState",
) -> float:
    """現在モードのポテンシャル値（真の状態）"""
    if controller.kind == ControllerKind.NON_CS:
        return float(noncsErrors(controller.noncs, state.R.T @ state.Rd, state.q)[0])
    return float(familyValue(fam, state.Rtilde, state.q))
