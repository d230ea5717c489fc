"""
ハイブリッド閉ループシミュレータ

固定刻みの RK4 で剛体・参照軌道の流れを積分し、各ステップ後に切替判定を行う

主な機能:
- (R, ω, R_d) の RK4 積分（刻み 1 ms）と SO(3) への再射影
- 計測ノイズのサンプルホールド（次のステップの全ステージで同じノイズを使用）
- 切替判定とジャンプイベントの記録、評価回数の累積
- 実行結果の要約（収束時刻、ジャンプ数と上界、評価回数、巻き戻り量）

制限事項:
- 1ステップあたりのジャンプは高々1回
- イベント検出や可変刻みは行わない
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from ..controller.hybrid import (
    ControllerConfig,
    ControllerKind,
    attitudeError,
    controlTorque,
    lyapunov,
    potentialValue,
    switchDecision,
)
from ..errors import ConfigError, SimulationError
from ..geometry.so3 import hat, isRotation, projectToSO3
from ..synergy.family import SynergisticFamily
from ..utils.logger import get_logger
from .noise import MeasurementNoise, NoiseConfig
from .plant import PlantParams, plantDerivative
from .reference import ReferenceConfig
from .state import HybridState, JumpEvent, SimLog

logger = get_logger("synergy_so3.sim")

DEFAULT_STEP = 0.001
CONVERGENCE_THRESHOLD = 0.01
CONVERGENCE_DWELL = 1.0


@dataclass(frozen=True)
class Scenario:
    """
    シミュレーション条件

    Attributes:
        name: シナリオ名
        controller: 制御則
        family: ポテンシャル族（NonCS では None 可）
        plant: 剛体パラメータ
        reference: 参照軌道
        noise: 計測ノイズ
        R0: 初期姿勢
        omega0: 初期角速度 [rad/s]
        horizon: 終了時刻 [s]
        step: 積分刻み [s]
        logEvery: ログ間引き（ステップ数）
        seed: 乱数シード
    """
    name: str
    controller: ControllerConfig
    family: Optional[SynergisticFamily] = None
    plant: PlantParams = field(default_factory=PlantParams)
    reference: ReferenceConfig = field(default_factory=ReferenceConfig)
    noise: NoiseConfig = field(default_factory=NoiseConfig)
    R0: np.ndarray = field(default_factory=lambda: np.eye(3))
    omega0: np.ndarray = field(default_factory=lambda: np.zeros(3))
    horizon: float = 20.0
    step: float = DEFAULT_STEP
    logEvery: int = 1
    seed: Optional[int] = 0

    def __post_init__(self):
        if self.controller.usesFamily and self.family is None:
            raise ConfigError(f"制御則 {self.controller.label} にはポテンシャル族が必要です")
        if self.controller.usesFamily and not 0 <= self.controller.q0 < self.family.size:
            raise ConfigError(f"初期モードが範囲外です: q0={self.controller.q0}, size={self.family.size}")
        if self.horizon < 0.0 or not self.step > 0.0:
            raise ConfigError(f"時間設定が不正です: horizon={self.horizon}, step={self.step}")
        if self.logEvery < 1:
            raise ConfigError(f"logEvery は1以上である必要があります: logEvery={self.logEvery}")
        R0 = np.asarray(self.R0, dtype=float)
        if not isRotation(R0):
            raise ConfigError("初期姿勢が回転行列ではありません")
        object.__setattr__(self, "R0", R0)
        object.__setattr__(self, "omega0", np.asarray(self.omega0, dtype=float).reshape(3))

    @property
    def stepCount(self) -> int:
        return int(round(self.horizon / self.step))


@dataclass(frozen=True)
class RunSummary:
    """
    実行結果の要約

    Attributes:
        label: 制御則ラベル
        convergenceTime: ϑ < 0.01 rad が1秒継続した最初の時刻（未収束なら None）
        jumpCount: ジャンプ回数
        jumpBound: ジャンプ回数の上界 U(0)/(k1·min δ)
        totalEvaluations: ポテンシャル評価回数の合計
        finalTheta: 終了時の ϑ [rad]
        peakThetaExcess: max ϑ − ϑ(0) [rad]（正なら巻き戻り）
    """
    label: str
    convergenceTime: Optional[float]
    jumpCount: int
    jumpBound: Optional[float]
    totalEvaluations: int
    finalTheta: float
    peakThetaExcess: float

    @property
    def converged(self) -> bool:
        return self.convergenceTime is not None


class HybridSimulator:
    """
    ハイブリッド閉ループシミュレータ

    Attributes:
        scenario: シミュレーション条件
        state: 現在のハイブリッド状態
        log: 記録中のログ
    """

    def __init__(self, scenario: Scenario):
        """
        初期化

        Args:
            scenario: シミュレーション条件
        """
        self.scenario = scenario
        self._noise = MeasurementNoise(scenario.noise, scenario.seed)
        self._perturbation = np.eye(3)
        self._gyroNoise = np.zeros(3)
        self._evaluations = 0
        self._stepIndex = 0
        self._heldTorque: Optional[Tuple[Tuple[int, int], np.ndarray]] = None
        reference = scenario.reference
        self.state = HybridState(
            q=scenario.controller.q0,
            R=scenario.R0.copy(),
            omega=scenario.omega0.copy(),
            Rd=np.array(reference.Rd0, dtype=float),
            omegaD=reference.omegaD(0.0),
        )
        self.log = SimLog(name=scenario.controller.label)

    # ========================================
    # 流れ
    # ========================================

    def measure(self, R: np.ndarray, omega: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """保持中のノイズを適用した計測値 (R̄, ω̄)"""
        return R @ self._perturbation, omega + self._gyroNoise

    def _referenceAt(self, t: float) -> Tuple[np.ndarray, np.ndarray]:
        reference = self.scenario.reference
        return reference.omegaD(t), reference.omegaDDot(t)

    def _torque(
        self,
        q: int,
        R: np.ndarray,
        omega: np.ndarray,
        Rd: np.ndarray,
        referenceValues: Tuple[np.ndarray, np.ndarray],
    ) -> np.ndarray:
        scenario = self.scenario
        Rbar, omegaBar = self.measure(R, omega)
        omegaD, omegaDDot = referenceValues
        return controlTorque(
            scenario.controller, scenario.family, scenario.plant, q, Rbar, omegaBar, Rd, omegaD, omegaDDot
        )

    def torqueAt(self, t: float, q: int, R: np.ndarray, omega: np.ndarray, Rd: np.ndarray) -> np.ndarray:
        """時刻 t・モード q での制御トルク"""
        return self._torque(q, R, omega, Rd, self._referenceAt(t))

    def _derivative(
        self,
        referenceValues: Tuple[np.ndarray, np.ndarray],
        R: np.ndarray,
        omega: np.ndarray,
        Rd: np.ndarray,
        tau: Optional[np.ndarray] = None,
    ):
        if tau is None:
            tau = self._torque(self.state.q, R, omega, Rd, referenceValues)
        RDot, omegaDot = plantDerivative(self.scenario.plant, R, omega, tau)
        RdDot = Rd @ hat(referenceValues[0])
        return RDot, omegaDot, RdDot

    def step(self) -> Optional[JumpEvent]:
        """
        1ステップ進める（RK4 → 再射影 → ノイズ更新 → 切替判定）

        参照軌道は t, t + h/2, t + h で一度ずつ評価し、中間の2ステージで共有する。
        直前の record() が同じ状態で求めたトルクは第1ステージに流用する。

        Returns:
            Optional[JumpEvent]: このステップ末でジャンプした場合のイベント

        Raises:
            SimulationError: 状態が有限でない、または参照軌道が上界を超えた場合
        """
        h = self.scenario.step
        state = self.state
        t, R, omega, Rd = state.t, state.R, state.omega, state.Rd

        heldTorque = None
        if self._heldTorque is not None and self._heldTorque[0] == (self._stepIndex, state.q):
            heldTorque = self._heldTorque[1]
        self._heldTorque = None

        start, middle, end = self._referenceAt(t), self._referenceAt(t + 0.5 * h), self._referenceAt(t + h)
        k1R, k1w, k1d = self._derivative(start, R, omega, Rd, heldTorque)
        k2R, k2w, k2d = self._derivative(middle, R + 0.5 * h * k1R, omega + 0.5 * h * k1w, Rd + 0.5 * h * k1d)
        k3R, k3w, k3d = self._derivative(middle, R + 0.5 * h * k2R, omega + 0.5 * h * k2w, Rd + 0.5 * h * k2d)
        k4R, k4w, k4d = self._derivative(end, R + h * k3R, omega + h * k3w, Rd + h * k3d)

        self._stepIndex += 1
        candidate = HybridState(
            q=state.q,
            R=R + (h / 6.0) * (k1R + 2.0 * k2R + 2.0 * k3R + k4R),
            omega=omega + (h / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w),
            Rd=Rd + (h / 6.0) * (k1d + 2.0 * k2d + 2.0 * k3d + k4d),
            t=self._stepIndex * h,
            j=state.j,
        )
        if not candidate.isFinite():
            raise SimulationError("状態が有限ではありません", time=candidate.t)

        state.R = projectToSO3(candidate.R)
        state.omega = candidate.omega
        state.Rd = projectToSO3(candidate.Rd)
        state.t = candidate.t
        state.omegaD = self.scenario.reference.omegaD(candidate.t)
        self.scenario.reference.checkBounds(candidate.t)

        self._resample()
        return self.checkSwitch()

    # ========================================
    # 跳躍
    # ========================================

    def _resample(self) -> None:
        self._perturbation, self._gyroNoise = self._noise.sample()

    def checkSwitch(self) -> Optional[JumpEvent]:
        """
        現在の計測値で切替判定を行い、必要なら q を更新する

        Returns:
            Optional[JumpEvent]: ジャンプした場合のイベント
        """
        scenario = self.scenario
        state = self.state
        Rbar, _ = self.measure(state.R, state.omega)
        error = attitudeError(scenario.controller, Rbar, state.Rd)
        decision = switchDecision(scenario.controller, scenario.family, error, state.q)
        self._evaluations += decision.evaluations
        if not decision.jump:
            return None

        before = lyapunov(scenario.controller, scenario.family, scenario.plant, state)
        qMinus = state.q
        state.q = decision.qNext
        state.j += 1
        after = lyapunov(scenario.controller, scenario.family, scenario.plant, state)
        event = JumpEvent(
            t=state.t,
            j=state.j,
            qMinus=qMinus,
            qPlus=state.q,
            gap=decision.gap,
            lyapunovMinus=before,
            lyapunovPlus=after,
        )
        self.log.events.append(event)
        logger.info(
            f"[{self.log.name}] ジャンプ: t={state.t:.3f} j={state.j} q={qMinus}->{state.q} gap={decision.gap:.5f}"
        )
        return event

    # ========================================
    # 記録
    # ========================================

    def record(self) -> None:
        """現在の状態をログ行として追記（トルクは次のステップで最初に加わる値）"""
        scenario = self.scenario
        state = self.state
        tau = self.torqueAt(state.t, state.q, state.R, state.omega, state.Rd)
        self._heldTorque = ((self._stepIndex, state.q), tau)
        self.log.rows.append((
            state.t,
            state.j,
            state.q,
            state.attitudeErrorAngle,
            float(np.linalg.norm(state.omegaTilde)),
            float(np.linalg.norm(tau)),
            potentialValue(scenario.controller, scenario.family, state),
            lyapunov(scenario.controller, scenario.family, scenario.plant, state),
            self._evaluations,
        ))

    def run(self, onStep: Optional[Callable[[HybridState], None]] = None) -> SimLog:
        """
        終了時刻まで実行

        Args:
            onStep: 各ステップ後に呼ばれるコールバック

        Returns:
            SimLog: 実行ログ（終了時刻0なら空）

        Raises:
            SimulationError: 状態が有限でない、または参照軌道が上界を超えた場合
        """
        scenario = self.scenario
        steps = scenario.stepCount
        if steps == 0:
            logger.info(f"[{self.log.name}] 終了時刻が0のため空のログを返します")
            return self.log

        logger.info(f"[{self.log.name}] シミュレーション開始: horizon={scenario.horizon}s step={scenario.step}s")
        scenario.reference.checkBounds(0.0)
        self.log.initialLyapunov = lyapunov(scenario.controller, scenario.family, scenario.plant, self.state)
        self._resample()
        self.checkSwitch()

        for index in range(steps):
            if index % scenario.logEvery == 0:
                self.record()
            self.step()
            if onStep is not None:
                onStep(self.state)
        self.record()

        logger.info(
            f"[{self.log.name}] シミュレーション終了: jumps={self.log.jumpCount} "
            f"theta={self.state.attitudeErrorAngle:.5f} evaluations={self._evaluations}"
        )
        return self.log


def runScenario(scenario: Scenario) -> SimLog:
    """シナリオを1回実行"""
    return HybridSimulator(scenario).run()


def convergenceTime(
    times: np.ndarray,
    theta: np.ndarray,
    threshold: float = CONVERGENCE_THRESHOLD,
    dwell: float = CONVERGENCE_DWELL,
) -> Optional[float]:
    """ϑ < threshold が dwell 秒継続した区間の開始時刻"""
    start: Optional[float] = None
    for t, value in zip(times, theta):
        if value < threshold:
            if start is None:
                start = float(t)
            if t - start >= dwell - 1e-9:
                return start
        else:
            start = None
    return None


def summarize(scenario: Scenario, log: SimLog) -> RunSummary:
    """
    実行ログの要約

    Args:
        scenario: 実行したシナリオ
        log: 実行ログ

    Returns:
        RunSummary: 要約
    """
    controller = scenario.controller
    if controller.kind == ControllerKind.NON_CS:
        minDelta = controller.noncs.delta
    else:
        minDelta = min(scenario.family.deltaHyst)
    jumpBound = None
    if log.initialLyapunov is not None:
        jumpBound = log.initialLyapunov / (controller.k1 * minDelta)

    if not log.rows:
        return RunSummary(controller.label, None, 0, jumpBound, 0, float("nan"), 0.0)

    times = log.column("t")
    theta = log.column("theta_err")
    converged = convergenceTime(times, theta)
    if converged is None:
        logger.warning(f"[{controller.label}] 収束しませんでした: final theta={theta[-1]:.5f}")
    return RunSummary(
        label=controller.label,
        convergenceTime=converged,
        jumpCount=log.jumpCount,
        jumpBound=jumpBound,
        totalEvaluations=log.totalEvaluations,
        finalTheta=float(theta[-1]),
        peakThetaExcess=float(theta.max() - theta[0]),
    )
