"""
ハイブリッド閉ループシミュレータのテスト
"""

import numpy as np
import pytest

from src.errors import ConfigError, SimulationError
from src.config import getPreset
from src.config.builder import buildScenarios
from src.controller.hybrid import ControllerConfig, ControllerKind
from src.geometry.so3 import rotationAbout
from src.robot.noise import NoiseConfig
from src.robot.reference import ReferenceConfig
from src.robot.simulator import HybridSimulator, Scenario, convergenceTime, runScenario, summarize
from src.robot.state import HybridState
from src.synergy.critical import criticalPointAt

E3 = np.array([0.0, 0.0, 1.0])


def makeScenario(fam, kind=ControllerKind.PI_CS, **kwargs) -> Scenario:
    kwargs.setdefault("noise", NoiseConfig.zero())
    q0 = kwargs.pop("q0", 0)
    return Scenario(name="test", controller=ControllerConfig(kind=kind, q0=q0), family=fam, **kwargs)


@pytest.fixture(scope="module")
def criticalY(item2Family) -> np.ndarray:
    return criticalPointAt(item2Family, 0, E3).Y


# ============================================================
# シナリオ
# ============================================================

def test_scenario_validation(item2Family):
    with pytest.raises(ConfigError):
        Scenario(name="x", controller=ControllerConfig())
    with pytest.raises(ConfigError):
        makeScenario(item2Family, q0=4)
    with pytest.raises(ConfigError):
        makeScenario(item2Family, horizon=-1.0)
    with pytest.raises(ConfigError):
        makeScenario(item2Family, R0=2.0 * np.eye(3))


def test_zero_horizon(item2Family):
    scenario = makeScenario(item2Family, horizon=0.0)
    log = runScenario(scenario)
    assert log.rows == []
    assert log.events == []
    summary = summarize(scenario, log)
    assert summary.jumpCount == 0
    assert not summary.converged


def test_reference_trajectory_is_invariant(item2Family):
    log = runScenario(makeScenario(item2Family, horizon=0.5))
    assert log.jumpCount == 0
    assert np.all(log.column("theta_err") < 1e-9)
    assert np.all(log.column("q") == 0)


def test_jump_at_initial_critical_point(item2Family, criticalY):
    scenario = makeScenario(item2Family, R0=criticalY, horizon=0.01)
    log = runScenario(scenario)
    first = log.events[0]
    assert first.t == 0.0
    assert first.qMinus == 0
    assert first.lyapunovMinus - first.lyapunovPlus >= scenario.controller.k1 * item2Family.deltaHyst[0]
    assert log.rows[0][2] == first.qPlus


def test_solo_stays_at_critical_point(item2Family, criticalY):
    log = runScenario(makeScenario(item2Family, kind=ControllerKind.SOLO, R0=criticalY, horizon=1.0))
    assert log.jumpCount == 0
    assert np.all(log.column("theta_err") > np.pi - 1e-3)


def test_seeded_runs_are_deterministic(item2Family):
    scenario = makeScenario(
        item2Family, noise=NoiseConfig(), R0=rotationAbout(2.5, np.array([0.0, 0.6, 0.8])), horizon=0.2, seed=11
    )
    first, second = runScenario(scenario), runScenario(scenario)
    assert first.rows == second.rows
    assert [e.t for e in first.events] == [e.t for e in second.events]


@pytest.mark.parametrize("kind, total", [(ControllerKind.PI_CS, 303), (ControllerKind.MU_CS, 404)])
def test_evaluation_totals(item2Family, kind, total):
    log = runScenario(makeScenario(item2Family, kind=kind, horizon=0.1))
    assert log.totalEvaluations == total
    assert len(log.rows) == 101


def test_log_every(item2Family):
    log = runScenario(makeScenario(item2Family, horizon=0.1, logEvery=10))
    assert np.allclose(log.column("t"), np.linspace(0.0, 0.1, 11))


def test_pair_family_refined_matches_full(item4Family):
    common = dict(noise=NoiseConfig(), R0=rotationAbout(0.9 * np.pi, np.array([0.6, 0.0, 0.8])), horizon=2.0, seed=5)
    pi = runScenario(makeScenario(item4Family, kind=ControllerKind.PI_CS, **common))
    mu = runScenario(makeScenario(item4Family, kind=ControllerKind.MU_CS, **common))
    assert np.array_equal(pi.column("q"), mu.column("q"))
    assert pi.totalEvaluations == mu.totalEvaluations


def test_reference_bound_violation_stops_run(item2Family):
    scenario = makeScenario(item2Family, reference=ReferenceConfig(cOmega=0.5), horizon=3.0)
    with pytest.raises(SimulationError) as excinfo:
        HybridSimulator(scenario).run()
    assert 0.0 < excinfo.value.time < 2.0


def test_on_step_callback(item2Family):
    times = []
    HybridSimulator(makeScenario(item2Family, horizon=0.005)).run(onStep=lambda state: times.append(state.t))
    assert np.allclose(times, [0.001, 0.002, 0.003, 0.004, 0.005])


def test_held_torque_does_not_change_trajectory(item2Family, criticalY):
    common = dict(noise=NoiseConfig(), R0=criticalY, horizon=0.05, seed=3)
    dense = runScenario(makeScenario(item2Family, logEvery=1, **common))
    sparse = runScenario(makeScenario(item2Family, logEvery=7, **common))
    assert sparse.rows == dense.rows[::7] + [dense.rows[-1]]
    assert [e.t for e in sparse.events] == [e.t for e in dense.events]


def test_non_finite_state_stops_run(item2Family):
    state = HybridState(q=0, R=np.eye(3), omega=np.array([np.nan, 0.0, 0.0]))
    assert not state.isFinite()
    scenario = makeScenario(item2Family, omega0=np.array([np.nan, 0.0, 0.0]), horizon=0.01)
    with pytest.raises(SimulationError) as excinfo:
        HybridSimulator(scenario).run()
    assert excinfo.value.time == pytest.approx(0.001)
    assert excinfo.value.exitCode == 3


# ============================================================
# 収束判定
# ============================================================

def test_convergence_time():
    times = np.linspace(0.0, 5.0, 501)
    theta = np.where(times < 2.0, 1.0, 0.001)
    theta[300] = 0.5
    assert convergenceTime(times, theta) == pytest.approx(3.01)
    assert convergenceTime(times, np.ones_like(times)) is None


# ============================================================
# 長時間の閉ループ
# ============================================================

@pytest.mark.slow
@pytest.mark.parametrize("kind", [ControllerKind.PI_CS, ControllerKind.MU_CS])
def test_lyapunov_monotone_and_convergent(item2Family, criticalY, kind):
    scenario = makeScenario(item2Family, kind=kind, R0=criticalY, horizon=20.0, logEvery=10)
    log = runScenario(scenario)
    U = log.column("U")
    assert np.all(np.diff(U) <= 1e-7)
    summary = summarize(scenario, log)
    assert summary.converged
    assert summary.finalTheta < 0.01
    assert 1 <= summary.jumpCount <= summary.jumpBound


@pytest.mark.slow
def test_second_initial_condition_converges(item2Family):
    R0 = rotationAbout(1.15 * np.pi, np.array([0.25, -0.69, 0.69]) / np.linalg.norm([0.25, -0.69, 0.69]))
    scenario = makeScenario(item2Family, R0=R0, horizon=20.0, logEvery=10)
    log = runScenario(scenario)
    assert np.all(np.diff(log.column("U")) <= 1e-7)
    assert summarize(scenario, log).converged


@pytest.mark.slow
def test_fixed_mode_contrast():
    scenarios = buildScenarios(getPreset("fig7").toConfig())
    summaries = {s.controller.label: summarize(s, runScenario(s)) for s in scenarios}
    for q in range(4):
        summary = summaries[f"piV-CS-fixed-q{q}"]
        assert summary.jumpCount == 0
        assert summary.converged
        assert summary.finalTheta < 0.01
    for q in (2, 3):
        assert summaries[f"NonCS-fixed-q{q}"].finalTheta > 0.1
