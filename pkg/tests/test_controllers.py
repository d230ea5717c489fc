"""
ハイブリッド制御則のテスト
"""

import numpy as np
import pytest

from src.errors import ConfigError
from src.controller.hybrid import (
    ControllerConfig,
    ControllerKind,
    attitudeError,
    controlTorque,
    lyapunov,
    proportionalTerm,
    switchDecision,
)
from src.robot.plant import PlantParams
from src.robot.reference import ReferenceConfig
from src.robot.state import HybridState
from src.synergy.critical import criticalPointAt

E3 = np.array([0.0, 0.0, 1.0])


def test_config_validation():
    with pytest.raises(ConfigError):
        ControllerConfig(k1=0.0)
    with pytest.raises(ConfigError):
        ControllerConfig(kind=ControllerKind.NON_CS, q0=0)


def test_config_defaults():
    assert ControllerConfig().label == "piV-CS-q0"
    assert ControllerConfig(kind=ControllerKind.PI_CS, q0=2, switching=False).label == "piV-CS-fixed-q2"
    solo = ControllerConfig(kind=ControllerKind.SOLO, switching=True)
    assert not solo.switching
    assert solo.label == "Solo-q0"
    noncs = ControllerConfig(kind=ControllerKind.NON_CS, q0=1)
    assert noncs.noncs is not None
    assert not noncs.usesFamily


def test_pure_feedforward_on_reference(item2Family):
    plant = PlantParams()
    reference = ReferenceConfig()
    t = 1.3
    omegaD, omegaDDot = reference.omegaD(t), reference.omegaDDot(t)
    Rd = np.eye(3)
    tau = controlTorque(ControllerConfig(), item2Family, plant, 1, Rd, omegaD, Rd, omegaD, omegaDDot)
    expected = np.cross(omegaD, plant.J @ omegaD) + plant.J @ omegaDDot
    assert np.allclose(tau, expected, atol=1e-12)


def test_solo_stalls_at_critical_point(item2Family):
    Y = criticalPointAt(item2Family, 0, E3).Y
    solo = ControllerConfig(kind=ControllerKind.SOLO)
    assert np.linalg.norm(proportionalTerm(solo, item2Family, 0, Y, np.eye(3))) < 1e-6


def test_attitude_error_orientation():
    R = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    Rd = np.eye(3)
    assert np.allclose(attitudeError(ControllerConfig(), R, Rd), R)
    assert np.allclose(attitudeError(ControllerConfig(kind=ControllerKind.NON_CS, q0=1), R, Rd), R.T)


@pytest.mark.parametrize(
    "kind, q0, evaluations",
    [
        (ControllerKind.PI_CS, 0, 3),
        (ControllerKind.MU_CS, 0, 4),
        (ControllerKind.NON_CS, 1, 3),
        (ControllerKind.SOLO, 0, 0),
    ],
)
def test_evaluations_at_identity(item2Family, kind, q0, evaluations):
    decision = switchDecision(ControllerConfig(kind=kind, q0=q0), item2Family, np.eye(3), q0)
    assert not decision.jump
    assert decision.qNext == q0
    assert decision.evaluations == evaluations


def test_noncs_jumps_to_first_mode_at_identity():
    controller = ControllerConfig(kind=ControllerKind.NON_CS, q0=2)
    decision = switchDecision(controller, None, np.eye(3), 2)
    assert decision.jump
    assert decision.qNext == 1
    assert decision.gap == pytest.approx(controller.noncs.alpha)


def test_refined_switch_at_critical_point(item2Family):
    Y = criticalPointAt(item2Family, 0, E3).Y
    pi = switchDecision(ControllerConfig(kind=ControllerKind.PI_CS), item2Family, Y, 0)
    mu = switchDecision(ControllerConfig(kind=ControllerKind.MU_CS), item2Family, Y, 0)
    assert pi.jump and mu.jump
    assert pi.evaluations == 4
    assert pi.qNext != 0 and mu.qNext != 0
    assert pi.gap <= mu.gap + 1e-15


def test_fixed_mode_never_switches(item2Family):
    Y = criticalPointAt(item2Family, 0, E3).Y
    decision = switchDecision(ControllerConfig(switching=False), item2Family, Y, 0)
    assert not decision.jump
    assert decision.evaluations == 0


def test_lyapunov_drop_across_jump(item2Family):
    controller = ControllerConfig()
    plant = PlantParams()
    Y = criticalPointAt(item2Family, 0, E3).Y
    state = HybridState(q=0, R=Y, omega=np.array([0.1, -0.2, 0.3]))
    decision = switchDecision(controller, item2Family, state.Rtilde, state.q)
    before = lyapunov(controller, item2Family, plant, state)
    after = lyapunov(controller, item2Family, plant, state, q=decision.qNext)
    assert before - after >= controller.k1 * item2Family.deltaHyst[0]
