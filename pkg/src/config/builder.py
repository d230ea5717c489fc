"""
設定からの実行オブジェクト構築

RunConfig から形状・ポテンシャル族・制御則・シナリオを組み立てる

主な機能:
- 形状（行列または慣性ベクトル）の構築
- 族の構成（方向集合の方式の上書き、δ の指定）
- 制御則とシナリオの構築（初期姿勢を臨界点に合わせる指定を含む）

制限事項:
- 参照軌道の初期姿勢は単位行列
"""

from typing import List, Optional

import numpy as np

from ..controller.hybrid import ControllerConfig, ControllerKind
from ..controller.noncs import NonCSParams
from ..errors import ConfigError, GeometryError, ShapeError
from ..geometry.so3 import normalize, rotationAbout
from ..potential.trace import InertialVectorSet, TraceShape, shapeFromVectors
from ..robot.noise import NoiseConfig
from ..robot.plant import PlantParams
from ..robot.reference import ReferenceConfig, ReferenceKind
from ..robot.simulator import Scenario
from ..synergy.critical import criticalPointAt
from ..synergy.family import SynergisticFamily
from .loader import ControllerSection, RunConfig

CONTROLLER_KINDS = {
    "solo": ControllerKind.SOLO,
    "pics": ControllerKind.PI_CS,
    "mucs": ControllerKind.MU_CS,
    "noncs": ControllerKind.NON_CS,
}

REFERENCE_KINDS = {
    "tracking": ReferenceKind.TRACKING,
    "still": ReferenceKind.STILL,
}


def buildShape(config: RunConfig) -> TraceShape:
    """
    形状の構築

    Raises:
        ConfigError: matrix と vectors の指定が不正、または形状条件を満たさない場合
    """
    section = config.shape
    line = config.lineOf("shape")
    if (section.matrix is None) == (section.vectors is None):
        raise ConfigError("shape には matrix か vectors のどちらか一方を指定してください", line=line)
    try:
        if section.matrix is not None:
            return TraceShape.fromMatrix(np.array(section.matrix, dtype=float), multTol=section.multTol)
        weights = section.weights if section.weights is not None else [1.0] * len(section.vectors)
        vectors = InertialVectorSet.normalized(np.array(section.vectors, dtype=float), np.array(weights, dtype=float))
        return shapeFromVectors(vectors, multTol=section.multTol)
    except (ShapeError, GeometryError, ValueError) as e:
        raise ConfigError(f"形状を構築できません: {e}", line=line) from e


def buildFamily(config: RunConfig, shape: Optional[TraceShape] = None) -> SynergisticFamily:
    """
    ポテンシャル族の構築

    Raises:
        FamilyError: 構成条件を満たさない場合
    """
    section = config.family
    shape = shape if shape is not None else buildShape(config)
    return SynergisticFamily.build(
        shape,
        section.k,
        scheme=section.scheme,
        deltaFraction=section.deltaFraction,
        deltaHyst=section.deltaHyst,
        branchGrid=section.branchGrid,
        sphereGrid=section.sphereGrid,
    )


def buildController(config: RunConfig, index: int) -> ControllerConfig:
    """controllers[index] の制御則"""
    section: ControllerSection = config.controllers[index]
    line = config.lineOf("controllers", index)
    kind = CONTROLLER_KINDS.get(section.kind.lower())
    if kind is None:
        raise ConfigError(
            f"未知の制御則です: kind={section.kind}（{', '.join(CONTROLLER_KINDS)} のいずれか）", line=line
        )
    try:
        noncs = None
        if kind == ControllerKind.NON_CS:
            noncs = NonCSParams(
                alpha=section.alpha, beta=section.beta, delta=section.delta, b1=section.b1, b2=section.b2
            )
        return ControllerConfig(
            kind=kind,
            k1=section.k1,
            k2=section.k2,
            q0=section.q0,
            switching=section.switching,
            noncs=noncs,
            label=section.label,
        )
    except ConfigError as e:
        raise ConfigError(str(e), line=line) from e


def buildPlant(config: RunConfig) -> PlantParams:
    try:
        return PlantParams(J=np.array(config.plant.inertia, dtype=float))
    except ConfigError as e:
        raise ConfigError(str(e), line=config.lineOf("plant")) from e


def buildReference(config: RunConfig) -> ReferenceConfig:
    section = config.reference
    kind = REFERENCE_KINDS.get(section.kind.lower())
    if kind is None:
        raise ConfigError(f"未知の参照軌道です: kind={section.kind}", line=config.lineOf("reference", "kind"))
    try:
        return ReferenceConfig(kind=kind, cOmega=section.cOmega, cA=section.cA)
    except ConfigError as e:
        raise ConfigError(str(e), line=config.lineOf("reference")) from e


def buildNoise(config: RunConfig) -> NoiseConfig:
    try:
        return NoiseConfig(alphaMax=config.noise.alphaMax, sigmaOmega=config.noise.sigmaOmega)
    except ConfigError as e:
        raise ConfigError(str(e), line=config.lineOf("noise")) from e


def initialAttitude(config: RunConfig, fam: Optional[SynergisticFamily]) -> np.ndarray:
    """
    初期姿勢

    criticalPoint 指定時は V(·,q) の臨界点 Y を用いる（R_d(0) = I なので R(0) = Y）。

    Raises:
        ConfigError: 指定が不正な場合
    """
    section = config.initial
    if section.criticalPoint is not None:
        line = config.lineOf("initial", "criticalPoint")
        if fam is None:
            raise ConfigError("criticalPoint の指定にはポテンシャル族が必要です", line=line)
        if not 0 <= section.criticalPoint.q < fam.size:
            raise ConfigError(f"criticalPoint の q が範囲外です: q={section.criticalPoint.q}", line=line)
        return criticalPointAt(fam, section.criticalPoint.q, section.criticalPoint.v).Y.copy()
    try:
        axis = normalize(np.array(section.axis, dtype=float))
    except GeometryError as e:
        raise ConfigError(f"初期姿勢の回転軸が不正です: {e}", line=config.lineOf("initial", "axis")) from e
    return rotationAbout(section.angle, axis)


def buildScenarios(config: RunConfig, fam: Optional[SynergisticFamily] = None) -> List[Scenario]:
    """
    設定の全制御則についてシナリオを構築

    Args:
        config: 実行設定
        fam: 構築済みの族（None なら必要に応じて構築）

    Returns:
        List[Scenario]: シナリオ

    Raises:
        ConfigError: 設定の誤り
        FamilyError: 族の構成条件を満たさない場合
    """
    if not config.controllers:
        raise ConfigError("controllers が空です", line=config.lineOf("controllers"))
    controllers = [buildController(config, index) for index in range(len(config.controllers))]
    needsFamily = any(c.usesFamily for c in controllers) or config.initial.criticalPoint is not None
    if fam is None and needsFamily:
        fam = buildFamily(config)

    plant = buildPlant(config)
    reference = buildReference(config)
    noise = buildNoise(config)
    R0 = initialAttitude(config, fam)
    omega0 = np.array(config.initial.omega, dtype=float)
    simulation = config.simulation

    scenarios = []
    for index, controller in enumerate(controllers):
        try:
            scenarios.append(Scenario(
                name=f"{config.name}-{controller.label}",
                controller=controller,
                family=fam if controller.usesFamily else None,
                plant=plant,
                reference=reference,
                noise=noise,
                R0=R0,
                omega0=omega0,
                horizon=simulation.horizon,
                step=simulation.step,
                logEvery=simulation.logEvery,
                seed=config.seed,
            ))
        except ConfigError as e:
            raise ConfigError(str(e), line=config.lineOf("controllers", index)) from e
    return scenarios
