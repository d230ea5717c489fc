"""
望まない臨界点の列挙と認証

V(·,q) の望まない臨界点 Y = R_a(π, v) R_a(θ(Y), u_q)ᵀ を固有ベクトルの枝ごとに解き、
各点でのシナジーギャップを評価して族の妥当性を認証する

主な機能:
- Ψ_M(Y) に関する2次方程式の解と根の選択（0 < sin(θ/2) ≤ k）
- 固有ベクトル連続体のサンプリング（円周・フィボナッチ球面）
- 認証レポート（最小ギャップ、最悪点、ρ_V の残差、必要条件の違反数）

制限事項:
- 連続体はサンプリングによる検証であり、格子間の保証はしない
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..errors import CertificationError, FamilyError
from ..geometry.so3 import rotationAbout
from ..potential.trace import SpectrumClass, deltaUnchecked, psiValue
from ..utils.logger import get_logger
from .family import SynergisticFamily, WarpedFamily, familyValue, rhoV, warpAngle

logger = get_logger("synergy_so3.synergy")

DEFAULT_BRANCH_GRID = 720
DEFAULT_SPHERE_GRID = 10000
LINEAR_DELTA_TOL = 1e-14
ROOT_TOL = 1e-12


@dataclass(frozen=True)
class CriticalPointRecord:
    """
    望まない臨界点

    Attributes:
        q: モード
        v: 枝を表す固有ベクトル
        Y: 臨界点の回転行列
        psiAtY: Ψ_M(Y)
        thetaAtY: θ(Y)
        refinedGap: π_V(Y,q)
        fullGap: μ_V(Y,q)
        branch: 枝の名前（"v3", "v12", "sphere" など）
        rhoNorm: ‖ρ_V(Y,q)‖
        necessaryCondition: max_{p∈Q_q} Δ(v, u_pq) > 0 が成り立つか
    """
    q: int
    v: np.ndarray
    Y: np.ndarray
    psiAtY: float
    thetaAtY: float
    refinedGap: float
    fullGap: float
    branch: str = ""
    rhoNorm: float = 0.0
    necessaryCondition: bool = True


@dataclass
class CertificationReport:
    """
    認証レポート

    Attributes:
        spectrumClass: 形状の分類
        scheme: 方向集合の方式
        k: ワーピングゲイン
        deltaBar: δ̄_q（未構成なら空）
        deltaHyst: δ(q)（未構成なら空）
        minRefinedGap: 全記録での π_V の最小値
        minFullGap: 全記録での μ_V の最小値
        minRefinedGapPerQ: q ごとの π_V の最小値
        worstQ: π_V が最小となる q
        worstV: そのときの枝ベクトル
        sampleCount: 記録数
        maxRhoNorm: ‖ρ_V(Y,q)‖ の最大値
        maxThetaAtY: θ(Y) の最大値
        necessaryConditionViolations: 必要条件を満たさない記録数
        passed: 全 q で min π_V > δ(q)
    """
    spectrumClass: str
    scheme: int
    k: float
    deltaBar: Tuple[float, ...]
    deltaHyst: Tuple[float, ...]
    minRefinedGap: float
    minFullGap: float
    minRefinedGapPerQ: List[float]
    worstQ: int
    worstV: List[float]
    sampleCount: int
    maxRhoNorm: float
    maxThetaAtY: float
    necessaryConditionViolations: int
    passed: bool
    closedFormBound: Optional[float] = None
    extra: Dict[str, float] = field(default_factory=dict)

    def toDict(self) -> dict:
        """構造化テキスト出力用の辞書"""
        data = {
            "class": self.spectrumClass,
            "scheme": self.scheme,
            "k": self.k,
            "deltaBar": list(self.deltaBar),
            "deltaHyst": list(self.deltaHyst),
            "closedFormBound": self.closedFormBound,
            "minRefinedGap": self.minRefinedGap,
            "minFullGap": self.minFullGap,
            "minRefinedGapPerQ": list(self.minRefinedGapPerQ),
            "worst": {"q": self.worstQ, "v": list(self.worstV)},
            "sampleCount": self.sampleCount,
            "maxRhoNorm": self.maxRhoNorm,
            "maxThetaAtY": self.maxThetaAtY,
            "necessaryConditionViolations": self.necessaryConditionViolations,
            "passed": self.passed,
        }
        data.update(self.extra)
        return data


# ============================================================
# 枝のサンプリング
# ============================================================

def fibonacciSphere(count: int) -> np.ndarray:
    """フィボナッチ球面上の単位ベクトル（形状 (count, 3)）"""
    index = np.arange(count) + 0.5
    z = 1.0 - 2.0 * index / count
    radius = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    phi = np.pi * (3.0 - np.sqrt(5.0)) * index
    return np.stack([radius * np.cos(phi), radius * np.sin(phi), z], axis=-1)


def latticeDirections() -> np.ndarray:
    """各成分が {−1, 0, 1} の26方向（正規化済み）"""
    grid = np.array(np.meshgrid([-1.0, 0.0, 1.0], [-1.0, 0.0, 1.0], [-1.0, 0.0, 1.0], indexing="ij"))
    points = grid.reshape(3, -1).T
    points = points[np.any(points != 0.0, axis=1)]
    return points / np.linalg.norm(points, axis=1, keepdims=True)


def branchSamples(fam: WarpedFamily, branchGrid: int, sphereGrid: int) -> Tuple[np.ndarray, List[str]]:
    """
    M の固有ベクトル集合 E(M) のサンプル

    Returns:
        (単位ベクトル（形状 (N, 3)）, 各サンプルの枝名)
    """
    if branchGrid < 1:
        raise FamilyError(f"branchGrid は 1 以上である必要があります: {branchGrid}")
    tag = fam.shape.tag
    frame = tag.frame
    spectrumClass = tag.spectrumClass

    if spectrumClass == SpectrumClass.ALL_EQUAL:
        local = np.vstack([fibonacciSphere(sphereGrid), latticeDirections()])
        return local @ frame.T, ["sphere"] * len(local)

    if spectrumClass == SpectrumClass.ALL_DISTINCT:
        return frame.T.copy(), ["v1", "v2", "v3"]

    # 重複対 v1, v2 の円周と孤立固有ベクトル v3
    t = np.arange(branchGrid) * np.pi / branchGrid
    circle = np.cos(t)[:, None] * frame[:, 0] + np.sin(t)[:, None] * frame[:, 1]
    return np.vstack([frame[:, 2], circle]), ["v3"] + ["v12"] * branchGrid


# ============================================================
# 臨界点
# ============================================================

def solvePsiAtCritical(fam: WarpedFamily, lambdaG: np.ndarray, delta: np.ndarray) -> np.ndarray:
    """
    2λ_max²(2λ^G − P) = k²P²Δ を P = Ψ_M(Y) について解く（0 < P ≤ 2λ_max^G の根）

    Raises:
        FamilyError: 許容される根がない場合
    """
    lambdaMax = fam.lambdaMaxG
    a = fam.k ** 2 * delta
    b = 2.0 * lambdaMax ** 2
    c = 4.0 * lambdaMax ** 2 * lambdaG
    disc = b * b + 4.0 * a * c
    if np.any(disc < 0.0):
        raise FamilyError(f"臨界点の2次方程式に実根がありません: minDisc={np.min(disc):.3e}")
    root = np.sqrt(disc)
    # a → 0 で線形解 P = c/b に連続な根
    primary = 2.0 * c / (b + root)
    with np.errstate(divide="ignore", invalid="ignore"):
        secondary = np.where(np.abs(a) > LINEAR_DELTA_TOL, (-b - root) / (2.0 * a), np.nan)

    upper = 2.0 * lambdaMax * (1.0 + ROOT_TOL)
    primaryOk = (primary > 0.0) & (primary <= upper)
    secondaryOk = (secondary > 0.0) & (secondary <= upper)
    if not np.all(primaryOk | secondaryOk):
        raise FamilyError("臨界点の2次方程式に 0 < sin(θ/2) ≤ k を満たす根がありません")
    return np.minimum(np.where(primaryOk, primary, secondary), 2.0 * lambdaMax)


def _criticalBatch(fam: WarpedFamily, q: int, vectors: np.ndarray) -> Dict[str, np.ndarray]:
    shape = fam.shape
    uq = fam.dirs.direction(q)
    lambdaM = np.einsum("ni,ij,nj->n", vectors, shape.M, vectors)
    lambdaG = shape.traceM - lambdaM
    delta = deltaUnchecked(shape.M, shape.traceM, vectors, uq)
    psi = solvePsiAtCritical(fam, lambdaG, delta)
    theta = 2.0 * np.arcsin(fam.k * psi / (2.0 * fam.lambdaMaxG))

    halfTurn = 2.0 * vectors[:, :, None] * vectors[:, None, :] - np.eye(3)
    Y = halfTurn @ rotationAbout(-theta, uq)

    modes = list(fam.modes())
    values = np.stack([familyValue(fam, Y, p) for p in modes], axis=-1)
    refinedSet = [q] + list(fam.dirs.subset(q))
    refined = values[:, q] - values[:, refinedSet].min(axis=1)
    full = values[:, q] - values.min(axis=1)
    rho = np.linalg.norm(rhoV(fam, Y, q), axis=-1)
    thetaY = warpAngle(fam, Y)

    # 合成回転軸 u_pq に対する Δ(v, u_pq) の最大値
    s = np.sin(0.5 * thetaY)
    c = np.cos(0.5 * thetaY)
    necessary = np.full(len(vectors), -np.inf)
    for p in fam.dirs.subset(q):
        up = fam.dirs.direction(p)
        vec = (s * c)[:, None] * (up - uq) + (s * s)[:, None] * np.cross(up, uq)
        norm = np.linalg.norm(vec, axis=1, keepdims=True)
        axis = vec / np.where(norm > 0.0, norm, 1.0)
        necessary = np.maximum(necessary, deltaUnchecked(shape.M, shape.traceM, vectors, axis))

    return {
        "psi": psiValue(shape, Y),
        "theta": thetaY,
        "Y": Y,
        "refined": refined,
        "full": full,
        "rho": rho,
        "necessary": necessary,
    }


def criticalPointAt(fam: WarpedFamily, q: int, v) -> CriticalPointRecord:
    """
    単一の枝ベクトル v に対する V(·,q) の臨界点

    Raises:
        FamilyError: v が固有ベクトルでない場合、根がない場合
    """
    v = np.asarray(v, dtype=float)
    v = v / np.linalg.norm(v)
    if not fam.shape.isEigenvector(v):
        raise FamilyError(f"v が M の固有ベクトルではありません: v={v}")
    batch = _criticalBatch(fam, q, v[None, :])
    return _records(q, v[None, :], [""], batch)[0]


def _records(q: int, vectors: np.ndarray, branches: List[str], batch: Dict[str, np.ndarray]) -> List[CriticalPointRecord]:
    return [
        CriticalPointRecord(
            q=q,
            v=vectors[i],
            Y=batch["Y"][i],
            psiAtY=float(batch["psi"][i]),
            thetaAtY=float(batch["theta"][i]),
            refinedGap=float(batch["refined"][i]),
            fullGap=float(batch["full"][i]),
            branch=branches[i],
            rhoNorm=float(batch["rho"][i]),
            necessaryCondition=bool(batch["necessary"][i] > 0.0),
        )
        for i in range(len(vectors))
    ]


def solveCriticalPoints(
    fam: WarpedFamily,
    q: int,
    branchGrid: int = DEFAULT_BRANCH_GRID,
    sphereGrid: int = DEFAULT_SPHERE_GRID,
) -> List[CriticalPointRecord]:
    """
    V(·,q) の望まない臨界点の列挙

    Args:
        fam: 族
        q: モード
        branchGrid: 円周状の固有ベクトル連続体の分割数
        sphereGrid: 全固有値等しい場合の球面サンプル数

    Returns:
        List[CriticalPointRecord]: 臨界点
    """
    vectors, branches = branchSamples(fam, branchGrid, sphereGrid)
    return _records(q, vectors, branches, _criticalBatch(fam, q, vectors))


def certify(
    fam: WarpedFamily,
    branchGrid: int = DEFAULT_BRANCH_GRID,
    sphereGrid: int = DEFAULT_SPHERE_GRID,
    strict: bool = False,
) -> CertificationReport:
    """
    全 q の望まない臨界点でのギャップ検証

    ヒステリシス幅を持たない族では min π_V > 0 を合格条件とする。

    Args:
        fam: 族
        branchGrid: 円周状の固有ベクトル連続体の分割数
        sphereGrid: 全固有値等しい場合の球面サンプル数
        strict: True なら不合格時に CertificationError を送出

    Returns:
        CertificationReport: 認証レポート

    Raises:
        CertificationError: strict=True で不合格の場合
    """
    from .bounds import closedFormBound
    from .directions import DirectionScheme

    vectors, _ = branchSamples(fam, branchGrid, sphereGrid)
    deltaHyst = fam.deltaHyst if isinstance(fam, SynergisticFamily) else tuple(0.0 for _ in fam.modes())
    deltaBar = fam.deltaBar if isinstance(fam, SynergisticFamily) else ()

    perQ: List[float] = []
    minFull = np.inf
    worst = (0, vectors[0])
    maxRho = 0.0
    maxTheta = 0.0
    violations = 0
    passed = True
    for q in fam.modes():
        batch = _criticalBatch(fam, q, vectors)
        index = int(np.argmin(batch["refined"]))
        minRefined = float(batch["refined"][index])
        if not perQ or minRefined < min(perQ):
            worst = (q, vectors[index])
        perQ.append(minRefined)
        minFull = min(minFull, float(batch["full"].min()))
        maxRho = max(maxRho, float(batch["rho"].max()))
        maxTheta = max(maxTheta, float(batch["theta"].max()))
        violations += int(np.sum(batch["necessary"] <= 0.0))
        passed = passed and minRefined > deltaHyst[q]

    closedForm = None
    if fam.dirs.scheme in (DirectionScheme.SIX_AXES, DirectionScheme.FOUR_AXES, DirectionScheme.HEXAGON):
        closedForm = closedFormBound(fam)

    report = CertificationReport(
        spectrumClass=fam.shape.spectrumClass.name,
        scheme=int(fam.dirs.scheme),
        k=float(fam.k),
        deltaBar=tuple(deltaBar),
        deltaHyst=tuple(deltaHyst) if isinstance(fam, SynergisticFamily) else (),
        minRefinedGap=float(min(perQ)),
        minFullGap=float(minFull),
        minRefinedGapPerQ=perQ,
        worstQ=int(worst[0]),
        worstV=[float(x) for x in worst[1]],
        sampleCount=int(len(vectors) * fam.size),
        maxRhoNorm=maxRho,
        maxThetaAtY=maxTheta,
        necessaryConditionViolations=violations,
        passed=bool(passed),
        closedFormBound=closedForm,
    )
    logger.info(
        f"認証結果: passed={report.passed}, minRefinedGap={report.minRefinedGap:.6f}, "
        f"minFullGap={report.minFullGap:.6f}, samples={report.sampleCount}"
    )
    if strict and not report.passed:
        raise CertificationError(
            f"望まない臨界点でギャップ条件を満たしません: minRefinedGap={report.minRefinedGap:.6f}, "
            f"worstQ={report.worstQ}",
            report=report,
        )
    return report
