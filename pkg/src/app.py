"""
メインアプリケーション

設定から族の構築・認証・シミュレーションを実行し、結果をファイルへ書き出す

主な機能:
- certify: 望まない臨界点でのギャップ認証（certification.txt）
- simulate: 制御則ごとのシミュレーション（CSV と summary.txt）
- sweep: δ̄ のゲイン k 掃引と ξ に対する min F の確認（CSV）
- profile: 族の断面プロファイル（CSV）
- presets: 組み込みプリセットの一覧

制限事項:
- シナリオは順に実行する
- 出力先は <out>/<設定名>/
"""

import csv
import os
from typing import Callable, Dict, List, Optional

import numpy as np
import yaml

from .config import PRESETS, RunConfig, buildFamily, buildScenarios, buildShape, dumpConfig
from .errors import CertificationError, ConfigError, FamilyError
from .robot.simulator import CONVERGENCE_DWELL, CONVERGENCE_THRESHOLD, RunSummary, runScenario, summarize
from .synergy.bounds import closedFormBound, minFCheck
from .synergy.critical import certify
from .synergy.directions import DirectionScheme, selectDirections
from .synergy.family import WarpedFamily, gainBound
from .synergy.profile import profileFamily
from .utils import get_logger

logger = get_logger("synergy_so3.app")

CLOSED_FORM_SCHEMES = (DirectionScheme.SIX_AXES, DirectionScheme.FOUR_AXES, DirectionScheme.HEXAGON)


# ============================================================
# 出力ヘルパー
# ============================================================

def outputDir(config: RunConfig, out: Optional[str] = None) -> str:
    """出力ディレクトリを作成して返す"""
    path = os.path.join(out or config.out, config.name)
    os.makedirs(path, exist_ok=True)
    return path


def _plainValue(value):
    if isinstance(value, dict):
        return {key: _plainValue(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plainValue(item) for item in value]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    return value


def _writeCsv(path: str, header: List[str], rows, comments: Optional[List[str]] = None) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fp:
        for comment in comments or []:
            fp.write(f"# {comment}\n")
        writer = csv.writer(fp)
        writer.writerow(header)
        writer.writerows(rows)


def _formatOptional(value: Optional[float], fmt: str = ".3f") -> str:
    return "-" if value is None else format(value, fmt)


def formatSummary(summaries: List[RunSummary]) -> str:
    """summary.txt の本文"""
    lines = [
        f"# convergence: first t with theta_err < {CONVERGENCE_THRESHOLD} rad sustained {CONVERGENCE_DWELL} s",
        f"{'controller':<22} {'t_conv[s]':>10} {'jumps':>6} {'jump_bound':>11} "
        f"{'evaluations':>12} {'theta_final':>12} {'theta_excess':>13}",
    ]
    for summary in summaries:
        lines.append(
            f"{summary.label:<22} {_formatOptional(summary.convergenceTime):>10} {summary.jumpCount:>6} "
            f"{_formatOptional(summary.jumpBound, '.2f'):>11} {summary.totalEvaluations:>12} "
            f"{summary.finalTheta:>12.5f} {summary.peakThetaExcess:>13.5f}"
        )
    return "\n".join(lines) + "\n"


# ============================================================
# コマンド
# ============================================================

def cmdCertify(config: RunConfig, out: Optional[str] = None) -> int:
    """
    族の認証

    Returns:
        int: 終了コード（合格で0）

    Raises:
        CertificationError: 不合格の場合（レポートは書き出し済み）
    """
    fam = buildFamily(config)
    report = certify(fam, branchGrid=config.family.branchGrid, sphereGrid=config.family.sphereGrid)
    path = os.path.join(outputDir(config, out), "certification.txt")
    with open(path, "w", encoding="utf-8") as fp:
        yaml.safe_dump(_plainValue({"name": config.name, **report.toDict()}), fp, sort_keys=False)
    logger.info(f"認証レポートを書き出しました: {path}")
    if not report.passed:
        raise CertificationError(
            f"認証に失敗しました: minRefinedGap={report.minRefinedGap:.6f}, worstQ={report.worstQ}",
            report=report,
        )
    return 0


def cmdSimulate(config: RunConfig, out: Optional[str] = None) -> int:
    """
    全制御則のシミュレーション

    Raises:
        SimulationError: 状態が有限でなくなった場合
    """
    scenarios = buildScenarios(config)
    directory = outputDir(config, out)
    summaries = []
    for scenario in scenarios:
        log = runScenario(scenario)
        label = scenario.controller.label
        log.writeCsv(os.path.join(directory, f"{label}.csv"))
        log.writeEventsCsv(os.path.join(directory, f"{label}_events.csv"))
        summaries.append(summarize(scenario, log))

    text = formatSummary(summaries)
    with open(os.path.join(directory, "summary.txt"), "w", encoding="utf-8") as fp:
        fp.write(text)
    with open(os.path.join(directory, "config.yaml"), "w", encoding="utf-8") as fp:
        fp.write(dumpConfig(config))
    print(text, end="")
    return 0


def cmdSweep(config: RunConfig, out: Optional[str] = None) -> int:
    """
    δ̄ のゲイン掃引

    sweep.csv: k, 閉形式の下界, 数値認証の最小ギャップ
    sweep_xi.csv: ξ, ゲイン上限, 格子上の min F, ξ − ¼

    Raises:
        ConfigError: k が許容範囲外、または ξ が [0.5, 1] の外の場合
    """
    shape = buildShape(config)
    dirs = selectDirections(shape, config.family.scheme)
    bound = gainBound(shape.xi)
    invalid = [k for k in config.sweep.kValues if not 0.0 < k < bound]
    if invalid:
        raise ConfigError(
            f"掃引範囲がゲインの許容範囲外です: k={invalid[0]}, bound={bound:.6f}",
            line=config.lineOf("sweep", "kValues"),
        )

    rows = []
    for k in config.sweep.kValues:
        fam = WarpedFamily(shape=shape, dirs=dirs, k=k)
        closedForm = closedFormBound(fam) if dirs.scheme in CLOSED_FORM_SCHEMES else float("nan")
        report = certify(fam, branchGrid=config.sweep.branchGrid, sphereGrid=config.family.sphereGrid)
        rows.append([k, float(closedForm), report.minRefinedGap])

    directory = outputDir(config, out)
    _writeCsv(
        os.path.join(directory, "sweep.csv"),
        ["k", "closed_form", "certified_min"],
        rows,
        comments=[f"class={shape.spectrumClass.name} scheme={dirs.scheme.value} gain_bound={bound:.6f}"],
    )

    if config.sweep.xiValues:
        xiRows = []
        for xi in config.sweep.xiValues:
            try:
                xiRows.append([xi, gainBound(xi), minFCheck(xi), xi - 0.25])
            except FamilyError as e:
                raise ConfigError(str(e), line=config.lineOf("sweep", "xiValues")) from e
        _writeCsv(os.path.join(directory, "sweep_xi.csv"), ["xi", "gain_bound", "min_F", "expected"], xiRows)
    logger.info(f"掃引結果を書き出しました: {directory}")
    return 0


def cmdProfile(config: RunConfig, out: Optional[str] = None) -> int:
    """族の断面プロファイル"""
    fam = buildFamily(config)
    profile = profileFamily(fam, samplesPerAxis=config.profile.samples)
    path = os.path.join(outputDir(config, out), "profile.csv")
    _writeCsv(
        path,
        profile.columns,
        profile.rows,
        comments=[f"referenceLevel={profile.referenceLevel:.6f} bandLower={profile.bandLower:.6f}"],
    )
    logger.info(f"プロファイルを書き出しました: {path}")
    return 0


def cmdPresets() -> int:
    """プリセットの一覧を表示"""
    for preset in PRESETS.values():
        print(f"{preset.name:<15} {preset.verb:<9} {preset.description}")
    return 0


COMMANDS: Dict[str, Callable[[RunConfig, Optional[str]], int]] = {
    "certify": cmdCertify,
    "simulate": cmdSimulate,
    "sweep": cmdSweep,
    "profile": cmdProfile,
}


def runCommand(verb: str, config: RunConfig, out: Optional[str] = None) -> int:
    """
    コマンドの実行

    Args:
        verb: certify / simulate / sweep / profile
        config: 実行設定
        out: 出力先（None なら設定の out）

    Returns:
        int: 終了コード
    """
    logger.info(f"{verb} を開始します: name={config.name}")
    exitCode = COMMANDS[verb](config, out)
    logger.info(f"{verb} が終了しました: name={config.name}, exitCode={exitCode}")
    return exitCode
