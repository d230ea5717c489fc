"""
実行設定の読み込み

YAML の実行設定を RunConfig（dataclass の木）へ変換する

主な機能:
- yaml.compose によるノード単位の行番号の保持
- 型・未知キーの検査（誤りは "line N: ..." 付きの ConfigError）
- toDict / dumpConfig による書き出し（parse(dump(parse(text))) == parse(text)）

制限事項:
- 角度はラジアン、その他の数値は SI 単位
"""

import typing
from dataclasses import dataclass, field, fields
from typing import Any, Dict, List, Optional, Tuple

import yaml

from ..errors import ConfigError
from ..robot.noise import DEFAULT_ALPHA_MAX, DEFAULT_SIGMA_OMEGA

LinePath = Tuple[Any, ...]


# ============================================================
# セクション
# ============================================================

@dataclass
class ShapeSection:
    """修正トレース関数の形状（matrix か vectors のどちらか）"""
    matrix: Optional[List[List[float]]] = None
    vectors: Optional[List[List[float]]] = None
    weights: Optional[List[float]] = None
    multTol: float = 1e-9


@dataclass
class FamilySection:
    """ポテンシャル族"""
    k: float = 0.465
    scheme: Optional[int] = None     # 方向集合の方式の上書き（1〜5）
    deltaFraction: float = 0.8
    deltaHyst: Optional[List[float]] = None
    branchGrid: int = 720
    sphereGrid: int = 10000


@dataclass
class ControllerSection:
    """制御則（kind: solo / pics / mucs / noncs）"""
    kind: str = "pics"
    q0: int = 0
    switching: bool = True
    k1: float = 60.0
    k2: float = 6.0
    alpha: float = 1.5
    beta: float = 0.4
    delta: float = 0.025
    b1: List[float] = field(default_factory=lambda: [1.0, 0.0, 0.0])
    b2: List[float] = field(default_factory=lambda: [0.0, 1.0, 0.0])
    label: str = ""


@dataclass
class PlantSection:
    inertia: List[float] = field(default_factory=lambda: [0.5, 0.7, 0.3])


@dataclass
class ReferenceSection:
    kind: str = "tracking"
    cOmega: float = 1.2
    cA: float = 1.2


@dataclass
class NoiseSection:
    alphaMax: float = float(DEFAULT_ALPHA_MAX)
    sigmaOmega: float = DEFAULT_SIGMA_OMEGA


@dataclass
class CriticalPointSection:
    """初期姿勢を V(·,q) の臨界点（枝ベクトル v）に合わせる"""
    q: int = 0
    v: List[float] = field(default_factory=lambda: [0.0, 0.0, 1.0])


@dataclass
class InitialSection:
    """初期条件（axis は正規化して使用）"""
    axis: List[float] = field(default_factory=lambda: [0.0, 0.0, 1.0])
    angle: float = 0.0
    omega: List[float] = field(default_factory=lambda: [0.0, 0.0, 0.0])
    criticalPoint: Optional[CriticalPointSection] = None


@dataclass
class SimulationSection:
    horizon: float = 20.0
    step: float = 0.001
    logEvery: int = 1


@dataclass
class SweepSection:
    kValues: List[float] = field(default_factory=lambda: [0.1, 0.2, 0.3, 0.4, 0.465, 0.5])
    xiValues: List[float] = field(default_factory=list)
    branchGrid: int = 180


@dataclass
class ProfileSection:
    samples: int = 360


@dataclass
class RunConfig:
    """
    実行設定

    Attributes:
        name: 設定名
        shape: 形状
        family: ポテンシャル族
        controllers: 制御則の一覧
        plant: 剛体
        reference: 参照軌道
        noise: 計測ノイズ
        initial: 初期条件
        simulation: 積分設定
        sweep: δ̄ の掃引範囲
        profile: 族のプロファイル
        seed: 乱数シード
        out: 出力ディレクトリ
        lines: キーの経路 → 行番号（比較・書き出し対象外）
    """
    name: str = "run"
    shape: ShapeSection = field(default_factory=ShapeSection)
    family: FamilySection = field(default_factory=FamilySection)
    controllers: List[ControllerSection] = field(default_factory=list)
    plant: PlantSection = field(default_factory=PlantSection)
    reference: ReferenceSection = field(default_factory=ReferenceSection)
    noise: NoiseSection = field(default_factory=NoiseSection)
    initial: InitialSection = field(default_factory=InitialSection)
    simulation: SimulationSection = field(default_factory=SimulationSection)
    sweep: SweepSection = field(default_factory=SweepSection)
    profile: ProfileSection = field(default_factory=ProfileSection)
    seed: int = 0
    out: str = "out"
    lines: Dict[LinePath, int] = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def fromDict(cls, data: Optional[dict], lines: Optional[Dict[LinePath, int]] = None) -> "RunConfig":
        """
        辞書から設定を構築

        Args:
            data: 設定辞書（None は既定値）
            lines: キーの経路 → 行番号

        Returns:
            RunConfig: 設定

        Raises:
            ConfigError: 型や未知キーの誤り
        """
        lines = lines or {}
        config = _build(cls, data or {}, (), lines)
        config.lines = dict(lines)
        return config

    def toDict(self) -> dict:
        """書き出し用の辞書（lines は含まない）"""
        return _plain(self)

    def lineOf(self, *path) -> Optional[int]:
        """経路に対応する行番号（最も近い親まで遡る）"""
        path = tuple(path)
        while path:
            if path in self.lines:
                return self.lines[path]
            path = path[:-1]
        return None


# ============================================================
# 変換
# ============================================================

def _fail(message: str, path: LinePath, lines: Dict[LinePath, int]) -> ConfigError:
    prefix = tuple(path)
    while prefix and prefix not in lines:
        prefix = prefix[:-1]
    return ConfigError(f"{message}: key={'.'.join(str(p) for p in path) or '<root>'}", line=lines.get(prefix))


def _coerce(hint, value, path: LinePath, lines: Dict[LinePath, int]):
    origin = typing.get_origin(hint)
    args = typing.get_args(hint)
    if origin is typing.Union:
        if value is None:
            return None
        inner = [a for a in args if a is not type(None)][0]
        return _coerce(inner, value, path, lines)
    if origin in (list, List):
        if not isinstance(value, list):
            raise _fail(f"リストが必要です（値: {value!r}）", path, lines)
        return [_coerce(args[0], item, path + (i,), lines) for i, item in enumerate(value)]
    if hint is bool:
        if not isinstance(value, bool):
            raise _fail(f"真偽値が必要です（値: {value!r}）", path, lines)
        return value
    if hint is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise _fail(f"整数が必要です（値: {value!r}）", path, lines)
        return value
    if hint is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise _fail(f"数値が必要です（値: {value!r}）", path, lines)
        return float(value)
    if hint is str:
        if not isinstance(value, str):
            raise _fail(f"文字列が必要です（値: {value!r}）", path, lines)
        return value
    if isinstance(hint, type) and hasattr(hint, "__dataclass_fields__"):
        return _build(hint, value, path, lines)
    return value


def _build(cls, data, path: LinePath, lines: Dict[LinePath, int]):
    if not isinstance(data, dict):
        raise _fail(f"マッピングが必要です（値: {data!r}）", path, lines)
    hints = typing.get_type_hints(cls)
    known = {f.name for f in fields(cls) if f.name != "lines"}
    unknown = [key for key in data if key not in known]
    if unknown:
        raise _fail(f"未知のキーです: {unknown[0]}", path + (unknown[0],), lines)
    kwargs = {name: _coerce(hints[name], value, path + (name,), lines) for name, value in data.items()}
    return cls(**kwargs)


def _plain(obj):
    if hasattr(obj, "__dataclass_fields__"):
        return {f.name: _plain(getattr(obj, f.name)) for f in fields(obj) if f.name != "lines"}
    if isinstance(obj, list):
        return [_plain(item) for item in obj]
    return obj


def _nodeLines(node: yaml.Node, path: LinePath, lines: Dict[LinePath, int]) -> None:
    lines[path] = node.start_mark.line + 1
    if isinstance(node, yaml.MappingNode):
        for keyNode, valueNode in node.value:
            childPath = path + (keyNode.value,)
            _nodeLines(valueNode, childPath, lines)
            lines[childPath] = keyNode.start_mark.line + 1
    elif isinstance(node, yaml.SequenceNode):
        for index, item in enumerate(node.value):
            _nodeLines(item, path + (index,), lines)


# ============================================================
# 公開 API
# ============================================================

def parseConfig(text: str) -> RunConfig:
    """
    YAML テキストから設定を構築

    Args:
        text: YAML テキスト

    Returns:
        RunConfig: 設定

    Raises:
        ConfigError: 構文または意味の誤り（行番号付き）
    """
    loader = yaml.SafeLoader(text)
    try:
        node = loader.get_single_node()
        if node is None:
            return RunConfig.fromDict({})
        data = loader.construct_document(node)
    except yaml.MarkedYAMLError as e:
        mark = e.problem_mark or e.context_mark
        raise ConfigError(f"YAML の構文エラー: {e.problem}", line=mark.line + 1 if mark else None) from e
    except yaml.YAMLError as e:
        raise ConfigError(f"YAML の読み込みに失敗しました: {e}") from e
    finally:
        loader.dispose()

    lines: Dict[LinePath, int] = {}
    _nodeLines(node, (), lines)
    return RunConfig.fromDict(data, lines)


def loadConfig(path: str) -> RunConfig:
    """ファイルから設定を読み込む"""
    try:
        with open(path, "r", encoding="utf-8") as fp:
            text = fp.read()
    except OSError as e:
        raise ConfigError(f"設定ファイルを開けません: path={path}, {e}") from e
    return parseConfig(text)


def dumpConfig(config: RunConfig) -> str:
    """設定を YAML テキストに書き出す"""
    return yaml.safe_dump(config.toDict(), sort_keys=False, allow_unicode=True)
