#!/usr/bin/env python3
"""
SO(3) シナジーポテンシャル族と姿勢追従ハイブリッド制御

剛体の姿勢追従に用いるシナジーポテンシャル族の構築・認証と閉ループシミュレーション

主な機能:
- 修正トレース関数の分類と角度ワーピングによる族の構築
- 望まない臨界点でのギャップ認証
- π_V / μ_V 切替、切替なし、非中心的族の4種の制御則の比較

使用方法:
    python main.py presets
    python main.py certify --preset certify-item2
    python main.py simulate --preset fig5 --out out --seed 1
    python main.py simulate --config run.yaml

終了コード:
- 0: 正常終了
- 1: 設定・構築エラー
- 2: 認証失敗
- 3: 状態が有限でない、または参照軌道の上界違反

依存パッケージ:
- numpy
- scipy
- PyYAML
- colorlog
"""

import argparse
import logging
import os
import sys

# パスの追加（srcモジュールをインポート可能にする）
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

VERBS = ("certify", "simulate", "sweep", "profile", "presets")


def buildParser() -> argparse.ArgumentParser:
    """コマンドライン引数の定義"""
    parser = argparse.ArgumentParser(description="SO(3) シナジーポテンシャル族と姿勢追従ハイブリッド制御")
    parser.add_argument("verb", choices=VERBS, help="実行するコマンド")
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--config", help="YAML 設定ファイル")
    source.add_argument("--preset", help="組み込みプリセット名")
    parser.add_argument("--out", help="出力ディレクトリ（既定は設定の out）")
    parser.add_argument("--seed", type=int, help="乱数シードの上書き")
    parser.add_argument("--verbose", action="store_true", help="DEBUG ログを出力")
    parser.add_argument("--log-file", dest="logFile", help="ログファイル")
    return parser


def main(argv=None) -> int:
    """
    メインエントリーポイント

    Returns:
        int: 終了コード
    """
    args = buildParser().parse_args(argv)

    try:
        from src.app import cmdPresets, runCommand
        from src.config import RunConfig, getPreset, loadConfig
        from src.errors import SynergyError
        from src.utils import ROOT_LOGGER_NAME, setup_logger
    except ImportError as e:
        print(f"[Error] 必要なモジュールがインストールされていません: {e}")
        print("\n以下のコマンドで依存パッケージをインストールしてください:")
        print("  pip install -r requirements.txt")
        return 1

    logger = setup_logger(ROOT_LOGGER_NAME, logging.DEBUG if args.verbose else logging.INFO, args.logFile)

    try:
        if args.verb == "presets":
            return cmdPresets()

        if args.config:
            config = loadConfig(args.config)
        elif args.preset:
            preset = getPreset(args.preset)
            if preset.verb != args.verb:
                logger.warning(f"プリセット {preset.name} は {preset.verb} 用です（指定: {args.verb}）")
            config = preset.toConfig()
        else:
            config = RunConfig()
        if args.seed is not None:
            config.seed = args.seed

        return runCommand(args.verb, config, args.out)

    except SynergyError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exitCode

    except Exception as e:
        logger.error(f"予期しないエラーが発生しました: {e}")
        import traceback
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
