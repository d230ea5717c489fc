"""
ロギングユーティリティ

colorlog によるカラー付きコンソール出力を提供するロガー設定

主な機能:
- レベル別カラー付きコンソール出力
- ファイル出力（任意）
- ログレベル管理

制限事項:
- ハンドラはロガー名単位で再設定される（setup_logger を再度呼ぶと既存ハンドラは破棄）
"""

import logging
import sys
from typing import Optional

import colorlog

ROOT_LOGGER_NAME = "synergy_so3"

LOG_COLORS = {
    "DEBUG": "cyan",
    "INFO": "green",
    "WARNING": "yellow",
    "ERROR": "red",
    "CRITICAL": "purple",
}


def setup_logger(
    name: str = ROOT_LOGGER_NAME,
    level: int = logging.INFO,
    logFile: Optional[str] = None
) -> logging.Logger:
    """
    ロガーのセットアップ

    Args:
        name: ロガー名
        level: ログレベル
        logFile: ログファイルパス（Noneの場合はファイル出力なし）

    Returns:
        logging.Logger: 設定済みロガー
    """
    logger = logging.getLogger(name)
    logger.setLevel(level)

    # 既存のハンドラをクリア
    logger.handlers.clear()
    logger.propagate = False

    # コンソールハンドラ（数値出力と混ざらないよう stderr へ）
    consoleHandler = logging.StreamHandler(sys.stderr)
    consoleHandler.setLevel(level)
    consoleHandler.setFormatter(colorlog.ColoredFormatter(
        "%(asctime)s │ %(log_color)s%(levelname)-8s%(reset)s │ %(name)s │ %(log_color)s%(message)s",
        datefmt="%H:%M:%S",
        log_colors=LOG_COLORS,
    ))
    logger.addHandler(consoleHandler)

    # ファイルハンドラ（オプション）
    if logFile:
        fileHandler = logging.FileHandler(logFile, encoding="utf-8")
        fileHandler.setLevel(level)
        fileFormat = "%(asctime)s │ %(levelname)-8s │ %(name)s │ %(funcName)s:%(lineno)d │ %(message)s"
        fileHandler.setFormatter(logging.Formatter(fileFormat))
        logger.addHandler(fileHandler)

    return logger


def get_logger(name: str = ROOT_LOGGER_NAME) -> logging.Logger:
    """
    既存のロガーを取得

    Args:
        name: ロガー名（"synergy_so3.sim" のような子ロガー名も可）

    Returns:
        logging.Logger: ロガー
    """
    return logging.getLogger(name)
