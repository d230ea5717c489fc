"""
ユーティリティモジュール

ログ出力や共通関数
"""

from .logger import setup_logger, get_logger, ROOT_LOGGER_NAME

__all__ = ["setup_logger", "get_logger", "ROOT_LOGGER_NAME"]
