# -*- coding: utf-8 -*-
"""
ログ設定モジュール

WildAbel全体で使用するログ設定を管理します。
コンソールには標準エラー出力へカラー付きで出力し、標準出力はレポート専用とします。

Author: WildAbel Development Team
Created: 2025-08-04
"""

import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

import colorama
from colorama import Fore, Style

# Coloramaを初期化（Windows対応）
colorama.init()

ROOT_LOGGER_NAME = "WildAbel"


def color_enabled() -> bool:
    """
    カラー出力が有効かどうかを返します

    Returns:
        bool: NO_COLOR が設定されていなければTrue
    """
    return "NO_COLOR" not in os.environ


class ColoredFormatter(logging.Formatter):
    """
    カラー付きログフォーマッター

    ログレベルに応じて色付きでログを出力します。
    NO_COLOR 環境変数が設定されている場合は色を付けません。
    """

    # ログレベル別の色設定
    COLORS = {
        'DEBUG': Fore.CYAN,
        'INFO': Fore.GREEN,
        'WARNING': Fore.YELLOW,
        'ERROR': Fore.RED,
        'CRITICAL': Fore.MAGENTA + Style.BRIGHT
    }

    def __init__(self, fmt=None, datefmt=None, use_color: Optional[bool] = None):
        super().__init__(fmt, datefmt)
        self.use_color = color_enabled() if use_color is None else use_color

    def format(self, record):
        """
        ログレコードをカラー付きでフォーマットします

        Args:
            record: ログレコード

        Returns:
            str: フォーマット済みログメッセージ
        """
        log_message = super().format(record)

        if not self.use_color:
            return log_message

        color = self.COLORS.get(record.levelname, '')
        if color:
            log_message = f"{color}{log_message}{Style.RESET_ALL}"

        return log_message


def setup_logger(name: str = ROOT_LOGGER_NAME, level=logging.WARNING,
                 log_file: Optional[str] = None, max_size_mb: int = 5,
                 backup_count: int = 5):
    """
    WildAbel用のログ設定を行います

    Args:
        name (str): ロガー名（デフォルト: "WildAbel"）
        level: ログレベル（デフォルト: WARNING）
        log_file (str, optional): ログファイルパス。Noneの場合はファイル出力なし
        max_size_mb (int): ローテーションするファイルサイズ（MB）
        backup_count (int): 保持するバックアップ数

    Returns:
        logging.Logger: 設定済みロガーインスタンス

    Note:
        - コンソール出力: 標準エラー出力、カラー付きフォーマット
        - ファイル出力: 設定でファイルが指定された場合のみ、ローテーション付き
        - 2回目以降の呼び出しではレベルのみ更新します
    """
    logger = logging.getLogger(name)

    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.WARNING

    logger.setLevel(level)

    # 既に設定済みの場合はレベルだけ合わせる
    if logger.handlers:
        for handler in logger.handlers:
            if not isinstance(handler, RotatingFileHandler):
                handler.setLevel(level)
        return logger

    console_format = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"
    file_format = "%(asctime)s | %(levelname)-8s | %(name)s | %(funcName)s:%(lineno)d | %(message)s"

    # コンソールハンドラー（標準エラー出力）
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(ColoredFormatter(console_format, datefmt="%H:%M:%S"))
    logger.addHandler(console_handler)

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)

        file_handler = RotatingFileHandler(
            log_path,
            maxBytes=max_size_mb * 1024 * 1024,
            backupCount=backup_count,
            encoding='utf-8'
        )
        file_handler.setLevel(logging.DEBUG)  # ファイルには詳細ログを記録
        file_handler.setFormatter(logging.Formatter(file_format, datefmt="%Y-%m-%d %H:%M:%S"))
        logger.addHandler(file_handler)
        logger.debug(f"ログファイル: {log_path}")

    logger.debug(f"ログシステムを初期化しました (レベル: {logging.getLevelName(level)})")

    return logger


def get_logger(name=None):
    """
    既存のロガーを取得します

    Args:
        name (str): ロガー名（None の場合は "WildAbel"）

    Returns:
        logging.Logger: ロガーインスタンス

    Note:
        モジュール名（src.xxx）は "WildAbel.xxx" 配下に付け替えるため、
        setup_logger() の設定がすべてのモジュールに伝播します。
    """
    if name is None:
        return logging.getLogger(ROOT_LOGGER_NAME)
    if name.startswith("src."):
        name = f"{ROOT_LOGGER_NAME}.{name[len('src.'):]}"
    elif name != ROOT_LOGGER_NAME and not name.startswith(ROOT_LOGGER_NAME + "."):
        name = f"{ROOT_LOGGER_NAME}.{name}"
    return logging.getLogger(name)
