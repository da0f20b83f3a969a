# -*- coding: utf-8 -*-
"""
ログ設定のテストモジュール

ロガー名の付け替え、カラー出力の切り替え、ファイル出力の動作確認テストを提供します。

Author: WildAbel Development Team
Created: 2025-08-04
"""

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path

# テスト用にプロジェクトルートをパスに追加
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.utils.logger import ROOT_LOGGER_NAME, ColoredFormatter, get_logger, setup_logger


def make_record(level=logging.WARNING, message="テスト"):
    return logging.LogRecord("WildAbel.test", level, __file__, 1, message, None, None)


class TestGetLogger:
    """
    ロガー名の付け替えのテストケース
    """

    def test_モジュール名は付け替え(self):
        assert get_logger("src.variety.wildness").name == "WildAbel.variety.wildness"

    def test_名前なしはルート(self):
        assert get_logger().name == ROOT_LOGGER_NAME

    def test_その他の名前は配下へ(self):
        assert get_logger("tools").name == "WildAbel.tools"
        assert get_logger("WildAbel.cli").name == "WildAbel.cli"


class TestColoredFormatter:
    """
    カラーフォーマッターのテストケース
    """

    def test_NO_COLORでは色なし(self, monkeypatch):
        monkeypatch.setenv("NO_COLOR", "1")
        formatter = ColoredFormatter("%(levelname)s %(message)s")
        assert formatter.format(make_record()) == "WARNING テスト"

    def test_色付き(self, monkeypatch):
        monkeypatch.delenv("NO_COLOR", raising=False)
        formatter = ColoredFormatter("%(message)s")
        text = formatter.format(make_record(logging.ERROR))
        assert text != "テスト"
        assert "テスト" in text

    def test_明示指定が優先(self, monkeypatch):
        monkeypatch.delenv("NO_COLOR", raising=False)
        formatter = ColoredFormatter("%(message)s", use_color=False)
        assert formatter.format(make_record()) == "テスト"


class TestSetupLogger:
    """
    setup_logger のテストケース
    """

    def setup_method(self):
        self.names = []

    def teardown_method(self):
        for name in self.names:
            logger = logging.getLogger(name)
            for handler in list(logger.handlers):
                handler.close()
                logger.removeHandler(handler)

    def make(self, suffix, **kwargs):
        name = f"WildAbelTest.{suffix}"
        self.names.append(name)
        return setup_logger(name, **kwargs)

    def test_ファイル出力(self, tmp_path):
        log_file = tmp_path / "logs" / "wildabel.log"
        logger = self.make("file", level="INFO", log_file=str(log_file))
        logger.info("ファイルに記録")
        for handler in logger.handlers:
            handler.flush()

        assert any(isinstance(h, RotatingFileHandler) for h in logger.handlers)
        assert "ファイルに記録" in log_file.read_text(encoding='utf-8')

    def test_2回目はレベルのみ更新(self):
        logger = self.make("twice", level=logging.WARNING)
        handlers = list(logger.handlers)
        again = self.make("twice", level="DEBUG")
        assert again is logger
        assert logger.handlers == handlers
        assert logger.level == logging.DEBUG

    def test_不正なレベル名(self):
        logger = self.make("bad-level", level="LOUD")
        assert logger.level == logging.WARNING

    def test_標準エラーに出力(self, capsys):
        logger = self.make("stderr", level="ERROR")
        logger.error("エラーです")
        captured = capsys.readouterr()
        assert "エラーです" in captured.err
        assert captured.out == ""
