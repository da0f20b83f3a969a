# -*- coding: utf-8 -*-
"""
アプリケーション設定管理モジュール

WildAbelの基本設定を管理します。
YAML設定ファイルの読み込み、デフォルト値とのマージ、ドット記法でのアクセスを行います。
設定の読み込みでファイルを書き込むことはありません。

Author: WildAbel Development Team
Created: 2025-08-04
"""

import copy
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from src.utils.errors import InputError
from src.utils.logger import get_logger

# ロガーを取得
logger = get_logger(__name__)


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """override の値で base を再帰的に上書きした新しい辞書を返します"""
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class AppConfig:
    """
    アプリケーション設定管理クラス

    組み込みのデフォルト設定に、指定されたYAMLファイルの値を重ねて保持します。
    コマンドラインフラグは set() で最後に上書きします。

    Attributes:
        config_file (Optional[Path]): 設定ファイルパス（未指定ならNone）
        _config (Dict): 設定データ
    """

    def __init__(self, config_file: Optional[str] = None):
        """
        AppConfigを初期化します

        Args:
            config_file (str, optional): YAML設定ファイルパス
                                         Noneの場合はデフォルト設定のみを使用

        Raises:
            InputError: 設定ファイルが存在しない、またはYAMLとして不正な場合
        """
        self.config_file = Path(config_file) if config_file else None
        self._config = self.get_default_config()

        if self.config_file is not None:
            self.load_config()

        logger.debug(f"アプリケーション設定を初期化しました: {self.config_file or '(defaults)'}")

    def get_default_config(self) -> Dict[str, Any]:
        """
        デフォルト設定を返します

        Returns:
            Dict[str, Any]: デフォルト設定辞書
        """
        return {
            "app": {
                "name": "WildAbel",
                "version": "1.0.0",
            },

            # 自己検査スイート
            "selfcheck": {
                "seed": 42,
                "trials": 1000,
                "route_trials": 500,
                "conjugacy_trials": 200,
            },

            # 単冪性判定
            "unipotency": {
                "witness_bound": 0,  # 0 → 次元から 2·t_max を自動決定
                "phi_cap": 1000,
            },

            # ログ設定
            "logging": {
                "level": "WARNING",
                "file": None,
                "max_size_mb": 5,
                "backup_count": 5,
            },

            "output": {
                "indent": 2,
            },
        }

    def load_config(self):
        """
        設定ファイルから設定を読み込み、デフォルト設定にマージします

        Raises:
            InputError: ファイルが読めない、またはトップレベルがマッピングでない場合
        """
        try:
            with open(self.config_file, 'r', encoding='utf-8') as f:
                data = yaml.safe_load(f) or {}
        except FileNotFoundError:
            raise InputError(f"設定ファイルが見つかりません: {self.config_file}")
        except yaml.YAMLError as e:
            raise InputError(f"設定ファイルの形式が不正です: {e}")

        if not isinstance(data, dict):
            raise InputError("設定ファイルのトップレベルはマッピングである必要があります")

        self._config = _deep_merge(self._config, data)
        logger.debug(f"設定ファイルを読み込みました: {self.config_file}")

    def get(self, key_path: str, default=None):
        """
        ドット記法で設定値を取得します

        Args:
            key_path (str): 設定キーパス（例: "selfcheck.seed"）
            default: デフォルト値

        Returns:
            設定値またはデフォルト値

        Example:
            >>> config.get("selfcheck.seed", 0)
            42
        """
        keys = key_path.split('.')
        value = self._config

        try:
            for key in keys:
                value = value[key]
            return value
        except (KeyError, TypeError):
            logger.debug(f"設定キー '{key_path}' が見つかりません。デフォルト値を返します: {default}")
            return default

    def set(self, key_path: str, value):
        """
        ドット記法で設定値を変更します

        Args:
            key_path (str): 設定キーパス（例: "selfcheck.trials"）
            value: 設定する値
        """
        keys = key_path.split('.')
        current = self._config

        for key in keys[:-1]:
            if key not in current:
                current[key] = {}
            current = current[key]

        current[keys[-1]] = value
        logger.debug(f"設定を更新しました: {key_path} = {value}")

    def get_all(self) -> Dict[str, Any]:
        """
        全設定を取得します

        Returns:
            Dict[str, Any]: 全設定データ（コピー）
        """
        return copy.deepcopy(self._config)
