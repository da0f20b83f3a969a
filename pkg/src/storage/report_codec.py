# -*- coding: utf-8 -*-
"""
レポート入出力モジュール

入力JSON文書の読み込みとスキーマ検証、ドメイン値への変換、
レポートの決定的なJSON出力と人間向けテキスト表示を担当します。

テキスト表示はJSONと同じ辞書を描画するだけで、別の計算経路は持ちません。

Author: WildAbel Development Team
Created: 2025-08-11
"""

import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional

import jsonschema

from src.utils.errors import ConsistencyError, InputError
from src.utils.logger import get_logger
from src.variety.abelian_model import Point, VarietyModel
from src.variety.wildness import Automorphism

# ロガーを取得
logger = get_logger(__name__)

SCHEMA_VERSION = "1"
SCHEMA_DIR = Path(__file__).parent.parent.parent / "schemas"

MODEL_SCHEMA = "model.schema.json"
ANALYSIS_REPORT_SCHEMA = "analysis_report.schema.json"
COMMAND_REPORT_SCHEMA = "command_report.schema.json"


@lru_cache(maxsize=None)
def load_schema(name: str) -> Dict[str, Any]:
    """
    同梱のJSONスキーマを読み込みます

    Args:
        name: スキーマファイル名（例: "model.schema.json"）
    """
    with open(SCHEMA_DIR / name, 'r', encoding='utf-8') as f:
        return json.load(f)


def schema_errors(document: Any, schema_name: str) -> List[str]:
    """
    スキーマ違反のメッセージを決定的な順序で返します

    Returns:
        List[str]: 違反メッセージ（妥当なら空）
    """
    validator = jsonschema.Draft7Validator(load_schema(schema_name))
    errors = sorted(validator.iter_errors(document), key=lambda e: [str(p) for p in e.absolute_path])
    return [
        f"{'/'.join(str(p) for p in e.absolute_path) or '(root)'}: {e.message}"
        for e in errors
    ]


def validate_input(document: Any, schema_name: str = MODEL_SCHEMA):
    """
    Raises:
        InputError: 入力文書がスキーマに違反している場合
    """
    errors = schema_errors(document, schema_name)
    if errors:
        raise InputError("入力がスキーマに適合しません: " + "; ".join(errors))


def validate_report(report: Dict[str, Any], schema_name: str):
    """
    Raises:
        ConsistencyError: 出力レポートがスキーマに違反している場合
    """
    errors = schema_errors(report, schema_name)
    if errors:
        raise ConsistencyError("出力レポートがスキーマに適合しません: " + "; ".join(errors))


def read_json(path: str) -> Any:
    """
    JSONファイルを読み込みます

    Raises:
        InputError: ファイルが存在しない、またはJSONとして不正な場合
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except FileNotFoundError:
        raise InputError(f"入力ファイルが見つかりません: {path}")
    except json.JSONDecodeError as e:
        raise InputError(f"JSONの形式が不正です: {path}: {e}")


def parse_json_text(text: str, what: str = "引数") -> Any:
    """
    Raises:
        InputError: JSONとして不正な場合
    """
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{what} のJSONが不正です: {e}")


@dataclass(frozen=True)
class ModelDocument:
    """
    入力文書をドメイン値に変換したもの

    Attributes:
        model (VarietyModel): 多様体モデル
        automorphism (Optional[Automorphism]): 自己同型（文書にあれば）
        points (List[Point]): 点の列（generates 用）
    """
    model: VarietyModel
    automorphism: Optional[Automorphism] = None
    points: List[Point] = field(default_factory=list)


def parse_model_document(document: Any) -> ModelDocument:
    """
    モデル文書を検証してドメイン値に変換します

    Raises:
        InputError: スキーマ違反・形状不一致の場合
        ModelError: モデルの検証に失敗した場合（CM因子など）
    """
    validate_input(document, MODEL_SCHEMA)
    model = VarietyModel.from_dict(document["variety"]).require_valid()

    automorphism = None
    if "automorphism" in document:
        automorphism = Automorphism.from_dict(model, document["automorphism"])

    points = [Point.from_dict(model, p) for p in document.get("points", [])]
    return ModelDocument(model, automorphism, points)


def command_report(command: str, result: Dict[str, Any]) -> Dict[str, Any]:
    """サブコマンドの結果を版付きの文書に包みます"""
    return {"schema_version": SCHEMA_VERSION, "command": command, "result": result}


def dumps(report: Dict[str, Any], indent: int = 2) -> str:
    """キーを整列した決定的なJSON文字列"""
    return json.dumps(report, sort_keys=True, indent=indent, ensure_ascii=False) + "\n"


def _is_matrix(value: Any) -> bool:
    return (isinstance(value, list) and bool(value)
            and all(isinstance(r, list) and all(isinstance(v, str) for v in r) for r in value))


def _render(value: Any, indent: int, lines: List[str]):
    pad = "  " * indent
    if isinstance(value, dict):
        for key in sorted(value):
            item = value[key]
            if isinstance(item, dict) or (isinstance(item, list) and item and not _is_matrix(item)
                                          and not all(isinstance(v, str) for v in item)):
                lines.append(f"{pad}{key}:")
                _render(item, indent + 1, lines)
            elif _is_matrix(item):
                lines.append(f"{pad}{key}:")
                width = max(len(v) for r in item for v in r)
                for r in item:
                    lines.append(f"{pad}  [ " + " ".join(v.rjust(width) for v in r) + " ]")
            else:
                lines.append(f"{pad}{key}: {_scalar(item)}")
    elif isinstance(value, list):
        for index, item in enumerate(value):
            lines.append(f"{pad}- [{index}]")
            _render(item, indent + 1, lines)
    else:
        lines.append(f"{pad}{_scalar(value)}")


def _scalar(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, list):
        return "(" + ", ".join(str(v) for v in value) + ")"
    return str(value)


def render_text(report: Dict[str, Any]) -> str:
    """
    レポート辞書を人間向けのテキストに描画します

    Args:
        report: dumps() に渡すのと同じ辞書

    Returns:
        str: 改行で終わるテキスト
    """
    lines: List[str] = []
    _render(report, 0, lines)
    return "\n".join(lines) + "\n"
