# -*- coding: utf-8 -*-
"""
入出力モジュール

WildAbelの入力文書の検証・変換と、レポートの決定的な出力を提供します。

Author: WildAbel Development Team
Created: 2025-08-11
"""

from .report_codec import ModelDocument, dumps, parse_model_document, render_text

__all__ = [
    'ModelDocument',
    'dumps',
    'parse_model_document',
    'render_text'
]
