#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
WildAbel - アーベル多様体の野性自己同型判定ツール
メインエントリーポイント

使い方:
    python src/main.py analyze --input model.json
    python src/main.py num-action --matrix '[["1","1"],["0","1"]]'
    python src/main.py selfcheck --seed 42 --trials 1000

Author: WildAbel Development Team
Created: 2025-08-13
"""

import sys
from pathlib import Path

# プロジェクトルートをPythonパスに追加
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.cli.runner import run


def main():
    """
    メインエントリーポイント

    コマンドラインを実行し、終了コードでプロセスを終了します。
    """
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
