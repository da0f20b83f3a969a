# -*- coding: utf-8 -*-
"""
テストモジュール

WildAbelの各機能に対するテストコードを含みます。
pytestを使用した単体テストと、CLIを通した結合テストを提供します。

Author: WildAbel Development Team
Created: 2025-08-04
"""
