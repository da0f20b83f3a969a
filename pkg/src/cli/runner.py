# -*- coding: utf-8 -*-
"""
コマンドライン実行モジュール

引数を解析してサブコマンドを実行し、レポートを標準出力（または --output）に書き出します。

終了コード:
    0: 成功
    1: 数学的な前提条件違反・内部整合性エラー・自己検査の失敗
    2: 入力形式エラー・不明なサブコマンド

Author: WildAbel Development Team
Created: 2025-08-13
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, NamedTuple, Optional

from src.algebra.exact_linalg import IntMatrix, charpoly, factor_irreducible, snf
from src.algebra.unipotency import default_witness_bound, power_conjugacy_witness, quasi_unipotency
from src.cli.selfcheck import SelfCheckSettings, format_table, run_selfcheck
from src.config.app_config import AppConfig
from src.storage.report_codec import (
    ANALYSIS_REPORT_SCHEMA, COMMAND_REPORT_SCHEMA, command_report, dumps,
    parse_json_text, parse_model_document, read_json, render_text, validate_report,
)
from src.utils.errors import ConsistencyError, DomainError, InputError, NoSigmaAmpleSheafError, SingularMatrixError
from src.utils.logger import ROOT_LOGGER_NAME, get_logger, setup_logger
from src.variety.abelian_model import generates_set, verify_relation
from src.variety.classify import analyze
from src.variety.num_action import (
    GkResult, NumAction, ampleness_verdict, gk_bounds, gk_dimension, j_invariant, p_matrix, p_sigma,
)

# ロガーを取得
logger = get_logger(__name__)

SEED_LIMIT = 2 ** 64


class CommandOutput(NamedTuple):
    """
    サブコマンドの出力

    Attributes:
        report: JSONレポート
        schema: 検証に使うスキーマ名
        exit_code: 終了コード
        text: 人間向け表示（None なら render_text で描画）
    """
    report: Dict
    schema: str
    exit_code: int = 0
    text: Optional[str] = None


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML設定ファイル")
    common.add_argument("--output", help="出力ファイル（省略時は標準出力）")
    common.add_argument("--text", action="store_true", help="人間向けのテキストで出力")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="DEBUGログを表示")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="ERROR以上のみ表示")
    return common


def build_parser() -> argparse.ArgumentParser:
    """
    引数パーサーを構築します

    Returns:
        argparse.ArgumentParser: サブコマンドつきのパーサー
    """
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="wildabel",
        description="アーベル多様体の自己同型の野性・射影的単純性・GK次元を厳密に判定します",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    for name, help_text in (("analyze", "モデル文書を解析してレポートを出力"),
                            ("gk", "GK次元を計算"),
                            ("generates", "点の集合が X を生成するか判定")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--input", required=True, help="モデル文書（JSON）")

    for name, help_text in (("snf", "Smith標準形"),
                            ("charpoly", "特性多項式と既約分解"),
                            ("quasiunipotent", "準単冪性の判定"),
                            ("num-action", "E×E 上の Num への作用 P")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--matrix", required=True, help='行列（例: \'[["1","1"],["0","1"]]\'）')
        if name == "quasiunipotent":
            p.add_argument("--bound", type=int, help="冪共役の総当たり上限")
        if name == "num-action":
            p.add_argument("--allow-isogeny", action="store_true", help="|det| ≠ 1 も許す")

    p = sub.add_parser("selfcheck", parents=[common], help="自己検査スイートを実行")
    p.add_argument("--seed", type=int, help="乱数シード（既定 42）")
    p.add_argument("--trials", type=int, help="標準の試行回数")
    p.add_argument("--route-trials", type=int, help="経路一致などの試行回数")
    p.add_argument("--conjugacy-trials", type=int, help="共役・有限位数の試行回数")
    p.add_argument("--json", action="store_true", help="合否表の代わりにJSONで出力")

    return parser


# ----------------------------------------------------------------------
# サブコマンド
# ----------------------------------------------------------------------

def _matrix_arg(args) -> IntMatrix:
    return IntMatrix.from_json(parse_json_text(args.matrix, "--matrix"))


def cmd_analyze(args, config: AppConfig) -> CommandOutput:
    document = parse_model_document(read_json(args.input))
    if document.automorphism is None:
        raise InputError("analyze には automorphism が必要です")
    report = analyze(document.model, document.automorphism)
    return CommandOutput(report.to_dict(), ANALYSIS_REPORT_SCHEMA)


def cmd_gk(args, config: AppConfig) -> CommandOutput:
    document = parse_model_document(read_json(args.input))
    if document.automorphism is None:
        raise InputError("gk には automorphism が必要です")
    document.automorphism.require_invertible()
    action = p_sigma(document.model, document.automorphism)
    result = {
        "num_action": action.to_dict(),
        "sigma_ample_verdict": ampleness_verdict(action, document.automorphism.alpha).value,
        "gk": gk_dimension(document.model, document.automorphism, action).to_dict(),
    }
    return CommandOutput(command_report("gk", result), COMMAND_REPORT_SCHEMA)


def cmd_generates(args, config: AppConfig) -> CommandOutput:
    document = parse_model_document(read_json(args.input))
    result = generates_set(document.model, document.points)
    body = result.to_dict()
    body["points"] = str(len(document.points))
    if not result.generates and result.relation is not None:
        body["verified"] = verify_relation(document.model, document.points, result.block_index, result.relation)
    return CommandOutput(command_report("generates", body), COMMAND_REPORT_SCHEMA)


def cmd_snf(args, config: AppConfig) -> CommandOutput:
    decomposition = snf(_matrix_arg(args))
    body = {
        "U": decomposition.U.to_json(),
        "D": decomposition.D.to_json(),
        "V": decomposition.V.to_json(),
        "diagonal": [str(v) for v in decomposition.diagonal],
        "rank": str(decomposition.rank),
    }
    return CommandOutput(command_report("snf", body), COMMAND_REPORT_SCHEMA)


def cmd_charpoly(args, config: AppConfig) -> CommandOutput:
    m = _matrix_arg(args)
    p = charpoly(m)
    body = {
        "coefficients": p.to_json(),
        "polynomial": str(p),
        "factors": [
            {"factor": f.to_json(), "polynomial": str(f), "multiplicity": str(e)}
            for f, e in factor_irreducible(p)
        ],
    }
    return CommandOutput(command_report("charpoly", body), COMMAND_REPORT_SCHEMA)


def cmd_quasiunipotent(args, config: AppConfig) -> CommandOutput:
    m = _matrix_arg(args)
    if args.bound is not None:
        config.set("unipotency.witness_bound", _positive(args.bound, "--bound"))
    verdict = quasi_unipotency(m, config.get("unipotency.phi_cap", 1000))
    bound = config.get("unipotency.witness_bound", 0) or default_witness_bound(m.rows)
    body = verdict.to_dict()
    try:
        witness = power_conjugacy_witness(m, bound)
    except SingularMatrixError as e:
        # 総当たりは可逆行列のみ。主判定の結果はそのまま出力する
        logger.info(f"冪共役の総当たりを省略しました: {e}")
        body["witness_search"] = {"bound": str(bound), "pair": None, "skipped": "singular"}
    else:
        body["witness_search"] = {
            "bound": str(bound),
            "pair": None if witness is None else [str(v) for v in witness],
            "agrees": verdict.is_quasi_unipotent == (witness is not None),
        }
    return CommandOutput(command_report("quasiunipotent", body), COMMAND_REPORT_SCHEMA)


def cmd_num_action(args, config: AppConfig) -> CommandOutput:
    p = p_matrix(_matrix_arg(args), allow_isogeny=args.allow_isogeny)
    action = NumAction.explicit(p)
    try:
        gk = gk_bounds(j_invariant(p), 2)
    except NoSigmaAmpleSheafError as e:
        logger.warning(str(e))
        gk = GkResult(None, None, None, None, "no sigma-ample invertible sheaf")
    body = {
        "P": p.to_json(),
        "j": None if gk.j is None else str(gk.j),
        "gk": gk.to_dict(),
        "sigma_ample_verdict": ampleness_verdict(action).value,
    }
    return CommandOutput(command_report("num-action", body), COMMAND_REPORT_SCHEMA)


def _positive(value: Optional[int], name: str) -> Optional[int]:
    if value is not None and value < 1:
        raise InputError(f"{name} は1以上である必要があります: {value}")
    return value


def cmd_selfcheck(args, config: AppConfig) -> CommandOutput:
    # フラグは設定値を上書きする
    for key, value in (("seed", args.seed), ("trials", _positive(args.trials, "--trials")),
                       ("route_trials", _positive(args.route_trials, "--route-trials")),
                       ("conjugacy_trials", _positive(args.conjugacy_trials, "--conjugacy-trials"))):
        if value is not None:
            config.set(f"selfcheck.{key}", value)

    seed = config.get("selfcheck.seed", 42)
    if not isinstance(seed, int) or not 0 <= seed < SEED_LIMIT:
        raise InputError(f"シードは64ビット符号なし整数である必要があります: {seed}")
    settings = SelfCheckSettings(
        seed=seed,
        trials=config.get("selfcheck.trials", 1000),
        route_trials=config.get("selfcheck.route_trials", 500),
        conjugacy_trials=config.get("selfcheck.conjugacy_trials", 200),
    )
    for name in ("trials", "route_trials", "conjugacy_trials"):
        value = getattr(settings, name)
        if not isinstance(value, int) or value < 1:
            raise InputError(f"selfcheck.{name} は1以上の整数である必要があります: {value}")
    results = run_selfcheck(settings)
    passed = all(r.passed for r in results)
    body = {
        "seed": str(settings.seed),
        "passed": passed,
        "suites": [r.to_dict() for r in results],
    }
    text = None if args.json else format_table(results)
    return CommandOutput(command_report("selfcheck", body), COMMAND_REPORT_SCHEMA, 0 if passed else 1, text)


COMMANDS: Dict[str, Callable[..., CommandOutput]] = {
    "analyze": cmd_analyze,
    "gk": cmd_gk,
    "generates": cmd_generates,
    "snf": cmd_snf,
    "charpoly": cmd_charpoly,
    "quasiunipotent": cmd_quasiunipotent,
    "num-action": cmd_num_action,
    "selfcheck": cmd_selfcheck,
}


# ----------------------------------------------------------------------
# 実行
# ----------------------------------------------------------------------

def _configure_logging(args, config: AppConfig):
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.ERROR
    else:
        level = config.get("logging.level", "WARNING")
    setup_logger(
        ROOT_LOGGER_NAME,
        level,
        log_file=config.get("logging.file"),
        max_size_mb=config.get("logging.max_size_mb", 5),
        backup_count=config.get("logging.backup_count", 5),
    )


def _write(text: str, output: Optional[str]):
    if output:
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding='utf-8')
        logger.info(f"レポートを書き出しました: {path}")
    else:
        sys.stdout.write(text)


def run(argv: Optional[List[str]] = None) -> int:
    """
    コマンドラインを実行します

    Args:
        argv: 引数（None なら sys.argv[1:]）

    Returns:
        int: 終了コード
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse は不明なサブコマンドで使い方を表示して 2 で終了する
        return e.code if isinstance(e.code, int) else 2

    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2

    try:
        config = AppConfig(args.config)
        _configure_logging(args, config)
        logger.info(f"{args.command} を開始します")

        output = COMMANDS[args.command](args, config)
        validate_report(output.report, output.schema)

        if output.text is not None:
            text = output.text
        elif args.text:
            text = render_text(output.report)
        else:
            text = dumps(output.report, config.get("output.indent", 2))
        _write(text, args.output)

        logger.info(f"{args.command} が完了しました")
        return output.exit_code

    except InputError as e:
        logger.error(f"入力エラー: {e}")
        return 2
    except (DomainError, ConsistencyError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return 1
