# -*- coding: utf-8 -*-
"""
自己検査スイート

代数的な恒等式と判定手続きの同値性を、再現可能な乱数インスタンスで検査します。
CIと利用者が同じ検査を実行できるよう、テストからも直接呼び出されます。

Author: WildAbel Development Team
Created: 2025-08-12
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from src.algebra.exact_linalg import (
    IntMatrix, IntPoly, charpoly, det, frobenius_invariants, matrix_power,
    unipotent_jordan_profile,
)
from src.algebra.unipotency import (
    QuasiUnipotencyStatus, default_witness_bound, is_quasi_unipotent, is_unipotent,
    power_conjugacy_witness, quasi_unipotency,
)
from src.selfcheck import generators
from src.utils.logger import get_logger
from src.variety.abelian_model import BlockEndomorphism, image_quotient
from src.variety.classify import analyze
from src.variety.num_action import j_invariant, p_matrix
from src.variety.wildness import (
    Automorphism, NonUnipotentFactor, RelationVector, Route, beta_of, is_wild,
    quotient_image_of_power, sigma_power, verify_certificate,
)

# ロガーを取得
logger = get_logger(__name__)

GK5_P = IntMatrix.from_rows([[0, 0, -1], [0, 1, 2], [1, 0, 2]])
PINNED_M = IntMatrix.from_rows([[1, 1], [0, 1]])
PINNED_N = IntMatrix.from_rows([[1, 0], [1, 1]])
PINNED_MN = IntMatrix.from_rows([[2, 0, 3], [-1, 0, -2], [2, 1, 6]])

CURATED_SUITE = {
    "I": IntMatrix.identity(2),
    "-I": IntMatrix.scalar(2, -1),
    "order-3": IntMatrix.from_rows([[0, -1], [1, -1]]),
    "order-4": IntMatrix.from_rows([[0, -1], [1, 0]]),
    "unipotent": PINNED_M,
    "hyperbolic": IntMatrix.from_rows([[2, 1], [1, 1]]),
}
HYPERBOLIC_WITNESS = IntPoly((1, -3, 1))


@dataclass
class SuiteResult:
    """
    1スイートの結果

    Attributes:
        number (int): スイート番号
        name (str): スイート名
        checks (int): 検査した件数
        failures (List[str]): 失敗の説明（先頭のいくつか）
    """
    number: int
    name: str
    checks: int = 0
    failures: List[str] = field(default_factory=list)
    failure_count: int = 0

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def check(self, condition: bool, description: str):
        self.checks += 1
        if not condition:
            self.failure_count += 1
            if len(self.failures) < 5:
                self.failures.append(description)

    def to_dict(self) -> Dict:
        return {
            "number": str(self.number),
            "name": self.name,
            "checks": str(self.checks),
            "failures": str(self.failure_count),
            "examples": list(self.failures),
            "passed": self.passed,
        }


@dataclass(frozen=True)
class SelfCheckSettings:
    """
    自己検査の設定

    Attributes:
        seed (int): 乱数シード
        trials (int): 標準の試行回数
        route_trials (int): 経路一致・合成則などの試行回数
        conjugacy_trials (int): 共役・有限位数の試行回数
    """
    seed: int = 42
    trials: int = 1000
    route_trials: int = 500
    conjugacy_trials: int = 200


# ----------------------------------------------------------------------
# スイート
# ----------------------------------------------------------------------

def suite_det_cube(s: SelfCheckSettings) -> SuiteResult:
    result = SuiteResult(1, "det P = (det M)^3")
    for trial in range(s.trials):
        m = generators.random_gl2(generators.stream(s.seed, "det-cube", trial))
        result.check(det(p_matrix(m)) == det(m) ** 3, f"M = {m}")
    return result


def suite_scalar_law(s: SelfCheckSettings) -> SuiteResult:
    result = SuiteResult(2, "P(n·I) = n²·I")
    for n in range(-10, 11):
        if n == 0:
            continue
        p = p_matrix(IntMatrix.scalar(2, n), allow_isogeny=True)
        result.check(p == IntMatrix.scalar(3, n * n), f"n = {n}: {p}")
    return result


def suite_contravariance(s: SelfCheckSettings) -> SuiteResult:
    result = SuiteResult(3, "P(MN) = P(N)·P(M)")
    result.check(p_matrix(PINNED_M @ PINNED_N) == PINNED_MN, "固定例 P(MN)")
    result.check(p_matrix(PINNED_N) @ p_matrix(PINNED_M) == PINNED_MN, "固定例 P(N)·P(M)")
    for trial in range(s.route_trials):
        rng = generators.stream(s.seed, "contravariance", trial)
        m, n = generators.random_gl2(rng), generators.random_gl2(rng)
        result.check(p_matrix(m @ n) == p_matrix(n) @ p_matrix(m), f"M = {m}, N = {n}")
    return result


def suite_diagonal_eigenvalues(s: SelfCheckSettings) -> SuiteResult:
    result = SuiteResult(4, "charpoly P(diag(a,d)) = (x−a²)(x−d²)(x−ad)")
    values = [v for v in range(-5, 6) if v]
    for a in values:
        for d in values:
            p = p_matrix(IntMatrix.diagonal([a, d]), allow_isogeny=True)
            expected = IntPoly.linear(a * a) * IntPoly.linear(d * d) * IntPoly.linear(a * d)
            result.check(charpoly(p) == expected, f"a = {a}, d = {d}")
    return result


def suite_gk5_chain(s: SelfCheckSettings) -> SuiteResult:
    result = SuiteResult(5, "GK-5 chain for [[1,1],[0,1]]")
    p = p_matrix(PINNED_M)
    result.check(p == GK5_P, f"P = {p}")
    result.check(unipotent_jordan_profile(p).block_sizes == (3,), "Jordanブロック {3}")
    result.check(j_invariant(p) == 2, "j = 2")
    model, sigma = generators.unipotent_e2_instance()
    report = analyze(model, sigma)
    result.check(report.gk.exact == 5, f"GK = {report.gk.exact}")
    result.check(report.classification_label == "gk5-unipotent-dim2", f"label = {report.classification_label}")
    return result


def suite_translation_rows(s: SelfCheckSettings) -> SuiteResult:
    result = SuiteResult(6, "translation rows dim 1-4")
    labels = {1: "gk2-translation-dim1", 2: "gk3-translation-dim2",
              3: "gk4-translation-dim3", 4: "gk5-translation-dim4"}
    for dim, label in labels.items():
        model, sigma = generators.translation_instance(dim)
        report = analyze(model, sigma)
        result.check(report.wild.wild, f"dim {dim}: wild")
        result.check(report.j == 0, f"dim {dim}: j = {report.j}")
        result.check(report.gk.exact == dim + 1, f"dim {dim}: GK = {report.gk.exact}")
        result.check(report.classification_label == label, f"dim {dim}: label = {report.classification_label}")
    return result


def suite_route_equivalence(s: SelfCheckSettings) -> SuiteResult:
    result = SuiteResult(7, "Quotient route = SetGeneration route")
    for trial in range(s.route_trials):
        model, sigma = generators.random_wildness_instance(generators.stream(s.seed, "routes", trial))
        by_quotient = is_wild(model, sigma, Route.QUOTIENT)
        by_set = is_wild(model, sigma, Route.SET_GENERATION)
        result.check(by_quotient.wild == by_set.wild, f"trial {trial}: {by_quotient.wild} ≠ {by_set.wild}")
    return result


def suite_power_conjugacy(s: SelfCheckSettings) -> SuiteResult:
    result = SuiteResult(8, "unipotent M: M^p ~ M (p ≤ 7)")
    for trial in range(s.conjugacy_trials):
        rng = generators.stream(s.seed, "power-conjugacy", trial)
        m = generators.random_unipotent(rng, rng.randint(1, 5))
        invariants = frobenius_invariants(m)
        for p in range(1, 8):
            result.check(frobenius_invariants(matrix_power(m, p)) == invariants, f"M = {m}, p = {p}")
    return result


def suite_quasi_unipotency_agreement(s: SelfCheckSettings) -> SuiteResult:
    result = SuiteResult(9, "cyclotomic decider = power-conjugacy search")
    for name, m in CURATED_SUITE.items():
        decided = quasi_unipotency(m).is_quasi_unipotent
        witness = power_conjugacy_witness(m, default_witness_bound(m.rows))
        result.check(decided == (witness is not None), f"{name}: {decided} / {witness}")
    verdict = quasi_unipotency(CURATED_SUITE["hyperbolic"])
    result.check(verdict.status is QuasiUnipotencyStatus.NO, "hyperbolic: No")
    result.check(verdict.witness == HYPERBOLIC_WITNESS, f"hyperbolic witness = {verdict.witness}")
    return result


def suite_quasi_unipotency_transfer(s: SelfCheckSettings) -> SuiteResult:
    result = SuiteResult(10, "M quasi-unipotent ⟺ P(M) quasi-unipotent")
    for trial in range(s.route_trials):
        m = generators.random_gl2(generators.stream(s.seed, "transfer", trial))
        result.check(is_quasi_unipotent(m) == is_quasi_unipotent(p_matrix(m)), f"M = {m}")
    minus = IntMatrix.scalar(2, -1)
    result.check(p_matrix(minus) == IntMatrix.identity(3), "P(−I) = I")
    result.check(not is_unipotent(minus), "−I は単冪ではない")
    return result


def _computed_p_matrices(s: SelfCheckSettings) -> List[IntMatrix]:
    matrices = [GK5_P, p_matrix(IntMatrix.scalar(2, -1))]
    matrices += [p_matrix(IntMatrix.scalar(2, n), allow_isogeny=True) for n in (-1, 1)]
    for trial in range(s.trials):
        matrices.append(p_matrix(generators.random_gl2(generators.stream(s.seed, "det-cube", trial))))
    for trial in range(s.route_trials):
        matrices.append(p_matrix(generators.random_gl2(generators.stream(s.seed, "transfer", trial))))
    return matrices


def suite_parity(s: SelfCheckSettings) -> SuiteResult:
    result = SuiteResult(11, "j even and j ∈ {0, 2}")
    for p in _computed_p_matrices(s):
        if not is_quasi_unipotent(p):
            continue
        j = j_invariant(p)
        result.check(j % 2 == 0 and j in (0, 2), f"P = {p}: j = {j}")
    return result


def suite_negative_wildness(s: SelfCheckSettings) -> SuiteResult:
    result = SuiteResult(12, "non-wild certificates verify")
    for trial in range(s.conjugacy_trials):
        rng = generators.stream(s.seed, "negative", trial)
        model = generators.random_model(rng)
        torsion_only = generators.random_unipotent_automorphism(rng, model, torsion_only=True)
        for route in Route:
            verdict = is_wild(model, torsion_only, route)
            result.check(not verdict.wild and isinstance(verdict.certificate, RelationVector)
                         and verify_certificate(model, torsion_only, verdict),
                         f"trial {trial}: 捩れのみの b ({route.value})")

        non_unipotent = generators.random_non_unipotent(rng, model.multiplicities[0])
        alpha = BlockEndomorphism((non_unipotent,) + torsion_only.alpha.matrices[1:])
        sigma = Automorphism(alpha, generators.random_point(rng, model))
        verdict = is_wild(model, sigma)
        result.check(not verdict.wild and isinstance(verdict.certificate, NonUnipotentFactor)
                     and verify_certificate(model, sigma, verdict),
                     f"trial {trial}: 単冪でない α")
    return result


def suite_finite_order_unipotent(s: SelfCheckSettings) -> SuiteResult:
    result = SuiteResult(13, "unipotent with M^n = I (n ≤ 12) is I")
    for trial in range(s.conjugacy_trials):
        rng = generators.stream(s.seed, "finite-order", trial)
        m = generators.random_unipotent(rng, rng.randint(1, 5))
        identity = IntMatrix.identity(m.rows)
        power = identity
        finite_order = False
        for _ in range(12):
            power = power @ m
            if power == identity:
                finite_order = True
                break
        result.check(not finite_order or m == identity, f"M = {m}")
    return result


def suite_unipotent_transfer(s: SelfCheckSettings) -> SuiteResult:
    result = SuiteResult(14, "M unipotent ≠ I ⟹ P(M) unipotent ≠ I")
    for trial in range(s.conjugacy_trials):
        m = generators.random_unipotent(generators.stream(s.seed, "unipotent-transfer", trial), 2)
        p = p_matrix(m)
        result.check(is_unipotent(p), f"M = {m}: P 単冪")
        if m != IntMatrix.identity(2):
            result.check(p != IntMatrix.identity(3), f"M = {m}: P ≠ I")
    return result


def suite_power_stability(s: SelfCheckSettings) -> SuiteResult:
    result = SuiteResult(15, "σ wild ⟺ σ^n wild; image of γ(b) = n·b̄")
    for trial in range(s.conjugacy_trials):
        model, sigma = generators.random_mixed_instance(generators.stream(s.seed, "powers", trial))
        wild = is_wild(model, sigma).wild
        for n in (2, 3, 5):
            result.check(is_wild(model, sigma_power(sigma, n)).wild == wild, f"trial {trial}, n = {n}")
        if all(is_unipotent(m) for m in sigma.alpha.matrices):
            b_bar = image_quotient(model, beta_of(model, sigma)).project(sigma.b)
            for n in (2, 3):
                result.check(quotient_image_of_power(model, sigma, n) == b_bar.scale(n),
                             f"trial {trial}: γ(b) の像, n = {n}")
    return result


SUITES: List[Callable[[SelfCheckSettings], SuiteResult]] = [
    suite_det_cube,
    suite_scalar_law,
    suite_contravariance,
    suite_diagonal_eigenvalues,
    suite_gk5_chain,
    suite_translation_rows,
    suite_route_equivalence,
    suite_power_conjugacy,
    suite_quasi_unipotency_agreement,
    suite_quasi_unipotency_transfer,
    suite_parity,
    suite_negative_wildness,
    suite_finite_order_unipotent,
    suite_unipotent_transfer,
    suite_power_stability,
]


def run_selfcheck(settings: Optional[SelfCheckSettings] = None) -> List[SuiteResult]:
    """
    全スイートを番号順に実行します

    Returns:
        List[SuiteResult]: スイートごとの結果
    """
    settings = settings or SelfCheckSettings()
    results = []
    for suite in SUITES:
        result = suite(settings)
        level = "info" if result.passed else "error"
        getattr(logger, level)(
            f"スイート {result.number} ({result.name}): {result.checks} 件中 {result.failure_count} 件失敗"
        )
        results.append(result)
    return results


def format_table(results: List[SuiteResult]) -> str:
    """結果を合否表に整形します"""
    width = max(len(r.name) for r in results)
    lines = [f"{'#':>3}  {'suite'.ljust(width)}  {'checks':>7}  {'fail':>5}  result"]
    for r in results:
        lines.append(
            f"{r.number:>3}  {r.name.ljust(width)}  {r.checks:>7}  {r.failure_count:>5}  "
            f"{'PASS' if r.passed else 'FAIL'}"
        )
        for failure in r.failures:
            lines.append(f"       - {failure}")
    return "\n".join(lines) + "\n"
