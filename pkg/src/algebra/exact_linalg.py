# -*- coding: utf-8 -*-
"""
厳密整数線形代数モジュール

任意精度整数による行列演算を提供します。
浮動小数点は一切使用しません。

    - IntMatrix / IntPoly: 不変な整数行列・整数係数多項式
    - snf: Smith標準形（変換行列つき）
    - left_kernel: 左核格子の基底（HNFで正規化）
    - frobenius_invariants: 有理数体上の不変因子（共役判定用）
    - unipotent_jordan_profile: 単冪行列のJordanブロック構成

行列式・階数・特性多項式・因数分解はSymPyに任せ、
Smith標準形は決まったピボット規則（絶対値最小の非零成分、行消去を先に）で
Python整数上に実装しています。

Author: WildAbel Development Team
Created: 2025-08-05
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

import sympy
from sympy import ImmutableMatrix, Poly, Symbol, ZZ
from sympy.matrices.normalforms import hermite_normal_form

from src.utils.errors import DimensionError, InputError, NotUnipotentError
from src.utils.logger import get_logger

# ロガーを取得
logger = get_logger(__name__)

# 多項式の変数
X = Symbol("x")


@dataclass(frozen=True)
class IntMatrix:
    """
    任意精度整数行列

    行優先で成分を保持する不変値です。SymPyとの相互変換を持ち、
    積・冪・行列式などの重い計算はSymPyの厳密演算に委ねます。

    Attributes:
        rows (int): 行数
        cols (int): 列数
        entries (Tuple[int, ...]): 行優先の成分（長さ rows × cols）
    """
    rows: int
    cols: int
    entries: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError(f"行列サイズが負です: {self.rows}×{self.cols}")
        entries = tuple(int(v) for v in self.entries)
        if len(entries) != self.rows * self.cols:
            raise DimensionError(
                f"成分数 {len(entries)} が {self.rows}×{self.cols} と一致しません"
            )
        object.__setattr__(self, "entries", entries)

    # ------------------------------------------------------------------
    # 生成
    # ------------------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> 'IntMatrix':
        """
        行のリストから行列を作成します

        Args:
            rows: 整数の行リスト
            cols: 列数（行が0本のときに必要）

        Returns:
            IntMatrix: 作成された行列
        """
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("行の長さが揃っていません")
        return cls(len(rows), cols, tuple(v for r in rows for v in r))

    @classmethod
    def identity(cls, n: int) -> 'IntMatrix':
        return cls.scalar(n, 1)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> 'IntMatrix':
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def scalar(cls, n: int, value: int) -> 'IntMatrix':
        return cls.diagonal([value] * n)

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> 'IntMatrix':
        n = len(values)
        return cls(n, n, tuple(values[i] if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def from_sympy(cls, m) -> 'IntMatrix':
        return cls(m.rows, m.cols, tuple(int(v) for v in m))

    @classmethod
    def from_json(cls, data) -> 'IntMatrix':
        """
        JSON表現（10進文字列の配列の配列）から行列を作成します

        Args:
            data: 例 [["1","1"],["0","1"]]

        Raises:
            InputError: 形式が不正な場合
        """
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise InputError("行列は配列の配列で指定してください")
        try:
            rows = [[int(str(v)) for v in r] for r in data]
        except ValueError as e:
            raise InputError(f"行列の成分が整数ではありません: {e}")
        try:
            return cls.from_rows(rows)
        except DimensionError as e:
            raise InputError(str(e))

    # ------------------------------------------------------------------
    # アクセス
    # ------------------------------------------------------------------
    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> List[List[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_json(self) -> List[List[str]]:
        return [[str(v) for v in self.row(i)] for i in range(self.rows)]

    def select_rows(self, indices: Iterable[int]) -> 'IntMatrix':
        return IntMatrix.from_rows([self.row(i) for i in indices], cols=self.cols)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.entries)

    @cached_property
    def sym(self) -> ImmutableMatrix:
        """SymPyの不変行列表現"""
        if self.rows == 0 or self.cols == 0:
            return ImmutableMatrix.zeros(self.rows, self.cols)
        return ImmutableMatrix(self.rows, self.cols, list(self.entries))

    # ------------------------------------------------------------------
    # 演算
    # ------------------------------------------------------------------
    def _require_same_shape(self, other: 'IntMatrix'):
        if self.shape != other.shape:
            raise DimensionError(f"形状が一致しません: {self.shape} と {other.shape}")

    def __add__(self, other: 'IntMatrix') -> 'IntMatrix':
        self._require_same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: 'IntMatrix') -> 'IntMatrix':
        self._require_same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> 'IntMatrix':
        return self.scale(-1)

    def scale(self, k: int) -> 'IntMatrix':
        return IntMatrix(self.rows, self.cols, tuple(k * v for v in self.entries))

    def __matmul__(self, other: 'IntMatrix') -> 'IntMatrix':
        if self.cols != other.rows:
            raise DimensionError(f"積が定義されません: {self.shape} @ {other.shape}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        return IntMatrix.from_sympy(self.sym * other.sym)

    def transpose(self) -> 'IntMatrix':
        return IntMatrix(self.cols, self.rows,
                         tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    def __str__(self) -> str:
        return str(self.to_rows())


@dataclass(frozen=True)
class IntPoly:
    """
    整数係数多項式

    Attributes:
        coefficients (Tuple[int, ...]): 係数（低次から順に）。末尾の0は除去されます。
    """
    coefficients: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        coeffs = [int(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def from_sympy(cls, poly: Poly) -> 'IntPoly':
        return cls(tuple(int(c) for c in reversed(poly.all_coeffs())))

    @classmethod
    def one(cls) -> 'IntPoly':
        return cls((1,))

    @classmethod
    def linear(cls, root: int) -> 'IntPoly':
        """x − root を返します"""
        return cls((-root, 1))

    def to_sympy(self) -> Poly:
        if not self.coefficients:
            return Poly(0, X, domain=ZZ)
        return Poly(list(reversed(self.coefficients)), X, domain=ZZ)

    @property
    def degree(self) -> int:
        """次数（零多項式は −1）"""
        return len(self.coefficients) - 1

    @property
    def monic(self) -> bool:
        return bool(self.coefficients) and self.coefficients[-1] == 1

    def __mul__(self, other: 'IntPoly') -> 'IntPoly':
        return IntPoly.from_sympy(self.to_sympy() * other.to_sympy())

    def __pow__(self, k: int) -> 'IntPoly':
        return IntPoly.from_sympy(self.to_sympy() ** k)

    def divmod(self, other: 'IntPoly') -> Tuple['IntPoly', 'IntPoly']:
        q, r = self.to_sympy().div(other.to_sympy())
        return IntPoly.from_sympy(q), IntPoly.from_sympy(r)

    def evaluate_matrix(self, m: IntMatrix) -> IntMatrix:
        """
        正方行列 m での値 f(m) をHorner法で計算します
        """
        if not m.is_square:
            raise DimensionError("多項式の代入には正方行列が必要です")
        n = m.rows
        if n == 0:
            return m
        acc = sympy.zeros(n, n)
        for c in reversed(self.coefficients):
            acc = acc * m.sym + c * sympy.eye(n)
        return IntMatrix.from_sympy(acc)

    def to_json(self) -> List[str]:
        return [str(c) for c in self.coefficients]

    def __str__(self) -> str:
        return str(self.to_sympy().as_expr())


@dataclass(frozen=True)
class SmithDecomposition:
    """
    Smith分解 D = U·M·V

    Attributes:
        U (IntMatrix): 左側のユニモジュラ行列
        D (IntMatrix): 対角行列（d₁ | d₂ | …、非負）
        V (IntMatrix): 右側のユニモジュラ行列
        rank (int): 非零対角成分の個数
    """
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    rank: int

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))


@dataclass(frozen=True)
class JordanProfile:
    """
    固有値1のJordanブロック構成

    Attributes:
        block_sizes (Tuple[int, ...]): ブロックサイズ（降順）
        largest (int): 最大ブロックサイズ（(M−I)^k = 0 となる最小の k）
    """
    block_sizes: Tuple[int, ...]
    largest: int


# ----------------------------------------------------------------------
# 基本量
# ----------------------------------------------------------------------

def _require_square(m: IntMatrix, what: str = "行列"):
    if not m.is_square:
        raise DimensionError(f"{what}は正方行列である必要があります: {m.rows}×{m.cols}")


def det(m: IntMatrix) -> int:
    """行列式（0×0 行列は 1）"""
    _require_square(m)
    if m.rows == 0:
        return 1
    return int(m.sym.det(method="bareiss"))


def rank(m: IntMatrix) -> int:
    """有理数体上の階数"""
    if m.rows == 0 or m.cols == 0 or m.is_zero:
        return 0
    return int(m.sym.rank())


def matrix_power(m: IntMatrix, k: int) -> IntMatrix:
    """非負整数乗 m^k"""
    _require_square(m)
    if k < 0:
        raise DimensionError("負の冪は扱いません")
    if m.rows == 0:
        return m
    return IntMatrix.from_sympy(m.sym ** k)


def is_unimodular(m: IntMatrix) -> bool:
    return m.is_square and abs(det(m)) == 1


def charpoly(m: IntMatrix) -> IntPoly:
    """
    特性多項式 det(xI − M) を返します

    Args:
        m: 正方整数行列

    Returns:
        IntPoly: モニックな整数係数多項式（0×0 行列では定数 1）

    Raises:
        DimensionError: 正方でない場合
    """
    _require_square(m)
    if m.rows == 0:
        return IntPoly.one()
    return IntPoly.from_sympy(m.sym.charpoly(X))


def factor_irreducible(p: IntPoly) -> List[Tuple[IntPoly, int]]:
    """
    モニック整数多項式を既約因子に分解します

    Returns:
        List[Tuple[IntPoly, int]]: (既約モニック因子, 重複度) を (次数, 係数) 順に並べたもの
    """
    if p.degree <= 0:
        return []
    _, factors = p.to_sympy().factor_list()
    result = [(IntPoly.from_sympy(f), int(e)) for f, e in factors]
    result.sort(key=lambda fe: (fe[0].degree, fe[0].coefficients))
    return result


# ----------------------------------------------------------------------
# Smith標準形
# ----------------------------------------------------------------------

class _SmithWorkspace:
    """
    Smith標準形計算の作業領域

    A = U·M·V を保ったまま A に行・列基本変形を施します。
    """

    def __init__(self, m: IntMatrix):
        self.m, self.n = m.rows, m.cols
        self.A = m.to_rows()
        self.U = IntMatrix.identity(self.m).to_rows()
        self.V = IntMatrix.identity(self.n).to_rows()

    def swap_rows(self, i: int, j: int):
        if i != j:
            self.A[i], self.A[j] = self.A[j], self.A[i]
            self.U[i], self.U[j] = self.U[j], self.U[i]

    def swap_cols(self, i: int, j: int):
        if i != j:
            for row in self.A:
                row[i], row[j] = row[j], row[i]
            for row in self.V:
                row[i], row[j] = row[j], row[i]

    def add_row(self, target: int, source: int, k: int):
        """row[target] += k·row[source]"""
        if k:
            self.A[target] = [a + k * b for a, b in zip(self.A[target], self.A[source])]
            self.U[target] = [a + k * b for a, b in zip(self.U[target], self.U[source])]

    def add_col(self, target: int, source: int, k: int):
        """col[target] += k·col[source]"""
        if k:
            for row in self.A:
                row[target] += k * row[source]
            for row in self.V:
                row[target] += k * row[source]

    def negate_row(self, i: int):
        self.A[i] = [-a for a in self.A[i]]
        self.U[i] = [-a for a in self.U[i]]

    def smallest_in_submatrix(self, t: int) -> Optional[Tuple[int, int]]:
        best = None
        for i in range(t, self.m):
            for j in range(t, self.n):
                v = self.A[i][j]
                if v and (best is None or abs(v) < abs(self.A[best[0]][best[1]])):
                    best = (i, j)
        return best

    def smallest_in_cross(self, t: int) -> Tuple[int, int]:
        """第 t 行・第 t 列（t 以降）の絶対値最小の非零成分"""
        best = (t, t)
        for i in range(t + 1, self.m):
            v = self.A[i][t]
            if v and (self.A[best[0]][best[1]] == 0 or abs(v) < abs(self.A[best[0]][best[1]])):
                best = (i, t)
        for j in range(t + 1, self.n):
            v = self.A[t][j]
            if v and (self.A[best[0]][best[1]] == 0 or abs(v) < abs(self.A[best[0]][best[1]])):
                best = (t, j)
        return best

    def cross_is_clear(self, t: int) -> bool:
        return (all(self.A[i][t] == 0 for i in range(t + 1, self.m))
                and all(self.A[t][j] == 0 for j in range(t + 1, self.n)))

    def diagonalize_at(self, t: int):
        """(t, t) を軸に第 t 行・列を掃き出し、残りの成分を割り切る状態にします"""
        while True:
            p = self.A[t][t]
            # 行消去を先に
            for i in range(t + 1, self.m):
                self.add_row(i, t, -(self.A[i][t] // p))
            for j in range(t + 1, self.n):
                self.add_col(j, t, -(self.A[t][j] // p))

            if not self.cross_is_clear(t):
                i, j = self.smallest_in_cross(t)
                self.swap_rows(t, i)
                self.swap_cols(t, j)
                continue

            # 割り切らない成分があれば行を足して再度掃き出す
            offender = next(
                (i for i in range(t + 1, self.m)
                 for j in range(t + 1, self.n) if self.A[i][j] % p),
                None,
            )
            if offender is None:
                break
            logger.debug(f"SNF: 軸 {p} が第 {offender} 行を割り切らないため行を加えます")
            self.add_row(t, offender, 1)

        if self.A[t][t] < 0:
            self.negate_row(t)


def snf(m: IntMatrix) -> SmithDecomposition:
    """
    Smith標準形 D = U·M·V を計算します

    ピボット規則: 残りの部分行列で絶対値最小の非零成分を軸に選び、
    行消去を列消去より先に行います。同じ入力に対して結果は決定的です。

    Args:
        m: 任意サイズの整数行列

    Returns:
        SmithDecomposition: U, D, V と階数
    """
    ws = _SmithWorkspace(m)
    t = 0
    while t < min(ws.m, ws.n):
        pivot = ws.smallest_in_submatrix(t)
        if pivot is None:
            break
        ws.swap_rows(t, pivot[0])
        ws.swap_cols(t, pivot[1])
        ws.diagonalize_at(t)
        t += 1

    decomposition = SmithDecomposition(
        U=IntMatrix.from_rows(ws.U, cols=ws.m),
        D=IntMatrix.from_rows(ws.A, cols=ws.n),
        V=IntMatrix.from_rows(ws.V, cols=ws.n),
        rank=t,
    )
    logger.debug(f"SNF: 形状 {m.shape}, 対角 {decomposition.diagonal}, 階数 {t}")
    return decomposition


# ----------------------------------------------------------------------
# 左核
# ----------------------------------------------------------------------

def _normalize_sign(row: Sequence[int]) -> List[int]:
    """最初の非零成分が正になるよう符号をそろえます"""
    for v in row:
        if v:
            return [x for x in row] if v > 0 else [-x for x in row]
    return list(row)


def hermite_rows(basis: IntMatrix) -> IntMatrix:
    """
    行が張る格子を変えずに、行基底をHermite標準形で正規化します

    Args:
        basis: 行が一次独立な整数行列

    Returns:
        IntMatrix: 同じ格子の正規化された行基底（各行の先頭非零成分は正）
    """
    if basis.rows == 0:
        return basis
    # 列版HNFを転置に適用すると列格子＝元の行格子が保たれる
    w = IntMatrix.from_sympy(hermite_normal_form(sympy.Matrix(basis.transpose().sym))).transpose()
    if w.rows != basis.rows:
        logger.warning(f"HNFの行数 {w.rows} が基底の行数 {basis.rows} と異なるため元の基底を使います")
        w = basis
    return IntMatrix.from_rows([_normalize_sign(w.row(i)) for i in range(w.rows)], cols=basis.cols)


def left_kernel(m: IntMatrix) -> IntMatrix:
    """
    左核 {θ : θ·M = 0} の整数格子の基底を返します

    D = U·M·V のとき U の第 rank 行以降が左核の基底になります（U はユニモジュラ）。

    Args:
        m: 任意サイズの整数行列

    Returns:
        IntMatrix: (rows(M) − rank(M)) × rows(M) の基底行列
    """
    decomposition = snf(m)
    kernel = decomposition.U.select_rows(range(decomposition.rank, m.rows))
    return hermite_rows(kernel)


# ----------------------------------------------------------------------
# Frobenius不変因子
# ----------------------------------------------------------------------

def _elementary_exponents(m: IntMatrix, f: IntPoly, multiplicity: int) -> List[int]:
    """
    既約因子 f に対する単因子 f^e の指数 e を降順で返します

    rank f(M)^k の減り方からブロック数を読み取ります。
    """
    n = m.rows
    fm = f.evaluate_matrix(m)
    ranks = [n]
    power = IntMatrix.identity(n)
    for _ in range(multiplicity + 1):
        power = power @ fm
        ranks.append(rank(power))
    # at_least[k] = 指数が k 以上のブロック数
    at_least = [0] + [(ranks[k - 1] - ranks[k]) // f.degree for k in range(1, multiplicity + 2)]
    exponents = []
    for k in range(multiplicity, 0, -1):
        exponents.extend([k] * (at_least[k] - at_least[k + 1]))
    return exponents


def frobenius_invariants(m: IntMatrix) -> List[IntPoly]:
    """
    有理数体上の不変因子 f₁ | f₂ | … | f_k を返します

    2つの行列が有理数体上で共役であることと、この列が一致することは同値です。

    Args:
        m: 正方整数行列

    Returns:
        List[IntPoly]: 次数の昇順（割り算の鎖の順）の不変因子

    Raises:
        DimensionError: 正方でない場合
    """
    _require_square(m)
    if m.rows == 0:
        return []

    per_factor = [
        (f, _elementary_exponents(m, f, mult))
        for f, mult in factor_irreducible(charpoly(m))
    ]
    count = max(len(exps) for _, exps in per_factor)

    invariants = []
    for i in range(count):
        product = IntPoly.one()
        for f, exps in per_factor:
            if i < len(exps):
                product = product * (f ** exps[i])
        invariants.append(product)
    invariants.reverse()
    return invariants


# ----------------------------------------------------------------------
# 単冪Jordan構成
# ----------------------------------------------------------------------

def unipotent_jordan_profile(m: IntMatrix) -> JordanProfile:
    """
    単冪行列 M の固有値1に対するJordanブロック構成を返します

    r_k = rank((M−I)^k) とすると、サイズ k 以上のブロック数は r_{k−1} − r_k です。

    Raises:
        DimensionError: 正方でない場合
        NotUnipotentError: M − I が冪零でない場合
    """
    _require_square(m, "単冪性の判定対象")
    n = m.rows
    if n == 0:
        return JordanProfile((), 0)

    nil = m - IntMatrix.identity(n)
    ranks = [n]
    power = IntMatrix.identity(n)
    while ranks[-1] > 0 and len(ranks) <= n:
        power = power @ nil
        ranks.append(rank(power))
    if ranks[-1] != 0:
        raise NotUnipotentError(f"M − I が冪零ではありません: {m}")

    largest = len(ranks) - 1
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, largest + 1)] + [0]
    sizes = []
    for k in range(largest, 0, -1):
        sizes.extend([k] * (at_least[k - 1] - at_least[k]))
    return JordanProfile(tuple(sizes), largest)
