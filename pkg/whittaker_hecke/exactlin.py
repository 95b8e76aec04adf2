"""
精确有理线性代数

在 sympy 的 DomainMatrix（QQ 域）之上提供不可变矩阵 Mat、以简化行阶梯形
规范表示的子空间 Subspace，以及联合广义特征空间分解和不变子空间闭包。

对外的有理数类型统一为 fractions.Fraction；与 QQ 元素的转换只在本模块内部进行。
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .errors import IrrationalSpectrumError, NonCommutingError
from .logger import get_logger

logger = get_logger(__name__)

# 对外的有理数类型
Rat = Fraction

Vector = tuple[Fraction, ...]


def to_rat(value: "int | str | Fraction") -> Fraction:
    """
    把整数、字符串或 QQ 元素转换为 Fraction

    Args:
        value: 待转换的值

    Returns:
        约分后的 Fraction
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    # QQ 元素（PythonMPQ 或 gmpy2.mpq）和 sympy Rational 都有这两个属性
    return Fraction(int(value.numerator), int(value.denominator))


def _qq(value: "int | str | Fraction"):
    rat = to_rat(value)
    return QQ(rat.numerator, rat.denominator)


def format_rat(value: Fraction) -> str:
    """有理数的字符串形式：整数写作 "p"，否则写作 "p/q" """
    return str(value)


class Mat:
    """QQ 上的不可变稠密矩阵"""

    __slots__ = ("_dm",)

    def __init__(self, dm: DomainMatrix):
        if dm.domain != QQ:
            dm = dm.convert_to(QQ)
        self._dm = dm.to_dense()

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence["int | str | Fraction"]], cols: int | None = None
    ) -> "Mat":
        """
        按行构造矩阵

        Args:
            rows: 行列表
            cols: 列数（行数为 0 时必须给出）

        Returns:
            Mat
        """
        nrows = len(rows)
        if cols is None:
            cols = len(rows[0]) if nrows else 0
        if nrows == 0 or cols == 0:
            return cls.zeros(nrows, cols)
        for row in rows:
            if len(row) != cols:
                raise ValueError(f"行长度不一致: 期望 {cols}, 实际 {len(row)}")
        data = [[_qq(x) for x in row] for row in rows]
        return cls(DomainMatrix(data, (nrows, cols), QQ))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Fraction]], rows: int) -> "Mat":
        """按列构造矩阵"""
        if not columns:
            return cls.zeros(rows, 0)
        return cls.from_rows(columns, cols=rows).transpose()

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls(DomainMatrix.zeros((rows, cols), QQ))

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(DomainMatrix.eye(n, QQ))

    @classmethod
    def scalar(cls, n: int, value: "int | Fraction") -> "Mat":
        return cls.identity(n).scale(value)

    @classmethod
    def diag(cls, values: Sequence["int | Fraction"]) -> "Mat":
        n = len(values)
        rows = [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return cls.from_rows(rows, cols=n)

    @property
    def dm(self) -> DomainMatrix:
        return self._dm

    @property
    def rows(self) -> int:
        return self._dm.shape[0]

    @property
    def cols(self) -> int:
        return self._dm.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._dm.shape

    def entry(self, i: int, j: int) -> Fraction:
        return to_rat(self._dm.rep.getitem(i, j))

    def to_rows(self) -> list[list[Fraction]]:
        if self.rows == 0:
            return []
        return [[to_rat(x) for x in row] for row in self._dm.to_list()]

    def key(self) -> tuple[int, int, tuple[Fraction, ...]]:
        flat = tuple(to_rat(x) for x in self._dm.to_list_flat())
        return (self.rows, self.cols, flat)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        body = [[format_rat(x) for x in row] for row in self.to_rows()]
        return f"Mat({self.rows}x{self.cols}, {body})"

    def __add__(self, other: "Mat") -> "Mat":
        return Mat(self._dm + other._dm)

    def __sub__(self, other: "Mat") -> "Mat":
        return Mat(self._dm - other._dm)

    def __neg__(self) -> "Mat":
        return Mat(-self._dm)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError(f"矩阵维数不匹配: {self.shape} @ {other.shape}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return Mat.zeros(self.rows, other.cols)
        return Mat(self._dm.matmul(other._dm))

    def scale(self, value: "int | Fraction") -> "Mat":
        if self.rows == 0 or self.cols == 0:
            return self
        return Mat(self._dm * _qq(value))

    def transpose(self) -> "Mat":
        return Mat(self._dm.transpose())

    def power(self, k: int) -> "Mat":
        result = Mat.identity(self.rows)
        for _ in range(k):
            result = result @ self
        return result

    def is_zero(self) -> bool:
        if self.rows == 0 or self.cols == 0:
            return True
        return bool(self._dm.is_zero_matrix)

    def trace(self) -> Fraction:
        return sum((self.entry(i, i) for i in range(self.rows)), Fraction(0))

    def det(self) -> Fraction:
        if self.rows == 0:
            return Fraction(1)
        return to_rat(self._dm.det())

    def inverse(self) -> "Mat":
        """
        逆矩阵

        Raises:
            ValueError: 矩阵不可逆
        """
        if self.rows != self.cols or self.det() == 0:
            raise ValueError(f"矩阵不可逆: {self.rows}x{self.cols}")
        if self.rows == 0:
            return self
        return Mat(self._dm.inv())

    def commutator(self, other: "Mat") -> "Mat":
        return self @ other - other @ self

    def apply(self, vector: Sequence[Fraction]) -> Vector:
        """矩阵作用在列向量上"""
        column = Mat.from_rows([[x] for x in vector], cols=1)
        return tuple(row[0] for row in (self @ column).to_rows())

    def extract(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        if not rows or not cols:
            return Mat.zeros(len(rows), len(cols))
        return Mat(self._dm.extract(list(rows), list(cols)))

    @staticmethod
    def block_diag(blocks: Sequence["Mat"]) -> "Mat":
        """块对角拼接"""
        n = sum(b.rows for b in blocks)
        rows = [[Fraction(0)] * n for _ in range(n)]
        offset = 0
        for block in blocks:
            for i, row in enumerate(block.to_rows()):
                for j, value in enumerate(row):
                    rows[offset + i][offset + j] = value
            offset += block.rows
        return Mat.from_rows(rows, cols=n)


def rank(m: Mat) -> int:
    """
    有理数域上的精确秩

    Args:
        m: 矩阵

    Returns:
        秩
    """
    if m.rows == 0 or m.cols == 0:
        return 0
    return m.dm.rank()


def nullspace(m: Mat) -> list[Vector]:
    """
    右零空间（满足 m·x = 0 的 x）的一组基

    Args:
        m: 矩阵

    Returns:
        基向量列表
    """
    if m.cols == 0:
        return []
    if m.rows == 0:
        return [
            tuple(Fraction(int(i == j)) for j in range(m.cols)) for i in range(m.cols)
        ]
    basis = m.dm.nullspace()
    if basis.shape[0] == 0:
        return []
    return [tuple(to_rat(x) for x in row) for row in basis.to_list()]


def _rref_rows(vectors: Sequence[Sequence[Fraction]], ambient_dim: int) -> list[Vector]:
    if not vectors or ambient_dim == 0:
        return []
    reduced, pivots = Mat.from_rows(vectors, cols=ambient_dim).dm.rref()
    rows = reduced.to_list()
    return [tuple(to_rat(x) for x in rows[k]) for k in range(len(pivots))]


@dataclass(frozen=True)
class Subspace:
    """以简化行阶梯形基为规范表示的子空间"""

    ambient_dim: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(
        cls, vectors: Iterable[Sequence[Fraction]], ambient_dim: int
    ) -> "Subspace":
        vectors = [tuple(to_rat(x) for x in v) for v in vectors]
        return cls(ambient_dim, tuple(_rref_rows(vectors, ambient_dim)))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.span(
            [
                tuple(Fraction(int(i == j)) for j in range(ambient_dim))
                for i in range(ambient_dim)
            ],
            ambient_dim,
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x != 0) for row in self.basis)

    def matrix(self) -> Mat:
        """行为基向量的矩阵"""
        return Mat.from_rows(self.basis, cols=self.ambient_dim)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def reduce(self, vector: Sequence[Fraction]) -> Vector:
        """把向量在主元位置上消成 0（商空间中的规范代表）"""
        result = list(vector)
        for row, pivot in zip(self.basis, self.pivots):
            factor = result[pivot]
            if factor:
                result = [a - factor * b for a, b in zip(result, row)]
        return tuple(result)

    def contains(self, vector: Sequence[Fraction]) -> bool:
        return all(x == 0 for x in self.reduce(vector))

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def coordinates(self, vector: Sequence[Fraction]) -> Vector:
        """子空间内向量在规范基下的坐标"""
        return tuple(vector[p] for p in self.pivots)

    def annihilator(self) -> "Subspace":
        """标准配对下的正交补"""
        if self.dim == 0:
            return Subspace.full(self.ambient_dim)
        return Subspace.span(nullspace(self.matrix()), self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        return (self.annihilator() + other.annihilator()).annihilator()

    def complement_indices(self) -> tuple[int, ...]:
        """非主元坐标，对应的标准基向量张成一个补空间"""
        pivots = set(self.pivots)
        return tuple(j for j in range(self.ambient_dim) if j not in pivots)

    def restrict(self, op: Mat) -> Mat:
        """
        算子在不变子空间上的限制矩阵

        Args:
            op: 环境空间上的方阵，要求保持本子空间

        Returns:
            规范基下的 dim×dim 矩阵
        """
        if self.dim == 0:
            return Mat.zeros(0, 0)
        images = op @ self.matrix().transpose()
        return images.extract(self.pivots, range(self.dim))

    def quotient_action(self, op: Mat) -> Mat:
        """
        算子在商空间 ambient/self 上的作用矩阵

        商空间以非主元标准基向量的像为基。

        Args:
            op: 保持本子空间的方阵

        Returns:
            (n−dim)×(n−dim) 矩阵
        """
        comp = self.complement_indices()
        columns = []
        for j in comp:
            image = tuple(op.entry(i, j) for i in range(self.ambient_dim))
            reduced = self.reduce(image)
            columns.append([reduced[i] for i in comp])
        return Mat.from_columns(columns, len(comp))

    def lift(self, local: Sequence[Fraction]) -> Vector:
        """由规范基坐标还原环境空间中的向量"""
        result = [Fraction(0)] * self.ambient_dim
        for c, row in zip(local, self.basis):
            if c:
                result = [a + c * b for a, b in zip(result, row)]
        return tuple(result)

    def lift_subspace(self, local: "Subspace") -> "Subspace":
        """把规范基坐标下的子空间嵌回环境空间"""
        return Subspace.span([self.lift(v) for v in local.basis], self.ambient_dim)


def _check_square(ops: Sequence[Mat]) -> int:
    dims = {op.rows for op in ops} | {op.cols for op in ops}
    if len(dims) > 1:
        raise ValueError(f"算子必须是同阶方阵: {[op.shape for op in ops]}")
    return dims.pop() if dims else 0


def check_commuting(ops: Sequence[Mat]) -> None:
    """
    检查算子两两交换

    Raises:
        NonCommutingError: 存在非零交换子
    """
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            if not ops[i].commutator(ops[j]).is_zero():
                raise NonCommutingError(f"第 {i} 与第 {j} 个算子不交换")


def _format_poly(coeffs: Sequence[Fraction]) -> str:
    degree = len(coeffs) - 1
    terms = []
    for k, c in enumerate(coeffs):
        if c:
            terms.append(f"({c})*t^{degree - k}")
    return " + ".join(terms) or "0"


def eigenvalues(m: Mat) -> dict[Fraction, int]:
    """
    特征值及其代数重数

    Raises:
        IrrationalSpectrumError: 特征多项式在有理数上不分裂
    """
    if m.rows == 0:
        return {}
    result: dict[Fraction, int] = {}
    for factor, mult in m.dm.charpoly_factor_list():
        coeffs = [to_rat(c) for c in factor]
        if len(coeffs) != 2:
            full = [to_rat(c) for c in m.dm.charpoly()]
            raise IrrationalSpectrumError(
                f"特征多项式不能分解为一次因子: {_format_poly(full)}"
            )
        root = -coeffs[1] / coeffs[0]
        result[root] = result.get(root, 0) + mult
    return dict(sorted(result.items()))


def generalized_eigenspace(
    m: Mat, value: Fraction, mult: int | None = None
) -> Subspace:
    """算子在给定特征值处的广义特征空间"""
    n = m.rows
    power = mult if mult is not None else n
    shifted = (m - Mat.scalar(n, value)).power(power)
    return Subspace.span(nullspace(shifted), n)


def joint_generalized_eigenspaces(
    ops: Sequence[Mat], check: bool = True
) -> list[tuple[tuple[Fraction, ...], Subspace]]:
    """
    两两交换算子的联合广义特征空间分解

    Args:
        ops: 同阶方阵列表
        check: 是否检查两两交换

    Returns:
        (特征值元组, 子空间) 列表，按特征值元组排序

    Raises:
        NonCommutingError: 存在非零交换子
        IrrationalSpectrumError: 某个特征多项式不在有理数上分裂
    """
    n = _check_square(ops)
    if check:
        check_commuting(ops)
    if n == 0:
        return []

    pieces: list[tuple[tuple[Fraction, ...], Subspace]] = [((), Subspace.full(n))]
    for op in ops:
        refined = []
        for values, space in pieces:
            local = space.restrict(op)
            for value, mult in eigenvalues(local).items():
                local_space = generalized_eigenspace(local, value, mult)
                refined.append((values + (value,), space.lift_subspace(local_space)))
        pieces = refined
    return sorted(pieces, key=lambda item: item[0])


def invariant_closure(gens: Sequence[Mat], seed: Subspace) -> Subspace:
    """
    包含 seed 且在所有生成元下不变的最小子空间

    Args:
        gens: 生成元方阵
        seed: 初始子空间

    Returns:
        不变闭包
    """
    n = seed.ambient_dim
    current = seed
    frontier = list(seed.basis)
    transposed = [gen.transpose() for gen in gens]
    while frontier and transposed:
        block = Mat.from_rows(frontier, cols=n)
        images: list[Vector] = []
        for gen_t in transposed:
            # 行向量 v·gᵗ 即列向量 g·v
            images.extend(tuple(row) for row in (block @ gen_t).to_rows())
        grown = Subspace.span(current.basis + tuple(images), n)
        if grown.dim == current.dim:
            break
        frontier = [v for v in (current.reduce(u) for u in grown.basis) if any(v)]
        current = grown
    return current


def solve_homogeneous(
    rows: Sequence[Sequence[Fraction]], unknowns: int
) -> list[Vector]:
    """
    齐次线性方程组的解空间基

    Args:
        rows: 系数行
        unknowns: 未知数个数

    Returns:
        解空间的基
    """
    if not rows:
        return [
            tuple(Fraction(int(i == j)) for j in range(unknowns))
            for i in range(unknowns)
        ]
    return nullspace(Mat.from_rows(rows, cols=unknowns))
