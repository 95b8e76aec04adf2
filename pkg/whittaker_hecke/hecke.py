"""
A 型分次仿射 Hecke 代数 H_ℓ 及其有限维模

元素以群在左的正规形 Σ t_w·p_w(ε) 存储，多项式部分取自 sympy 稀疏多项式环
QQ[ε_1,…,ε_ℓ]。乘法把多项式沿约化字向右推过群元：

    p·t_s = t_s·s(p) + Δ_s(p)，  Δ_s(p) = (p − s(p)) / (ε_i − ε_{i+1})

模以生成元矩阵给出。本模块构造诱导标准模 std(τ)，并计算权谱、中心特征、
子模格、合成因子、不可约商以及模同构。

用法:
    >>> tau = MultisegmentClass.parse("[(1/2,1),(-1/2,1)]")
    >>> m = induced_standard(tau, 2)
    >>> weight_spectrum(m).total
    2
"""

import random
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from itertools import combinations

import sympy
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, PolyRing, ring

from .errors import (
    ConsistencyError,
    LengthMismatchError,
    NotCyclicError,
    RelationCheckFailedError,
)
from .exactlin import (
    Mat,
    Subspace,
    Vector,
    format_rat,
    invariant_closure,
    joint_generalized_eigenspaces,
    nullspace,
    solve_homogeneous,
    to_rat,
)
from .logger import get_logger
from .multiseg import MultisegmentClass, zeta_weight
from .weyl import (
    ParabolicSet,
    Perm,
    class_representatives,
    minimal_coset_reps,
    parabolic_elements,
)

logger = get_logger(__name__)

# 每个权重空间在基向量之外再试的随机种子个数
DEFAULT_MAX_SEEDS = 8
DEFAULT_SEED = 0

# 同构判定中，Hom 空间随机组合的尝试次数与系数范围
ISOMORPHISM_TRIES = 16
ISOMORPHISM_COEFF_BOUND = 10**6

# 符号行列式只在此维数以内计算
SYMBOLIC_DET_MAX_DIM = 6


# ---------------------------------------------------------------------------
# 多项式部分
# ---------------------------------------------------------------------------


@cache
def polynomial_ring(l: int) -> tuple[PolyRing, tuple[PolyElement, ...]]:
    """
    多项式环 QQ[ε_1,…,ε_ℓ] 及其生成元

    Raises:
        LengthMismatchError: ℓ < 1
    """
    if l < 1:
        raise LengthMismatchError(f"Hecke 代数至少需要一股: ℓ = {l}")
    R, *gens = ring([f"e{k}" for k in range(1, l + 1)], QQ)
    return R, tuple(gens)


def _coeff(value: "int | Fraction"):
    rat = to_rat(value)
    return QQ(rat.numerator, rat.denominator)


def swap_variables(p: PolyElement, i: int) -> PolyElement:
    """s_i(p)：交换 ε_i 与 ε_{i+1}"""

    def swapped(monom: tuple[int, ...]) -> tuple[int, ...]:
        exps = list(monom)
        exps[i - 1], exps[i] = exps[i], exps[i - 1]
        return tuple(exps)

    return p.ring.from_dict({swapped(m): c for m, c in p.items()})


def divided_difference(p: PolyElement, i: int) -> PolyElement:
    """Δ_i(p) = (p − s_i(p)) / (ε_i − ε_{i+1})，整除"""
    R = p.ring
    diff = p - swap_variables(p, i)
    if not diff:
        return R.zero
    return diff.exquo(R.gens[i - 1] - R.gens[i])


def evaluate_at(p: PolyElement, point: Sequence[Fraction]) -> Fraction:
    """多项式在有理点处的值"""
    total = Fraction(0)
    for monom, coeff in p.items():
        term = to_rat(coeff)
        for x, e in zip(point, monom):
            if e:
                term *= x**e
        total += term
    return total


def _accumulate(out: dict, key: Perm, value: PolyElement) -> None:
    out[key] = out[key] + value if key in out else value


def push(p: PolyElement, word: Sequence[int]) -> dict[Perm, PolyElement]:
    """
    把 p·t_{s_{i1}}⋯t_{s_{ir}} 写成群在左的正规形

    Args:
        p: QQ[ε] 中的多项式
        word: 单反射下标序列

    Returns:
        {u: q_u}，满足 p·t_word = Σ t_u·q_u
    """
    R = p.ring
    out: dict[Perm, PolyElement] = {}
    for monom, coeff in p.items():
        for u, items in _push_monomial(R.ngens, monom, tuple(word)):
            _accumulate(out, u, R.from_dict(dict(items)) * coeff)
    return {u: q for u, q in out.items() if q}


@cache
def _push_monomial(
    l: int, monom: tuple[int, ...], word: tuple[int, ...]
) -> tuple[tuple[Perm, tuple], ...]:
    R, _ = polynomial_ring(l)
    p = R.from_dict({monom: QQ(1)})
    if not word:
        return ((Perm.identity(l), tuple(p.items())),)
    i, rest = word[0], word[1:]
    s = Perm.simple(i, l)
    out: dict[Perm, PolyElement] = {}
    for u, q in push(swap_variables(p, i), rest).items():
        _accumulate(out, s * u, q)
    for u, q in push(divided_difference(p, i), rest).items():
        _accumulate(out, u, q)
    return tuple((u, tuple(q.items())) for u, q in sorted(out.items()) if q)


# ---------------------------------------------------------------------------
# 代数元素
# ---------------------------------------------------------------------------


class HeckeElt:
    """H_ℓ 的元素 Σ t_w·p_w(ε)，零多项式项被剔除"""

    __slots__ = ("l", "terms")

    def __init__(self, l: int, terms: dict[Perm, PolyElement] | None = None):
        polynomial_ring(l)
        for w in terms or {}:
            if w.m != l:
                raise LengthMismatchError(f"置换 {w} 不在 S_{l} 中")
        self.l = l
        self.terms = {w: p for w, p in (terms or {}).items() if p}

    @classmethod
    def one(cls, l: int) -> "HeckeElt":
        R, _ = polynomial_ring(l)
        return cls(l, {Perm.identity(l): R.one})

    @classmethod
    def scalar(cls, value: "int | Fraction", l: int) -> "HeckeElt":
        R, _ = polynomial_ring(l)
        return cls(l, {Perm.identity(l): R.one * _coeff(value)})

    @classmethod
    def group(cls, w: Perm) -> "HeckeElt":
        R, _ = polynomial_ring(w.m)
        return cls(w.m, {w: R.one})

    @classmethod
    def simple(cls, i: int, l: int) -> "HeckeElt":
        return cls.group(Perm.simple(i, l))

    @classmethod
    def eps(cls, k: int, l: int) -> "HeckeElt":
        """生成元 ε_k（1 起）"""
        _, gens = polynomial_ring(l)
        return cls(l, {Perm.identity(l): gens[k - 1]})

    @classmethod
    def polynomial(cls, p: PolyElement) -> "HeckeElt":
        l = p.ring.ngens
        return cls(l, {Perm.identity(l): p})

    def _coerce(self, other: "HeckeElt | int | Fraction") -> "HeckeElt":
        if isinstance(other, HeckeElt):
            if other.l != self.l:
                raise LengthMismatchError(f"股数不同: {self.l} 与 {other.l}")
            return other
        return HeckeElt.scalar(other, self.l)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "HeckeElt | int | Fraction") -> "HeckeElt":
        other = self._coerce(other)
        terms = dict(self.terms)
        for w, p in other.terms.items():
            _accumulate(terms, w, p)
        return HeckeElt(self.l, terms)

    __radd__ = __add__

    def __neg__(self) -> "HeckeElt":
        return HeckeElt(self.l, {w: -p for w, p in self.terms.items()})

    def __sub__(self, other: "HeckeElt | int | Fraction") -> "HeckeElt":
        return self + (-self._coerce(other))

    def __mul__(self, other: "HeckeElt | int | Fraction") -> "HeckeElt":
        return mul(self, self._coerce(other))

    def __rmul__(self, other: "int | Fraction") -> "HeckeElt":
        return mul(self._coerce(other), self)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = HeckeElt.scalar(other, self.l)
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return self.l == other.l and self.terms == other.terms

    __hash__ = None

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            poly = str(self.terms[w])
            if w == Perm.identity(self.l):
                parts.append(f"({poly})")
            else:
                parts.append(f"t[{w}]·({poly})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"HeckeElt({self})"


def mul(a: HeckeElt, b: HeckeElt) -> HeckeElt:
    """
    正规形乘法

    Args:
        a: 左因子
        b: 右因子

    Returns:
        a·b 的群在左正规形

    Raises:
        LengthMismatchError: 股数不同
    """
    if a.l != b.l:
        raise LengthMismatchError(f"股数不同: {a.l} 与 {b.l}")
    out: dict[Perm, PolyElement] = {}
    for w, p in a.terms.items():
        for v, q in b.terms.items():
            for u, r in push(p, v.reduced_word()).items():
                _accumulate(out, w * u, r * q)
    return HeckeElt(a.l, out)


# ---------------------------------------------------------------------------
# 模
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HModule:
    """以生成元矩阵给出的有限维 H_ℓ 模（矩阵作用在列向量上）"""

    dim: int
    s_mats: tuple[Mat, ...]
    eps_mats: tuple[Mat, ...]
    basis_labels: tuple[Perm, ...] | None = None
    name: str = ""

    @property
    def l(self) -> int:
        return len(self.eps_mats)

    def generators(self) -> tuple[Mat, ...]:
        return self.s_mats + self.eps_mats


@dataclass(frozen=True)
class WeightSpectrum:
    """联合广义 ε-特征值的多重集"""

    entries: tuple[tuple[tuple[Fraction, ...], int], ...]

    @property
    def total(self) -> int:
        return sum(mult for _, mult in self.entries)

    def weights(self) -> list[tuple[Fraction, ...]]:
        return [values for values, _ in self.entries]

    def multiplicity(self, values: Sequence[Fraction]) -> int:
        return dict(self.entries).get(tuple(values), 0)

    def is_multiplicity_free(self) -> bool:
        return all(mult == 1 for _, mult in self.entries)

    def __str__(self) -> str:
        parts = []
        for values, mult in self.entries:
            text = "(" + ",".join(format_rat(x) for x in values) + ")"
            parts.append(text if mult == 1 else f"{text}×{mult}")
        return "{" + ", ".join(parts) + "}"


@dataclass(frozen=True)
class FactorSignature:
    """合成因子的签名：中心特征、权谱、W-特征标"""

    central_character: tuple[Fraction, ...]
    spectrum: WeightSpectrum
    w_character: tuple[Fraction, ...]


@dataclass(frozen=True)
class CompositionFactor:
    module: HModule
    signature: FactorSignature
    certified: bool


@dataclass(frozen=True)
class SubmoduleLattice:
    """找到的全部子模；certified 表示已证明完备"""

    subspaces: tuple[Subspace, ...]
    certified: bool

    def __len__(self) -> int:
        return len(self.subspaces)

    def proper_nonzero(self) -> list[Subspace]:
        return [s for s in self.subspaces if 0 < s.dim < s.ambient_dim]


@dataclass(frozen=True)
class IsomorphismResult:
    """
    同构判定结果；不同构时 reason 给出理由

    certified 为假表示随机组合均不可逆且维数超出符号行列式的范围，不同构未被证明。
    """

    isomorphic: bool
    witness: Mat | None
    reason: str
    certified: bool = True

    def __bool__(self) -> bool:
        return self.isomorphic


def _fail(message: str) -> None:
    raise RelationCheckFailedError(message)


def check_relations(m: HModule, scalar_center: bool = True) -> None:
    """
    逐条验证 H_ℓ 的定义关系（精确矩阵恒等式）

    检查 s_i² = 1、辫关系、远交换、ε 两两交换、
    s_i·ε_j − ε_{s_i(j)}·s_i = ⟨α_i, ε_j⟩ 以及 Σε_k 作用为标量。

    Args:
        m: 模
        scalar_center: 是否要求 Σε_k 为标量（整个张量块上不成立）

    Raises:
        RelationCheckFailedError: 第一条不成立的关系
    """
    l, d = m.l, m.dim
    if len(m.s_mats) != max(l - 1, 0):
        _fail(f"单反射矩阵个数 {len(m.s_mats)} 与 ℓ = {l} 不符")
    for g in m.generators():
        if g.shape != (d, d):
            _fail(f"生成元矩阵形状 {g.shape} 与维数 {d} 不符")
    ident = Mat.identity(d)
    s = m.s_mats
    e = m.eps_mats
    for i, si in enumerate(s, start=1):
        if si @ si != ident:
            _fail(f"s_{i}² ≠ 1")
    for i in range(len(s) - 1):
        if s[i] @ s[i + 1] @ s[i] != s[i + 1] @ s[i] @ s[i + 1]:
            _fail(f"辫关系 s_{i + 1}s_{i + 2}s_{i + 1} 不成立")
    for i in range(len(s)):
        for j in range(i + 2, len(s)):
            if s[i] @ s[j] != s[j] @ s[i]:
                _fail(f"s_{i + 1} 与 s_{j + 1} 不交换")
    for i in range(l):
        for j in range(i + 1, l):
            if not e[i].commutator(e[j]).is_zero():
                _fail(f"ε_{i + 1} 与 ε_{j + 1} 不交换")
    for i, si in enumerate(s, start=1):
        reflection = Perm.simple(i, l)
        for j in range(1, l + 1):
            pairing = int(i == j) - int(i + 1 == j)
            lhs = si @ e[j - 1] - e[reflection(j) - 1] @ si
            if lhs != Mat.scalar(d, pairing):
                _fail(f"交叉关系 s_{i}ε_{j} − ε_{reflection(j)}s_{i} = {pairing} 不成立")
    if scalar_center and l and d:
        total = e[0]
        for ek in e[1:]:
            total = total + ek
        if total != Mat.scalar(d, total.entry(0, 0)):
            _fail("Σε_k 不是标量")


def _segment_parabolic(tau: MultisegmentClass) -> ParabolicSet:
    """规范形中各段长度给出的连续块对应的单反射集"""
    indices = []
    start = 1
    for length in tau.canonical.lengths():
        indices.extend(range(start, start + length - 1))
        start += length
    return ParabolicSet(tuple(indices))


def _coset_reduction(
    j_set: ParabolicSet, l: int, reps: Sequence[Perm]
) -> dict[Perm, tuple[Perm, int]]:
    """v = u·x（u 最小代表元，x ∈ W_J）时 v ↦ (u, sign(x))"""
    table = {}
    for u in reps:
        for x in parabolic_elements(j_set, l):
            table[u * x] = (u, -1 if x.length() % 2 else 1)
    return table


def induced_standard(tau: MultisegmentClass, l: int) -> HModule:
    """
    标准模 std(τ) = H_ℓ ⊗_{H_p} (δ ⊠ C_γ)

    基为 t_u ⊗ 1，u 取遍 W/W_p 的最小代表元（按长度、字典序）；W_p 在 1 上
    以符号特征作用，ε 在 1 上以 ζ_τ 作用。

    Args:
        tau: 多重线段类
        l: 股数

    Returns:
        维数为多项式系数 ℓ!/Πl_i! 的模

    Raises:
        LengthMismatchError: 段长之和不等于 ℓ
    """
    if tau.l != l:
        raise LengthMismatchError(f"多重线段 {tau} 的段长之和为 {tau.l}，不等于 ℓ = {l}")
    if l == 0:
        return HModule(1, (), (), None, name=f"std({tau})")

    j_set = _segment_parabolic(tau)
    reps = minimal_coset_reps(j_set, l)
    index = {u: k for k, u in enumerate(reps)}
    reduction = _coset_reduction(j_set, l, reps)
    zeta = zeta_weight(tau)
    d = len(reps)

    s_mats = []
    for i in range(1, l):
        s = Perm.simple(i, l)
        columns = []
        for u in reps:
            rep, sign = reduction[s * u]
            column = [Fraction(0)] * d
            column[index[rep]] += sign
            columns.append(column)
        s_mats.append(Mat.from_columns(columns, d))

    _, gens = polynomial_ring(l)
    eps_mats = []
    for k in range(l):
        columns = []
        for u in reps:
            column = [Fraction(0)] * d
            for v, q in push(gens[k], u.reduced_word()).items():
                rep, sign = reduction[v]
                column[index[rep]] += sign * evaluate_at(q, zeta)
            columns.append(column)
        eps_mats.append(Mat.from_columns(columns, d))

    logger.debug("std(%s): 维数 %d，W_p = %s", tau, d, j_set)
    return HModule(d, tuple(s_mats), tuple(eps_mats), tuple(reps), name=f"std({tau})")


def _group_matrix(m: HModule, w: Perm) -> Mat:
    result = Mat.identity(m.dim)
    for i in w.reduced_word():
        result = result @ m.s_mats[i - 1]
    return result


def _poly_matrix(m: HModule, p: PolyElement) -> Mat:
    total = Mat.zeros(m.dim, m.dim)
    for monom, coeff in p.items():
        term = Mat.scalar(m.dim, to_rat(coeff))
        for k, exp in enumerate(monom):
            if exp:
                term = term @ m.eps_mats[k].power(exp)
        total = total + term
    return total


def represent(elt: HeckeElt, m: HModule) -> Mat:
    """
    代数元素在模上的作用矩阵

    Raises:
        LengthMismatchError: 股数不同
    """
    if elt.l != m.l:
        raise LengthMismatchError(f"元素股数 {elt.l} 与模的股数 {m.l} 不同")
    total = Mat.zeros(m.dim, m.dim)
    for w, p in elt.terms.items():
        total = total + _group_matrix(m, w) @ _poly_matrix(m, p)
    return total


def weight_spectrum(m: HModule) -> WeightSpectrum:
    """
    ε 矩阵的联合广义特征值多重集

    Raises:
        NonCommutingError: ε 矩阵不交换
        IrrationalSpectrumError: 特征值不全为有理数
    """
    if m.l == 0:
        return WeightSpectrum(((((), m.dim),) if m.dim else ()))
    return WeightSpectrum(
        tuple(
            (values, space.dim)
            for values, space in joint_generalized_eigenspaces(m.eps_mats)
        )
    )


def central_character(m: HModule) -> tuple[Fraction, ...]:
    """
    中心特征：对称多项式所确定的多重集，按递减顺序

    Raises:
        RelationCheckFailedError: 某个初等对称多项式不以标量作用
    """
    spectrum = weight_spectrum(m)
    if not spectrum.entries:
        return ()
    point = tuple(sorted(spectrum.entries[0][0], reverse=True))
    for k in range(1, m.l + 1):
        action = Mat.zeros(m.dim, m.dim)
        expected = Fraction(0)
        for subset in combinations(range(m.l), k):
            product = Mat.identity(m.dim)
            value = Fraction(1)
            for index in subset:
                product = product @ m.eps_mats[index]
                value *= point[index]
            action = action + product
            expected += value
        if action != Mat.scalar(m.dim, expected):
            raise RelationCheckFailedError(
                f"{m.name or '模'} 上第 {k} 个初等对称多项式不以标量作用"
            )
    return point


def w_character(m: HModule) -> tuple[Fraction, ...]:
    """群元 t_w 的迹，每个共轭类取一个代表"""
    if m.l == 0:
        return (Fraction(m.dim),)
    return tuple(_group_matrix(m, w).trace() for w in class_representatives(m.l))


def factor_signature(m: HModule) -> FactorSignature:
    return FactorSignature(central_character(m), weight_spectrum(m), w_character(m))


def dual(m: HModule) -> HModule:
    """
    对偶模 M*

    t_w ↦ t_{w⁻¹}、ε ↦ ε 是 H_ℓ 的反自同构，因此生成元取转置即为模结构。
    """
    return HModule(
        m.dim,
        tuple(g.transpose() for g in m.s_mats),
        tuple(g.transpose() for g in m.eps_mats),
        None,
        name=f"{m.name}*",
    )


def restrict(m: HModule, sub: Subspace) -> HModule:
    """子模在其规范基下的模结构"""
    return HModule(
        sub.dim,
        tuple(sub.restrict(g) for g in m.s_mats),
        tuple(sub.restrict(g) for g in m.eps_mats),
        None,
        name=f"{m.name}|{sub.dim}",
    )


def quotient(m: HModule, sub: Subspace) -> HModule:
    """商模 M/sub，以非主元标准基向量的像为基"""
    return HModule(
        m.dim - sub.dim,
        tuple(sub.quotient_action(g) for g in m.s_mats),
        tuple(sub.quotient_action(g) for g in m.eps_mats),
        None,
        name=f"{m.name}/{sub.dim}",
    )


def direct_sum(a: HModule, b: HModule) -> HModule:
    if a.l != b.l:
        raise LengthMismatchError(f"股数不同: {a.l} 与 {b.l}")
    return HModule(
        a.dim + b.dim,
        tuple(Mat.block_diag([x, y]) for x, y in zip(a.s_mats, b.s_mats)),
        tuple(Mat.block_diag([x, y]) for x, y in zip(a.eps_mats, b.eps_mats)),
        None,
        name=f"{a.name}⊕{b.name}",
    )


# ---------------------------------------------------------------------------
# 子模
# ---------------------------------------------------------------------------


def spin(m: HModule, vectors: Sequence[Sequence[Fraction]]) -> Subspace:
    """由给定向量生成的子模"""
    return invariant_closure(m.generators(), Subspace.span(vectors, m.dim))


def eigenvector_spaces(m: HModule) -> list[tuple[tuple[Fraction, ...], Subspace]]:
    """每个联合特征值处真正的公共特征向量空间"""
    if m.l == 0:
        return [((), Subspace.full(m.dim))] if m.dim else []
    result = []
    for values, _ in joint_generalized_eigenspaces(m.eps_mats):
        rows = [
            row
            for eps, value in zip(m.eps_mats, values)
            for row in (eps - Mat.scalar(m.dim, value)).to_rows()
        ]
        space = Subspace.span(nullspace(Mat.from_rows(rows, cols=m.dim)), m.dim)
        result.append((values, space))
    return result


def _seed_vectors(
    space: Subspace, max_seeds: int, rng: random.Random
) -> Iterator[Vector]:
    yield from space.basis
    if space.dim < 2:
        return
    for _ in range(max_seeds):
        coeffs = [Fraction(rng.randint(-5, 5)) for _ in range(space.dim)]
        if any(coeffs):
            yield space.lift(coeffs)


def _proper_from_seeds(
    m: HModule, max_seeds: int, rng: random.Random
) -> Subspace | None:
    for _, space in eigenvector_spaces(m):
        for vector in _seed_vectors(space, max_seeds, rng):
            sub = spin(m, [vector])
            if sub.dim < m.dim:
                return sub
    return None


def find_submodule(
    m: HModule, max_seeds: int = DEFAULT_MAX_SEEDS, seed: int = DEFAULT_SEED
) -> Subspace | None:
    """
    寻找一个非零真子模

    先从每个权重的公共特征向量（及其随机组合）生成循环子模；找不到时在对偶模
    上做同样的事，对偶子模的零化子即为原模的真子模。

    Args:
        m: 模
        max_seeds: 每个权重额外尝试的随机组合个数
        seed: 随机数种子

    Returns:
        真子模；未找到时返回 None
    """
    if m.dim <= 1:
        return None
    rng = random.Random(seed)
    sub = _proper_from_seeds(m, max_seeds, rng)
    if sub is not None:
        return sub
    dual_sub = _proper_from_seeds(dual(m), max_seeds, rng)
    if dual_sub is not None:
        return dual_sub.annihilator()
    return None


def certify_irreducible(m: HModule) -> bool:
    """
    不可约性证书

    若某个权重 χ 在 M 与 M* 中的公共特征向量空间都是一维的，且两条特征线
    分别生成整个 M 与 M*，则 M 不可约：任一非零真子模 S 与 χ 的广义特征空间
    交为零，于是 S 的零化子包含 M* 的 χ 特征线，从而是整个 M*。
    """
    if m.dim <= 1:
        return True
    dual_lines = dict(eigenvector_spaces(dual(m)))
    for values, space in eigenvector_spaces(m):
        dual_space = dual_lines.get(values)
        if space.dim != 1 or dual_space is None or dual_space.dim != 1:
            continue
        if spin(m, space.basis).is_full() and spin(dual(m), dual_space.basis).is_full():
            return True
    return False


def submodule_lattice(
    m: HModule, max_seeds: int = DEFAULT_MAX_SEEDS, seed: int = DEFAULT_SEED
) -> SubmoduleLattice:
    """
    子模格

    权谱无重数时每个子模都是若干特征线之和，枚举特征线生成的循环子模的
    全部和即完备；否则额外加入随机种子并标记为未证明。

    Returns:
        按 (维数, 基) 排序的子空间列表及完备性标记
    """
    rng = random.Random(seed)
    certified = weight_spectrum(m).is_multiplicity_free()
    extra = 0 if certified else max_seeds
    cyclic = set()
    for _, space in eigenvector_spaces(m):
        for vector in _seed_vectors(space, extra, rng):
            cyclic.add(spin(m, [vector]))
    lattice = {Subspace.zero(m.dim)}
    for c in sorted(cyclic, key=lambda s: (s.dim, s.basis)):
        lattice |= {s + c for s in lattice}
    lattice.add(Subspace.full(m.dim))
    if not certified:
        logger.info("%s 的权谱有重数，子模格未证明完备", m.name or "模")
    return SubmoduleLattice(
        tuple(sorted(lattice, key=lambda s: (s.dim, s.basis))), certified
    )


def composition_factors(
    m: HModule, max_seeds: int = DEFAULT_MAX_SEEDS, seed: int = DEFAULT_SEED
) -> list[CompositionFactor]:
    """
    合成因子（自下而上）

    Args:
        m: 模
        max_seeds: 见 find_submodule
        seed: 随机数种子

    Returns:
        因子列表，维数之和等于 dim(m)
    """
    if m.dim == 0:
        return []
    sub = find_submodule(m, max_seeds, seed)
    if sub is None:
        certified = certify_irreducible(m)
        if not certified:
            logger.warning("种子已用尽，未能证明 %s 不可约", m.name or "模")
        return [CompositionFactor(m, factor_signature(m), certified)]
    return composition_factors(restrict(m, sub), max_seeds, seed) + composition_factors(
        quotient(m, sub), max_seeds, seed
    )


def irr_quotient(
    m: HModule, max_seeds: int = DEFAULT_MAX_SEEDS, seed: int = DEFAULT_SEED
) -> HModule:
    """
    由生成元 𝟙（第一个基向量）生成的模的唯一不可约商

    在 M* 中逐层取真子模直到不可约，得到极小子模 S；J = S 的零化子即不含 𝟙
    的极大子模，返回 M/J。

    Raises:
        NotCyclicError: 𝟙 不生成整个模
        ConsistencyError: 求得的 J 含 𝟙 或商不可约性被否定
    """
    d = m.dim
    one = tuple(Fraction(int(k == 0)) for k in range(d))
    if d == 0 or not spin(m, [one]).is_full():
        raise NotCyclicError(f"{m.name or '模'} 不由第一个基向量生成")

    module = dual(m)
    frame: list[Vector] = list(Subspace.full(d).basis)
    while True:
        sub = find_submodule(module, max_seeds, seed)
        if sub is None:
            break
        frame = [
            tuple(
                sum((c * v[i] for c, v in zip(local, frame)), Fraction(0))
                for i in range(d)
            )
            for local in sub.basis
        ]
        module = restrict(module, sub)
    socle = Subspace.span(frame, d)
    radical = socle.annihilator()
    if radical.contains(one):
        raise ConsistencyError(f"{m.name or '模'} 的极大子模包含生成元")

    result = quotient(m, radical)
    result = HModule(
        result.dim, result.s_mats, result.eps_mats, None, name=f"irr({m.name})"
    )
    if find_submodule(result, max_seeds, seed) is not None:
        raise ConsistencyError(f"{result.name} 不是不可约的")
    if not certify_irreducible(result):
        logger.warning("未能证明 %s 不可约", result.name)
    return result


# ---------------------------------------------------------------------------
# 同构
# ---------------------------------------------------------------------------


def _intertwiner_rows(a: HModule, b: HModule) -> list[list[Fraction]]:
    """T·g_a = g_b·T 的系数行，未知数 T_{ik} 的下标为 i·d + k"""
    d = a.dim
    rows = []
    for ga, gb in zip(a.generators(), b.generators()):
        left = ga.to_rows()
        right = gb.to_rows()
        for i in range(d):
            for j in range(d):
                row = [Fraction(0)] * (d * d)
                for k in range(d):
                    row[i * d + k] += left[k][j]
                    row[k * d + j] -= right[i][k]
                if any(row):
                    rows.append(row)
    return rows


def _as_matrix(vector: Vector, d: int) -> Mat:
    return Mat.from_rows([vector[i * d : (i + 1) * d] for i in range(d)], cols=d)


def is_isomorphic(
    a: HModule, b: HModule, seed: int = DEFAULT_SEED
) -> IsomorphismResult:
    """
    模同构判定

    解 T·g_a = g_b·T（对全部生成元同时成立），在解空间中寻找可逆元。

    Args:
        a: 模
        b: 模
        seed: 随机组合的种子

    Returns:
        同构时附带可逆见证 T；否则附带理由
    """
    if a.l != b.l or a.dim != b.dim:
        return IsomorphismResult(False, None, f"维数不同: {a.dim} 与 {b.dim}")
    if weight_spectrum(a) != weight_spectrum(b):
        return IsomorphismResult(False, None, "权谱不同")
    d = a.dim
    if d == 0:
        return IsomorphismResult(True, Mat.zeros(0, 0), "")

    rows = _intertwiner_rows(a, b)
    basis = [_as_matrix(v, d) for v in solve_homogeneous(rows, d * d)]
    if not basis:
        return IsomorphismResult(False, None, "Hom 为零")
    for candidate in basis:
        if candidate.det() != 0:
            return IsomorphismResult(True, candidate, "")

    rng = random.Random(seed)
    bound = ISOMORPHISM_COEFF_BOUND
    for _ in range(ISOMORPHISM_TRIES):
        combo = Mat.zeros(d, d)
        for t in basis:
            combo = combo + t.scale(rng.randint(-bound, bound))
        if combo.det() != 0:
            return IsomorphismResult(True, combo, "")

    if d <= SYMBOLIC_DET_MAX_DIM:
        symbols = sympy.symbols(f"c0:{len(basis)}")
        generic = sympy.zeros(d, d)
        for t, c in zip(basis, symbols):
            generic += sympy.Matrix(
                [
                    [sympy.Rational(x.numerator, x.denominator) for x in row]
                    for row in t.to_rows()
                ]
            ) * c
        if sympy.expand(generic.det(method="berkowitz")) == 0:
            return IsomorphismResult(False, None, "Hom 中没有可逆元（行列式恒为零）")
        logger.warning("Hom 的一般行列式非零但随机组合均不可逆")
        return IsomorphismResult(True, None, "Hom 的一般行列式非零（无见证）")
    return IsomorphismResult(
        False, None, "Hom 中没有找到可逆元（随机检验）", certified=False
    )
