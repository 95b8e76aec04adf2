"""
Verma 模的权空间块

M(μ) 的权空间以 PBW 单项式 f_{β1}⋯f_{βk}·v_μ 为基（正根按字典序，下标不减）。
g 的矩阵单位 E_ab 通过交换子逐项拉直作用在单项式上。张量块是
M(μ)⊗V^⊗ℓ 中权为 λ 的子空间，基为 (单项式, 字) 对。

Cartan 元在 M(μ) 上按和为零的 gl 代表元作用，在 V 的每个张量因子上按
E_aa v_c = δ_ac v_c 作用，因此整个张量积的迹为 ℓ。
"""

from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache, cached_property
from itertools import product
from math import comb

from .errors import BlockRangeExceededError, UnresolvedCollisionError
from .exactlin import Mat, Subspace, Vector, generalized_eigenspace
from .logger import get_logger
from .weights import (
    Weight,
    dot_orbit,
    kostant_partition,
    positive_roots,
    rho,
    simple_root_coordinates,
    tensor_filtration,
)

logger = get_logger(__name__)

# (单项式的根下标元组, V 上的字)
TensorKey = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True, order=True)
class PBWMonomial:
    """负根向量的有序乘积，factors 为不减的正根下标（0 起）"""

    factors: tuple[int, ...] = ()

    def exponents(self, n: int) -> tuple[int, ...]:
        counts = [0] * len(positive_roots(n))
        for r in self.factors:
            counts[r] += 1
        return tuple(counts)

    def weight(self, n: int) -> Weight:
        """单项式的权 −Σβ"""
        coords = [Fraction(0)] * n
        for r in self.factors:
            a, b = positive_roots(n)[r]
            coords[a - 1] -= 1
            coords[b - 1] += 1
        return Weight(tuple(coords))

    def render(self, n: int) -> str:
        if not self.factors:
            return "1"
        roots = positive_roots(n)
        parts = []
        for r, count in enumerate(self.exponents(n)):
            if count:
                a, b = roots[r]
                parts.append(f"f{a}{b}" + (f"^{count}" if count > 1 else ""))
        return "·".join(parts)


@dataclass(frozen=True)
class VermaBlock:
    """M(μ)_γ 的 PBW 基"""

    mu: Weight
    gamma: Weight
    basis: tuple[PBWMonomial, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class CentralCharData:
    """二次 Casimir 与 Gelfand 不变量（3..n 次）在 M(μ) 上的作用标量"""

    casimir_value: Fraction
    higher_values: tuple[Fraction, ...] = ()


def _root_index(n: int, a: int, b: int) -> int:
    return positive_roots(n).index((a, b))


@cache
def _monomials(
    n: int, index: int, remaining: tuple[int, ...]
) -> tuple[tuple[int, ...], ...]:
    if all(c == 0 for c in remaining):
        return ((),)
    roots = positive_roots(n)
    if index == len(roots):
        return ()
    a, b = roots[index]
    result = []
    count = 0
    current = remaining
    while all(c >= 0 for c in current):
        tails = _monomials(n, index + 1, current)
        result.extend((index,) * count + tail for tail in tails)
        current = tuple(c - 1 if a <= i + 1 < b else c for i, c in enumerate(current))
        count += 1
    return tuple(result)


def verma_basis(mu: Weight, gamma: Weight) -> VermaBlock:
    """
    M(μ)_γ 的全部 PBW 单项式

    Args:
        mu: 最高权
        gamma: 目标权

    Returns:
        单项式按根下标元组的字典序排列；μ−γ 不在正根锥的整点中时基为空
    """
    coords = simple_root_coordinates(mu - gamma)
    if any(c.denominator != 1 or c < 0 for c in coords):
        return VermaBlock(mu, gamma, ())
    monomials = _monomials(mu.n, 0, tuple(int(c) for c in coords))
    return VermaBlock(mu, gamma, tuple(PBWMonomial(m) for m in sorted(monomials)))


def _add(out: dict, key, value: Fraction) -> None:
    total = out.get(key, Fraction(0)) + value
    if total:
        out[key] = total
    else:
        out.pop(key, None)


@cache
def _left_mult(
    n: int, r: int, mono: tuple[int, ...]
) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    """f_r · f_mono 的 PBW 正规形"""
    if not mono or r <= mono[0]:
        return (((r, *mono), Fraction(1)),)
    first, rest = mono[0], mono[1:]
    out: dict[tuple[int, ...], Fraction] = {}
    # f_r f_first = f_first f_r + [f_r, f_first]
    for m, c in _left_mult(n, r, rest):
        for m2, c2 in _left_mult(n, first, m):
            _add(out, m2, c * c2)
    a, b = positive_roots(n)[r]
    c_, d = positive_roots(n)[first]
    # [E_ba, E_dc] = δ_ad E_bc − δ_cb E_da
    if a == d:
        for m, c in _left_mult(n, _root_index(n, c_, b), rest):
            _add(out, m, c)
    if c_ == b:
        for m, c in _left_mult(n, _root_index(n, a, d), rest):
            _add(out, m, -c)
    return tuple(sorted(out.items()))


@cache
def _act(
    mu: tuple[Fraction, ...], x: int, y: int, mono: tuple[int, ...]
) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    """E_xy · (f_mono v_μ)，mu 为最高权的 gl 坐标"""
    n = len(mu)
    if x > y:
        return _left_mult(n, _root_index(n, y, x), mono)
    if x == y:
        value = mu[x - 1]
        for r in mono:
            a, b = positive_roots(n)[r]
            value += int(x == b) - int(x == a)
        return ((mono, value),) if value else ()
    if not mono:
        return ()
    first, rest = mono[0], mono[1:]
    c_, d = positive_roots(n)[first]
    out: dict[tuple[int, ...], Fraction] = {}
    for m, c in _act(mu, x, y, rest):
        for m2, c2 in _left_mult(n, first, m):
            _add(out, m2, c * c2)
    # [E_xy, E_dc] = δ_yd E_xc − δ_cx E_dy
    if y == d:
        for m, c in _act(mu, x, c_, rest):
            _add(out, m, c)
    if c_ == x:
        for m, c in _act(mu, d, y, rest):
            _add(out, m, -c)
    return tuple(sorted(out.items()))


def _apply_slot(
    mu: tuple[Fraction, ...], x: int, y: int, slot: int, key: TensorKey
) -> dict[TensorKey, Fraction]:
    mono, word = key
    if slot == 0:
        return {(m, word): c for m, c in _act(mu, x, y, mono)}
    if word[slot - 1] != y:
        return {}
    return {(mono, word[: slot - 1] + (x,) + word[slot:]): Fraction(1)}


def act(
    x: int,
    y: int,
    vector: Mapping[TensorKey, Fraction],
    mu: Weight,
    slots: "tuple[int, ...] | None" = None,
) -> dict[TensorKey, Fraction]:
    """
    矩阵单位 E_xy 在 M(μ)⊗V^⊗ℓ 上的作用（各张量因子上按 Leibniz 法则求和）

    Args:
        x: 行下标（1 起）
        y: 列下标（1 起）
        vector: 以 (单项式, 字) 为键的稀疏向量；Verma 模本身的向量取空字
        mu: Verma 因子的最高权
        slots: 只作用在这些因子上（0 为 Verma 因子）；默认全部

    Returns:
        像向量
    """
    out: dict[TensorKey, Fraction] = {}
    coords = mu.coords
    for key, coeff in vector.items():
        chosen = slots if slots is not None else range(len(key[1]) + 1)
        for slot in chosen:
            for image, c in _apply_slot(coords, x, y, slot, key).items():
                _add(out, image, coeff * c)
    return out


@cache
def cartan_dual_pairs(n: int) -> tuple[tuple[int, int, Fraction], ...]:
    """
    sl_n Cartan 子代数上迹形式的对偶

    基取 H_k = E_kk − E_{k+1,k+1}（k = 1..n−1），对偶基由 Gram 矩阵
    tr(H_k H_m) 求逆得到。

    Returns:
        (k, m, c) 三元组，Cartan 部分的对偶和为 Σ c·H_k⊗H_m
    """
    if n < 2:
        return ()
    gram = Mat.from_rows(
        [
            [2 if k == m else -1 if abs(k - m) == 1 else 0 for m in range(n - 1)]
            for k in range(n - 1)
        ]
    )
    inverse = gram.inverse()
    return tuple(
        (k + 1, m + 1, inverse.entry(k, m))
        for k in range(n - 1)
        for m in range(n - 1)
        if inverse.entry(k, m)
    )


def casimir_value(mu: Weight) -> Fraction:
    """⟨μ+ρ, μ+ρ⟩ − ⟨ρ, ρ⟩"""
    shifted = mu + rho(mu.n)
    return shifted.pairing(shifted) - rho(mu.n).pairing(rho(mu.n))


def _central_value(coords: tuple[Fraction, ...], k: int) -> Fraction:
    """Gelfand 不变量 Σ E_{a1a2}⋯E_{aka1} 作用在最高权向量上的标量"""
    n = len(coords)
    total = Fraction(0)
    for path in product(range(1, n + 1), repeat=k):
        vector: dict[tuple[int, ...], Fraction] = {(): Fraction(1)}
        for step in range(k - 1, -1, -1):
            x, y = path[step], path[(step + 1) % k]
            image: dict[tuple[int, ...], Fraction] = {}
            for mono, c in vector.items():
                for m, c2 in _act(coords, x, y, mono):
                    _add(image, m, c * c2)
            vector = image
            if not vector:
                break
        total += vector.get((), Fraction(0))
    return total


def casimir_data(mu: Weight, total: "int | Fraction" = 0) -> CentralCharData:
    """
    中心元在 M(μ) 上的作用标量，直接作用于最高权向量求得

    Args:
        mu: 最高权
        total: gl 代表元的迹（张量积 M(μ)⊗V^⊗ℓ 中取 ℓ）

    Returns:
        sl_n 二次 Casimir 的值，以及 3..n 次 Gelfand 不变量的值
    """
    coords = mu.gl_representative(total)
    n = mu.n
    quadratic = _central_value(coords, 2) - Fraction(total) ** 2 / n
    higher = tuple(_central_value(coords, k) for k in range(3, n + 1))
    return CentralCharData(quadratic, higher)


@dataclass(frozen=True)
class TensorBlock:
    """(M(μ)⊗V^⊗ℓ)_λ，基为 (单项式, 字) 对"""

    mu: Weight
    lam: Weight
    l: int
    basis: tuple[TensorKey, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def n(self) -> int:
        return self.mu.n

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def index(self) -> dict[TensorKey, int]:
        return {key: k for k, key in enumerate(self.basis)}

    def vector(self, coords: Vector) -> dict[TensorKey, Fraction]:
        return {key: c for key, c in zip(self.basis, coords) if c}

    def coordinates(self, vector: Mapping[TensorKey, Fraction]) -> Vector:
        """
        稀疏向量在本块基下的坐标

        Raises:
            BlockRangeExceededError: 向量不在本块中
        """
        result = [Fraction(0)] * self.dim
        for key, c in vector.items():
            if key not in self.index:
                raise BlockRangeExceededError(f"向量分量 {key} 不在权 {self.lam} 的块中")
            result[self.index[key]] = c
        return tuple(result)

    def operator(self, apply) -> Mat:
        """把保权的线性映射 apply(dict) -> dict 写成矩阵"""
        columns = [
            self.coordinates(apply({key: Fraction(1)})) for key in self.basis
        ]
        return Mat.from_columns(columns, self.dim)

    def cartan(self, a: int) -> Mat:
        """E_aa 的作用（对角）"""
        return self.operator(lambda v: act(a, a, v, self.mu))

    def slot_pairing(self, i: int, j: int) -> Mat:
        """
        Σ_{a,b} E_ab^{(i)} E_ba^{(j)}：gl_n 迹形式对偶基在第 i、j 个因子上的和

        与 sl_slot_pairing 相差 (1/n)·I^{(i)} I^{(j)}，I = Σ E_aa：含 Verma 因子时
        两者相等，两个 V 因子之间相差常数 1/n。Θ 取本形式，Θ(s_i)² = 1。
        """
        key = ("pair", i, j)
        if key not in self._cache:
            n = self.n

            def apply(vector: dict) -> dict:
                out: dict[TensorKey, Fraction] = {}
                for a in range(1, n + 1):
                    for b in range(1, n + 1):
                        inner = act(b, a, vector, self.mu, slots=(j,))
                        for image, c in act(a, b, inner, self.mu, slots=(i,)).items():
                            _add(out, image, c)
                return out

            self._cache[key] = self.operator(apply)
        return self._cache[key]

    def sl_slot_pairing(self, i: int, j: int) -> Mat:
        """sl_n 迹形式对偶基在第 i、j 个因子上的和（Cartan 部分用 Gram 逆）"""
        key = ("sl-pair", i, j)
        if key not in self._cache:
            n = self.n
            mu = self.mu

            def cartan(k: int, vector: dict, slot: int) -> dict:
                out = act(k, k, vector, mu, slots=(slot,))
                for image, c in act(k + 1, k + 1, vector, mu, slots=(slot,)).items():
                    _add(out, image, -c)
                return out

            def apply(vector: dict) -> dict:
                out: dict[TensorKey, Fraction] = {}
                for a in range(1, n + 1):
                    for b in range(1, n + 1):
                        if a == b:
                            continue
                        inner = act(b, a, vector, mu, slots=(j,))
                        for image, c in act(a, b, inner, mu, slots=(i,)).items():
                            _add(out, image, c)
                for k, m, coeff in cartan_dual_pairs(n):
                    for image, c in cartan(k, cartan(m, vector, j), i).items():
                        _add(out, image, coeff * c)
                return out

            self._cache[key] = self.operator(apply)
        return self._cache[key]

    def casimir_matrix(self) -> Mat:
        """
        sl_n 二次 Casimir 在块上的矩阵

        C = c(μ) + ℓ·c(ε_1) − (2/n)·C(ℓ,2) + 2·Σ_{i<j} Ω_ij，其中 Ω_ij 为 gl 对偶基和
        （V 因子的迹为 1，Verma 因子的迹为 0）。
        """
        if "casimir" not in self._cache:
            n = self.n
            omega1 = Weight(tuple(Fraction(int(k == 0)) for k in range(n)))
            scalar = (
                casimir_value(self.mu)
                + self.l * casimir_value(omega1)
                - Fraction(2 * comb(self.l, 2), n)
            )
            total = Mat.scalar(self.dim, scalar)
            for i in range(self.l + 1):
                for j in range(i + 1, self.l + 1):
                    total = total + self.slot_pairing(i, j).scale(2)
            self._cache["casimir"] = total
        return self._cache["casimir"]

    def gelfand_matrix(self, k: int) -> Mat:
        """k 次 Gelfand 不变量 Σ E_{a1a2}⋯E_{aka1} 在块上的矩阵"""
        n = self.n

        def apply(vector: dict) -> dict:
            out: dict[TensorKey, Fraction] = {}
            for path in product(range(1, n + 1), repeat=k):
                current = dict(vector)
                for step in range(k - 1, -1, -1):
                    current = act(path[step], path[(step + 1) % k], current, self.mu)
                    if not current:
                        break
                for image, c in current.items():
                    _add(out, image, c)
            return out

        return self.operator(apply)


def _word_weight(word: tuple[int, ...], n: int) -> Weight:
    counts = [0] * n
    for letter in word:
        counts[letter - 1] += 1
    return Weight(tuple(Fraction(c) for c in counts))


def tensor_block(mu: Weight, lam: Weight, l: int) -> TensorBlock:
    """
    构造 (M(μ)⊗V^⊗ℓ)_λ

    Args:
        mu: Verma 因子的最高权
        lam: 目标权
        l: 张量次数

    Returns:
        基按字的字典序、再按单项式排列的块
    """
    n = mu.n
    basis = []
    for word in product(range(1, n + 1), repeat=l):
        gamma = lam - _word_weight(word, n)
        for mono in verma_basis(mu, gamma).basis:
            basis.append((mono.factors, word))
    return TensorBlock(mu, lam, l, tuple(basis))


def root_weight(n: int, x: int, y: int) -> Weight:
    """ε_x − ε_y"""
    return Weight(tuple(Fraction(int(k == x) - int(k == y)) for k in range(1, n + 1)))


class TensorSpace:
    """M(μ)⊗V^⊗ℓ 中已分配的权空间块"""

    def __init__(self, mu: Weight, l: int):
        self.mu = mu
        self.l = l
        self._blocks: dict[Weight, TensorBlock] = {}

    def allocate(self, lam: Weight) -> TensorBlock:
        if lam not in self._blocks:
            self._blocks[lam] = tensor_block(self.mu, lam, self.l)
        return self._blocks[lam]

    def block(self, lam: Weight) -> TensorBlock:
        """
        Raises:
            BlockRangeExceededError: 该权的块尚未分配
        """
        if lam not in self._blocks:
            raise BlockRangeExceededError(f"权 {lam} 的块尚未分配")
        return self._blocks[lam]

    def act(self, x: int, y: int, lam: Weight, coords: Vector) -> Vector:
        """E_xy 把权 λ 块中的向量映到权 λ+ε_x−ε_y 的块"""
        source = self.block(lam)
        target = self.block(lam + root_weight(self.mu.n, x, y))
        return target.coordinates(act(x, y, source.vector(coords), self.mu))

    def g_matrix(self, x: int, y: int, lam: Weight) -> Mat:
        """E_xy: 块(λ) → 块(λ+ε_x−ε_y) 的矩阵"""
        source = self.block(lam)
        target = self.block(lam + root_weight(self.mu.n, x, y))
        columns = [
            target.coordinates(act(x, y, {key: Fraction(1)}, self.mu))
            for key in source.basis
        ]
        if not columns:
            return Mat.zeros(target.dim, 0)
        return Mat.from_columns(columns, target.dim)


def expected_projection_dim(tb: TensorBlock) -> int:
    """
    由 Verma 滤过独立算出的投影维数

    M(μ)⊗V^⊗ℓ 有以 M(μ+ν) 为子商的滤过；属于 W•λ 的子商在权 λ 处贡献
    重数 × Kostant 分拆数。
    """
    orbit = set(dot_orbit(tb.lam))
    return sum(
        mult * kostant_partition(gamma - tb.lam)
        for gamma, mult in tensor_filtration(tb.mu, tb.l)
        if gamma in orbit
    )


def block_projection(tb: TensorBlock) -> Subspace:
    """
    块中中心特征为 χ_λ 的部分

    先取 Casimir 矩阵在 c(λ) 处的广义特征空间；维数与 Verma 滤过给出的期望值
    不符时，依次与 3..n 次 Gelfand 不变量的广义特征空间相交。

    Raises:
        UnresolvedCollisionError: n 次以内的不变量都不能分离
    """
    if tb.dim == 0:
        return Subspace.zero(0)
    expected = expected_projection_dim(tb)
    space = generalized_eigenspace(tb.casimir_matrix(), casimir_value(tb.lam))
    if space.dim == expected:
        return space
    logger.info(
        "Casimir 碰撞: 块 μ=%s λ=%s 的特征空间维数 %d，期望 %d",
        tb.mu,
        tb.lam,
        space.dim,
        expected,
    )
    data = casimir_data(tb.lam, total=tb.l)
    for k, value in enumerate(data.higher_values, start=3):
        local = space.restrict(tb.gelfand_matrix(k))
        space = space.lift_subspace(generalized_eigenspace(local, value))
        if space.dim == expected:
            logger.info("碰撞由 %d 次 Gelfand 不变量分离", k)
            return space
    raise UnresolvedCollisionError(
        f"μ={tb.mu} λ={tb.lam} ℓ={tb.l}: {tb.n} 次以内的中心元不能分离块"
        f"（维数 {space.dim}，期望 {expected}）"
    )


def gl_casimir_difference(tb: TensorBlock, i: int, j: int) -> Mat:
    """
    Ω_ij 的独立构造：½(Δ(C) − C_i − C_j)，C = Σ E_ab E_ba 为 gl_n Casimir

    Args:
        tb: 张量块
        i: 因子下标（0 为 Verma 因子）
        j: 因子下标

    Returns:
        与 slot_pairing(i, j) 应当相等的矩阵
    """
    n = tb.n

    def casimir_on(slots: tuple[int, ...]):
        def apply(vector: dict) -> dict:
            out: dict[TensorKey, Fraction] = {}
            for a in range(1, n + 1):
                for b in range(1, n + 1):
                    inner = act(b, a, vector, tb.mu, slots=slots)
                    for image, c in act(a, b, inner, tb.mu, slots=slots).items():
                        _add(out, image, c)
            return out

        return tb.operator(apply)

    diff = casimir_on((i, j)) - casimir_on((i,)) - casimir_on((j,))
    return diff.scale(Fraction(1, 2))
