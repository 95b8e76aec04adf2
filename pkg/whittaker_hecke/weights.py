"""
sl_n 权重运算

权重以坐标和为零的代表元存储（模去全 1 方向）。提供点作用、支配性、
稳定子、V^⊗ℓ 的权重重数、张量数据 (ℓ_1,…,ℓ_n) 以及 Kostant 分拆函数。
"""

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from itertools import combinations_with_replacement

from .errors import LiteralParseError, NotDominantError
from .exactlin import format_rat, to_rat
from .weyl import ParabolicSet, Perm, all_perms


@dataclass(frozen=True, order=True)
class Weight:
    """h* 中的权重，坐标和为零的规范代表元"""

    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coords = tuple(to_rat(x) for x in self.coords)
        if coords:
            mean = sum(coords, Fraction(0)) / len(coords)
            coords = tuple(x - mean for x in coords)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def zero(cls, n: int) -> "Weight":
        return cls((Fraction(0),) * n)

    @classmethod
    def parse(cls, literal: str, n: int | None = None) -> "Weight":
        """
        解析逗号分隔的有理数列表，例如 "1/2,-1/2"

        Args:
            literal: 字面量
            n: 期望的坐标个数（可选）

        Raises:
            LiteralParseError: 格式错误或个数不符
        """
        try:
            coords = tuple(
                Fraction(part) for part in literal.replace(" ", "").split(",")
            )
        except (ValueError, ZeroDivisionError) as e:
            raise LiteralParseError(f"权重字面量格式错误: {literal!r}") from e
        if n is not None and len(coords) != n:
            raise LiteralParseError(f"权重坐标个数应为 {n}，实际 {len(coords)}: {literal!r}")
        return cls(coords)

    @property
    def n(self) -> int:
        return len(self.coords)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def __str__(self) -> str:
        return ",".join(format_rat(x) for x in self.coords)

    def gl_representative(self, total: "int | Fraction") -> tuple[Fraction, ...]:
        """坐标和为 total 的 gl_n 代表元"""
        shift = Fraction(total) / self.n
        return tuple(x + shift for x in self.coords)

    def pairing(self, other: "Weight") -> Fraction:
        """迹形式下的配对（在和为零的代表元上取标准内积）"""
        return sum((a * b for a, b in zip(self.coords, other.coords)), Fraction(0))


@dataclass(frozen=True)
class TensorWeightDatum:
    """V^⊗ℓ 的权重 Σℓ_iε_i 的系数 (ℓ_1,…,ℓ_n)"""

    counts: tuple[int, ...]

    @property
    def l(self) -> int:
        return sum(self.counts)

    def multinomial(self) -> int:
        result = math.factorial(self.l)
        for c in self.counts:
            result //= math.factorial(c)
        return result

    def weight(self) -> Weight:
        return Weight(tuple(Fraction(c) for c in self.counts))


def rho(n: int) -> Weight:
    """ρ = ((n−1)/2, (n−3)/2, …, −(n−1)/2)"""
    return Weight(tuple(Fraction(n - 1 - 2 * i, 2) for i in range(n)))


def plus_rho(lam: Weight) -> tuple[Fraction, ...]:
    """λ+ρ 的和为零坐标"""
    return (lam + rho(lam.n)).coords


def dot_action(w: Perm, lam: Weight) -> Weight:
    """
    点作用 w•λ = w(λ+ρ) − ρ

    Args:
        w: S_n 中的置换
        lam: 权重

    Returns:
        规范代表元
    """
    if w.m != lam.n:
        raise LiteralParseError(f"置换大小 {w.m} 与权重维数 {lam.n} 不一致")
    shifted = lam + rho(lam.n)
    return Weight(w.act(shifted.coords)) - rho(lam.n)


def dot_orbit(lam: Weight) -> list[Weight]:
    """W•λ 的全部元素（去重后排序）"""
    return sorted({dot_action(w, lam) for w in all_perms(lam.n)})


def is_dominant(lam: Weight) -> bool:
    values = plus_rho(lam)
    return all(values[i] >= values[i + 1] for i in range(len(values) - 1))


def is_integral(lam: Weight) -> bool:
    """相邻坐标差全为整数"""
    c = lam.coords
    return all((c[i] - c[i + 1]).denominator == 1 for i in range(len(c) - 1))


def is_integral_spaced(values: Sequence[Fraction]) -> bool:
    return all((values[0] - v).denominator == 1 for v in values)


def stabilizer(lam: Weight) -> ParabolicSet:
    """
    λ+ρ 的稳定子对应的单反射集

    Args:
        lam: 支配权重

    Returns:
        满足 (λ+ρ)_i = (λ+ρ)_{i+1} 的下标 i 的集合

    Raises:
        NotDominantError: λ+ρ 不是弱递减
    """
    if not is_dominant(lam):
        raise NotDominantError(f"权重不是支配的: λ+ρ = {Weight(plus_rho(lam))}")
    values = plus_rho(lam)
    return ParabolicSet(
        tuple(i for i in range(1, lam.n) if values[i - 1] == values[i])
    )


def center_datum(lam: Weight, eta: ParabolicSet) -> tuple[Fraction, ...]:
    """λ 在 l_η 中心上的限制：按 η 的块求坐标和"""
    return tuple(
        sum((lam.coords[k - 1] for k in block), Fraction(0))
        for block in eta.blocks(lam.n)
    )


def tensor_datum(lam: Weight, mu: Weight, l: int) -> TensorWeightDatum | None:
    """
    求 (ℓ_1,…,ℓ_n) 使 λ−μ ≡ Σℓ_iε_i 且 Σℓ_i = ℓ

    Args:
        lam: 权重 λ
        mu: 权重 μ
        l: 张量次数 ℓ

    Returns:
        唯一解；无非负整数解时返回 None
    """
    diff = lam - mu
    shift = Fraction(l, lam.n)
    counts = [x + shift for x in diff.coords]
    if any(c.denominator != 1 or c < 0 for c in counts):
        return None
    return TensorWeightDatum(tuple(int(c) for c in counts))


def tensor_weight_multiplicity(n: int, l: int, nu: Weight) -> int:
    """
    dim (V^⊗ℓ)_ν

    Args:
        n: V 的维数
        l: 张量次数
        nu: 权重（模全 1 方向）

    Returns:
        ν 对应数据的多项式系数，不是 V^⊗ℓ 的权重时为 0
    """
    datum = tensor_datum(nu, Weight.zero(n), l)
    return datum.multinomial() if datum is not None else 0


def compositions(l: int, n: int) -> Iterable[tuple[int, ...]]:
    """ℓ 分成 n 个非负整数之和的全部方式（字典序递减）"""
    if n == 1:
        yield (l,)
        return
    for first in range(l, -1, -1):
        for rest in compositions(l - first, n - 1):
            yield (first, *rest)


def tensor_filtration(mu: Weight, l: int) -> list[tuple[Weight, int]]:
    """
    M ⊗ V^⊗ℓ 的标准滤过中出现的参数 μ+ν 及其重数

    Args:
        mu: 起始权重
        l: 张量次数

    Returns:
        (μ+ν, dim (V^⊗ℓ)_ν) 列表，按权重排序
    """
    terms: dict[Weight, int] = {}
    for counts in compositions(l, mu.n):
        datum = TensorWeightDatum(counts)
        target = mu + datum.weight()
        terms[target] = terms.get(target, 0) + datum.multinomial()
    return sorted(terms.items())


def positive_roots(n: int) -> list[tuple[int, int]]:
    """正根 ε_a − ε_b（a < b），字典序"""
    return [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]


def simple_root_coordinates(gamma: Weight) -> tuple[Fraction, ...]:
    """γ 在单根基下的坐标 c_i = γ_1 + … + γ_i"""
    coords = []
    running = Fraction(0)
    for x in gamma.coords[:-1]:
        running += x
        coords.append(running)
    return tuple(coords)


def kostant_partition(gamma: Weight) -> int:
    """
    Kostant 分拆函数：把 γ 写成正根非负整数组合的方式数

    Args:
        gamma: 权重

    Returns:
        方式数；γ 不在正根锥的整点中时为 0
    """
    coords = simple_root_coordinates(gamma)
    if any(c.denominator != 1 or c < 0 for c in coords):
        return 0
    return _kostant(gamma.n, 0, tuple(int(c) for c in coords))


@cache
def _kostant(n: int, index: int, remaining: tuple[int, ...]) -> int:
    roots = positive_roots(n)
    if all(c == 0 for c in remaining):
        return 1
    if index == len(roots):
        return 0
    a, b = roots[index]
    total = 0
    current = remaining
    # 正根 ε_a − ε_b 在单根坐标中是 α_a + … + α_{b−1}
    while all(c >= 0 for c in current):
        total += _kostant(n, index + 1, current)
        current = tuple(
            c - 1 if a <= i + 1 < b else c for i, c in enumerate(current)
        )
    return total


def dominant_weights_in_box(n: int, entries: Iterable[int]) -> list[Weight]:
    """
    λ+ρ（作为 gl_n 向量）取值于给定集合且弱递减的全部支配整权 λ

    Args:
        n: 秩
        entries: 允许的坐标值

    Returns:
        去重后排序的 λ 列表
    """
    values = sorted(set(entries), reverse=True)
    found = set()
    for combo in combinations_with_replacement(values, n):
        lam = Weight(tuple(Fraction(x) for x in combo)) - rho(n)
        if is_integral(lam):
            found.add(lam)
    return sorted(found)
