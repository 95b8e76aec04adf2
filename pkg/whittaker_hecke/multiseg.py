"""
线段与多重线段

线段是连续有理数串 {a, a+1, …, a+l−1}。多重线段的规范形按中心递减排列，
中心相同时按起点递减、再按长度递减。本模块给出 δ_{λ,μ}、ζ 权重和
幂零矩阵代表 x_τ。
"""

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    LiteralParseError,
    NoTensorDatumError,
    NotDominantError,
    NotIntegralSpacedError,
)
from .exactlin import Mat, format_rat, to_rat
from .weights import Weight, is_dominant, is_integral_spaced, plus_rho, tensor_datum

# 线段字面量 (start,length)
SEGMENT_PATTERN = re.compile(r"\(\s*([^,()\s]+)\s*,\s*(\d+)\s*\)")


@dataclass(frozen=True)
class Segment:
    """线段 {start, start+1, …, start+length−1}"""

    start: Fraction
    length: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", to_rat(self.start))
        if self.length <= 0:
            raise LiteralParseError(f"线段长度必须为正: {self.length}")

    @property
    def center(self) -> Fraction:
        return self.start + Fraction(self.length - 1, 2)

    @property
    def end(self) -> Fraction:
        return self.start + self.length - 1

    def entries(self) -> tuple[Fraction, ...]:
        return tuple(self.start + k for k in range(self.length))

    def sort_key(self) -> tuple[Fraction, Fraction, int]:
        return (-self.center, -self.start, -self.length)

    def __str__(self) -> str:
        return f"({format_rat(self.start)},{self.length})"


@dataclass(frozen=True)
class Multisegment:
    """有序线段序列"""

    segments: tuple[Segment, ...] = ()

    @classmethod
    def parse(cls, literal: str) -> "Multisegment":
        """
        解析多重线段字面量，例如 "[(-1/2,2),(1/2,1)]"

        Raises:
            LiteralParseError: 格式错误
        """
        text = literal.replace("−", "-").strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise LiteralParseError(f"多重线段字面量需用方括号包围: {literal!r}")
        body = text[1:-1].strip()
        matches = list(SEGMENT_PATTERN.finditer(body))
        leftover = SEGMENT_PATTERN.sub("", body).replace(",", "").strip()
        if leftover:
            raise LiteralParseError(f"多重线段字面量格式错误: {literal!r}")
        try:
            segments = tuple(
                Segment(Fraction(m.group(1)), int(m.group(2))) for m in matches
            )
        except (ValueError, ZeroDivisionError) as e:
            raise LiteralParseError(f"线段起点不是有理数: {literal!r}") from e
        return cls(segments)

    @property
    def l(self) -> int:
        return sum(seg.length for seg in self.segments)

    def lengths(self) -> tuple[int, ...]:
        return tuple(seg.length for seg in self.segments)

    def canonical(self) -> "Multisegment":
        return Multisegment(tuple(sorted(self.segments, key=Segment.sort_key)))

    def __str__(self) -> str:
        return "[" + ",".join(str(seg) for seg in self.segments) + "]"


@dataclass(frozen=True)
class MultisegmentClass:
    """多重线段的重排等价类，以规范形为代表"""

    canonical: Multisegment

    def __post_init__(self) -> None:
        object.__setattr__(self, "canonical", self.canonical.canonical())

    @classmethod
    def of(cls, *segments: Segment) -> "MultisegmentClass":
        return cls(Multisegment(tuple(segments)))

    @classmethod
    def parse(cls, literal: str) -> "MultisegmentClass":
        return cls(Multisegment.parse(literal))

    @property
    def segments(self) -> tuple[Segment, ...]:
        return self.canonical.segments

    @property
    def l(self) -> int:
        return self.canonical.l

    def sort_key(self) -> tuple:
        return tuple(seg.sort_key() for seg in self.segments)

    def __str__(self) -> str:
        return str(self.canonical)


def support(tau: "Multisegment | MultisegmentClass") -> tuple[Fraction, ...]:
    """
    多重线段的支撑（带重数），按递减顺序排列

    Args:
        tau: 多重线段或其等价类

    Returns:
        全部线段元素的多重集
    """
    segments = tau.segments
    return tuple(sorted((x for seg in segments for x in seg.entries()), reverse=True))


def ms_classes(lamrho: Weight) -> list[MultisegmentClass]:
    """
    支撑等于 λ+ρ 坐标多重集的全部多重线段类

    最小的剩余值必为某线段的起点，对其长度递归枚举。

    Args:
        lamrho: λ+ρ

    Returns:
        按规范键排序的类列表

    Raises:
        NotIntegralSpacedError: 坐标差不全为整数
    """
    values = lamrho.coords
    if not is_integral_spaced(values):
        raise NotIntegralSpacedError(f"λ+ρ 的坐标差不全为整数: {lamrho}")

    found: set[MultisegmentClass] = set()

    def extend(remaining: Counter, chosen: tuple[Segment, ...]) -> None:
        if not remaining:
            found.add(MultisegmentClass(Multisegment(chosen)))
            return
        start = min(remaining)
        length = 0
        while remaining.get(start + length, 0) > 0:
            length += 1
            rest = remaining.copy()
            for k in range(length):
                rest[start + k] -= 1
            rest = +rest
            extend(rest, chosen + (Segment(start, length),))

    extend(Counter(values), ())
    return sorted(found, key=MultisegmentClass.sort_key)


def delta(lam: Weight, mu: Weight, l: int) -> MultisegmentClass:
    """
    δ_{λ,μ}：第 i 段为 {(μ+ρ)_i, …, (μ+ρ)_i + ℓ_i − 1}

    Args:
        lam: 支配权重 λ
        mu: 权重 μ
        l: 张量次数

    Returns:
        规范化后的多重线段类（ℓ_i = 0 的空段舍去）

    Raises:
        NotDominantError: λ 不是支配的
        NoTensorDatumError: λ−μ 不是 V^⊗ℓ 的权重
    """
    if not is_dominant(lam):
        raise NotDominantError(f"λ 不是支配的: {lam}")
    datum = tensor_datum(lam, mu, l)
    if datum is None:
        raise NoTensorDatumError(f"λ−μ = {lam - mu} 不是 V^⊗{l} 的权重")
    shifted = plus_rho(mu)
    return MultisegmentClass(
        Multisegment(
            tuple(
                Segment(shifted[i], count)
                for i, count in enumerate(datum.counts)
                if count > 0
            )
        )
    )


def zeta_weight(tau: MultisegmentClass) -> tuple[Fraction, ...]:
    """
    ζ 权重：规范形各段元素按递增顺序依次拼接

    Args:
        tau: 多重线段类

    Returns:
        长度为 ℓ 的有理数元组
    """
    return tuple(x for seg in tau.segments for x in seg.entries())


def positions(tau: MultisegmentClass) -> list[list[int]]:
    """
    每段元素在按值递减排列的支撑中所占的位置（0 起）

    按规范顺序处理各段，每个值取第一个未被占用的同值位置。
    """
    values = support(tau)
    used = [False] * len(values)
    result = []
    for seg in tau.segments:
        seg_positions = []
        for x in seg.entries():
            p = next(k for k, v in enumerate(values) if v == x and not used[k])
            used[p] = True
            seg_positions.append(p)
        result.append(seg_positions)
    return result


def nilpotent_rep(tau: MultisegmentClass) -> Mat:
    """
    幂零矩阵代表 x_τ ∈ g_1(σ)

    坐标按支撑值递减排列；线段内相邻元素 x, x+1 在 (pos(x+1), pos(x)) 处取 1。

    Args:
        tau: 多重线段类

    Returns:
        n×n 矩阵，n 为支撑大小
    """
    n = len(support(tau))
    rows = [[0] * n for _ in range(n)]
    for seg_positions in positions(tau):
        for lower, upper in zip(seg_positions, seg_positions[1:]):
            rows[upper][lower] = 1
    return Mat.from_rows(rows, cols=n)
