"""
分次幂零类与抛物双陪集之间的对应

σ = λ+ρ 给出 gl_n 的分次，g_1(σ) 中的 L-轨道由多重线段参数化。
映射 Φ 把 N 送到 g = 1+Nᵗ 所在的 P\\G/P 双陪集，双陪集由块角秩表识别；
Ψ 是 Φ 在其像上的逆。
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cache

from .errors import (
    ConsistencyError,
    NoMatchingCosetError,
    NotDominantError,
    NotGradedOneError,
    NotIntegralSpacedError,
    SupportMismatchError,
)
from .exactlin import Mat, rank
from .logger import get_logger
from .multiseg import (
    Multisegment,
    MultisegmentClass,
    Segment,
    ms_classes,
    nilpotent_rep,
    support,
)
from .weights import Weight, is_dominant, is_integral_spaced, plus_rho
from .weyl import DoubleCoset, ParabolicSet, double_cosets

logger = get_logger(__name__)


@dataclass(frozen=True)
class GradedStructure:
    """σ 的取值及其相等值的连续块（块按取值严格递减排列）"""

    sigma_values: tuple[Fraction, ...]
    blocks: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.sigma_values)

    @property
    def block_values(self) -> tuple[Fraction, ...]:
        return tuple(self.sigma_values[block[0] - 1] for block in self.blocks)

    @property
    def parabolic(self) -> ParabolicSet:
        """块结构对应的单反射集（即 λ 的稳定子）"""
        return ParabolicSet(
            tuple(k for block in self.blocks for k in block[:-1])
        )

    def block_of(self, index: int) -> int:
        """坐标 index（1 起）所在的块号（1 起）"""
        for b, block in enumerate(self.blocks, start=1):
            if index in block:
                return b
        raise IndexError(index)

    def unit_chain(self, i: int, j: int) -> bool:
        """块 i..j 的相邻取值差是否都为 1"""
        values = self.block_values
        return all(values[t - 1] - values[t] == 1 for t in range(i, j))


@dataclass(frozen=True)
class RankProfile:
    """单位间隔链上合成块映射的秩，(i, j) ↦ rank(N^{j−i}: V_j → V_i)"""

    chain_ranks: tuple[tuple[tuple[int, int], int], ...]

    def get(self, i: int, j: int) -> int:
        return dict(self.chain_ranks).get((i, j), 0)


@dataclass(frozen=True)
class CosetRankTable:
    """块角秩表：行在块 ≥ i、列在块 ≤ j 的子矩阵之秩"""

    corner_ranks: tuple[tuple[tuple[int, int], int], ...]


def graded_structure(lam: Weight) -> GradedStructure:
    """
    由支配整权 λ 得到分次结构

    Args:
        lam: 支配权重

    Returns:
        σ = λ+ρ 及其等值块

    Raises:
        NotDominantError: λ 不是支配的
        NotIntegralSpacedError: λ+ρ 坐标差不全为整数
    """
    if not is_dominant(lam):
        raise NotDominantError(f"λ 不是支配的: {lam}")
    values = plus_rho(lam)
    if not is_integral_spaced(values):
        raise NotIntegralSpacedError(f"λ+ρ 坐标差不全为整数: {lam}")
    blocks: list[list[int]] = []
    for k, value in enumerate(values, start=1):
        if blocks and values[blocks[-1][0] - 1] == value:
            blocks[-1].append(k)
        else:
            blocks.append([k])
    return GradedStructure(values, tuple(tuple(b) for b in blocks))


def _block_indices(gs: GradedStructure, blocks: range) -> list[int]:
    return [k - 1 for b in blocks for k in gs.blocks[b - 1]]


def coset_rank_table(g: Mat, gs: GradedStructure) -> CosetRankTable:
    """计算矩阵 g 的块角秩表"""
    k = len(gs.blocks)
    table = []
    for i in range(1, k + 1):
        rows = _block_indices(gs, range(i, k + 1))
        for j in range(1, k + 1):
            cols = _block_indices(gs, range(1, j + 1))
            table.append(((i, j), rank(g.extract(rows, cols))))
    return CosetRankTable(tuple(table))


@cache
def _coset_tables(
    gs: GradedStructure,
) -> tuple[tuple[DoubleCoset, CosetRankTable], ...]:
    j_set = gs.parabolic
    return tuple(
        (q, coset_rank_table(q.longest_rep.matrix(), gs))
        for q in double_cosets(j_set, j_set, gs.n)
    )


def phi(tau: MultisegmentClass, gs: GradedStructure) -> DoubleCoset:
    """
    Φ：多重线段类 ↦ 1 + x_τᵗ 所在的 W_λ 双陪集

    Args:
        tau: 多重线段类
        gs: 分次结构

    Returns:
        双陪集

    Raises:
        SupportMismatchError: τ 的支撑与 σ 的取值不一致
        NoMatchingCosetError: 没有双陪集匹配角秩表（实现缺陷）
    """
    return _phi(tau, gs)


@cache
def _phi(tau: MultisegmentClass, gs: GradedStructure) -> DoubleCoset:
    if support(tau) != tuple(sorted(gs.sigma_values, reverse=True)):
        raise SupportMismatchError(
            f"支撑 {[str(x) for x in support(tau)]} 与 σ 取值不一致"
        )
    n = gs.n
    g = Mat.identity(n) + nilpotent_rep(tau).transpose()
    table = coset_rank_table(g, gs)
    for coset, coset_table in _coset_tables(gs):
        if coset_table == table:
            return coset
    raise NoMatchingCosetError(f"多重线段 {tau} 的角秩表没有匹配的双陪集")


def psi(q: DoubleCoset, gs: GradedStructure) -> MultisegmentClass | None:
    """
    Ψ：双陪集 ↦ 唯一满足 Φ(τ) = q 的 τ

    Args:
        q: W_λ\\W/W_λ 双陪集
        gs: 分次结构

    Returns:
        多重线段类；q 不在 Φ 的像中时返回 None（零标记）
    """
    for tau in ms_classes(Weight(gs.sigma_values)):
        if phi(tau, gs).longest_rep == q.longest_rep:
            return tau
    return None


def image_of_phi(gs: GradedStructure) -> dict[MultisegmentClass, DoubleCoset]:
    """全部多重线段类在 Φ 下的像"""
    return {tau: phi(tau, gs) for tau in ms_classes(Weight(gs.sigma_values))}


def rank_profile(n_mat: Mat, gs: GradedStructure) -> RankProfile:
    """
    N ∈ g_1 的链秩表

    Args:
        n_mat: 幂零矩阵 N
        gs: 分次结构

    Returns:
        所有单位间隔链 (i, j)（i < j）上 N^{j−i}: V_j → V_i 的秩

    Raises:
        NotGradedOneError: N 有落在 g_1 之外的非零元
    """
    values = gs.sigma_values
    for r, row in enumerate(n_mat.to_rows()):
        for c, entry in enumerate(row):
            if entry and values[r] - values[c] != 1:
                raise NotGradedOneError(
                    f"N 在 ({r + 1},{c + 1}) 处非零，但 σ 差为 {values[r] - values[c]}"
                )
    k = len(gs.blocks)
    ranks = []
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            if not gs.unit_chain(i, j):
                continue
            power = n_mat.power(j - i)
            rows = _block_indices(gs, range(i, i + 1))
            cols = _block_indices(gs, range(j, j + 1))
            ranks.append(((i, j), rank(power.extract(rows, cols))))
    return RankProfile(tuple(ranks))


def multisegment_from_ranks(
    profile: RankProfile, gs: GradedStructure
) -> MultisegmentClass:
    """
    由链秩表容斥重构多重线段

    c_{ij} = r_{ij} − r_{i−1,j} − r_{i,j+1} + r_{i−1,j+1}，其中 r_{ii} 取块维数，
    越界或跨越非单位间隔的秩取 0。

    Args:
        profile: 链秩表
        gs: 分次结构

    Returns:
        顶块为 i、底块为 j 的线段各 c_{ij} 条组成的多重线段类

    Raises:
        ConsistencyError: 出现负的线段计数
    """
    k = len(gs.blocks)
    values = gs.block_values

    def r(i: int, j: int) -> int:
        if i < 1 or j > k or i > j:
            return 0
        if i == j:
            return len(gs.blocks[i - 1])
        if not gs.unit_chain(i, j):
            return 0
        return profile.get(i, j)

    segments = []
    for i in range(1, k + 1):
        for j in range(i, k + 1):
            if not gs.unit_chain(i, j):
                continue
            count = r(i, j) - r(i - 1, j) - r(i, j + 1) + r(i - 1, j + 1)
            if count < 0:
                raise ConsistencyError(f"链秩表给出负的线段计数: c_{i}{j} = {count}")
            segments.extend([Segment(values[j - 1], j - i + 1)] * count)
    return MultisegmentClass(Multisegment(tuple(segments)))
