#!/usr/bin/env python3
"""
测试 multiseg 模块
"""

from fractions import Fraction

import pytest

from whittaker_hecke.errors import (
    LiteralParseError,
    NoTensorDatumError,
    NotDominantError,
)
from whittaker_hecke.exactlin import rank
from whittaker_hecke.multiseg import (
    MultisegmentClass,
    Segment,
    delta,
    ms_classes,
    nilpotent_rep,
    support,
    zeta_weight,
)
from whittaker_hecke.weights import Weight

half = Fraction(1, 2)


def ms(literal: str) -> MultisegmentClass:
    return MultisegmentClass.parse(literal)


class TestSegment:
    """测试线段"""

    def test_entries(self) -> None:
        """测试元素、中心与终点"""
        seg = Segment(Fraction(-1, 2), 2)
        assert seg.entries() == (-half, half)
        assert seg.center == 0
        assert seg.end == half

    def test_non_positive_length(self) -> None:
        """测试长度必须为正"""
        with pytest.raises(LiteralParseError):
            Segment(Fraction(0), 0)


class TestParse:
    """测试多重线段字面量"""

    def test_canonical_order(self) -> None:
        """测试规范形按中心递减"""
        tau = ms("[(-1/2,1),(1/2,1)]")
        assert str(tau) == "[(1/2,1),(-1/2,1)]"
        assert tau == ms("[(1/2,1),(-1/2,1)]")

    def test_unicode_minus(self) -> None:
        """测试接受 U+2212 负号"""
        assert ms("[(−1/2,2)]") == ms("[(-1/2,2)]")

    @pytest.mark.parametrize("literal", ["(1,2)", "[(1,0)]", "[(a,1)]", "[(1,2) x]"])
    def test_parse_errors(self, literal: str) -> None:
        """测试非法字面量"""
        with pytest.raises(LiteralParseError):
            ms(literal)

    def test_support_and_length(self) -> None:
        """测试支撑与 ℓ"""
        tau = ms("[(-1/2,2)]")
        assert tau.l == 2
        assert support(tau) == (half, -half)


class TestClasses:
    """测试多重线段类的枚举"""

    def test_sl2(self) -> None:
        """测试 λ+ρ = (1/2,−1/2)"""
        classes = ms_classes(Weight((half, -half)))
        assert {str(tau) for tau in classes} == {"[(-1/2,2)]", "[(1/2,1),(-1/2,1)]"}

    def test_sl3_regular(self) -> None:
        """测试正则 sl_3 块有 4 个类"""
        classes = ms_classes(Weight.parse("1,0,-1"))
        assert len(classes) == 4
        assert all(support(tau) == (1, 0, -1) for tau in classes)

    def test_sl3_singular(self) -> None:
        """测试奇异 sl_3 块有 2 个类"""
        third = Fraction(1, 3)
        assert len(ms_classes(Weight((third, third, -2 * third)))) == 2


class TestDelta:
    """测试 δ_{λ,μ}"""

    def test_values(self) -> None:
        """测试 sl_2、ℓ = 2 的两个参数"""
        zero = Weight.zero(2)
        assert delta(zero, Weight.parse("-1,1"), 2) == ms("[(-1/2,2)]")
        assert delta(zero, zero, 2) == ms("[(1/2,1),(-1/2,1)]")

    def test_errors(self) -> None:
        """测试无张量数据与非支配"""
        zero = Weight.zero(2)
        with pytest.raises(NoTensorDatumError):
            delta(zero, Weight.parse("-2,2"), 2)
        with pytest.raises(NotDominantError):
            delta(Weight.parse("-1,1"), zero, 2)


class TestNilpotent:
    """测试 ζ 权重与幂零代表"""

    def test_zeta(self) -> None:
        """测试 ζ 为各段元素的拼接"""
        assert zeta_weight(ms("[(1/2,1),(-1/2,1)]")) == (half, -half)
        assert zeta_weight(ms("[(-1/2,2)]")) == (-half, half)

    def test_full_segment(self) -> None:
        """测试整段对应秩 n−1 的幂零矩阵"""
        n_mat = nilpotent_rep(ms("[(-1,3)]"))
        assert n_mat.to_rows() == [[0, 1, 0], [0, 0, 1], [0, 0, 0]]
        assert rank(n_mat) == 2
        assert n_mat.power(3).is_zero()

    def test_singletons(self) -> None:
        """测试全是单点段时为零矩阵"""
        assert nilpotent_rep(ms("[(1,1),(0,1),(-1,1)]")).is_zero()
