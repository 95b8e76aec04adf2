#!/usr/bin/env python3
"""
测试 weights 模块
"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from whittaker_hecke.errors import LiteralParseError, NotDominantError
from whittaker_hecke.weights import (
    Weight,
    center_datum,
    compositions,
    dominant_weights_in_box,
    dot_action,
    dot_orbit,
    is_dominant,
    is_integral,
    kostant_partition,
    rho,
    stabilizer,
    tensor_datum,
    tensor_filtration,
    tensor_weight_multiplicity,
)
from whittaker_hecke.weyl import ParabolicSet, Perm, all_perms

SINGULAR = Weight.parse("-2/3,1/3,1/3")


def w(literal: str) -> Weight:
    return Weight.parse(literal)


class TestWeight:
    """测试权重的表示与解析"""

    def test_canonical_sum_zero(self) -> None:
        """测试规范为坐标和为零"""
        assert w("1,0").coords == (Fraction(1, 2), Fraction(-1, 2))
        assert w("1,0") == w("2,1")

    def test_parse_errors(self) -> None:
        """测试非法字面量与个数不符"""
        with pytest.raises(LiteralParseError):
            Weight.parse("1/x,0")
        with pytest.raises(LiteralParseError):
            Weight.parse("0,0", 3)

    def test_gl_representative(self) -> None:
        """测试迹为给定值的 gl 代表元"""
        assert Weight.zero(2).gl_representative(2) == (Fraction(1), Fraction(1))

    def test_rho(self) -> None:
        """测试 ρ"""
        assert rho(3).coords == (Fraction(1), Fraction(0), Fraction(-1))


class TestDotAction:
    """测试点作用、支配性与稳定子"""

    def test_dot_action_sl2(self) -> None:
        """测试 s•0 = −α"""
        assert dot_action(Perm.simple(1, 2), Weight.zero(2)) == w("-1,1")

    @given(st.sampled_from(all_perms(3)), st.sampled_from(all_perms(3)))
    def test_dot_action_is_action(self, x: Perm, y: Perm) -> None:
        """测试 (xy)•λ = x•(y•λ)"""
        lam = w("1,0,0")
        assert dot_action(x * y, lam) == dot_action(x, dot_action(y, lam))

    def test_orbit_sizes(self) -> None:
        """测试正则与奇异轨道的大小"""
        assert len(dot_orbit(Weight.zero(3))) == 6
        assert len(dot_orbit(SINGULAR)) == 3

    def test_dominance(self) -> None:
        """测试支配性与整性"""
        assert is_dominant(Weight.zero(2))
        assert not is_dominant(w("-1,1"))
        assert is_dominant(SINGULAR)
        assert is_integral(SINGULAR)
        assert not is_integral(w("1/2,0"))

    def test_stabilizer(self) -> None:
        """测试稳定子"""
        assert stabilizer(Weight.zero(3)) == ParabolicSet()
        assert stabilizer(SINGULAR) == ParabolicSet((1,))
        with pytest.raises(NotDominantError):
            stabilizer(w("-1,1"))

    def test_center_datum(self) -> None:
        """测试按 η 的块求坐标和"""
        assert center_datum(SINGULAR, ParabolicSet((1,))) == (
            Fraction(-1, 3),
            Fraction(1, 3),
        )


class TestTensorWeights:
    """测试 V^⊗ℓ 的权重"""

    def test_tensor_datum(self) -> None:
        """测试 λ−μ 的系数"""
        datum = tensor_datum(Weight.zero(2), w("-1,1"), 2)
        assert datum is not None
        assert datum.counts == (2, 0)
        assert tensor_datum(Weight.zero(2), w("-2,2"), 2) is None

    def test_multiplicity(self) -> None:
        """测试权重重数"""
        assert tensor_weight_multiplicity(2, 2, Weight.zero(2)) == 2
        assert tensor_weight_multiplicity(2, 2, w("1,-1")) == 1
        assert tensor_weight_multiplicity(3, 3, Weight.zero(3)) == 6
        assert tensor_weight_multiplicity(2, 1, Weight.zero(2)) == 0

    @given(st.integers(min_value=1, max_value=3), st.integers(min_value=0, max_value=4))
    def test_filtration_total(self, n: int, l: int) -> None:
        """测试滤过重数之和为 n^ℓ"""
        mu = Weight.zero(n)
        assert sum(mult for _, mult in tensor_filtration(mu, l)) == n**l

    def test_compositions(self) -> None:
        """测试组合的个数"""
        assert len(list(compositions(3, 3))) == 10


class TestKostant:
    """测试 Kostant 分拆函数"""

    def test_values(self) -> None:
        """测试 sl_3 的小值"""
        assert kostant_partition(w("1,0,-1")) == 2
        assert kostant_partition(w("1,-1,0")) == 1
        assert kostant_partition(Weight.zero(3)) == 1
        assert kostant_partition(w("-1,1,0")) == 0

    def test_sl2(self) -> None:
        """测试 sl_2 中每个正根倍数只有一种写法"""
        for k in range(5):
            assert kostant_partition(Weight((Fraction(k), Fraction(-k)))) == 1


class TestBox:
    """测试盒中的支配整权"""

    def test_sl2_box(self) -> None:
        """测试 λ+ρ 坐标取自 {−2,…,2}"""
        weights = dominant_weights_in_box(2, range(-2, 3))
        assert len(weights) == 5
        assert all(is_dominant(lam) and is_integral(lam) for lam in weights)
