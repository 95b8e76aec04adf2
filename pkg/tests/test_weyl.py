#!/usr/bin/env python3
"""
测试 weyl 模块
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from whittaker_hecke.errors import InputError, LengthMismatchError, LiteralParseError
from whittaker_hecke.weyl import (
    KLPoly,
    ParabolicSet,
    Perm,
    all_perms,
    bruhat_leq,
    class_representatives,
    coset_containing,
    double_cosets,
    kl_polynomial,
    kl_polynomial_via_r,
    kl_table_size,
    minimal_coset_reps,
    mu_coefficient,
    r_polynomial,
)

perms4 = st.sampled_from(all_perms(4))


class TestPerm:
    """测试置换"""

    def test_parse_and_length(self) -> None:
        """测试解析与逆序数"""
        w = Perm.parse("3,1,4,2")
        assert w.images == (3, 1, 4, 2)
        assert w.length() == 3

    def test_parse_errors(self) -> None:
        """测试非法字面量"""
        with pytest.raises(LiteralParseError):
            Perm.parse("1,1")
        with pytest.raises(LiteralParseError):
            Perm.parse("a,b")

    def test_composition(self) -> None:
        """测试 (wv)(i) = w(v(i))"""
        w = Perm.parse("2,3,1")
        v = Perm.parse("2,1,3")
        assert (w * v).images == (3, 2, 1)

    def test_act_on_coordinates(self) -> None:
        """测试 (w·x)_i = x_{w⁻¹(i)}"""
        w = Perm.parse("2,3,1")
        assert w.act(("a", "b", "c")) == ("c", "a", "b")

    def test_matrix(self) -> None:
        """测试置换矩阵在 (w(k), k) 处为 1"""
        m = Perm.parse("2,1").matrix()
        assert m.to_rows() == [[0, 1], [1, 0]]

    @given(perms4)
    def test_reduced_word(self, w: Perm) -> None:
        """测试约化字重构置换且长度等于 ℓ(w)"""
        word = w.reduced_word()
        assert len(word) == w.length()
        assert Perm.from_word(word, 4) == w

    def test_cycle_type(self) -> None:
        """测试轮换型"""
        assert Perm.parse("2,3,1,4").cycle_type() == (3, 1)


class TestBruhat:
    """测试 Bruhat 序"""

    def test_extremes(self) -> None:
        """测试单位元最小、最长元最大"""
        e = Perm.identity(3)
        w0 = Perm.longest(3)
        for w in all_perms(3):
            assert bruhat_leq(e, w)
            assert bruhat_leq(w, w0)

    def test_incomparable(self) -> None:
        """测试 s_1 与 s_2 不可比较"""
        s1 = Perm.simple(1, 3)
        s2 = Perm.simple(2, 3)
        assert not bruhat_leq(s1, s2)
        assert not bruhat_leq(s2, s1)

    @given(perms4, perms4)
    def test_monotone_in_length(self, x: Perm, w: Perm) -> None:
        """测试 x ≤ w 蕴含 ℓ(x) ≤ ℓ(w)"""
        if bruhat_leq(x, w):
            assert x.length() <= w.length()
            if x != w:
                assert x.length() < w.length()

    def test_size_mismatch(self) -> None:
        """测试大小不一致"""
        with pytest.raises(LengthMismatchError):
            bruhat_leq(Perm.identity(2), Perm.identity(3))

    def test_table_size(self) -> None:
        """测试 S_3 中可比较对的个数"""
        assert kl_table_size(3) == 19


class TestParabolic:
    """测试抛物子群与双陪集"""

    def test_parse(self) -> None:
        """测试解析与越界"""
        assert ParabolicSet.parse("") == ParabolicSet()
        assert ParabolicSet.parse("2,1").simple_indices == (1, 2)
        with pytest.raises(LiteralParseError):
            ParabolicSet.parse("3").validate(3)

    def test_double_cosets_singular(self) -> None:
        """测试 W_{1}\\S_3/W_{1} 有两个双陪集"""
        j = ParabolicSet((1,))
        cosets = double_cosets(j, j, 3)
        assert [str(q.longest_rep) for q in cosets] == ["2,1,3", "3,2,1"]
        assert [q.size for q in cosets] == [2, 4]

    def test_double_cosets_trivial(self) -> None:
        """测试平凡抛物子群"""
        cosets = double_cosets(ParabolicSet(), ParabolicSet(), 3)
        assert len(cosets) == 6
        assert all(q.size == 1 for q in cosets)

    @pytest.mark.parametrize("left", ["", "1", "2", "1,2"])
    @pytest.mark.parametrize("right", ["", "1", "2"])
    def test_cosets_partition(self, left: str, right: str) -> None:
        """测试双陪集划分 S_3"""
        cosets = double_cosets(ParabolicSet.parse(left), ParabolicSet.parse(right), 3)
        assert sum(q.size for q in cosets) == 6
        for q in cosets:
            assert all(w.length() <= q.longest_rep.length() for w in q.elements)

    def test_coset_containing(self) -> None:
        """测试包含给定元素的双陪集"""
        j = ParabolicSet((1,))
        q = coset_containing(Perm.parse("1,3,2"), j, j)
        assert str(q.longest_rep) == "3,2,1"

    def test_minimal_coset_reps(self) -> None:
        """测试最小陪集代表元"""
        reps = minimal_coset_reps(ParabolicSet((1,)), 3)
        assert len(reps) == 3
        assert reps[0] == Perm.identity(3)

    def test_class_representatives(self) -> None:
        """测试共轭类代表"""
        reps = class_representatives(3)
        assert [str(w) for w in reps] == ["1,2,3", "1,3,2", "2,3,1"]


class TestKazhdanLusztig:
    """测试 KL 多项式"""

    def test_s3_all_one(self) -> None:
        """测试 S_3 中可比较对的多项式都为 1"""
        for x in all_perms(3):
            for w in all_perms(3):
                expected = KLPoly.one() if bruhat_leq(x, w) else KLPoly()
                assert kl_polynomial(x, w) == expected

    @pytest.mark.parametrize("w", ["3,4,1,2", "4,2,3,1"])
    def test_singular_s4(self, w: str) -> None:
        """测试 S_4 的两个奇异 Schubert 簇"""
        poly = kl_polynomial(Perm.identity(4), Perm.parse(w))
        assert poly.coefficients == (1, 1)
        assert poly.at(1) == 2

    def test_incomparable_is_zero(self) -> None:
        """测试不可比较时为零多项式"""
        assert kl_polynomial(Perm.simple(1, 3), Perm.simple(2, 3)).is_zero()

    def test_mu_coefficient(self) -> None:
        """测试 μ(e, s) = 1"""
        assert mu_coefficient(Perm.identity(3), Perm.simple(1, 3)) == 1
        assert mu_coefficient(Perm.identity(3), Perm.longest(3)) == 0

    def test_r_polynomial(self) -> None:
        """测试 R_{e,s} = q − 1"""
        assert r_polynomial(Perm.identity(2), Perm.simple(1, 2)).coefficients == (-1, 1)

    @pytest.mark.slow
    def test_oracle_agreement_s4(self) -> None:
        """测试递推与 R-多项式反演在 S_4 上一致"""
        for x in all_perms(4):
            for w in all_perms(4):
                assert kl_polynomial(x, w) == kl_polynomial_via_r(x, w)

    def test_rank_limit(self) -> None:
        """测试超出支持的秩"""
        with pytest.raises(InputError):
            kl_polynomial(Perm.identity(6), Perm.longest(6))

    def test_poly_arithmetic(self) -> None:
        """测试多项式运算与零系数去除"""
        p = KLPoly((1, 1))
        assert (p * p).coefficients == (1, 2, 1)
        assert (p - p).is_zero()
        assert KLPoly((0, 0)).degree == -1
