#!/usr/bin/env python3
"""
测试 hecke 模块
"""

from fractions import Fraction
from math import factorial, prod
from unittest.mock import patch

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from whittaker_hecke import hecke as hecke_module
from whittaker_hecke.errors import LengthMismatchError, NotCyclicError
from whittaker_hecke.exactlin import Mat, Subspace
from whittaker_hecke.hecke import (
    HeckeElt,
    HModule,
    certify_irreducible,
    check_relations,
    central_character,
    composition_factors,
    direct_sum,
    divided_difference,
    dual,
    factor_signature,
    find_submodule,
    induced_standard,
    irr_quotient,
    is_isomorphic,
    mul,
    polynomial_ring,
    represent,
    restrict,
    submodule_lattice,
    swap_variables,
    w_character,
    weight_spectrum,
)
from whittaker_hecke.multiseg import MultisegmentClass, ms_classes
from whittaker_hecke.weights import Weight, dominant_weights_in_box, plus_rho

half = Fraction(1, 2)
LINKED = MultisegmentClass.parse("[(1/2,1),(-1/2,1)]")
SEGMENT = MultisegmentClass.parse("[(-1/2,2)]")

# λ+ρ 取值于 {−2,…,2} 的全部支配整权上的多重线段类
BOX_CLASSES = [
    tau
    for n in (2, 3)
    for lam in dominant_weights_in_box(n, range(-2, 3))
    for tau in ms_classes(Weight(plus_rho(lam)))
]


def std(literal: str) -> HModule:
    tau = MultisegmentClass.parse(literal)
    return induced_standard(tau, tau.l)


class TestPolynomials:
    """测试多项式部分"""

    def test_ring_needs_a_strand(self) -> None:
        """测试 ℓ = 0 没有多项式环"""
        with pytest.raises(LengthMismatchError):
            polynomial_ring(0)

    def test_divided_difference(self) -> None:
        """测试 Δ(ε_1) = 1，对称多项式被消去"""
        R, (e1, e2) = polynomial_ring(2)
        assert divided_difference(e1, 1) == R.one
        assert divided_difference(e1 * e2, 1) == R.zero
        assert divided_difference(e1**2, 1) == e1 + e2

    def test_swap(self) -> None:
        """测试 s_1 交换变量"""
        _, (e1, e2) = polynomial_ring(2)
        assert swap_variables(e1 * e1 + e2, 1) == e2 * e2 + e1


class TestHeckeElt:
    """测试正规形乘法"""

    def test_cross_relation(self) -> None:
        """测试 s_1ε_1 = ε_2s_1 + 1"""
        s1 = HeckeElt.simple(1, 2)
        e1 = HeckeElt.eps(1, 2)
        e2 = HeckeElt.eps(2, 2)
        assert mul(s1, e1) == mul(e2, s1) + 1
        assert s1 * e2 == e1 * s1 - 1

    def test_involution(self) -> None:
        """测试 s_i² = 1"""
        s1 = HeckeElt.simple(1, 3)
        assert s1 * s1 == 1

    def test_braid(self) -> None:
        """测试辫关系"""
        s1 = HeckeElt.simple(1, 3)
        s2 = HeckeElt.simple(2, 3)
        assert s1 * s2 * s1 == s2 * s1 * s2

    def test_polynomials_commute(self) -> None:
        """测试 ε 两两交换"""
        e1 = HeckeElt.eps(1, 3)
        e3 = HeckeElt.eps(3, 3)
        assert e1 * e3 == e3 * e1

    def test_associativity(self) -> None:
        """测试结合律"""
        s1 = HeckeElt.simple(1, 3)
        s2 = HeckeElt.simple(2, 3)
        e2 = HeckeElt.eps(2, 3)
        assert (s1 * e2) * s2 == s1 * (e2 * s2)

    def test_length_mismatch(self) -> None:
        """测试股数不同"""
        with pytest.raises(LengthMismatchError):
            mul(HeckeElt.one(2), HeckeElt.one(3))

    def test_str(self) -> None:
        """测试文本形式"""
        assert str(HeckeElt(2)) == "0"
        assert "t[2,1]" in str(HeckeElt.simple(1, 2))


class TestStandard:
    """测试诱导标准模"""

    def test_dimensions(self) -> None:
        """测试维数为多项式系数"""
        assert std("[(1/2,1),(-1/2,1)]").dim == 2
        assert std("[(-1/2,2)]").dim == 1
        assert std("[(1,1),(0,1),(-1,1)]").dim == 6
        assert std("[(0,2),(-1,1)]").dim == 3

    def test_length_mismatch(self) -> None:
        """测试段长之和与 ℓ 不符"""
        with pytest.raises(LengthMismatchError):
            induced_standard(SEGMENT, 3)

    @pytest.mark.parametrize(
        "tau", ms_classes(Weight.parse("1,0,-1")), ids=str
    )
    def test_relations(self, tau: MultisegmentClass) -> None:
        """测试定义关系"""
        check_relations(induced_standard(tau, tau.l))

    @pytest.mark.parametrize("tau", BOX_CLASSES, ids=str)
    def test_relations_over_box(self, tau: MultisegmentClass) -> None:
        """测试 n ≤ 3 的全部支配整权上，标准模满足定义关系且维数为多项式系数"""
        m = induced_standard(tau, tau.l)
        check_relations(m)
        lengths = [seg.length for seg in tau.segments]
        assert m.dim == factorial(tau.l) // prod(factorial(k) for k in lengths)

    def test_spectrum(self) -> None:
        """测试 std(τ) 的权谱"""
        spectrum = weight_spectrum(induced_standard(LINKED, 2))
        assert spectrum.weights() == [(-half, half), (half, -half)]
        assert spectrum.is_multiplicity_free()

    def test_segment_character(self) -> None:
        """测试整段时群以符号作用"""
        m = induced_standard(SEGMENT, 2)
        assert m.s_mats[0] == Mat.scalar(1, -1)
        assert m.eps_mats[0] == Mat.scalar(1, -half)

    def test_represent_is_homomorphism(self) -> None:
        """测试作用矩阵保持乘法"""
        m = std("[(0,2),(-1,1)]")
        a = HeckeElt.simple(1, 3) + HeckeElt.eps(2, 3)
        b = HeckeElt.eps(1, 3) * HeckeElt.simple(2, 3)
        assert represent(a * b, m) == represent(a, m) @ represent(b, m)

    def test_central_character(self) -> None:
        """测试中心特征在标准模与其商上一致"""
        m = induced_standard(LINKED, 2)
        assert central_character(m) == (half, -half)
        assert central_character(irr_quotient(m)) == central_character(m)

    def test_w_character(self) -> None:
        """测试单位元的迹为维数"""
        m = std("[(1,1),(0,1),(-1,1)]")
        assert w_character(m)[0] == 6


class TestSubmodules:
    """测试子模、合成因子与不可约商"""

    def test_linked_standard(self) -> None:
        """测试链接的两段标准模有两个一维因子"""
        m = induced_standard(LINKED, 2)
        factors = composition_factors(m)
        assert [f.module.dim for f in factors] == [1, 1]
        assert all(f.certified for f in factors)
        bottom = factors[0].module
        assert is_isomorphic(bottom, induced_standard(SEGMENT, 2))

    def test_irr_quotient(self) -> None:
        """测试不可约商是 ε = ζ 的一维模"""
        irr = irr_quotient(induced_standard(LINKED, 2))
        assert irr.dim == 1
        assert irr.s_mats[0] == Mat.scalar(1, 1)
        assert irr.eps_mats[0] == Mat.scalar(1, half)

    def test_lattice_is_a_chain(self) -> None:
        """测试子模格为 0 ⊂ 线 ⊂ 全空间"""
        lattice = submodule_lattice(induced_standard(LINKED, 2))
        assert lattice.certified
        assert [s.dim for s in lattice.subspaces] == [0, 1, 2]
        assert len(lattice.proper_nonzero()) == 1

    def test_find_submodule(self) -> None:
        """测试找到的真子模在生成元下不变"""
        m = induced_standard(LINKED, 2)
        sub = find_submodule(m)
        assert sub is not None and 0 < sub.dim < m.dim
        check_relations(restrict(m, sub))

    def test_not_cyclic(self) -> None:
        """测试第一个基向量不生成时报错"""
        one = induced_standard(SEGMENT, 2)
        with pytest.raises(NotCyclicError):
            irr_quotient(direct_sum(one, one))

    def test_certify(self) -> None:
        """测试不可约性证书"""
        m = induced_standard(LINKED, 2)
        assert certify_irreducible(irr_quotient(m))
        irr = irr_quotient(m)
        assert not certify_irreducible(direct_sum(irr, irr))

    def test_irreducible_regular_standard(self) -> None:
        """测试不链接的两段给出不可约标准模"""
        m = std("[(1,1),(-1,1)]")
        assert find_submodule(m) is None
        assert certify_irreducible(m)

    @pytest.mark.parametrize(
        "tau", ms_classes(Weight.parse("1,0,-1")), ids=str
    )
    def test_factor_dimensions_sum(self, tau: MultisegmentClass) -> None:
        """测试因子维数之和等于模的维数"""
        m = induced_standard(tau, tau.l)
        assert sum(f.module.dim for f in composition_factors(m)) == m.dim


class TestDuality:
    """测试对偶与同构"""

    def test_double_dual(self) -> None:
        """测试 M** = M"""
        m = std("[(0,2),(-1,1)]")
        assert dual(dual(m)).generators() == m.generators()
        check_relations(dual(m))

    def test_isomorphic_to_self_with_witness(self) -> None:
        """测试自同构的见证可逆"""
        m = std("[(0,2),(-1,1)]")
        result = is_isomorphic(m, m)
        assert result
        assert result.witness is not None and result.witness.det() != 0

    def test_distinct_irreducibles(self) -> None:
        """测试不同的一维模不同构且签名不同"""
        top = irr_quotient(induced_standard(LINKED, 2))
        bottom = induced_standard(SEGMENT, 2)
        assert not is_isomorphic(top, bottom)
        assert factor_signature(top) != factor_signature(bottom)

    def test_isomorphic_after_change_of_basis(self) -> None:
        """测试换基后的模仍同构"""
        m = induced_standard(LINKED, 2)
        p = Mat.from_rows([[1, 1], [0, 1]])
        p_inv = Mat.from_rows([[1, -1], [0, 1]])
        conj = HModule(
            m.dim,
            tuple(p @ g @ p_inv for g in m.s_mats),
            tuple(p @ g @ p_inv for g in m.eps_mats),
        )
        assert is_isomorphic(m, conj)

    def test_non_split_against_semisimple(self) -> None:
        """测试非分裂的标准模与其因子的直和不同构，且结论被证明"""
        m = induced_standard(LINKED, 2)
        split = direct_sum(irr_quotient(m), induced_standard(SEGMENT, 2))
        assert weight_spectrum(split) == weight_spectrum(m)
        result = is_isomorphic(m, split)
        assert not result
        assert result.certified

    def test_random_negative_not_certified(self) -> None:
        """测试不做符号行列式时，未找到可逆元的结论标记为未证明"""
        m = induced_standard(LINKED, 2)
        split = direct_sum(irr_quotient(m), induced_standard(SEGMENT, 2))
        with patch.object(hecke_module, "SYMBOLIC_DET_MAX_DIM", 0):
            result = is_isomorphic(m, split)
        assert not result
        assert not result.certified
        assert result.witness is None

    @settings(max_examples=10, deadline=None)
    @given(st.sampled_from(ms_classes(Weight.parse("1,0,-1"))))
    def test_dual_spectrum(self, tau: MultisegmentClass) -> None:
        """测试对偶模的权谱不变"""
        m = induced_standard(tau, tau.l)
        assert weight_spectrum(dual(m)) == weight_spectrum(m)

    def test_restrict_zero(self) -> None:
        """测试限制到零子空间"""
        m = induced_standard(LINKED, 2)
        assert restrict(m, Subspace.zero(2)).dim == 0
