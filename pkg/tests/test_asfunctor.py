#!/usr/bin/env python3
"""
测试 asfunctor 模块
"""

from fractions import Fraction

import pytest

from whittaker_hecke.asfunctor import (
    compare_to_standard,
    expected_functor_dim,
    functor_value_verma,
    omega,
    operator_identity_failures,
    theta_action,
    whittaker_functor_value,
)
from whittaker_hecke.errors import (
    HypothesisViolatedError,
    InputError,
    NotDominantError,
    NotIntegralSpacedError,
)
from whittaker_hecke.exactlin import Mat
from whittaker_hecke.hecke import check_relations
from whittaker_hecke.multtable import BlockParams
from whittaker_hecke.verma import tensor_block
from whittaker_hecke.weights import Weight, dominant_weights_in_box, dot_orbit
from whittaker_hecke.weyl import ParabolicSet

ZERO2 = Weight.zero(2)
REFLECTED = Weight.parse("-1,1")


def box_blocks(n: int, degrees: range) -> list[tuple[Weight, Weight, int]]:
    """λ+ρ 取值于 {−2,…,2} 时函子值非零的全部 (μ, λ, ℓ)"""
    return [
        (mu, lam, l)
        for lam in dominant_weights_in_box(n, range(-2, 3))
        for l in degrees
        for mu in dot_orbit(lam)
        if expected_functor_dim(mu, lam, l)
    ]


BOX_BLOCKS = [
    *box_blocks(2, range(1, 4)),
    *box_blocks(3, range(1, 3)),
    *(pytest.param(*b, marks=pytest.mark.slow) for b in box_blocks(3, range(3, 4))),
]


class TestOmega:
    """测试 Ω_ij"""

    def test_index_range(self) -> None:
        """测试下标越界"""
        tb = tensor_block(ZERO2, ZERO2, 2)
        with pytest.raises(InputError):
            omega(0, 0, tb)
        with pytest.raises(InputError):
            omega(1, 3, tb)
        with pytest.raises(InputError):
            omega(2, 1, tb)

    def test_theta_relations_on_whole_block(self) -> None:
        """测试 Θ 在整个块上满足关系（Σε 不必为标量）"""
        tb = tensor_block(ZERO2, ZERO2, 2)
        theta = theta_action(tb)
        assert len(theta.s_mats) == 1 and len(theta.eps_mats) == 2
        check_relations(theta.as_module(tb.dim), scalar_center=False)

    def test_theta_s_needs_gl_pairing(self) -> None:
        """测试 Θ(s_1) = −Ω_12 是对合，而 sl_3 对偶基之和给出的算子不是"""
        tb = tensor_block(Weight.zero(3), Weight.parse("1/3,1/3,-2/3"), 2)
        gl_s = theta_action(tb).s_mats[0]
        sl_s = -tb.sl_slot_pairing(1, 2)
        assert gl_s @ gl_s == Mat.identity(tb.dim)
        assert sl_s == gl_s + Mat.scalar(tb.dim, Fraction(1, 3))
        assert sl_s @ sl_s != Mat.identity(tb.dim)


class TestFunctorVerma:
    """测试 F_{ℓ,λ}(M(μ))"""

    def test_dimensions(self) -> None:
        """测试维数为 V^⊗ℓ 在 λ−μ 处的权重数"""
        assert functor_value_verma(ZERO2, ZERO2, 2).dim == 2
        assert functor_value_verma(REFLECTED, ZERO2, 2).dim == 1
        assert expected_functor_dim(ZERO2, ZERO2, 2) == 2
        assert expected_functor_dim(REFLECTED, ZERO2, 2) == 1

    def test_degree_zero(self) -> None:
        """测试 ℓ = 0 时为一维"""
        fv = functor_value_verma(ZERO2, ZERO2, 0)
        assert fv.dim == 1
        assert fv.module.l == 0

    def test_outside_weights(self) -> None:
        """测试 λ−μ 不是 V^⊗ℓ 的权时为零"""
        assert expected_functor_dim(REFLECTED, ZERO2, 1) == 0

    @pytest.mark.parametrize("mu", [ZERO2, REFLECTED], ids=str)
    def test_isomorphic_to_standard(self, mu: Weight) -> None:
        """测试函子值与标准模同构"""
        result = compare_to_standard(functor_value_verma(mu, ZERO2, 2))
        assert result, result.reason

    def test_operator_identities(self) -> None:
        """测试 Θ 与 g 作用、Casimir 交换"""
        assert operator_identity_failures(ZERO2, ZERO2, 2) == []

    def test_not_dominant(self) -> None:
        """测试非支配 λ"""
        with pytest.raises(NotDominantError):
            functor_value_verma(ZERO2, REFLECTED, 2)

    def test_not_integral(self) -> None:
        """测试非整 λ"""
        with pytest.raises(NotIntegralSpacedError):
            functor_value_verma(ZERO2, Weight.parse("1/4,-1/4"), 2)


class TestRelationsOverBox:
    """测试 n ≤ 3、ℓ ≤ 3 时全部支配整权上的函子值"""

    def test_box_has_both_ranks(self) -> None:
        """测试参数表覆盖 n = 2 与 n = 3"""
        assert box_blocks(2, range(1, 4))
        assert box_blocks(3, range(3, 4))

    @pytest.mark.parametrize(("mu", "lam", "l"), BOX_BLOCKS, ids=str)
    def test_functor_value(self, mu: Weight, lam: Weight, l: int) -> None:
        """测试函子值的维数、定义关系与 Θ 的恒等式"""
        fv = functor_value_verma(mu, lam, l)
        assert fv.dim == expected_functor_dim(mu, lam, l)
        check_relations(fv.module)
        assert operator_identity_failures(mu, lam, l) == []


class TestWhittakerFunctor:
    """测试 Whittaker 一侧的函子值"""

    def test_dimensions_by_coset(self) -> None:
        """测试 n = 2 正则块两个双陪集的维数"""
        bp = BlockParams.of(ZERO2)
        dims = [whittaker_functor_value(q, ZERO2).dim for q in bp.cosets()]
        assert dims == [2, 1]

    def test_records_coset(self) -> None:
        """测试函子值记录双陪集与 η"""
        bp = BlockParams.of(ZERO2)
        q = bp.cosets()[-1]
        fv = whittaker_functor_value(q, ZERO2)
        assert fv.coset == q
        assert fv.eta == ParabolicSet()

    def test_eta_must_be_stabilizer(self) -> None:
        """测试 η 不等于稳定子"""
        q = BlockParams.of(ZERO2).cosets()[0]
        with pytest.raises(HypothesisViolatedError):
            whittaker_functor_value(q, ZERO2, eta=ParabolicSet((1,)))
