#!/usr/bin/env python3
"""
测试 orbitmaps 模块
"""

from fractions import Fraction

import pytest

from whittaker_hecke.errors import (
    NotDominantError,
    NotGradedOneError,
    SupportMismatchError,
)
from whittaker_hecke.exactlin import Mat
from whittaker_hecke.multiseg import MultisegmentClass, ms_classes, nilpotent_rep
from whittaker_hecke.orbitmaps import (
    graded_structure,
    image_of_phi,
    multisegment_from_ranks,
    phi,
    psi,
    rank_profile,
)
from whittaker_hecke.weights import Weight, dominant_weights_in_box
from whittaker_hecke.weyl import ParabolicSet, Perm, coset_containing, double_cosets

REGULAR3 = Weight.zero(3)
SINGULAR = Weight.parse("-2/3,1/3,1/3")


def ms(literal: str) -> MultisegmentClass:
    return MultisegmentClass.parse(literal)


class TestGradedStructure:
    """测试分次结构"""

    def test_regular(self) -> None:
        """测试正则权重的块"""
        gs = graded_structure(REGULAR3)
        assert gs.sigma_values == (Fraction(1), Fraction(0), Fraction(-1))
        assert gs.blocks == ((1,), (2,), (3,))
        assert gs.parabolic == ParabolicSet()
        assert gs.unit_chain(1, 3)

    def test_singular(self) -> None:
        """测试奇异权重的块"""
        gs = graded_structure(SINGULAR)
        assert gs.blocks == ((1, 2), (3,))
        assert gs.parabolic == ParabolicSet((1,))
        assert gs.block_of(3) == 2

    def test_not_dominant(self) -> None:
        """测试非支配权重"""
        with pytest.raises(NotDominantError):
            graded_structure(Weight.parse("-1,1"))


class TestPhi:
    """测试 Φ"""

    def test_sl2(self) -> None:
        """测试 sl_2 的两个类"""
        gs = graded_structure(Weight.zero(2))
        assert str(phi(ms("[(1/2,1),(-1/2,1)]"), gs).longest_rep) == "1,2"
        assert str(phi(ms("[(-1/2,2)]"), gs).longest_rep) == "2,1"

    def test_sl3_image(self) -> None:
        """测试正则 sl_3 块的像"""
        gs = graded_structure(REGULAR3)
        image = {str(q.longest_rep) for q in image_of_phi(gs).values()}
        assert image == {"1,2,3", "2,1,3", "1,3,2", "2,3,1"}
        assert str(phi(ms("[(-1,3)]"), gs).longest_rep) == "2,3,1"
        assert str(phi(ms("[(1,1),(0,1),(-1,1)]"), gs).longest_rep) == "1,2,3"

    def test_support_mismatch(self) -> None:
        """测试支撑不一致"""
        gs = graded_structure(Weight.zero(2))
        with pytest.raises(SupportMismatchError):
            phi(ms("[(0,2)]"), gs)


class TestPsi:
    """测试 Ψ"""

    def test_off_image(self) -> None:
        """测试不在像中的双陪集给出 None"""
        gs = graded_structure(REGULAR3)
        q = coset_containing(Perm.longest(3), ParabolicSet(), ParabolicSet())
        assert psi(q, gs) is None

    def test_singular_block(self) -> None:
        """测试奇异块中 Ψ 是双射"""
        gs = graded_structure(SINGULAR)
        cosets = double_cosets(gs.parabolic, gs.parabolic, 3)
        assert len(cosets) == 2
        assert all(psi(q, gs) is not None for q in cosets)

    @pytest.mark.parametrize(
        "lam", [lam for n in (2, 3) for lam in dominant_weights_in_box(n, range(-2, 3))]
    )
    def test_round_trip(self, lam: Weight) -> None:
        """测试 Ψ∘Φ = id 且链秩表重构多重线段"""
        gs = graded_structure(lam)
        for tau in ms_classes(Weight(gs.sigma_values)):
            assert psi(phi(tau, gs), gs) == tau
            profile = rank_profile(nilpotent_rep(tau), gs)
            assert multisegment_from_ranks(profile, gs) == tau

    @pytest.mark.integration
    @pytest.mark.parametrize("lam", dominant_weights_in_box(4, range(-2, 3)))
    def test_round_trip_rank4(self, lam: Weight) -> None:
        """测试 n = 4 时的往返"""
        gs = graded_structure(lam)
        for tau, q in image_of_phi(gs).items():
            assert psi(q, gs) == tau


class TestRankProfile:
    """测试链秩表"""

    def test_not_graded_one(self) -> None:
        """测试落在 g_1 之外的矩阵"""
        gs = graded_structure(REGULAR3)
        n_mat = Mat.from_rows([[0, 0, 1], [0, 0, 0], [0, 0, 0]])
        with pytest.raises(NotGradedOneError):
            rank_profile(n_mat, gs)

    def test_full_segment_ranks(self) -> None:
        """测试整段的链秩"""
        gs = graded_structure(REGULAR3)
        profile = rank_profile(nilpotent_rep(ms("[(-1,3)]")), gs)
        assert profile.get(1, 2) == 1
        assert profile.get(1, 3) == 1
