"""
张量积上的 H_ℓ 作用与函子值

Ω_ij 是 gl_n 迹形式对偶基在第 i、j 个张量因子上的和（0 为 Verma 因子）。
由此定义

    Θ(s_i) = −Ω_{i,i+1}，  Θ(ε_k) = (n−1)/2 + Σ_{0≤j<k} Ω_{j,k}

把 Θ 限制到中心特征为 χ_λ 的块上，就得到 F_{ℓ,λ}(M(μ)) 作为 H_ℓ 模。
Whittaker 一侧的标准模通过最长双陪集代表元归结到同一构造。
"""

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import (
    HypothesisViolatedError,
    InputError,
    NotDominantError,
    NotIntegralSpacedError,
    RelationCheckFailedError,
)
from .exactlin import Mat, Subspace
from .hecke import (
    HModule,
    IsomorphismResult,
    check_relations,
    induced_standard,
    is_isomorphic,
    weight_spectrum,
)
from .logger import get_logger
from .multiseg import delta
from .verma import TensorBlock, TensorSpace, block_projection, root_weight, tensor_block
from .weights import (
    Weight,
    dot_action,
    is_dominant,
    is_integral,
    stabilizer,
    tensor_datum,
)
from .weyl import DoubleCoset, ParabolicSet

logger = get_logger(__name__)


def omega(i: int, j: int, tb: TensorBlock) -> Mat:
    """
    Ω_ij 在张量块上的矩阵

    Args:
        i: 因子下标，0 为 Verma 因子
        j: 因子下标，1..ℓ
        tb: 张量块

    Raises:
        InputError: 不满足 0 ≤ i < j ≤ ℓ
    """
    if not 0 <= i < j <= tb.l:
        raise InputError(f"Ω 的因子下标需满足 0 ≤ i < j ≤ {tb.l}: ({i}, {j})")
    return tb.slot_pairing(i, j)


@dataclass(frozen=True)
class ThetaAction:
    """Θ(s_i) 与 Θ(ε_k) 的矩阵"""

    s_mats: tuple[Mat, ...]
    eps_mats: tuple[Mat, ...]

    def restrict(self, space: Subspace) -> "ThetaAction":
        return ThetaAction(
            tuple(space.restrict(m) for m in self.s_mats),
            tuple(space.restrict(m) for m in self.eps_mats),
        )

    def as_module(self, dim: int, name: str = "") -> HModule:
        return HModule(dim, self.s_mats, self.eps_mats, None, name=name)


def theta_action(tb: TensorBlock) -> ThetaAction:
    """整个张量块上的 Θ 作用"""
    shift = Fraction(tb.n - 1, 2)
    s_mats = tuple(-omega(i, i + 1, tb) for i in range(1, tb.l))
    eps_mats = []
    for k in range(1, tb.l + 1):
        total = Mat.scalar(tb.dim, shift)
        for j in range(k):
            total = total + omega(j, k, tb)
        eps_mats.append(total)
    return ThetaAction(s_mats, tuple(eps_mats))


@dataclass(frozen=True)
class FunctorValue:
    """F_{ℓ,λ}(M(μ))；Whittaker 一侧另记双陪集与 η"""

    mu: Weight
    lam: Weight
    l: int
    module: HModule
    block: TensorBlock
    projection: Subspace
    eta: ParabolicSet | None = None
    coset: DoubleCoset | None = None

    @property
    def dim(self) -> int:
        return self.module.dim


def _check_dominant_integral(lam: Weight) -> None:
    if not is_dominant(lam):
        raise NotDominantError(f"λ 不是支配的: {lam}")
    if not is_integral(lam):
        raise NotIntegralSpacedError(f"λ 不是整权: {lam}")


def functor_value_verma(mu: Weight, lam: Weight, l: int) -> FunctorValue:
    """
    F_{ℓ,λ}(M(μ)) = (M(μ)⊗V^⊗ℓ)^{[λ]}_λ，带 Θ 作用

    Args:
        mu: Verma 模的最高权
        lam: 支配整权
        l: 张量次数

    Returns:
        函子值；λ−μ 不是 V^⊗ℓ 的权时为零模

    Raises:
        NotDominantError: λ 不是支配的
        NotIntegralSpacedError: λ 不是整权
        RelationCheckFailedError: Θ 限制后不满足定义关系
    """
    _check_dominant_integral(lam)
    tb = tensor_block(mu, lam, l)
    projection = block_projection(tb)
    theta = theta_action(tb).restrict(projection)
    module = theta.as_module(projection.dim, name=f"F(M({mu}))")
    if l == 0:
        module = HModule(projection.dim, (), (), None, name=module.name)
    check_relations(module)
    logger.debug("F(M(%s)) 于 λ=%s, ℓ=%d: 维数 %d", mu, lam, l, module.dim)
    return FunctorValue(mu, lam, l, module, tb, projection)


def _spectrum_shift(a: HModule, b: HModule) -> Fraction | None:
    """两个模的权谱是否只差一个整体平移"""
    sa = weight_spectrum(a).entries
    sb = weight_spectrum(b).entries
    if len(sa) != len(sb) or not sa:
        return None
    shift = sa[0][0][0] - sb[0][0][0]
    for (va, ma), (vb, mb) in zip(sa, sb):
        if ma != mb or any(x - y != shift for x, y in zip(va, vb)):
            return None
    return shift or None


def compare_to_standard(fv: FunctorValue) -> IsomorphismResult:
    """
    比较函子值与标准模 std(δ_{λ,μ})

    Raises:
        InputError: 函子值为零
    """
    if fv.dim == 0:
        raise InputError(f"F(M({fv.mu})) 为零，无可比较的标准模")
    standard = induced_standard(delta(fv.lam, fv.mu, fv.l), fv.l)
    result = is_isomorphic(fv.module, standard)
    if not result:
        shift = _spectrum_shift(fv.module, standard)
        if shift is not None:
            logger.warning("ε 的权谱整体平移 %s（中心元平移）", shift)
            return replace(result, reason=f"{result.reason}；ε 权谱整体平移 {shift}")
    return result


def whittaker_functor_value(
    coset: DoubleCoset,
    lam: Weight,
    l: int | None = None,
    eta: ParabolicSet | None = None,
) -> FunctorValue:
    """
    F_{ℓ,η,λ}(std_N(y•λ, η))，经最长代表元归结为 Verma 模的函子值

    Args:
        coset: W_η\\W/W_λ 双陪集
        lam: 支配整权
        l: 张量次数，默认 n
        eta: 单反射集，默认 λ 的稳定子

    Raises:
        HypothesisViolatedError: η 不等于 λ 的稳定子
    """
    _check_dominant_integral(lam)
    stab = stabilizer(lam)
    eta = stab if eta is None else eta
    if eta != stab:
        raise HypothesisViolatedError(f"η = {eta} 不等于 λ 的稳定子 {stab}")
    l = lam.n if l is None else l
    mu = dot_action(coset.longest_rep, lam)
    fv = functor_value_verma(mu, lam, l)
    return replace(fv, eta=eta, coset=coset)


def expected_functor_dim(mu: Weight, lam: Weight, l: int) -> int:
    """dim (V^⊗ℓ)_{λ−μ}"""
    datum = tensor_datum(lam, mu, l)
    return datum.multinomial() if datum is not None else 0


def operator_identity_failures(mu: Weight, lam: Weight, l: int) -> list[str]:
    """
    在整个张量块上检查 Θ 的恒等式

    检查 ε 两两交换、交叉关系、Θ 与 Casimir 交换，以及 Θ 与每个 E_xy
    （映到相邻权块）交换。

    Returns:
        不成立的恒等式描述，全部成立时为空
    """
    failures = []
    space = TensorSpace(mu, l)
    tb = space.allocate(lam)
    theta = theta_action(tb)
    try:
        check_relations(theta.as_module(tb.dim), scalar_center=False)
    except RelationCheckFailedError as e:
        failures.append(f"Θ 关系: {e}")
    casimir = tb.casimir_matrix()
    for k, g in enumerate(theta.s_mats + theta.eps_mats):
        if not g.commutator(casimir).is_zero():
            failures.append(f"第 {k} 个 Θ 生成元与 Casimir 不交换")
    n = lam.n
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            if x == y:
                continue
            target = space.allocate(lam + root_weight(n, x, y))
            target_theta = theta_action(target)
            e = space.g_matrix(x, y, lam)
            pairs = zip(
                target_theta.s_mats + target_theta.eps_mats,
                theta.s_mats + theta.eps_mats,
            )
            for k, (upper, lower) in enumerate(pairs):
                if upper @ e != e @ lower:
                    failures.append(f"第 {k} 个 Θ 生成元与 E_{x}{y} 不交换")
    return failures
