"""
两侧的重数矩阵与核对

Whittaker 一侧 [std_N(w•λ,η) : irr_N(y•λ,η)] 取 KL 多项式在 1 处的值；
Hecke 一侧 [std(τ) : irr(γ)] 由标准模的合成因子按签名匹配不可约商得到。
Φ 把多重线段类送到双陪集，两侧矩阵在 Φ 的像上逐项相等。
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .asfunctor import (
    compare_to_standard,
    expected_functor_dim,
    functor_value_verma,
    operator_identity_failures,
    whittaker_functor_value,
)
from .errors import (
    AmbiguousFactorSignatureError,
    ConsistencyError,
    HypothesisViolatedError,
    NotDominantError,
    NotIntegralSpacedError,
)
from .exactlin import Mat, format_rat
from .hecke import (
    DEFAULT_MAX_SEEDS,
    DEFAULT_SEED,
    FactorSignature,
    HModule,
    check_relations,
    composition_factors,
    factor_signature,
    induced_standard,
    irr_quotient,
)
from .logger import get_logger
from .multiseg import MultisegmentClass, delta, ms_classes, nilpotent_rep
from .orbitmaps import (
    GradedStructure,
    graded_structure,
    multisegment_from_ranks,
    phi,
    psi,
    rank_profile,
)
from .verma import block_projection, gl_casimir_difference, tensor_block
from .weights import (
    Weight,
    dot_action,
    dot_orbit,
    is_dominant,
    is_integral,
    stabilizer,
    tensor_datum,
    tensor_filtration,
    tensor_weight_multiplicity,
)
from .weyl import (
    DoubleCoset,
    ParabolicSet,
    Perm,
    all_perms,
    bruhat_leq,
    double_cosets,
    kl_polynomial,
    kl_polynomial_via_r,
    kl_table_size,
)

logger = get_logger(__name__)


def _coset_key(q: DoubleCoset) -> tuple[int, Perm]:
    return (q.longest_rep.length(), q.longest_rep)


@dataclass(frozen=True)
class BlockParams:
    """块参数 (n, λ, η)"""

    n: int
    lam: Weight
    eta: ParabolicSet

    @classmethod
    def of(cls, lam: Weight, eta: ParabolicSet | None = None) -> "BlockParams":
        """
        由支配整权构造块参数，η 默认取 λ 的稳定子

        Raises:
            NotDominantError: λ 不是支配的
            NotIntegralSpacedError: λ 不是整权
            LiteralParseError: η 的下标越界
        """
        if not is_dominant(lam):
            raise NotDominantError(f"λ 不是支配的: {lam}")
        if not is_integral(lam):
            raise NotIntegralSpacedError(f"λ 不是整权: {lam}")
        eta = stabilizer(lam) if eta is None else eta
        eta.validate(lam.n)
        return cls(lam.n, lam, eta)

    @property
    def graded(self) -> GradedStructure:
        return graded_structure(self.lam)

    def require_stabilizer(self) -> None:
        """
        Raises:
            HypothesisViolatedError: η 不等于 λ 的稳定子
        """
        stab = stabilizer(self.lam)
        if self.eta != stab:
            raise HypothesisViolatedError(f"η = {self.eta} 不等于 λ 的稳定子 {stab}")

    def cosets(self) -> list[DoubleCoset]:
        """W_η\\W/W_λ，按最长代表元的 (长度, 字典序) 排列"""
        return sorted(
            double_cosets(self.eta, stabilizer(self.lam), self.n), key=_coset_key
        )

    def classes(self) -> list[MultisegmentClass]:
        """支撑为 λ+ρ 的多重线段类，按 Φ 像的顺序排列"""
        gs = self.graded
        return sorted(
            ms_classes(Weight(gs.sigma_values)),
            key=lambda tau: (_coset_key(phi(tau, gs)), tau.sort_key()),
        )

    def __str__(self) -> str:
        return f"n={self.n} λ={self.lam} η={self.eta}"


def _label(param: "DoubleCoset | MultisegmentClass") -> str:
    if isinstance(param, DoubleCoset):
        return str(param.longest_rep)
    return str(param)


@dataclass(frozen=True)
class MultiplicityMatrix:
    """重数矩阵，行列按参数顺序排列"""

    row_params: tuple
    col_params: tuple
    entries: tuple[tuple[int, ...], ...]
    certified: bool = True

    @property
    def size(self) -> int:
        return len(self.entries)

    def is_unitriangular(self) -> bool:
        for i, row in enumerate(self.entries):
            if row[i] != 1 or any(row[:i]):
                return False
        return True

    def inverse(self) -> list[list[int]]:
        """单位上三角矩阵的整数逆"""
        k = self.size
        inv = [[int(i == j) for j in range(k)] for i in range(k)]
        for i in range(k - 1, -1, -1):
            for j in range(i + 1, k):
                inv[i][j] = -sum(
                    self.entries[i][t] * inv[t][j] for t in range(i + 1, j + 1)
                )
        return inv

    def to_dict(self) -> dict:
        return {
            "rows": [_label(p) for p in self.row_params],
            "cols": [_label(p) for p in self.col_params],
            "entries": [list(row) for row in self.entries],
            "certified": self.certified,
        }


@dataclass
class CheckReport:
    """一项核对的结果：错误使核对失败，警告只作记录"""

    name: str
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    sections: list["CheckReport"] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.errors and all(s.passed for s in self.sections)

    def to_dict(self) -> dict:
        result = {
            "name": self.name,
            "status": "passed" if self.passed else "failed",
            "errors": self.errors,
            "warnings": self.warnings,
        }
        if self.details:
            result["details"] = self.details
        if self.sections:
            result["sections"] = [s.to_dict() for s in self.sections]
        return result


def whittaker_mult_matrix(bp: BlockParams) -> MultiplicityMatrix:
    """
    Whittaker 一侧的重数矩阵

    行列为 W_η\\W/W_λ 的双陪集，以最长代表元 w、y 标识；
    y ≥ w 时元素为 P_{w,y}(1)，否则为 0。
    """
    cosets = bp.cosets()
    entries = tuple(
        tuple(
            kl_polynomial(w.longest_rep, y.longest_rep).at(1)
            if bruhat_leq(w.longest_rep, y.longest_rep)
            else 0
            for y in cosets
        )
        for w in cosets
    )
    return MultiplicityMatrix(tuple(cosets), tuple(cosets), entries)


@dataclass
class HeckeBlock:
    """一个块中的标准模、不可约商及其签名索引"""

    classes: list[MultisegmentClass]
    standards: dict[MultisegmentClass, HModule]
    irreducibles: dict[MultisegmentClass, HModule]
    signatures: dict[FactorSignature, MultisegmentClass]
    max_seeds: int = DEFAULT_MAX_SEEDS
    seed: int = DEFAULT_SEED

    def classify(self, m: HModule) -> tuple[tuple[int, ...], bool]:
        """
        模在 Grothendieck 群中的类（按不可约模计数）

        Returns:
            (计数向量, 各因子的不可约性是否都已证明)

        Raises:
            ConsistencyError: 某个因子不匹配任何不可约商
        """
        counts: Counter = Counter()
        certified = True
        for factor in composition_factors(m, self.max_seeds, self.seed):
            certified = certified and factor.certified
            match = self.signatures.get(factor.signature)
            if match is None:
                raise ConsistencyError(
                    f"{m.name or '模'} 的合成因子（权谱 {factor.signature.spectrum}）"
                    "不匹配任何不可约商"
                )
            counts[match] += 1
        return tuple(counts[tau] for tau in self.classes), certified


def hecke_block(
    bp: BlockParams, max_seeds: int = DEFAULT_MAX_SEEDS, seed: int = DEFAULT_SEED
) -> HeckeBlock:
    """
    构造块中全部标准模与不可约商

    Raises:
        AmbiguousFactorSignatureError: 两个不可约商签名相同
    """
    classes = bp.classes()
    standards = {}
    irreducibles = {}
    signatures: dict[FactorSignature, MultisegmentClass] = {}
    for tau in classes:
        standards[tau] = induced_standard(tau, tau.l)
        irreducibles[tau] = irr_quotient(standards[tau], max_seeds, seed)
        signature = factor_signature(irreducibles[tau])
        if signature in signatures:
            raise AmbiguousFactorSignatureError(
                f"irr({tau}) 与 irr({signatures[signature]}) 的签名相同"
            )
        signatures[signature] = tau
    return HeckeBlock(classes, standards, irreducibles, signatures, max_seeds, seed)


def hecke_mult_matrix(
    bp: BlockParams,
    block: HeckeBlock | None = None,
    max_seeds: int = DEFAULT_MAX_SEEDS,
    seed: int = DEFAULT_SEED,
) -> MultiplicityMatrix:
    """
    Hecke 一侧的分解数矩阵 [std(τ) : irr(γ)]

    Raises:
        AmbiguousFactorSignatureError: 两个不可约商签名相同
    """
    block = block or hecke_block(bp, max_seeds, seed)
    rows = []
    certified = True
    for tau in block.classes:
        counts, ok = block.classify(block.standards[tau])
        certified = certified and ok
        rows.append(counts)
    return MultiplicityMatrix(
        tuple(block.classes), tuple(block.classes), tuple(rows), certified
    )


def verify_mult_equal(bp: BlockParams, block: HeckeBlock | None = None) -> CheckReport:
    """
    经 Φ 重新索引后，两侧重数矩阵在 Φ 的像上逐项相等

    Raises:
        HypothesisViolatedError: η 不等于 λ 的稳定子
    """
    bp.require_stabilizer()
    report = CheckReport("mult-equal")
    whittaker = whittaker_mult_matrix(bp)
    hecke = hecke_mult_matrix(bp, block)
    gs = bp.graded
    position = {q.longest_rep: k for k, q in enumerate(whittaker.row_params)}
    images = {tau: phi(tau, gs) for tau in hecke.row_params}

    for name, matrix in (("Whittaker", whittaker), ("Hecke", hecke)):
        if not matrix.is_unitriangular():
            report.errors.append(f"{name} 一侧的矩阵不是单位上三角的")
    for i, tau in enumerate(hecke.row_params):
        for j, gamma in enumerate(hecke.col_params):
            q, o = images[tau], images[gamma]
            expected = whittaker.entries[position[q.longest_rep]][
                position[o.longest_rep]
            ]
            actual = hecke.entries[i][j]
            if expected != actual:
                report.errors.append(
                    f"[std({tau}):irr({gamma})] = {actual}，"
                    f"而 [std_N({q.longest_rep}):irr_N({o.longest_rep})] = {expected}"
                )
    if not hecke.certified:
        report.warnings.append("Hecke 一侧有因子的不可约性未经证明")
    report.details = {
        "whittaker": whittaker.to_dict(),
        "hecke": hecke.to_dict(),
        "phi": {str(tau): str(q.longest_rep) for tau, q in images.items()},
    }
    logger.info("mult-equal %s: %s", bp, "通过" if report.passed else "失败")
    return report


def _coset_classes(
    bp: BlockParams, block: HeckeBlock, cosets: list[DoubleCoset]
) -> list[tuple[int, ...]]:
    return [
        block.classify(whittaker_functor_value(q, bp.lam, bp.n).module)[0]
        for q in cosets
    ]


def irr_image_table(bp: BlockParams, block: HeckeBlock | None = None) -> CheckReport:
    """
    F(irr_N(O)) 的类：Ψ(O) ≠ 0 时等于 irr(Ψ(O))，否则为零；并检查满射

    F(std_N) 的类由合成因子求得，再用 Whittaker 矩阵的逆在 Grothendieck 群中换算。

    Raises:
        HypothesisViolatedError: η 不等于 λ 的稳定子
    """
    bp.require_stabilizer()
    report = CheckReport("irr-image")
    block = block or hecke_block(bp)
    whittaker = whittaker_mult_matrix(bp)
    cosets = list(whittaker.row_params)
    std_classes = _coset_classes(bp, block, cosets)
    inverse = whittaker.inverse()
    gs = bp.graded
    k = len(block.classes)
    hit = set()
    rows = []
    for i, q in enumerate(cosets):
        irr_class = tuple(
            sum(inverse[i][j] * std_classes[j][t] for j in range(len(cosets)))
            for t in range(k)
        )
        tau = psi(q, gs)
        expected = tuple(int(tau == g) for g in block.classes) if tau else (0,) * k
        if irr_class != expected:
            report.errors.append(
                f"F(irr_N({q.longest_rep})) 的类为 {list(irr_class)}，期望 {list(expected)}"
            )
        hit.update(t for t in range(k) if irr_class[t])
        rows.append(
            {
                "coset": str(q.longest_rep),
                "psi": str(tau) if tau else None,
                "std_class": list(std_classes[i]),
                "irr_class": list(irr_class),
            }
        )
    missing = [str(block.classes[t]) for t in range(k) if t not in hit]
    if missing:
        report.errors.append(f"以下不可约模没有被取到: {', '.join(missing)}")
    report.details = {"table": rows, "classes": [str(tau) for tau in block.classes]}
    return report


def grothendieck_consistency(
    bp: BlockParams, block: HeckeBlock | None = None
) -> CheckReport:
    """
    维数的 Grothendieck 一致性：dim F(std) = M · dim F(irr)

    dim F(irr_N(O)) 取 dim irr(Ψ(O))，Ψ(O) = 0 时取 0。
    """
    bp.require_stabilizer()
    report = CheckReport("grothendieck")
    block = block or hecke_block(bp)
    whittaker = whittaker_mult_matrix(bp)
    cosets = list(whittaker.row_params)
    gs = bp.graded
    std_dims = [whittaker_functor_value(q, bp.lam, bp.n).dim for q in cosets]
    irr_dims = []
    for q in cosets:
        tau = psi(q, gs)
        irr_dims.append(block.irreducibles[tau].dim if tau else 0)
    for i, q in enumerate(cosets):
        predicted = sum(
            whittaker.entries[i][j] * irr_dims[j] for j in range(len(cosets))
        )
        if predicted != std_dims[i]:
            report.errors.append(
                f"dim F(std_N({q.longest_rep})) = {std_dims[i]}，矩阵给出 {predicted}"
            )
        mu = dot_action(q.longest_rep, bp.lam)
        translated = dict(tensor_filtration(mu, bp.n)).get(bp.lam, 0)
        if translated != std_dims[i]:
            report.errors.append(
                f"dim F(std_N({q.longest_rep})) = {std_dims[i]}，"
                f"M({mu})⊗V^⊗{bp.n} 的滤过中 λ 出现 {translated} 次"
            )
    report.details = {"std_dims": std_dims, "irr_dims": irr_dims}
    return report


def verify_dims(bp: BlockParams, l: int) -> CheckReport:
    """
    维数恒等式与定义关系：dim std(δ_{λ,μ}) = dim (V^⊗ℓ)_{λ−μ} = dim 块投影
    """
    report = CheckReport("dims")
    rows = []
    for mu in dot_orbit(bp.lam):
        multiplicity = tensor_weight_multiplicity(bp.n, l, bp.lam - mu)
        projected = block_projection(tensor_block(mu, bp.lam, l)).dim
        row = {"mu": str(mu), "tensor": multiplicity, "projection": projected}
        if tensor_datum(bp.lam, mu, l) is not None:
            standard = induced_standard(delta(bp.lam, mu, l), l)
            check_relations(standard)
            row["standard"] = standard.dim
            if standard.dim != multiplicity:
                report.errors.append(
                    f"μ={mu}: dim std = {standard.dim} ≠ {multiplicity}"
                )
        if projected != multiplicity:
            report.errors.append(f"μ={mu}: 块投影维数 {projected} ≠ {multiplicity}")
        rows.append(row)
    report.details = {"l": l, "weights": rows}
    return report


def verify_as(bp: BlockParams, l: int) -> CheckReport:
    """
    函子值与标准模同构，Θ 的恒等式，以及 Ω 的两种构造一致
    """
    report = CheckReport("as")
    rows = []
    for mu in dot_orbit(bp.lam):
        fv = functor_value_verma(mu, bp.lam, l)
        expected = expected_functor_dim(mu, bp.lam, l)
        row = {"mu": str(mu), "dim": fv.dim}
        if fv.dim != expected:
            report.errors.append(f"μ={mu}: dim F(M(μ)) = {fv.dim} ≠ {expected}")
        if fv.dim:
            result = compare_to_standard(fv)
            row["isomorphic"] = result.isomorphic
            row["certified"] = result.certified
            if result.witness is not None:
                witness = result.witness.to_rows()
                row["witness"] = [[format_rat(x) for x in r] for r in witness]
            if not result and result.certified:
                report.errors.append(f"μ={mu}: F(M(μ)) 与标准模不同构（{result.reason}）")
            elif not result:
                report.errors.append(f"μ={mu}: 未找到与标准模的同构（{result.reason}）")
        for failure in operator_identity_failures(mu, bp.lam, l):
            report.errors.append(f"μ={mu}: {failure}")
        tb = fv.block
        for i in range(l + 1):
            for j in range(i + 1, l + 1):
                if tb.slot_pairing(i, j) != gl_casimir_difference(tb, i, j):
                    report.errors.append(f"μ={mu}: Ω_{i}{j} 的两种构造不一致")
                offset = Mat.scalar(tb.dim, Fraction(int(i > 0), tb.n))
                if tb.sl_slot_pairing(i, j) != tb.slot_pairing(i, j) - offset:
                    report.errors.append(
                        f"μ={mu}: Ω_{i}{j} 与 sl_n 对偶基之和相差的不是 I_i·I_j/n"
                    )
        rows.append(row)
    report.details = {"l": l, "weights": rows}
    return report


def kl_oracle_report(m: int) -> CheckReport:
    """KL 递推与 R-多项式反演在 S_m 的全部可比较对上一致"""
    report = CheckReport("kl-oracle")
    perms = all_perms(m)
    for x in perms:
        for w in perms:
            if bruhat_leq(x, w) and kl_polynomial(x, w) != kl_polynomial_via_r(x, w):
                report.errors.append(
                    f"P_{{{x},{w}}}: 递推 {kl_polynomial(x, w)}，"
                    f"反演 {kl_polynomial_via_r(x, w)}"
                )
    report.details = {"m": m, "pairs": kl_table_size(m)}
    return report


def orbit_roundtrip_report(bp: BlockParams) -> CheckReport:
    """Ψ∘Φ = id，Φ∘Ψ 在像上为恒等，链秩表重构多重线段"""
    report = CheckReport("phi-psi")
    gs = bp.graded
    classes = ms_classes(Weight(gs.sigma_values))
    for tau in classes:
        q = phi(tau, gs)
        if psi(q, gs) != tau:
            report.errors.append(f"Ψ(Φ({tau})) ≠ {tau}")
        if multisegment_from_ranks(rank_profile(nilpotent_rep(tau), gs), gs) != tau:
            report.errors.append(f"{tau} 的链秩表重构失败")
    image = {phi(tau, gs).longest_rep for tau in classes}
    for q in double_cosets(gs.parabolic, gs.parabolic, gs.n):
        tau = psi(q, gs)
        if (tau is not None) != (q.longest_rep in image):
            report.errors.append(f"Ψ({q.longest_rep}) 与 Φ 的像不一致")
        elif tau is not None and phi(tau, gs).longest_rep != q.longest_rep:
            report.errors.append(f"Φ(Ψ({q.longest_rep})) ≠ {q.longest_rep}")
    report.details = {"classes": len(classes), "image": len(image)}
    return report


def verify_main(
    bp: BlockParams, max_seeds: int = DEFAULT_MAX_SEEDS, seed: int = DEFAULT_SEED
) -> CheckReport:
    """ℓ = n 时的主定理核对：重数相等、不可约像表、Grothendieck 一致性"""
    bp.require_stabilizer()
    block = hecke_block(bp, max_seeds, seed)
    report = CheckReport("main")
    report.sections = [
        verify_mult_equal(bp, block),
        irr_image_table(bp, block),
        grothendieck_consistency(bp, block),
    ]
    return report


def verify_all(
    bp: BlockParams,
    l: int | None = None,
    max_seeds: int = DEFAULT_MAX_SEEDS,
    seed: int = DEFAULT_SEED,
) -> CheckReport:
    """全部核对；ℓ ≠ n 时跳过只对 ℓ = n 成立的部分"""
    l = bp.n if l is None else l
    report = CheckReport("all")
    report.sections = [
        kl_oracle_report(bp.n),
        orbit_roundtrip_report(bp),
        verify_dims(bp, l),
        verify_as(bp, l),
    ]
    if bp.eta == stabilizer(bp.lam) and l == bp.n:
        report.sections.append(verify_main(bp, max_seeds, seed))
    else:
        report.warnings.append("η 不是稳定子或 ℓ ≠ n，跳过主定理核对")
    for section in report.sections:
        logger.info("%s: %s", section.name, "通过" if section.passed else "失败")
    return report
