"""
命令行入口

每个子命令把结果写成一份 JSON 文档（标准输出或 --json-out 指定的文件），
矩阵元素以 "p/q" 形式的字符串给出。

退出码:
    0: 成功或核对通过
    1: 核对不通过
    2: 输入错误
    3: 内部一致性错误

用法:
    whittaker-hecke kl --x 1,2,3,4 --w 3,4,1,2
    whittaker-hecke verify-all --n 2 --lambda 0,0
"""

import argparse
import json
import sys
from collections.abc import Callable
from fractions import Fraction
from pathlib import Path

from .asfunctor import compare_to_standard, functor_value_verma, whittaker_functor_value
from .config import RunConfig, load_config
from .errors import ConsistencyError, InputError, LengthMismatchError
from .exactlin import Mat, format_rat
from .hecke import (
    HModule,
    central_character,
    certify_irreducible,
    check_relations,
    composition_factors,
    induced_standard,
    irr_quotient,
    submodule_lattice,
    w_character,
    weight_spectrum,
)
from .logger import configure_logging, get_logger
from .multiseg import (
    MultisegmentClass,
    delta,
    ms_classes,
    nilpotent_rep,
    support,
    zeta_weight,
)
from .multtable import (
    BlockParams,
    CheckReport,
    verify_all,
    verify_as,
    verify_dims,
    verify_main,
    verify_mult_equal,
)
from .orbitmaps import graded_structure, phi, psi
from .verma import block_projection, expected_projection_dim, tensor_block, verma_basis
from .weights import Weight, stabilizer
from .weyl import (
    ParabolicSet,
    Perm,
    bruhat_leq,
    coset_containing,
    double_cosets,
    kl_polynomial,
    mu_coefficient,
)

logger = get_logger(__name__)

# JSON 文档格式版本
SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT_ERROR = 2
EXIT_CONSISTENCY_ERROR = 3


# ---------------------------------------------------------------------------
# 序列化
# ---------------------------------------------------------------------------


def rats(values) -> list[str]:
    return [format_rat(Fraction(x)) for x in values]


def matrix_json(m: Mat) -> list[list[str]]:
    return [rats(row) for row in m.to_rows()]


def module_json(m: HModule, emit_matrices: bool) -> dict:
    """模的维数、权谱、中心特征与（可选的）生成元矩阵"""
    result = {
        "dim": m.dim,
        "l": m.l,
        "spectrum": [
            {"weight": rats(values), "multiplicity": mult}
            for values, mult in weight_spectrum(m).entries
        ],
    }
    if m.dim:
        result["central_character"] = rats(central_character(m))
        result["w_character"] = rats(w_character(m))
    if m.basis_labels is not None:
        result["basis"] = [str(w) for w in m.basis_labels]
    if emit_matrices:
        result["matrices"] = {
            "s": [matrix_json(x) for x in m.s_mats],
            "eps": [matrix_json(x) for x in m.eps_mats],
        }
    return result


# ---------------------------------------------------------------------------
# 参数解析
# ---------------------------------------------------------------------------


def _weight(args: argparse.Namespace, name: str = "lambda") -> Weight:
    literal = getattr(args, name)
    if literal is None:
        raise InputError(f"缺少 --{name}")
    return Weight.parse(literal, args.n)


def _perm(literal: str | None, flag: str, m: int | None = None) -> Perm:
    if literal is None:
        raise InputError(f"缺少 --{flag}")
    w = Perm.parse(literal)
    if m is not None and w.m != m:
        raise LengthMismatchError(f"--{flag} 的长度应为 {m}: {literal!r}")
    return w


def _tau(args: argparse.Namespace) -> MultisegmentClass:
    if args.tau is None:
        raise InputError("缺少 --tau")
    return MultisegmentClass.parse(args.tau)


def _eta(args: argparse.Namespace, lam: Weight) -> ParabolicSet:
    if args.eta is None or args.eta == "auto":
        return stabilizer(lam)
    eta = ParabolicSet.parse(args.eta)
    eta.validate(lam.n)
    return eta


def _block_params(args: argparse.Namespace) -> BlockParams:
    lam = _weight(args)
    return BlockParams.of(lam, _eta(args, lam))


def _tensor_degree(args: argparse.Namespace, default: int) -> int:
    l = default if args.l is None else args.l
    if l < 0:
        raise InputError(f"张量次数不能为负: {l}")
    return l


# ---------------------------------------------------------------------------
# 子命令
# ---------------------------------------------------------------------------


def cmd_kl(args: argparse.Namespace, config: RunConfig) -> tuple[dict, bool]:
    x = _perm(args.x, "x", args.m)
    w = _perm(args.w, "w", x.m)
    poly = kl_polynomial(x, w)
    return {
        "x": str(x),
        "w": str(w),
        "comparable": bruhat_leq(x, w),
        "poly": list(poly.coefficients),
        "mu": mu_coefficient(x, w),
    }, True


def cmd_cosets(args: argparse.Namespace, config: RunConfig) -> tuple[dict, bool]:
    lam = _weight(args)
    eta = _eta(args, lam)
    stab = stabilizer(lam)
    cosets = double_cosets(eta, stab, lam.n)
    result = {
        "eta": list(eta.simple_indices),
        "stabilizer": list(stab.simple_indices),
        "cosets": [
            {
                "longest": str(q.longest_rep),
                "length": q.longest_rep.length(),
                "size": q.size,
            }
            for q in cosets
        ],
    }
    if args.w is not None:
        q = coset_containing(_perm(args.w, "w", lam.n), eta, stab)
        result["containing"] = str(q.longest_rep)
    return result, True


def cmd_multiseg(args: argparse.Namespace, config: RunConfig) -> tuple[dict, bool]:
    if args.tau is not None:
        tau = _tau(args)
        result = {
            "tau": str(tau),
            "l": tau.l,
            "support": rats(support(tau)),
            "zeta": rats(zeta_weight(tau)),
        }
        if config.emit_matrices:
            result["nilpotent"] = matrix_json(nilpotent_rep(tau))
        return result, True
    lam = _weight(args)
    if args.mu is not None:
        mu = _weight(args, "mu")
        l = _tensor_degree(args, lam.n)
        return {"delta": str(delta(lam, mu, l)), "l": l}, True
    lamrho = Weight(graded_structure(lam).sigma_values)
    return {"classes": [str(tau) for tau in ms_classes(lamrho)]}, True


def cmd_orbitmap(args: argparse.Namespace, config: RunConfig) -> tuple[dict, bool]:
    lam = _weight(args)
    gs = graded_structure(lam)
    if args.tau is not None:
        tau = _tau(args)
        return {"tau": str(tau), "coset": str(phi(tau, gs).longest_rep)}, True
    if args.coset is not None:
        j_set = gs.parabolic
        q = coset_containing(_perm(args.coset, "coset", lam.n), j_set, j_set)
        tau = psi(q, gs)
        return {"coset": str(q.longest_rep), "tau": str(tau) if tau else None}, True
    lamrho = Weight(gs.sigma_values)
    return {
        "image": {str(tau): str(phi(tau, gs).longest_rep) for tau in ms_classes(lamrho)}
    }, True


def cmd_hecke_std(args: argparse.Namespace, config: RunConfig) -> tuple[dict, bool]:
    tau = _tau(args)
    m = induced_standard(tau, _tensor_degree(args, tau.l))
    check_relations(m)
    result = {"tau": str(tau), **module_json(m, config.emit_matrices)}
    return result, True


def cmd_hecke_decompose(
    args: argparse.Namespace, config: RunConfig
) -> tuple[dict, bool]:
    tau = _tau(args)
    m = induced_standard(tau, _tensor_degree(args, tau.l))
    factors = composition_factors(m, config.max_seeds, config.seed)
    irr = irr_quotient(m, config.max_seeds, config.seed)
    lattice = submodule_lattice(m, config.max_seeds, config.seed)
    certified = all(f.certified for f in factors) and certify_irreducible(irr)
    result = {
        "tau": str(tau),
        "dim": m.dim,
        "factors": [
            {
                "dim": f.module.dim,
                "central_character": rats(f.signature.central_character),
                "spectrum": str(f.signature.spectrum),
                "w_character": rats(f.signature.w_character),
                "certified": f.certified,
            }
            for f in factors
        ],
        "irr_quotient": module_json(irr, config.emit_matrices),
        "lattice": {"size": len(lattice), "certified": lattice.certified},
        "certified": certified,
    }
    return result, certified or not config.certify


def cmd_verma_block(args: argparse.Namespace, config: RunConfig) -> tuple[dict, bool]:
    mu = _weight(args, "mu")
    gamma = _weight(args, "gamma")
    vb = verma_basis(mu, gamma)
    return {
        "mu": rats(mu.coords),
        "gamma": rats(gamma.coords),
        "dim": vb.dim,
        "basis": [mono.render(mu.n) for mono in vb.basis],
    }, True


def cmd_verma_tensor_block(
    args: argparse.Namespace, config: RunConfig
) -> tuple[dict, bool]:
    mu = _weight(args, "mu")
    lam = _weight(args)
    tb = tensor_block(mu, lam, _tensor_degree(args, lam.n))
    projection = block_projection(tb)
    return {
        "dim": tb.dim,
        "projection_dim": projection.dim,
        "expected_projection_dim": expected_projection_dim(tb),
    }, True


def cmd_functor(args: argparse.Namespace, config: RunConfig) -> tuple[dict, bool]:
    lam = _weight(args)
    l = _tensor_degree(args, lam.n)
    if args.coset is not None:
        stab = stabilizer(lam)
        eta = _eta(args, lam)
        q = coset_containing(_perm(args.coset, "coset", lam.n), eta, stab)
        fv = whittaker_functor_value(q, lam, l, eta)
    else:
        fv = functor_value_verma(_weight(args, "mu"), lam, l)
    result = {
        "mu": rats(fv.mu.coords),
        "coset": str(fv.coset.longest_rep) if fv.coset else None,
        **module_json(fv.module, config.emit_matrices),
    }
    ok = True
    if config.certify and fv.dim:
        comparison = compare_to_standard(fv)
        result["isomorphic_to_standard"] = comparison.isomorphic
        result["certified"] = comparison.certified
        result["reason"] = comparison.reason
        if comparison.witness is not None and config.emit_matrices:
            result["witness"] = matrix_json(comparison.witness)
        ok = comparison.isomorphic and comparison.witness is not None
    return result, ok


def _report(report: CheckReport) -> tuple[dict, bool]:
    return report.to_dict(), report.passed


def cmd_verify_dims(args: argparse.Namespace, config: RunConfig) -> tuple[dict, bool]:
    bp = _block_params(args)
    return _report(verify_dims(bp, _tensor_degree(args, bp.n)))


def cmd_verify_as(args: argparse.Namespace, config: RunConfig) -> tuple[dict, bool]:
    bp = _block_params(args)
    return _report(verify_as(bp, _tensor_degree(args, bp.n)))


def cmd_verify_mult_equal(
    args: argparse.Namespace, config: RunConfig
) -> tuple[dict, bool]:
    return _report(verify_mult_equal(_block_params(args)))


def cmd_verify_main(args: argparse.Namespace, config: RunConfig) -> tuple[dict, bool]:
    return _report(verify_main(_block_params(args), config.max_seeds, config.seed))


def cmd_verify_all(args: argparse.Namespace, config: RunConfig) -> tuple[dict, bool]:
    bp = _block_params(args)
    report = verify_all(bp, _tensor_degree(args, bp.n), config.max_seeds, config.seed)
    return _report(report)


Handler = Callable[[argparse.Namespace, RunConfig], tuple[dict, bool]]

# 子命令: (处理函数, 说明, 示例)
COMMANDS: dict[str, tuple[Handler, str, str]] = {
    "kl": (cmd_kl, "KL 多项式 P_{x,w}", "whittaker-hecke kl --x 1,2,3,4 --w 3,4,1,2"),
    "cosets": (
        cmd_cosets,
        "双陪集 W_η\\W/W_λ",
        "whittaker-hecke cosets --n 3 --lambda=-2/3,1/3,1/3 --eta 1",
    ),
    "multiseg": (
        cmd_multiseg,
        "多重线段类、δ_{λ,μ} 与单个多重线段的数据",
        "whittaker-hecke multiseg --n 2 --lambda 0,0 --mu=-1,1 -l 2",
    ),
    "orbitmap": (
        cmd_orbitmap,
        "Φ 与 Ψ",
        'whittaker-hecke orbitmap --n 3 --lambda 0,0,0 --tau "[(-1,3)]"',
    ),
    "hecke-std": (
        cmd_hecke_std,
        "标准模 std(τ)",
        'whittaker-hecke hecke-std --tau "[(-1/2,2)]" --emit-matrices',
    ),
    "hecke-decompose": (
        cmd_hecke_decompose,
        "std(τ) 的合成因子与不可约商",
        'whittaker-hecke hecke-decompose --tau "[(-1/2,1),(1/2,1)]" --certify',
    ),
    "verma-block": (
        cmd_verma_block,
        "Verma 模权空间的 PBW 基",
        "whittaker-hecke verma-block --n 3 --mu 0,0,0 --gamma=-1,0,1",
    ),
    "verma-tensor-block": (
        cmd_verma_tensor_block,
        "M(μ)⊗V^⊗ℓ 的权块及其块投影",
        "whittaker-hecke verma-tensor-block --n 2 --mu=-1,1 --lambda 0,0 -l 2",
    ),
    "functor": (
        cmd_functor,
        "函子值 F(M(μ)) 或 F(std_N)",
        "whittaker-hecke functor --n 2 -l 2 --lambda 0,0 --coset 2,1 --eta auto",
    ),
    "verify-dims": (
        cmd_verify_dims,
        "维数恒等式",
        "whittaker-hecke verify-dims --n 2 --lambda 0,0 -l 4",
    ),
    "verify-as": (
        cmd_verify_as,
        "函子值与标准模同构、Θ 的恒等式",
        "whittaker-hecke verify-as --n 2 --lambda 0,0",
    ),
    "verify-mult-equal": (
        cmd_verify_mult_equal,
        "两侧重数矩阵相等",
        "whittaker-hecke verify-mult-equal --n 3 --lambda 0,0,0",
    ),
    "verify-main": (
        cmd_verify_main,
        "重数相等、不可约像表与 Grothendieck 一致性",
        "whittaker-hecke verify-main --n 2 --lambda 0,0",
    ),
    "verify-all": (
        cmd_verify_all,
        "全部核对",
        "whittaker-hecke verify-all --n 2 --lambda 0,0 --json-out report.json",
    ),
}


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="秩 n（校验权重坐标个数）")
    common.add_argument("-l", type=int, dest="l", help="张量次数 ℓ")
    common.add_argument(
        "--lambda", dest="lambda", help="支配整权 λ，如 0,0；以负数开头时写作 --lambda=-1,1"
    )
    common.add_argument("--mu", help="权重 μ（以负数开头时写作 --mu=-1,1）")
    common.add_argument("--gamma", help="权重 γ（verma-block）")
    common.add_argument("--eta", help="单反射下标列表，或 auto（λ 的稳定子）")
    common.add_argument("--tau", help='多重线段，如 "[(-1/2,2),(1/2,1)]"')
    common.add_argument("--coset", help="双陪集中的一个置换，如 2,1")
    common.add_argument("--x", help="置换 x")
    common.add_argument("--w", help="置换 w")
    common.add_argument("--m", type=int, help="对称群 S_m 的秩")
    common.add_argument("--json-out", type=Path, help="JSON 输出文件（默认标准输出）")
    common.add_argument(
        "--emit-matrices", action="store_const", const=True, help="输出生成元矩阵"
    )
    common.add_argument(
        "--certify", action="store_const", const=True, help="要求不可约性证书与同构见证"
    )
    common.add_argument("--max-seeds", type=int, help="分裂子模时每个权重的随机种子数")
    common.add_argument("--seed", type=int, help="随机数种子")
    common.add_argument("--config", type=Path, help="YAML 配置文件")
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="输出日志（-vv 为调试级）"
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    """构造带全部子命令的解析器"""
    parser = argparse.ArgumentParser(
        prog="whittaker-hecke",
        description="Whittaker 范畴与分次仿射 Hecke 代数的重数核对工具",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例:
  # KL 多项式
  whittaker-hecke kl --x 1,2,3,4 --w 3,4,1,2

  # sl_2 全部核对
  whittaker-hecke verify-all --n 2 --lambda 0,0

  # 主定理核对（奇异块）
  whittaker-hecke verify-main --n 3 --lambda=-2/3,1/3,1/3
        """,
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_parser()
    for name, (_, help_text, example) in COMMANDS.items():
        subparsers.add_parser(
            name,
            parents=[common],
            help=help_text,
            description=help_text,
            formatter_class=argparse.RawDescriptionHelpFormatter,
            epilog=f"\n示例:\n  {example}\n",
        )
    return parser


def write_document(document: dict, path: Path | None) -> None:
    text = json.dumps(document, indent=2, ensure_ascii=False)
    if path is None:
        print(text)
    else:
        path.write_text(text + "\n", encoding="utf-8")


def run(args: argparse.Namespace) -> int:
    """
    执行一个子命令

    Returns:
        退出码
    """
    configure_logging(args.verbose)
    try:
        config = load_config(args.config).merged(
            emit_matrices=args.emit_matrices,
            certify=args.certify,
            max_seeds=args.max_seeds,
            seed=args.seed,
        )
        handler = COMMANDS[args.command][0]
        result, ok = handler(args, config)
    except InputError as e:
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except ConsistencyError as e:
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_CONSISTENCY_ERROR

    document = {"schema_version": SCHEMA_VERSION, "command": args.command, **result}
    try:
        write_document(document, args.json_out)
    except OSError as e:
        print(f"错误: 无法写入 {args.json_out}: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    if not ok:
        logger.warning("%s 核对未通过", args.command)
    return EXIT_OK if ok else EXIT_MISMATCH


def main(argv: list[str] | None = None) -> int:
    """主函数"""
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
