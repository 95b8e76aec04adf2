#!/usr/bin/env python3
"""
验收套件运行脚本

读取 YAML 验收套件，对其中每个块运行 verify-all，逐块报告结果。

用法:
    python scripts/verify-suite.py [套件文件] [选项]

选项:
    --json: 输出 JSON 格式
    --only: 只运行名称匹配的块
"""

import argparse
import json
import sys
from pathlib import Path

try:
    from whittaker_hecke.config import SuiteBlock, load_suite
    from whittaker_hecke.errors import ConsistencyError, InputError
    from whittaker_hecke.logger import configure_logging
    from whittaker_hecke.multtable import BlockParams, CheckReport, verify_all
except ImportError:
    print("错误: 需要安装 whittaker-hecke-tools")
    print("安装命令: pip install -e . 或 uv sync")
    sys.exit(1)


class SuiteRunner:
    """验收套件运行器"""

    def __init__(self):
        self.results: list[dict] = []

    def run_block(self, block: SuiteBlock) -> tuple[bool, list[str], list[str]]:
        """
        对一个块运行全部核对

        Returns:
            (是否通过, 错误列表, 警告列表)
        """
        errors: list[str] = []
        warnings: list[str] = []
        try:
            bp = BlockParams.of(block.lam, block.eta)
            report = verify_all(bp, block.l)
        except (InputError, ConsistencyError) as e:
            errors.append(f"{type(e).__name__}: {e}")
            self.results.append(
                {"block": block.label, "status": "error", "errors": errors}
            )
            return False, errors, warnings

        self._collect(report, errors, warnings)
        self.results.append({"block": block.label, **report.to_dict()})
        return report.passed, errors, warnings

    def _collect(
        self, report: CheckReport, errors: list[str], warnings: list[str]
    ) -> None:
        errors.extend(f"[{report.name}] {e}" for e in report.errors)
        warnings.extend(f"[{report.name}] {w}" for w in report.warnings)
        for section in report.sections:
            self._collect(section, errors, warnings)

    def run_suite(self, blocks: list[SuiteBlock], quiet: bool) -> tuple[int, int]:
        """
        运行整个套件

        Returns:
            (通过个数, 失败个数)
        """
        passed_count = 0
        failed_count = 0
        for block in blocks:
            passed, errors, warnings = self.run_block(block)
            if passed:
                passed_count += 1
            else:
                failed_count += 1
            if quiet:
                continue
            print(f"{'✓' if passed else '✗'} {block.label}")
            for error in errors:
                print(f"  错误: {error}")
            for warning in warnings:
                print(f"  警告: {warning}")
        return passed_count, failed_count


def main() -> int:
    """主函数"""
    parser = argparse.ArgumentParser(
        description="对 YAML 验收套件中的每个块运行全部核对",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例:
  # 运行包内默认套件
  python scripts/verify-suite.py

  # 运行自定义套件
  python scripts/verify-suite.py my-suite.yaml

  # 只运行 sl2 相关的块并输出 JSON
  python scripts/verify-suite.py --only sl2 --json
        """,
    )
    parser.add_argument(
        "suite",
        type=str,
        nargs="?",
        help="套件文件路径（默认使用包内 acceptance.yaml）",
    )
    parser.add_argument(
        "--only",
        type=str,
        help="只运行名称包含该字符串的块",
    )
    parser.add_argument(
        "--json",
        action="store_true",
        help="输出 JSON 格式",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="输出日志",
    )

    args = parser.parse_args()
    configure_logging(args.verbose)

    suite_path = Path(args.suite) if args.suite else None
    if suite_path is not None and not suite_path.exists():
        print(f"错误: 路径不存在: {suite_path}", file=sys.stderr)
        return 2

    try:
        blocks = load_suite(suite_path)
    except InputError as e:
        print(f"错误: {e}", file=sys.stderr)
        return 2

    if args.only:
        blocks = [b for b in blocks if args.only in b.label]

    runner = SuiteRunner()
    passed_count, failed_count = runner.run_suite(blocks, quiet=args.json)

    if args.json:
        output = {
            "passed": passed_count,
            "failed": failed_count,
            "results": runner.results,
        }
        print(json.dumps(output, indent=2, ensure_ascii=False))
    else:
        print(f"\n核对完成: 通过 {passed_count} 个, 失败 {failed_count} 个")

    return 0 if failed_count == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
