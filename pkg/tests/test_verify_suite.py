#!/usr/bin/env python3
"""
测试 verify-suite.py 脚本
"""

import importlib.util
import json
from pathlib import Path
from typing import TYPE_CHECKING
from unittest.mock import MagicMock, patch

from whittaker_hecke.config import SuiteBlock
from whittaker_hecke.multtable import CheckReport
from whittaker_hecke.weights import Weight
from whittaker_hecke.weyl import ParabolicSet

if TYPE_CHECKING:
    from _pytest.capture import CaptureFixture

# 动态导入 scripts 模块
scripts_dir = Path(__file__).parent.parent / "scripts"
spec = importlib.util.spec_from_file_location(
    "verify_suite", scripts_dir / "verify-suite.py"
)
verify_suite = importlib.util.module_from_spec(spec)
spec.loader.exec_module(verify_suite)

SuiteRunner = verify_suite.SuiteRunner
main = verify_suite.main

SL2_SUITE = 'blocks:\n  - name: sl2\n    n: 2\n    lambda: "0,0"\n'


class TestSuiteRunner:
    """测试套件运行器"""

    def test_run_block_passes(self) -> None:
        """测试 n = 2 的块通过"""
        runner = SuiteRunner()
        block = SuiteBlock(2, Weight.zero(2), name="sl2")
        passed, errors, warnings = runner.run_block(block)
        assert passed
        assert errors == []
        assert runner.results[0]["block"] == "sl2"
        assert runner.results[0]["status"] == "passed"

    def test_run_block_input_error(self) -> None:
        """测试块参数错误时记录为 error"""
        runner = SuiteRunner()
        block = SuiteBlock(2, Weight.parse("-1,1"), name="bad")
        passed, errors, _ = runner.run_block(block)
        assert not passed
        assert errors[0].startswith("NotDominantError")
        assert runner.results[0]["status"] == "error"

    @patch.object(verify_suite, "verify_all")
    def test_collects_nested_messages(self, mock_verify: MagicMock) -> None:
        """测试收集子节中的错误与警告"""
        mock_verify.return_value = CheckReport(
            "all",
            warnings=["跳过"],
            sections=[CheckReport("dims", errors=["维数不符"])],
        )
        runner = SuiteRunner()
        passed, errors, warnings = runner.run_block(SuiteBlock(2, Weight.zero(2)))
        assert not passed
        assert errors == ["[dims] 维数不符"]
        assert warnings == ["[all] 跳过"]

    @patch.object(verify_suite, "verify_all")
    def test_run_suite_counts(
        self, mock_verify: MagicMock, capsys: "CaptureFixture[str]"
    ) -> None:
        """测试通过与失败计数"""
        mock_verify.side_effect = [CheckReport("all"), CheckReport("all", errors=["x"])]
        blocks = [
            SuiteBlock(2, Weight.zero(2), name="a"),
            SuiteBlock(2, Weight.zero(2), eta=ParabolicSet(), name="b"),
        ]
        assert SuiteRunner().run_suite(blocks, quiet=False) == (1, 1)
        out = capsys.readouterr().out
        assert "✓ a" in out and "✗ b" in out


class TestMain:
    """测试主函数"""

    def test_missing_suite(self, tmp_path: Path) -> None:
        """测试套件文件不存在"""
        with patch("sys.argv", ["verify-suite.py", str(tmp_path / "missing.yaml")]):
            assert main() == 2

    def test_invalid_suite(self, tmp_path: Path) -> None:
        """测试套件结构错误"""
        suite = tmp_path / "suite.yaml"
        suite.write_text("blocks: 1\n", encoding="utf-8")
        with patch("sys.argv", ["verify-suite.py", str(suite)]):
            assert main() == 2

    def test_json_output(self, tmp_path: Path, capsys: "CaptureFixture[str]") -> None:
        """测试 JSON 输出"""
        suite = tmp_path / "suite.yaml"
        suite.write_text(SL2_SUITE, encoding="utf-8")
        with patch("sys.argv", ["verify-suite.py", str(suite), "--json"]):
            assert main() == 0
        output = json.loads(capsys.readouterr().out)
        assert output["passed"] == 1
        assert output["failed"] == 0

    def test_only_filter(self, tmp_path: Path, capsys: "CaptureFixture[str]") -> None:
        """测试 --only 过滤掉全部块"""
        suite = tmp_path / "suite.yaml"
        suite.write_text(SL2_SUITE, encoding="utf-8")
        with patch("sys.argv", ["verify-suite.py", str(suite), "--only", "sl3"]):
            assert main() == 0
        assert "通过 0 个" in capsys.readouterr().out
