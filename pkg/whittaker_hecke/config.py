"""
运行配置

命令行参数之外，--config 指向的 YAML 文件可以为下列选项提供默认值：

    emit_matrices: false
    certify: false
    max_seeds: 8
    seed: 0

命令行上显式给出的选项优先。验收套件同样是 YAML 文件，列出若干块
{n, lambda, l?, eta?}，默认套件随包发布在 data/acceptance.yaml。
"""

from dataclasses import dataclass, fields, replace
from importlib import resources
from pathlib import Path

import yaml

from .errors import ConfigError
from .hecke import DEFAULT_MAX_SEEDS, DEFAULT_SEED
from .weights import Weight
from .weyl import ParabolicSet

# 默认验收套件（包内资源）
DEFAULT_SUITE = "acceptance.yaml"

# 块条目允许的键
SUITE_BLOCK_KEYS = {"n", "lambda", "l", "eta", "name"}


@dataclass(frozen=True)
class RunConfig:
    """可由配置文件提供默认值的运行选项"""

    emit_matrices: bool = False
    certify: bool = False
    max_seeds: int = DEFAULT_MAX_SEEDS
    seed: int = DEFAULT_SEED

    def merged(self, **overrides: object) -> "RunConfig":
        """用非 None 的命令行取值覆盖"""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def _read_yaml(path: Path) -> object:
    try:
        with open(path, encoding="utf-8") as f:
            return yaml.safe_load(f)
    except OSError as e:
        raise ConfigError(f"无法读取配置文件 {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"YAML 解析错误 {path}: {e}") from e


def load_config(path: Path | None) -> RunConfig:
    """
    读取运行配置

    Args:
        path: YAML 文件路径；None 时返回默认配置

    Returns:
        RunConfig

    Raises:
        ConfigError: 文件不可读、不是映射、含未知键或取值类型错误
    """
    if path is None:
        return RunConfig()
    data = _read_yaml(path) or {}
    if not isinstance(data, dict):
        raise ConfigError(f"配置文件顶层必须是映射: {path}")

    known = {f.name for f in fields(RunConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"配置文件含未知键: {', '.join(unknown)}")

    values = {}
    for key, value in data.items():
        expected = bool if key in ("emit_matrices", "certify") else int
        # bool 是 int 的子类
        if not isinstance(value, expected) or (
            expected is int and isinstance(value, bool)
        ):
            raise ConfigError(f"配置项 {key} 应为 {expected.__name__}: {value!r}")
        values[key] = value
    if values.get("max_seeds", DEFAULT_MAX_SEEDS) < 0:
        raise ConfigError("max_seeds 不能为负")
    return RunConfig(**values)


@dataclass(frozen=True)
class SuiteBlock:
    """验收套件中的一个块"""

    n: int
    lam: Weight
    l: int | None = None
    eta: ParabolicSet | None = None
    name: str = ""

    @property
    def label(self) -> str:
        return self.name or f"n={self.n} λ={self.lam}"


def _parse_block(entry: object, index: int) -> SuiteBlock:
    if not isinstance(entry, dict):
        raise ConfigError(f"第 {index} 个块必须是映射")
    unknown = sorted(set(entry) - SUITE_BLOCK_KEYS)
    if unknown:
        raise ConfigError(f"第 {index} 个块含未知键: {', '.join(unknown)}")
    if "n" not in entry or "lambda" not in entry:
        raise ConfigError(f"第 {index} 个块缺少 n 或 lambda")
    n = entry["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ConfigError(f"第 {index} 个块的 n 必须是正整数: {n!r}")
    lam = Weight.parse(str(entry["lambda"]), n)
    eta = entry.get("eta")
    if eta is not None and eta != "auto":
        if isinstance(eta, list):
            eta = ",".join(str(i) for i in eta)
        eta = ParabolicSet.parse(str(eta))
        eta.validate(n)
    else:
        eta = None
    return SuiteBlock(n, lam, entry.get("l"), eta, str(entry.get("name", "")))


def load_suite(path: Path | None = None) -> list[SuiteBlock]:
    """
    读取验收套件

    Args:
        path: YAML 文件路径；None 时读取包内默认套件

    Returns:
        块列表

    Raises:
        ConfigError: 文件结构错误
        LiteralParseError: λ 或 η 字面量错误
    """
    if path is None:
        text = (resources.files("whittaker_hecke") / "data" / DEFAULT_SUITE).read_text(
            encoding="utf-8"
        )
        data = yaml.safe_load(text)
    else:
        data = _read_yaml(path)
    if not isinstance(data, dict) or not isinstance(data.get("blocks"), list):
        raise ConfigError("验收套件顶层必须是含 blocks 列表的映射")
    return [_parse_block(entry, k) for k, entry in enumerate(data["blocks"], start=1)]
