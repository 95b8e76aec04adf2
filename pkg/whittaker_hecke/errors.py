"""
异常定义

所有计算模块共用的异常层次。InputError 分支对应命令行退出码 2，
ConsistencyError 分支对应退出码 3（内部一致性失败）。
"""


class WhittakerHeckeError(Exception):
    """工具包异常基类"""

    pass


class InputError(WhittakerHeckeError):
    """输入参数不满足前置条件"""

    pass


class ConsistencyError(WhittakerHeckeError):
    """内部一致性检查失败（不应出现，出现即实现缺陷）"""

    pass


class LiteralParseError(InputError):
    """权重、置换或多重线段字面量解析失败"""

    pass


class ConfigError(InputError):
    """YAML 配置文件格式错误"""

    pass


class NotDominantError(InputError):
    """权重不是支配的（λ+ρ 不是弱递减）"""

    pass


class NotIntegralSpacedError(InputError):
    """λ+ρ 的坐标差不全是整数"""

    pass


class NoTensorDatumError(InputError):
    """λ−μ 不是 V^⊗ℓ 的权重"""

    pass


class SupportMismatchError(InputError):
    """多重线段的支撑与 σ 的取值不一致"""

    pass


class LengthMismatchError(InputError):
    """线段长度之和与 ℓ 不一致"""

    pass


class NotGradedOneError(InputError):
    """幂零矩阵有落在 g_1 之外的非零元"""

    pass


class HypothesisViolatedError(InputError):
    """定理假设不成立（例如 Π_η 不等于 λ 的稳定子）"""

    pass


class BlockRangeExceededError(InputError):
    """作用结果落在未分配的权重块中"""

    pass


class NonCommutingError(ConsistencyError):
    """要求两两交换的矩阵之间存在非零交换子"""

    pass


class IrrationalSpectrumError(ConsistencyError):
    """特征多项式在有理数域上不能分解为一次因子"""

    pass


class NoMatchingCosetError(ConsistencyError):
    """角秩表没有匹配的双陪集"""

    pass


class NotCyclicError(ConsistencyError):
    """模不由其典范生成元生成"""

    pass


class AmbiguousFactorSignatureError(ConsistencyError):
    """两个不同的不可约模具有相同签名"""

    pass


class UnresolvedCollisionError(ConsistencyError):
    """高阶 Gelfand 不变量仍无法分离中心特征标"""

    pass


class RelationCheckFailedError(ConsistencyError):
    """生成元矩阵不满足代数定义关系"""

    pass
