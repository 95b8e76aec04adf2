"""
日志配置

统一的 logging 配置入口。各模块通过 get_logger(__name__) 获取记录器，
命令行在启动时调用 configure_logging 一次。
"""

import logging
import sys

# 包级记录器名称
ROOT_LOGGER_NAME = "whittaker_hecke"

# 日志格式
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


def get_logger(name: str) -> logging.Logger:
    """
    获取包内记录器

    Args:
        name: 模块名（通常为 __name__）

    Returns:
        logging.Logger 实例
    """
    if not name.startswith(ROOT_LOGGER_NAME):
        name = f"{ROOT_LOGGER_NAME}.{name}"
    return logging.getLogger(name)


def configure_logging(verbosity: int = 0) -> None:
    """
    配置包级日志输出到 stderr

    Args:
        verbosity: 0 为 WARNING，1 为 INFO，2 及以上为 DEBUG
    """
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.WARNING

    root = logging.getLogger(ROOT_LOGGER_NAME)
    # 重复调用时替换旧的 handler，避免日志重复输出
    for handler in list(root.handlers):
        root.removeHandler(handler)

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(level)
