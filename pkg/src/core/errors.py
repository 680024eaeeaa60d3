class CyclotomyError(Exception):
    """本项目所有异常的基类"""


class DomainError(CyclotomyError, ValueError):
    """数学输入不合法（零元求逆、p 非素数、g 非原根等）"""


class PreconditionError(DomainError):
    """调用前置条件不满足，例如 p 不整除 q^m - 1"""


class UnsupportedVariantError(DomainError):
    """当前运算不支持该序列变体"""


class InternalError(CyclotomyError):
    """理论上不可能出现的内部状态"""


class UsageError(CyclotomyError):
    """命令行参数错误，退出码 2"""
