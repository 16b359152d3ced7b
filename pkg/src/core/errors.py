"""
PyTunnelScan 异常体系

所有库内异常都继承 TunnelScanError，CLI 根据 exit_code 决定退出码：
  1 - 物理域 / 适用区间错误
  2 - 配置 / 输入输出错误
"""
from typing import Optional


class TunnelScanError(Exception):
    """PyTunnelScan 所有异常的基类"""

    exit_code = 1


class DomainError(TunnelScanError, ValueError):
    """输入值超出定义域（负能量、非正质量、角度越界等）"""


class DivergenceError(DomainError):
    """公式在该点发散（例如 θ₁ = π/2 时的 β）"""


class SingularInterfaceError(DomainError):
    """界面矩阵奇异（左侧波数为 0）"""


class RegimeError(TunnelScanError):
    """模型在当前能区不适用"""

    def __init__(self, message: str, precondition: Optional[str] = None):
        if precondition:
            message = f"{message} (需要满足: {precondition})"
        super().__init__(message)
        self.precondition = precondition


class NoCrossoverError(TunnelScanError):
    """二分区间内两条曲线的差没有变号"""


class ConfigError(TunnelScanError):
    """扫描配置或积分器配置非法"""

    exit_code = 2


class OutputError(TunnelScanError, OSError):
    """输出路径不可写或写入失败"""

    exit_code = 2

    def __init__(self, message: str, path: Optional[str] = None):
        if path:
            message = f"{message}: {path}"
        super().__init__(message)
        self.path = path
