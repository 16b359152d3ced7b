"""
物理常数与单位约定

单位制：能量 eV，长度 nm，质量以电子静质量 mₑ 为单位。
全库只使用一个固定常数 C = ħ²/(2mₑ)，保证所有数值逐位可复现。
"""
import math

# ħ²/(2mₑ)，单位 eV·nm²
HBAR2_OVER_2ME = 0.0380998212

# 能区判别容差，作用在 E·cos²θ₁ − V 上（eV）
CRITICAL_TOLERANCE_EV = 1e-9

# 指数保护阈值：累计 κd 超过它时直接给出 T = 0
OVERFLOW_EXPONENT = 300.0

# 角度比较容差（rad）
ANGLE_TOLERANCE = 1e-12

HALF_PI = math.pi / 2


def degrees_to_radians(angle_deg: float) -> float:
    """外部接口用角度制，内部统一用弧度"""
    return math.radians(angle_deg)


def radians_to_degrees(angle_rad: float) -> float:
    return math.degrees(angle_rad)


def is_grazing(theta1: float) -> bool:
    """θ₁ = π/2 的掠射极限"""
    return theta1 >= HALF_PI - ANGLE_TOLERANCE
