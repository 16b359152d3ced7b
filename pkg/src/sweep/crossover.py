"""
两个模型透射曲线的交点搜索
"""
import math
from typing import Optional, Tuple

from scipy.optimize import bisect

from core.errors import DomainError, NoCrossoverError
from physics_core.constants import is_grazing
from sweep.runner import compute_point
from tunneling_models.closed_forms import ModelKind, validity_interval

XTOL = 1e-13
MAX_ITERATIONS = 200
RESIDUAL_RTOL = 1e-12
RESIDUAL_ATOL = 1e-18


def _clip_bracket(
    model_a: ModelKind, model_b: ModelKind, theta1: float, height: float, lo: float, hi: float
) -> Tuple[float, float]:
    lo_a, hi_a = validity_interval(model_a, height, theta1)
    lo_b, hi_b = validity_interval(model_b, height, theta1)
    valid_lo, valid_hi = max(lo_a, lo_b), min(hi_a, hi_b)
    # 区间是开的，端点取紧邻的可表示浮点数
    if lo <= valid_lo:
        lo = math.nextafter(valid_lo, math.inf)
    if hi >= valid_hi:
        hi = math.nextafter(valid_hi, 0.0)
    return lo, hi


def find_crossover(
    model_a: ModelKind,
    model_b: ModelKind,
    theta1: float,
    height: float,
    width: float,
    mass: float = 1.0,
    bracket: Tuple[float, Optional[float]] = (1.0, None),
) -> float:
    """在 bracket 内二分求 T_a(E) = T_b(E) 的能量 E*

    bracket 的上端缺省为 V；超出两模型共同定义域的部分先裁掉。
    端点差值同号，或两端差值都在残差容差内（两模型在区间上重合）时抛 NoCrossoverError。
    """
    lo, hi = bracket
    hi = height if hi is None else hi
    if not 0 < lo < hi:
        raise DomainError(f"搜索区间需要 0 < lo < hi，实际 ({lo}, {hi})")

    lo, hi = _clip_bracket(model_a, model_b, theta1, height, lo, hi)
    if not lo < hi:
        raise NoCrossoverError(f"{model_a.value} 与 {model_b.value} 在给定区间内没有共同定义域")

    def values(energy: float) -> Tuple[float, float]:
        a = compute_point(model_a, energy, height, width, theta1, mass).transmission
        b = compute_point(model_b, energy, height, width, theta1, mass).transmission
        return a, b

    def difference(energy: float) -> float:
        a, b = values(energy)
        return a - b

    def negligible(a: float, b: float) -> bool:
        return abs(a - b) < RESIDUAL_RTOL * max(a, b) + RESIDUAL_ATOL

    (a_lo, b_lo), (a_hi, b_hi) = values(lo), values(hi)
    fa, fb = a_lo - b_lo, a_hi - b_hi
    if negligible(a_lo, b_lo) and negligible(a_hi, b_hi):
        raise NoCrossoverError(f"{model_a.value} 与 {model_b.value} 在区间两端的差值都在残差容差内，视为重合，没有孤立交点")
    if fa * fb > 0:
        raise NoCrossoverError(
            f"{model_a.value} 与 {model_b.value} 在 [{lo:.6g}, {hi:.6g}] eV 两端同号，区间内没有交点"
        )
    if fa == 0.0:
        return lo
    if fb == 0.0:
        return hi
    return float(bisect(difference, lo, hi, xtol=XTOL, maxiter=MAX_ITERATIONS))


def analytic_literal_crossover(height: float, theta1: float) -> float:
    """AngularPaperLiteral 与 UsualThick 的解析交点 E* = 2cos²θ₁·V/(2cos²θ₁ + 1)"""
    if not height > 0:
        raise DomainError(f"势垒高度必须为正，实际 {height} eV")
    s2 = math.sin(theta1) ** 2
    if s2 == 0.0 or is_grazing(theta1):
        raise NoCrossoverError("θ₁ = 0 时两模型处处相等，θ₁ = π/2 时文字公式恒为 0，没有孤立交点")
    c2 = math.cos(theta1) ** 2
    return 2.0 * c2 * height / (2.0 * c2 + 1.0)
