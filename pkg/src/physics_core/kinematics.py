"""
散射运动学：由 (能量, 势垒高度, 入射角) 推导波数、折射角、折射率比和衰减常数

约定：
  - k₂ 取主值平方根，E < V 时 k₂ = +iK
  - n = k₁/k₂（入射侧与势垒内波数之比），隧穿区为 −iη；概率与分支选择无关
  - refraction_angle 的 n 是介质 2 相对介质 1 的折射率（k₂/k₁）
"""
import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from core.errors import DivergenceError, DomainError, RegimeError
from physics_core.constants import (
    ANGLE_TOLERANCE,
    CRITICAL_TOLERANCE_EV,
    HALF_PI,
    HBAR2_OVER_2ME,
    degrees_to_radians,
    is_grazing,
)


class RegimeKind(str, Enum):
    """势垒内部的能区"""

    PROPAGATING = "PropagatingInterior"
    EVANESCENT = "EvanescentInterior"
    CRITICAL = "CriticalInterior"


@dataclass(frozen=True)
class ParticleSpec:
    mass: float = 1.0  # 以电子质量为单位

    def __post_init__(self):
        if not self.mass > 0:
            raise DomainError(f"粒子质量必须为正，实际 {self.mass}")


@dataclass(frozen=True)
class BarrierSpec:
    height: float  # eV
    width: float  # nm

    def __post_init__(self):
        if not self.height > 0:
            raise DomainError(f"势垒高度必须为正，实际 {self.height} eV")
        if not self.width > 0:
            raise DomainError(f"势垒宽度必须为正，实际 {self.width} nm")


@dataclass(frozen=True)
class IncidenceSpec:
    energy: float  # eV
    theta1: float  # rad
    particle: ParticleSpec = field(default_factory=ParticleSpec)

    def __post_init__(self):
        if not self.energy > 0:
            raise DomainError(f"入射能量必须为正，实际 {self.energy} eV")
        check_angle(self.theta1)

    @classmethod
    def from_degrees(cls, energy: float, angle_deg: float, mass: float = 1.0) -> "IncidenceSpec":
        return cls(energy, degrees_to_radians(angle_deg), ParticleSpec(mass))


@dataclass(frozen=True)
class Kinematics:
    k1: float
    k2: complex
    K: Optional[float]
    kappa_eff: Optional[float]
    eta: Optional[float]
    beta: Optional[float]
    n: Optional[complex]
    N: Optional[complex]
    theta2: Optional[complex]
    regime: RegimeKind
    k_perp: float  # k₁cosθ₁
    q_perp: complex  # 势垒内法向波数，衰减支 +iκ


def check_angle(theta1: float):
    if not (0.0 <= theta1 <= HALF_PI + ANGLE_TOLERANCE):
        raise DomainError(f"入射角必须在 [0, π/2] 内，实际 {theta1} rad")


def check_mass(mass: float):
    if not mass > 0:
        raise DomainError(f"粒子质量必须为正，实际 {mass}")


def free_wavenumber(energy: float, mass: float = 1.0) -> float:
    """k₁ = √(2mE)/ħ，单位 nm⁻¹"""
    if energy < 0:
        raise DomainError(f"能量不能为负，实际 {energy} eV")
    check_mass(mass)
    return math.sqrt(energy * mass / HBAR2_OVER_2ME)


def decay_constant(energy: float, height: float, mass: float = 1.0) -> float:
    """K = √(2m(V−E))/ħ，仅在 E < V 时有定义"""
    if energy < 0:
        raise DomainError(f"能量不能为负，实际 {energy} eV")
    check_mass(mass)
    if energy >= height:
        raise RegimeError(f"E = {energy} eV 不低于势垒 V = {height} eV，K 无定义", "0 < E < V")
    return math.sqrt((height - energy) * mass / HBAR2_OVER_2ME)


def eta(energy: float, height: float) -> float:
    """η = √(E/(V−E))"""
    if energy < 0:
        raise DomainError(f"能量不能为负，实际 {energy} eV")
    if energy >= height:
        raise RegimeError(f"E = {energy} eV 不低于势垒 V = {height} eV，η 无定义", "0 < E < V")
    return math.sqrt(energy / (height - energy))


def beta_paper(eta_value: float, theta1: float) -> float:
    """β = √((η² + sin²θ₁)/(1 − sin²θ₁))，θ₁ → π/2 时发散"""
    if eta_value < 0:
        raise DomainError(f"η 不能为负，实际 {eta_value}")
    check_angle(theta1)
    if is_grazing(theta1):
        raise DivergenceError("θ₁ = π/2 时 β 的分母为零")
    s2 = math.sin(theta1) ** 2
    return math.sqrt((eta_value ** 2 + s2) / (1 - s2))


def refraction_angle(theta1: float, n: complex) -> complex:
    """Snell 定律 sinθ₂ = sinθ₁/n（复平面主值），n 为相对折射率 k₂/k₁"""
    check_angle(theta1)
    if n == 0:
        raise DomainError("相对折射率 n 不能为 0")
    if n == 1:
        return complex(theta1, 0.0)
    return cmath.asin(math.sin(theta1) / complex(n))


def perpendicular_energy(energy: float, theta1: float) -> float:
    """E·cos²θ₁；掠射时按极限取 0"""
    if is_grazing(theta1):
        return 0.0
    return energy * math.cos(theta1) ** 2


def perpendicular_wavenumber(e_perp: float, potential: float, mass: float = 1.0) -> complex:
    """法向波数 √(2m(E⊥ − V))/ħ，主值分支：E⊥ < V 时为 +iκ"""
    return cmath.sqrt(complex((e_perp - potential) * mass / HBAR2_OVER_2ME, 0.0))


def classify_regime(energy: float, height: float, theta1: float) -> RegimeKind:
    delta = perpendicular_energy(energy, theta1) - height
    if delta > CRITICAL_TOLERANCE_EV:
        return RegimeKind.PROPAGATING
    if delta < -CRITICAL_TOLERANCE_EV:
        return RegimeKind.EVANESCENT
    return RegimeKind.CRITICAL


def kinematics(incidence: IncidenceSpec, barrier: BarrierSpec) -> Kinematics:
    """一次算齐入射点的波数、折射率与能区

    K、η、β 只在 E < V 时有值，掠射时 β 为 None；κ_eff 在传播区为 None。
    E = V 时 k₂ = 0，n、theta2、N 没有定义，均为 None。
    """
    e = incidence.energy
    v = barrier.height
    theta1 = incidence.theta1
    mass = incidence.particle.mass

    k1 = free_wavenumber(e, mass)
    k2 = cmath.sqrt(complex((e - v) * mass / HBAR2_OVER_2ME, 0.0))
    regime = classify_regime(e, v, theta1)
    e_perp = perpendicular_energy(e, theta1)

    if e < v:
        big_k = decay_constant(e, v, mass)
        eta_value = eta(e, v)
        beta = None if is_grazing(theta1) else beta_paper(eta_value, theta1)
    else:
        big_k = eta_value = beta = None

    kappa_eff = None
    if regime is not RegimeKind.PROPAGATING:
        kappa_eff = math.sqrt(max(v - e_perp, 0.0) * mass / HBAR2_OVER_2ME)

    n = theta2 = big_n = None
    if k2 != 0:
        n = k1 / k2
        theta2 = refraction_angle(theta1, k2 / k1)
        cos_theta2 = cmath.cos(theta2)
        cos_theta1 = 0.0 if is_grazing(theta1) else math.cos(theta1)
        if cos_theta2 != 0:
            big_n = n * cos_theta1 / cos_theta2

    return Kinematics(
        k1=k1,
        k2=k2,
        K=big_k,
        kappa_eff=kappa_eff,
        eta=eta_value,
        beta=beta,
        n=n,
        N=big_n,
        theta2=theta2,
        regime=regime,
        k_perp=math.sqrt(e_perp * mass / HBAR2_OVER_2ME),
        q_perp=perpendicular_wavenumber(e_perp, v, mass),
    )
