"""
数值积分验证器：直接积分法向约化的定态薛定谔方程

    ψ″ = (2m/ħ²)(V(x) − E)ψ + k∥²ψ = −p(x)²ψ,  p² = (E·cos²θ₁ − V(x))·m/C

从透射侧的纯出射波 e^{ik⊥(x−L)} 出发往回积分（隧穿时物理解沿积分方向增长，数值稳定），
在入射侧分解成入射 / 反射平面波，T = 1/|A|²。
定步长经典 RK4，网格对齐每个势能段边界，误差按 h⁴ 收敛。
"""
import cmath
import math
from dataclasses import dataclass, field
from typing import List, Tuple

from core.errors import ConfigError, DomainError, RegimeError
from physics_core.constants import HBAR2_OVER_2ME, OVERFLOW_EXPONENT, is_grazing
from physics_core.kinematics import check_angle, check_mass, perpendicular_energy
from transfer_matrix.solver import PotentialProfile
from tunneling_models.closed_forms import WARN_OVERFLOW

SUPPORTED_METHODS = ("rk4",)

# 步长 × 最大波数 的上限
RESOLUTION_LIMIT = 0.1


@dataclass(frozen=True)
class IntegratorConfig:
    step: float = 1e-4  # nm
    pad: float = 0.5  # nm，剖面两侧的平坦区
    method: str = "rk4"

    def __post_init__(self):
        if not self.step > 0:
            raise ConfigError(f"积分步长必须为正，实际 {self.step} nm")
        if self.pad < 0:
            raise ConfigError(f"padding 不能为负，实际 {self.pad} nm")
        if self.method not in SUPPORTED_METHODS:
            raise ConfigError(f"不支持的积分方法 {self.method!r}，可选: {', '.join(SUPPORTED_METHODS)}")


@dataclass
class OracleResult:
    transmission: float
    reflection: float
    amplitude: complex  # t，出射波以剖面右边界为参考点
    reflected: complex  # r，以 x = 0 为参考点
    steps: int
    warnings: List[str] = field(default_factory=list)


def _rk4_step(psi: complex, dpsi: complex, h: float, p2: float) -> Tuple[complex, complex]:
    """对 y = (ψ, ψ′)，y′ = (ψ′, −p²ψ) 做一步经典 RK4"""
    a1, b1 = dpsi, -p2 * psi
    a2, b2 = dpsi + 0.5 * h * b1, -p2 * (psi + 0.5 * h * a1)
    a3, b3 = dpsi + 0.5 * h * b2, -p2 * (psi + 0.5 * h * a2)
    a4, b4 = dpsi + h * b3, -p2 * (psi + h * a3)
    psi = psi + h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
    dpsi = dpsi + h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
    return psi, dpsi


def _integrate_region(psi: complex, dpsi: complex, width: float, p2: float, step: float) -> Tuple[complex, complex, int]:
    """向左积分穿过一个常势区域，区域内取整数个等长步"""
    if width <= 0:
        return psi, dpsi, 0
    count = max(1, math.ceil(width / step - 1e-9))
    h = -width / count
    for _ in range(count):
        psi, dpsi = _rk4_step(psi, dpsi, h, p2)
    return psi, dpsi, count


def integrate_scattering(
    profile: PotentialProfile,
    energy: float,
    theta1: float,
    mass: float = 1.0,
    config: IntegratorConfig = IntegratorConfig(),
) -> OracleResult:
    if not energy > 0:
        raise DomainError(f"入射能量必须为正，实际 {energy} eV")
    check_angle(theta1)
    check_mass(mass)

    e_perp = perpendicular_energy(energy, theta1)
    if is_grazing(theta1) or e_perp <= 0:
        raise RegimeError("两侧介质中没有法向传播的波", "E·cos²θ₁ > 0")

    k2 = e_perp * mass / HBAR2_OVER_2ME
    k = math.sqrt(k2)
    p2_list = [(e_perp - v) * mass / HBAR2_OVER_2ME for v, _ in profile.segments]

    max_k = max([k] + [math.sqrt(abs(p2)) for p2 in p2_list])
    if config.step * max_k >= RESOLUTION_LIMIT:
        raise ConfigError(
            f"步长 {config.step} nm 对最大波数 {max_k:.4g} nm⁻¹ 太粗（需要 step·|k| < {RESOLUTION_LIMIT}）"
        )

    growth = sum(math.sqrt(-p2) * d for p2, (_, d) in zip(p2_list, profile.segments) if p2 < 0)
    if growth > OVERFLOW_EXPONENT:
        return OracleResult(0.0, 1.0, 0j, complex("nan+nanj"), 0, [WARN_OVERFLOW])

    pad = config.pad
    psi = cmath.exp(1j * k * pad)
    dpsi = 1j * k * psi
    psi, dpsi, steps = _integrate_region(psi, dpsi, pad, k2, config.step)
    for p2, (_, width) in zip(reversed(p2_list), reversed(profile.segments)):
        psi, dpsi, count = _integrate_region(psi, dpsi, width, p2, config.step)
        steps += count
    psi, dpsi, count = _integrate_region(psi, dpsi, pad, k2, config.step)
    steps += count

    # x = −pad 处分解 ψ = A·e^{ikx} + B·e^{−ikx}
    ratio = dpsi / (1j * k)
    incident = 0.5 * (psi + ratio) * cmath.exp(1j * k * pad)
    reflected = 0.5 * (psi - ratio) * cmath.exp(-1j * k * pad)

    t = 1 / incident
    r = reflected / incident
    return OracleResult(
        transmission=abs(t) ** 2,
        reflection=abs(r) ** 2,
        amplitude=t,
        reflected=r,
        steps=steps,
    )


def integrate_transmission(
    profile: PotentialProfile,
    energy: float,
    theta1: float,
    mass: float = 1.0,
    config: IntegratorConfig = IntegratorConfig(),
) -> float:
    return integrate_scattering(profile, energy, theta1, mass, config).transmission
