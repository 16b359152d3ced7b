"""
闭式透射公式集合

包括常规厚势垒系数、阶跃区振幅、基于 β 的厚势垒公式、字面形式的角向公式，
以及动量守恒的精确单势垒解（作为所有近似公式的参照）。

衰减因子统一写成 e^{−2Ka}，K 为 E < V 时的衰减常数。
近似模型结果可能超过 1：不截断，只在 warnings 里标记。
"""
import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from core.errors import DomainError, RegimeError
from physics_core.constants import CRITICAL_TOLERANCE_EV, HBAR2_OVER_2ME, is_grazing
from physics_core.kinematics import (
    RegimeKind,
    beta_paper,
    check_angle,
    check_mass,
    classify_regime,
    decay_constant,
    eta,
    free_wavenumber,
    perpendicular_energy,
    perpendicular_wavenumber,
)

WARN_EXCEEDS_UNITY = "approximation exceeded unity"
WARN_GRAZING = "grazing incidence limit"
WARN_OVERFLOW = "overflow guard"


class ModelKind(str, Enum):
    """模型选择器，value 即 CSV 列名和 CLI 参数"""

    USUAL_THICK = "UsualThick"
    ANGULAR_PAPER_LITERAL = "AngularPaperLiteral"
    ANGULAR_PAPER_BETA = "AngularPaperBeta"
    ANGULAR_PAPER_BETA_FULL = "AngularPaperBetaFull"
    ANGULAR_CONSISTENT_THICK = "AngularConsistentThick"
    EXACT_CLOSED_FORM = "ExactClosedForm"
    STEP_REGIME = "StepRegime"

    @classmethod
    def parse(cls, name: str) -> "ModelKind":
        for kind in cls:
            if kind.value.lower() == str(name).lower():
                return kind
        choices = ", ".join(k.value for k in cls)
        raise DomainError(f"未知模型 {name!r}，可选: {choices}")

    @property
    def is_approximate(self) -> bool:
        return self not in (ModelKind.EXACT_CLOSED_FORM, ModelKind.STEP_REGIME)


@dataclass
class TransmissionResult:
    model: ModelKind
    transmission: float
    regime: RegimeKind
    reflection: Optional[float] = None
    amplitude: Optional[complex] = None
    warnings: List[str] = field(default_factory=list)


@dataclass(frozen=True)
class PhaseFactors:
    Z1: complex  # e^{i k₁ a cosθ₁}
    Z2: complex  # e^{i k₂ a cosθ₂}


def _check_inputs(energy: float, height: float, width: float, theta1: float, mass: float):
    if not energy > 0:
        raise DomainError(f"入射能量必须为正，实际 {energy} eV")
    if not height > 0:
        raise DomainError(f"势垒高度必须为正，实际 {height} eV")
    if width < 0:
        raise DomainError(f"势垒宽度不能为负，实际 {width} nm")
    check_angle(theta1)
    check_mass(mass)


def _require_tunneling(energy: float, height: float):
    if energy >= height:
        raise RegimeError(f"E = {energy} eV 不低于 V = {height} eV，厚势垒公式不适用", "0 < E < V")


def _approximate(model: ModelKind, value: float, regime: RegimeKind) -> TransmissionResult:
    result = TransmissionResult(model=model, transmission=value, regime=regime)
    if value > 1.0:
        result.warnings.append(WARN_EXCEEDS_UNITY)
    return result


def _grazing(model: ModelKind, energy: float, height: float, theta1: float, exact: bool = False) -> TransmissionResult:
    return TransmissionResult(
        model=model,
        transmission=0.0,
        regime=classify_regime(energy, height, theta1),
        reflection=1.0 if exact else None,
        amplitude=0j if exact else None,
        warnings=[WARN_GRAZING],
    )


def usual_thick_transmission(energy: float, height: float, width: float, mass: float = 1.0) -> TransmissionResult:
    """𝕴 ≈ 16(E/V)(1 − E/V)e^{−2Ka}"""
    _check_inputs(energy, height, width, 0.0, mass)
    _require_tunneling(energy, height)
    big_k = decay_constant(energy, height, mass)
    value = 16.0 * energy * (height - energy) / height ** 2 * math.exp(-2.0 * big_k * width)
    return _approximate(ModelKind.USUAL_THICK, value, classify_regime(energy, height, 0.0))


def angular_paper_literal_transmission(
    energy: float, height: float, width: float, theta1: float, mass: float = 1.0
) -> TransmissionResult:
    """字面形式的角向公式（系数 8）：𝕴 − 𝕴sin²θ₁ + (8/V²)(V−E)²sin²(2θ₁)e^{−2Ka}"""
    _check_inputs(energy, height, width, theta1, mass)
    _require_tunneling(energy, height)
    if is_grazing(theta1):
        return _grazing(ModelKind.ANGULAR_PAPER_LITERAL, energy, height, theta1)

    usual = usual_thick_transmission(energy, height, width, mass).transmission
    big_k = decay_constant(energy, height, mass)
    s2 = math.sin(theta1) ** 2
    extra = 8.0 / height ** 2 * (height - energy) ** 2 * math.sin(2.0 * theta1) ** 2 * math.exp(-2.0 * big_k * width)
    value = usual - usual * s2 + extra
    return _approximate(ModelKind.ANGULAR_PAPER_LITERAL, value, classify_regime(energy, height, theta1))


def angular_paper_beta_transmission(
    energy: float, height: float, width: float, theta1: float, mass: float = 1.0
) -> TransmissionResult:
    """厚势垒 β 公式 16β²/(β²+1)²·e^{−2Ka}"""
    _check_inputs(energy, height, width, theta1, mass)
    _require_tunneling(energy, height)
    if is_grazing(theta1):
        return _grazing(ModelKind.ANGULAR_PAPER_BETA, energy, height, theta1)

    b2 = beta_paper(eta(energy, height), theta1) ** 2
    big_k = decay_constant(energy, height, mass)
    value = 16.0 * b2 / (b2 + 1.0) ** 2 * math.exp(-2.0 * big_k * width)
    return _approximate(ModelKind.ANGULAR_PAPER_BETA, value, classify_regime(energy, height, theta1))


def angular_paper_beta_full_transmission(
    energy: float, height: float, width: float, theta1: float, mass: float = 1.0
) -> TransmissionResult:
    """厚势垒近似之前的完整 β 振幅

    T = [4iβ/(iβ+1)² / (1 − ((iβ−1)/(iβ+1))² e^{−2Ka})]·e^{−Ka − ik₁a}
    """
    _check_inputs(energy, height, width, theta1, mass)
    _require_tunneling(energy, height)
    if is_grazing(theta1):
        return _grazing(ModelKind.ANGULAR_PAPER_BETA_FULL, energy, height, theta1)

    beta = beta_paper(eta(energy, height), theta1)
    big_k = decay_constant(energy, height, mass)
    k1 = free_wavenumber(energy, mass)
    ib = 1j * beta
    decay = math.exp(-2.0 * big_k * width)
    amplitude = (4.0 * ib / (ib + 1.0) ** 2) / (1.0 - ((ib - 1.0) / (ib + 1.0)) ** 2 * decay)
    amplitude *= cmath.exp(-big_k * width - 1j * k1 * width)

    result = _approximate(ModelKind.ANGULAR_PAPER_BETA_FULL, abs(amplitude) ** 2, classify_regime(energy, height, theta1))
    result.amplitude = amplitude
    return result


def angular_consistent_thick_transmission(
    energy: float, height: float, width: float, theta1: float, mass: float = 1.0
) -> TransmissionResult:
    """动量守恒精确解的厚势垒渐近：16·E⊥(V − E⊥)/V²·e^{−2κ_eff·a}，E⊥ = E·cos²θ₁"""
    _check_inputs(energy, height, width, theta1, mass)
    if is_grazing(theta1):
        return _grazing(ModelKind.ANGULAR_CONSISTENT_THICK, energy, height, theta1)

    e_perp = perpendicular_energy(energy, theta1)
    if e_perp >= height:
        raise RegimeError(
            f"E·cos²θ₁ = {e_perp} eV 不低于 V = {height} eV，厚势垒渐近不适用", "0 < E·cos²θ₁ < V"
        )
    kappa = math.sqrt((height - e_perp) * mass / HBAR2_OVER_2ME)
    value = 16.0 * e_perp * (height - e_perp) / height ** 2 * math.exp(-2.0 * kappa * width)
    return _approximate(ModelKind.ANGULAR_CONSISTENT_THICK, value, classify_regime(energy, height, theta1))


def _exact_amplitude(k: float, q: complex, width: float) -> complex:
    """t = 4kq·e^{iqa} / ((k+q)² − (k−q)²e^{2iqa})；q = iκ 时分子分母都不会溢出"""
    phase = cmath.exp(1j * q * width)
    return 4.0 * k * q * phase / ((k + q) ** 2 - (k - q) ** 2 * phase ** 2)


def exact_barrier_transmission(
    energy: float, height: float, width: float, theta1: float, mass: float = 1.0
) -> TransmissionResult:
    """平行动量守恒的矩形势垒精确透射

    k⊥ = k₁cosθ₁，势垒内 κ² = (V − E·cos²θ₁)·m/C；临界区用级数极限
    """
    _check_inputs(energy, height, width, theta1, mass)
    regime = classify_regime(energy, height, theta1)
    if is_grazing(theta1):
        return _grazing(ModelKind.EXACT_CLOSED_FORM, energy, height, theta1, exact=True)

    e_perp = perpendicular_energy(energy, theta1)
    k2_perp = e_perp * mass / HBAR2_OVER_2ME
    k = math.sqrt(k2_perp)
    depth = height * mass / HBAR2_OVER_2ME  # = k⊥² + κ²
    kappa2 = (height - e_perp) * mass / HBAR2_OVER_2ME

    if regime is RegimeKind.CRITICAL:
        x = kappa2 * width ** 2
        series = 1.0 + x / 3.0 + 2.0 * x ** 2 / 45.0
        value = 1.0 / (1.0 + (k2_perp + kappa2) ** 2 / (4.0 * k2_perp) * width ** 2 * series)
        amplitude = 1.0 / (1.0 - 0.5j * k * width)
    elif regime is RegimeKind.EVANESCENT:
        kappa = math.sqrt(kappa2)
        x = kappa * width
        prefactor = depth ** 2 / (4.0 * k2_perp * kappa2)
        decay = math.exp(-2.0 * x)
        # sinh²x = e^{2x}(1 − e^{−2x})²/4，改写后不会溢出
        value = 4.0 * decay / (4.0 * decay + prefactor * math.expm1(-2.0 * x) ** 2)
        amplitude = _exact_amplitude(k, 1j * kappa, width)
    else:
        q2 = -kappa2
        q = math.sqrt(q2)
        prefactor = depth ** 2 / (4.0 * k2_perp * q2)
        value = 1.0 / (1.0 + prefactor * math.sin(q * width) ** 2)
        amplitude = _exact_amplitude(k, q, width)

    return TransmissionResult(
        model=ModelKind.EXACT_CLOSED_FORM,
        transmission=value,
        regime=regime,
        reflection=1.0 - value,
        amplitude=amplitude,
    )


def phase_factors(energy: float, height: float, width: float, theta1: float, mass: float = 1.0) -> PhaseFactors:
    """Z₁ = e^{ik₁a·cosθ₁}，Z₂ = e^{ik₂a·cosθ₂}；k₂cosθ₂ 取衰减支，隧穿区 |Z₂| < 1"""
    _check_inputs(energy, height, width, theta1, mass)
    e_perp = perpendicular_energy(energy, theta1)
    k_perp = math.sqrt(e_perp * mass / HBAR2_OVER_2ME)
    q_perp = perpendicular_wavenumber(e_perp, height, mass)
    return PhaseFactors(Z1=cmath.exp(1j * k_perp * width), Z2=cmath.exp(1j * q_perp * width))


def step_regime_transmission(
    energy: float, height: float, width: float, theta1: float, mass: float = 1.0, literal: bool = False
) -> TransmissionResult:
    """传播区（E·cos²θ₁ > V）的势垒振幅 T = E/A

    默认形式在分母中保留 Z₂²，与精确解相同；
    literal=True 时用字面分母（不含 Z₂²，整体除以 e^{2ik₂a}），实数 N 下 |T|² ≡ 1。
    N = n·cosθ₁/cosθ₂ = k₁cosθ₁/(k₂cosθ₂)。
    """
    _check_inputs(energy, height, width, theta1, mass)
    regime = classify_regime(energy, height, theta1)
    if regime is not RegimeKind.PROPAGATING:
        raise RegimeError(f"当前能区为 {regime.value}，阶跃区公式不适用", "E·cos²θ₁ > V")

    e_perp = perpendicular_energy(energy, theta1)
    k_perp = math.sqrt(e_perp * mass / HBAR2_OVER_2ME)
    q_perp = perpendicular_wavenumber(e_perp, height, mass).real
    big_n = k_perp / q_perp
    rho2 = ((big_n - 1.0) / (big_n + 1.0)) ** 2

    if literal:
        k1 = free_wavenumber(energy, mass)
        k2 = math.sqrt((energy - height) * mass / HBAR2_OVER_2ME)
        amplitude = 4.0 * big_n / (1.0 + big_n) ** 2 * cmath.exp(1j * (k2 - k1) * width)
        amplitude /= (1.0 - rho2) * cmath.exp(2j * k2 * width)
        reflection = None
    else:
        factors = phase_factors(energy, height, width, theta1, mass)
        amplitude = 4.0 * big_n * factors.Z2 / factors.Z1 / (big_n + 1.0) ** 2
        amplitude /= 1.0 - rho2 * factors.Z2 ** 2
        reflection = 1.0 - abs(amplitude) ** 2

    return TransmissionResult(
        model=ModelKind.STEP_REGIME,
        transmission=abs(amplitude) ** 2,
        regime=regime,
        reflection=reflection,
        amplitude=amplitude,
    )


def paper_literal_ratio(energy: float, height: float, theta1: float) -> float:
    """AngularPaperLiteral / UsualThick = cos²θ₁(1 + 2(V−E)sin²θ₁/E)"""
    c2 = math.cos(theta1) ** 2
    s2 = math.sin(theta1) ** 2
    return c2 * (1.0 + 2.0 * (height - energy) * s2 / energy)


def validity_interval(model: ModelKind, height: float, theta1: float) -> Tuple[float, float]:
    """模型有定义的开能量区间 (lo, hi)，单位 eV"""
    c2 = 0.0 if is_grazing(theta1) else math.cos(theta1) ** 2
    if model in (
        ModelKind.USUAL_THICK,
        ModelKind.ANGULAR_PAPER_LITERAL,
        ModelKind.ANGULAR_PAPER_BETA,
        ModelKind.ANGULAR_PAPER_BETA_FULL,
    ):
        return 0.0, height
    if model is ModelKind.ANGULAR_CONSISTENT_THICK:
        return 0.0, height / c2 if c2 > 0 else math.inf
    if model is ModelKind.STEP_REGIME:
        if c2 == 0:
            return math.inf, math.inf
        return (height + CRITICAL_TOLERANCE_EV) / c2, math.inf
    return 0.0, math.inf
