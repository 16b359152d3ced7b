"""
分段常势的传输矩阵精确解

约定：矩阵从右往左映射（把右侧区域的振幅对映射成左侧区域的振幅对）。
区域 j 的振幅 (F, B) 以该区域左边界为参考点，ψ = F·e^{ik(x−x_j)} + B·e^{−ik(x−x_j)}；
入射区例外，以 x = 0（第一段左边界）为参考点。
平行动量 k∥ = k₁sinθ₁ 守恒，所以每段只需要法向波数 k = √(2m(E·cos²θ₁ − V_j))/ħ。
临界段（k ≈ 0）振幅基退化，改用 (ψ, ψ′) 基和级数展开的平板矩阵。
"""
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from core.errors import DomainError, SingularInterfaceError
from physics_core.constants import CRITICAL_TOLERANCE_EV, OVERFLOW_EXPONENT, is_grazing
from physics_core.kinematics import (
    RegimeKind,
    check_angle,
    check_mass,
    classify_regime,
    perpendicular_energy,
    perpendicular_wavenumber,
)
from tunneling_models.closed_forms import (
    WARN_GRAZING,
    WARN_OVERFLOW,
    ModelKind,
    TransmissionResult,
)

# 2×2 复矩阵，numpy complex128 数组
TwoByTwoComplex = np.ndarray


@dataclass(frozen=True)
class PotentialProfile:
    """有序的 (势能 eV, 宽度 nm) 段列表，两侧半无限介质固定为 0 eV"""

    segments: Tuple[Tuple[float, float], ...] = ()

    def __post_init__(self):
        segments = tuple((float(v), float(d)) for v, d in self.segments)
        for potential, width in segments:
            if not width > 0:
                raise DomainError(f"势能段宽度必须为正，实际 {width} nm")
            if not math.isfinite(potential):
                raise DomainError(f"势能必须是有限值，实际 {potential}")
        object.__setattr__(self, "segments", segments)

    @classmethod
    def single_barrier(cls, height: float, width: float) -> "PotentialProfile":
        return cls(((height, width),))

    @property
    def total_width(self) -> float:
        return sum(width for _, width in self.segments)

    def reversed(self) -> "PotentialProfile":
        return PotentialProfile(tuple(reversed(self.segments)))

    def split(self, index: int, fraction: float = 0.5) -> "PotentialProfile":
        """把第 index 段切成两段同势能的相邻段"""
        potential, width = self.segments[index]
        parts = ((potential, width * fraction), (potential, width * (1.0 - fraction)))
        return PotentialProfile(self.segments[:index] + parts + self.segments[index + 1:])


@dataclass
class RegionAmplitudes:
    """各区域的前进 / 后退振幅，区域数 = 段数 + 2"""

    wavenumbers: List[complex]
    forward: List[complex]
    backward: List[complex]
    widths: List[float]  # 入射区和出射区记 0
    critical: List[bool]
    fields: List[np.ndarray] = field(default_factory=list)  # 参考点处的 (ψ, ψ′)

    @property
    def transmitted(self) -> complex:
        return self.forward[-1]

    @property
    def reflected(self) -> complex:
        return self.backward[0]

    def wavefunction(self, region: int, x: float) -> Tuple[complex, complex]:
        """区域 region 内、距参考点 x 处的 (ψ, ψ′)"""
        k = self.wavenumbers[region]
        if self.critical[region]:
            psi, dpsi = critical_slab_matrix(k, -x) @ self.fields[region]
            return complex(psi), complex(dpsi)
        forward = self.forward[region] * np.exp(1j * k * x)
        backward = self.backward[region] * np.exp(-1j * k * x)
        return complex(forward + backward), complex(1j * k * (forward - backward))


def interface_matrix(k_left: complex, k_right: complex) -> TwoByTwoComplex:
    """界面矩阵 ½[[1+r, 1−r], [1−r, 1+r]]，r = k_right/k_left

    由 ψ 连续（A+B = C+D）和 ψ′ 连续两个条件得到。
    """
    if k_left == 0:
        raise SingularInterfaceError("界面左侧波数为 0，界面矩阵奇异")
    r = k_right / k_left
    return 0.5 * np.array([[1 + r, 1 - r], [1 - r, 1 + r]], dtype=complex)


def propagation_matrix(k: complex, width: float) -> TwoByTwoComplex:
    """把段右边界的振幅映射到左边界：diag(e^{−ikd}, e^{+ikd})"""
    if width < 0:
        raise DomainError(f"传播距离不能为负，实际 {width} nm")
    return np.array([[np.exp(-1j * k * width), 0], [0, np.exp(1j * k * width)]], dtype=complex)


def amplitude_to_field(k: complex) -> TwoByTwoComplex:
    """(F, B) → (ψ, ψ′)"""
    return np.array([[1, 1], [1j * k, -1j * k]], dtype=complex)


def field_to_amplitude(k: complex) -> TwoByTwoComplex:
    """(ψ, ψ′) → (F, B)"""
    if k == 0:
        raise SingularInterfaceError("波数为 0 时振幅基退化")
    return 0.5 * np.array([[1, -1j / k], [1, 1j / k]], dtype=complex)


def critical_slab_matrix(k: complex, width: float) -> TwoByTwoComplex:
    """k ≈ 0 时的平板矩阵，把右边界 (ψ, ψ′) 映射到左边界

    精确形式为 [[cos kd, −sin(kd)/k], [k·sin kd, cos kd]]，这里用到 (kd)⁴ 的级数。
    """
    u = k * k * width * width
    cos_term = 1 - u / 2 + u * u / 24
    sinc_term = width * (1 - u / 6 + u * u / 120)
    k_sin_term = k * k * width * (1 - u / 6)
    return np.array([[cos_term, -sinc_term], [k_sin_term, cos_term]], dtype=complex)


def _is_critical(e_perp: float, potential: float) -> bool:
    return abs(e_perp - potential) <= CRITICAL_TOLERANCE_EV


def solve_profile(
    profile: PotentialProfile, energy: float, theta1: float, mass: float = 1.0
) -> Tuple[Optional[RegionAmplitudes], TransmissionResult]:
    """传输矩阵连乘求解任意分段常势

    返回各区域振幅与透射结果；掠射极限和指数保护时振幅为 None。
    """
    if not energy > 0:
        raise DomainError(f"入射能量必须为正，实际 {energy} eV")
    check_angle(theta1)
    check_mass(mass)

    height = max((v for v, _ in profile.segments), default=0.0)
    regime = classify_regime(energy, height, theta1) if profile.segments else RegimeKind.PROPAGATING

    e_perp = perpendicular_energy(energy, theta1)
    if is_grazing(theta1) or e_perp <= 0:
        return None, TransmissionResult(
            model=ModelKind.EXACT_CLOSED_FORM,
            transmission=0.0,
            regime=regime,
            reflection=1.0,
            amplitude=0j,
            warnings=[WARN_GRAZING],
        )

    k_out = perpendicular_wavenumber(e_perp, 0.0, mass)
    wavenumbers = [perpendicular_wavenumber(e_perp, v, mass) for v, _ in profile.segments]
    critical = [_is_critical(e_perp, v) for v, _ in profile.segments]

    growth = sum(
        k.imag * d for k, (_, d), crit in zip(wavenumbers, profile.segments, critical) if not crit and k.imag > 0
    )
    if growth > OVERFLOW_EXPONENT:
        return None, TransmissionResult(
            model=ModelKind.EXACT_CLOSED_FORM,
            transmission=0.0,
            regime=regime,
            reflection=1.0,
            amplitude=0j,
            warnings=[WARN_OVERFLOW],
        )

    matrix = np.identity(2, dtype=complex)
    basis_k = k_out
    in_field_basis = False
    for k, (_, width), crit in zip(wavenumbers, profile.segments, critical):
        if crit:
            if not in_field_basis:
                matrix = matrix @ field_to_amplitude(basis_k)
                in_field_basis = True
            matrix = matrix @ critical_slab_matrix(k, width)
            continue
        if in_field_basis:
            matrix = matrix @ amplitude_to_field(k)
            in_field_basis = False
        else:
            matrix = matrix @ interface_matrix(basis_k, k)
        matrix = matrix @ propagation_matrix(k, width)
        basis_k = k
    if in_field_basis:
        matrix = matrix @ amplitude_to_field(k_out)
    else:
        matrix = matrix @ interface_matrix(basis_k, k_out)

    t = 1 / matrix[0, 0]
    r = matrix[1, 0] / matrix[0, 0]
    amplitudes = _recover_amplitudes(profile, wavenumbers, critical, k_out, complex(t), complex(r))

    return amplitudes, TransmissionResult(
        model=ModelKind.EXACT_CLOSED_FORM,
        transmission=abs(t) ** 2,
        regime=regime,
        reflection=abs(r) ** 2,
        amplitude=complex(t),
    )


def _recover_amplitudes(
    profile: PotentialProfile,
    wavenumbers: Sequence[complex],
    critical: Sequence[bool],
    k_out: complex,
    t: complex,
    r: complex,
) -> RegionAmplitudes:
    """从出射区 (t, 0) 往回推，恢复每个区域的振幅"""
    count = len(profile.segments)
    forward = [0j] * (count + 2)
    backward = [0j] * (count + 2)
    fields = [np.zeros(2, dtype=complex) for _ in range(count + 2)]

    forward[-1], backward[-1] = t, 0j
    state = amplitude_to_field(k_out) @ np.array([t, 0j])
    fields[-1] = state

    for index in range(count - 1, -1, -1):
        k = wavenumbers[index]
        width = profile.segments[index][1]
        region = index + 1
        if critical[index]:
            state = critical_slab_matrix(k, width) @ state
            forward[region] = backward[region] = complex("nan+nanj")
        else:
            amps = propagation_matrix(k, width) @ field_to_amplitude(k) @ state
            forward[region], backward[region] = complex(amps[0]), complex(amps[1])
            state = amplitude_to_field(k) @ amps
        fields[region] = state

    forward[0], backward[0] = 1 + 0j, r
    fields[0] = amplitude_to_field(k_out) @ np.array([1 + 0j, r])

    return RegionAmplitudes(
        wavenumbers=[k_out, *wavenumbers, k_out],
        forward=forward,
        backward=backward,
        widths=[0.0, *(d for _, d in profile.segments), 0.0],
        critical=[False, *critical, False],
        fields=fields,
    )
