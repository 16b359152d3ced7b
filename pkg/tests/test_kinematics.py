"""
运动学与常数测试
"""

import sys
import os
import math
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import numpy as np
import pytest
from scipy import constants

from core.errors import DivergenceError, DomainError, RegimeError
from physics_core.constants import HBAR2_OVER_2ME, degrees_to_radians, is_grazing
from physics_core.kinematics import (
    BarrierSpec,
    IncidenceSpec,
    ParticleSpec,
    RegimeKind,
    beta_paper,
    classify_regime,
    decay_constant,
    eta,
    free_wavenumber,
    kinematics,
    perpendicular_wavenumber,
    refraction_angle,
)


def test_pinned_constant_matches_codata():
    """固定的 ħ²/(2mₑ) 与 scipy.constants 一致"""
    reference = constants.hbar ** 2 / (2 * constants.m_e) / constants.e * 1e18
    assert HBAR2_OVER_2ME == pytest.approx(reference, rel=1e-7), f"常数偏差过大: {reference}"


def test_normal_incidence_half_height():
    """E = V/2、θ = 0 时 K = κ_eff，η = β = 1"""
    kin = kinematics(IncidenceSpec(6.0, 0.0), BarrierSpec(12.0, 0.18))

    assert kin.K == pytest.approx(12.5492, abs=1e-4)
    assert kin.kappa_eff == pytest.approx(kin.K, rel=1e-12)
    assert kin.eta == pytest.approx(1.0, rel=1e-12)
    assert kin.beta == pytest.approx(1.0, rel=1e-12)
    assert kin.regime is RegimeKind.EVANESCENT


def test_tunneling_wavenumber_branch():
    """E < V 时 k₂ = +iK，n = k₁/k₂ = −iη"""
    kin = kinematics(IncidenceSpec(6.0, 0.0), BarrierSpec(12.0, 0.18))

    assert kin.k2.real == pytest.approx(0.0, abs=1e-12)
    assert kin.k2.imag == pytest.approx(kin.K, rel=1e-12), "k₂ 应该取 +iK"
    assert kin.n == pytest.approx(-1j * kin.eta, abs=1e-12)


def test_kappa_eff_oblique():
    """κ_eff 只看法向能量 E·cos²θ₁"""
    kin = kinematics(IncidenceSpec.from_degrees(6.0, 45.0), BarrierSpec(12.0, 0.18))
    assert kin.kappa_eff == pytest.approx(15.3695, abs=1e-4)
    assert kin.kappa_eff == pytest.approx(math.sqrt(9.0 / HBAR2_OVER_2ME), rel=1e-12)


def test_consistent_index_ratio_magnitude():
    """|N|² = η²cos²θ₁/(1 + η²sin²θ₁)"""
    kin = kinematics(IncidenceSpec.from_degrees(3.0, 45.0), BarrierSpec(12.0, 0.18))
    # η² = 1/3，c² = s² = 1/2
    assert abs(kin.N) ** 2 == pytest.approx(1.0 / 7.0, rel=1e-10)


def test_beta_values():
    """β 的取值与掠射发散"""
    assert beta_paper(1.0, 0.0) == pytest.approx(1.0)
    assert beta_paper(1.0, math.pi / 4) == pytest.approx(math.sqrt(3.0), rel=1e-12)
    assert beta_paper(0.5, 0.0) == pytest.approx(0.5), "θ₁ = 0 时 β = η"

    with pytest.raises(DivergenceError):
        beta_paper(1.0, math.pi / 2)


def test_grazing_kinematics_has_no_beta():
    """掠射时 β 不计算，法向波数为 0"""
    kin = kinematics(IncidenceSpec.from_degrees(3.0, 90.0), BarrierSpec(12.0, 0.18))
    assert kin.beta is None
    assert kin.k_perp == 0.0
    assert is_grazing(degrees_to_radians(90.0))


def test_refraction_angle():
    """Snell 定律，n 为相对折射率 k₂/k₁"""
    assert refraction_angle(0.0, 2.0) == 0
    theta2 = refraction_angle(math.pi / 6, 2.0)
    assert math.sin(theta2.real) == pytest.approx(0.25, rel=1e-12)
    assert abs(theta2.imag) < 1e-15

    with pytest.raises(DomainError):
        refraction_angle(0.3, 0.0)


def test_decay_constant_requires_tunneling():
    """E ≥ V 时 K 无定义，错误中带前提条件"""
    with pytest.raises(RegimeError) as exc:
        decay_constant(13.0, 12.0)
    assert exc.value.precondition == "0 < E < V"

    with pytest.raises(RegimeError):
        eta(12.0, 12.0)


def test_classify_regime_tolerance():
    """能区判别容差 1e-9 eV"""
    assert classify_regime(6.0, 12.0, 0.0) is RegimeKind.EVANESCENT
    assert classify_regime(13.0, 12.0, 0.0) is RegimeKind.PROPAGATING
    assert classify_regime(12.0, 12.0, 0.0) is RegimeKind.CRITICAL
    assert classify_regime(12.0 - 1e-10, 12.0, 0.0) is RegimeKind.CRITICAL
    assert classify_regime(12.0 + 1e-8, 12.0, 0.0) is RegimeKind.PROPAGATING
    assert classify_regime(20.0, 12.0, math.pi / 2) is RegimeKind.EVANESCENT, "掠射时法向能量为 0"


def test_perpendicular_wavenumber_branch():
    """势垒内法向波数取衰减支 +iκ"""
    q = perpendicular_wavenumber(3.0, 12.0)
    assert q.real == 0.0
    assert q.imag == pytest.approx(math.sqrt(9.0 / HBAR2_OVER_2ME), rel=1e-12)


def test_input_validation():
    """非法输入直接报 DomainError"""
    with pytest.raises(DomainError):
        IncidenceSpec(-1.0, 0.0)
    with pytest.raises(DomainError):
        IncidenceSpec(1.0, -0.1)
    with pytest.raises(DomainError):
        IncidenceSpec.from_degrees(1.0, 91.0)
    with pytest.raises(DomainError):
        BarrierSpec(12.0, 0.0)
    with pytest.raises(DomainError):
        ParticleSpec(0.0)
    with pytest.raises(DomainError):
        free_wavenumber(1.0, mass=-1.0)


def test_reference_values():
    """波数、衰减常数、η、β 的参考值"""
    assert free_wavenumber(6.0) == pytest.approx(12.5492, abs=1e-4)
    assert free_wavenumber(3.0) == pytest.approx(8.8736, abs=1e-4)
    assert decay_constant(3.0, 12.0) == pytest.approx(15.3695, abs=1e-4)
    assert eta(3.0, 12.0) == pytest.approx(0.57735, abs=1e-5)
    assert eta(6.0, 12.0) == pytest.approx(1.0, rel=1e-15)
    assert beta_paper(0.57735, degrees_to_radians(45.0)) == pytest.approx(1.29099, abs=1e-5)
    assert beta_paper(1.0, degrees_to_radians(60.0)) == pytest.approx(2.64575, abs=1e-5)


def test_energy_partition_identity():
    """k₁(E)² + K(E, V)² = k₁(V)²"""
    rng = np.random.default_rng(5)
    for _ in range(1000):
        height = rng.uniform(0.1, 50.0)
        energy = height * rng.uniform(0.001, 0.999)
        mass = rng.uniform(0.05, 5.0)
        left = free_wavenumber(energy, mass) ** 2 + decay_constant(energy, height, mass) ** 2
        assert left == pytest.approx(free_wavenumber(height, mass) ** 2, rel=1e-12), f"E={energy}, V={height}"


def test_kappa_eff_identity():
    """κ_eff² = K² + k₁²sin²θ₁"""
    rng = np.random.default_rng(9)
    for _ in range(1000):
        height = rng.uniform(0.5, 30.0)
        energy = height * rng.uniform(0.01, 0.99)
        theta = rng.uniform(0.0, math.pi / 2)
        kin = kinematics(IncidenceSpec(energy, theta), BarrierSpec(height, 0.18))
        expected = kin.K ** 2 + (kin.k1 * math.sin(theta)) ** 2
        assert kin.kappa_eff ** 2 == pytest.approx(expected, rel=1e-12), f"E={energy}, V={height}, θ={theta}"


def test_beta_and_kappa_eff_increase_with_angle():
    """β 在 [0, π/2) 上、κ_eff 在 [0, π/2] 上随 θ₁ 严格增大"""
    angles = np.linspace(0.0, math.pi / 2, 60)
    for energy in (1.0, 3.0, 6.0, 11.0):
        eta_value = eta(energy, 12.0)
        betas = [beta_paper(eta_value, float(theta)) for theta in angles[:-1]]
        assert betas[0] == eta_value
        assert all(a < b for a, b in zip(betas, betas[1:])), f"E={energy}"

        kappas = [kinematics(IncidenceSpec(energy, float(theta)), BarrierSpec(12.0, 0.18)).kappa_eff for theta in angles]
        assert kappas[0] == pytest.approx(decay_constant(energy, 12.0), rel=1e-12)
        assert all(a < b for a, b in zip(kappas, kappas[1:])), f"E={energy}"


def test_refraction_without_index_change():
    """n = 1 时折射角等于入射角"""
    for theta in np.linspace(0.0, math.pi / 2, 101):
        assert refraction_angle(float(theta), 1.0) == complex(float(theta), 0.0)


def test_kinematics_at_barrier_top():
    """E = V 时 k₂ = 0，n、theta2、N 没有定义"""
    kin = kinematics(IncidenceSpec(12.0, 0.0), BarrierSpec(12.0, 0.18))
    assert kin.k2 == 0
    assert kin.n is None and kin.theta2 is None and kin.N is None
    assert kin.K is None and kin.eta is None
    assert kin.regime is RegimeKind.CRITICAL
