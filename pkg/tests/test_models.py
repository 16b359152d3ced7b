"""
闭式透射模型测试
"""

import sys
import os
import math
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import numpy as np
import pytest

from core.errors import DomainError, RegimeError
from physics_core.constants import HBAR2_OVER_2ME, degrees_to_radians
from physics_core.kinematics import RegimeKind
from tunneling_models.closed_forms import (
    WARN_EXCEEDS_UNITY,
    WARN_GRAZING,
    ModelKind,
    angular_consistent_thick_transmission,
    angular_paper_beta_full_transmission,
    angular_paper_beta_transmission,
    angular_paper_literal_transmission,
    exact_barrier_transmission,
    paper_literal_ratio,
    phase_factors,
    step_regime_transmission,
    usual_thick_transmission,
    validity_interval,
)

V = 12.0
A = 0.18
DEG45 = degrees_to_radians(45.0)
DEG90 = degrees_to_radians(90.0)


def test_usual_thick_values():
    """常规厚势垒系数的参考值"""
    assert usual_thick_transmission(6.0, V, A).transmission == pytest.approx(0.043657, abs=1e-5)
    assert usual_thick_transmission(3.0, V, A).transmission == pytest.approx(0.011862, abs=1e-5)


def test_usual_thick_out_of_regime():
    """E ≥ V 时报错并说明前提"""
    with pytest.raises(RegimeError) as exc:
        usual_thick_transmission(13.0, V, A)
    assert exc.value.precondition == "0 < E < V"
    assert "0 < E < V" in str(exc.value)


def test_paper_literal_values():
    """字面角向公式：45° 时高于常规系数，θ = 0 时与常规系数逐位相同"""
    literal = angular_paper_literal_transmission(3.0, V, A, DEG45)
    assert literal.transmission == pytest.approx(0.023724, abs=1e-5)

    usual = usual_thick_transmission(3.0, V, A).transmission
    assert angular_paper_literal_transmission(3.0, V, A, 0.0).transmission == usual


def test_paper_literal_grazing():
    """θ₁ = π/2 按声明的极限返回 0"""
    result = angular_paper_literal_transmission(3.0, V, A, DEG90)
    assert result.transmission == 0.0
    assert WARN_GRAZING in result.warnings


def test_paper_literal_ratio():
    """与常规系数之比 cos²θ₁(1 + 2(V−E)sin²θ₁/E)"""
    for energy in (1.0, 3.0, 6.0, 9.0):
        for angle in (10.0, 30.0, 45.0, 60.0):
            theta = degrees_to_radians(angle)
            literal = angular_paper_literal_transmission(energy, V, A, theta).transmission
            usual = usual_thick_transmission(energy, V, A).transmission
            assert literal / usual == pytest.approx(paper_literal_ratio(energy, V, theta), rel=1e-12)

    assert paper_literal_ratio(6.0, V, DEG45) == pytest.approx(1.0, rel=1e-12), "45° 时交点在 V/2"


def test_beta_values():
    """β 厚势垒公式的参考值"""
    assert angular_paper_beta_transmission(3.0, V, A, DEG45).transmission == pytest.approx(0.014828, abs=1e-5)
    assert angular_paper_beta_transmission(3.0, V, A, DEG90).transmission == 0.0


def test_beta_full_limits():
    """完整 β 振幅：θ = 0 时等于精确解，厚势垒时趋于 β 公式"""
    full = angular_paper_beta_full_transmission(6.0, V, A, 0.0)
    exact = exact_barrier_transmission(6.0, V, A, 0.0)
    assert full.transmission == pytest.approx(exact.transmission, rel=1e-10)
    assert abs(full.amplitude) ** 2 == pytest.approx(full.transmission, rel=1e-12)

    thick_full = angular_paper_beta_full_transmission(3.0, V, 1.0, DEG45).transmission
    thick_beta = angular_paper_beta_transmission(3.0, V, 1.0, DEG45).transmission
    assert thick_full == pytest.approx(thick_beta, rel=1e-6)


def test_consistent_thick_values():
    """动量守恒厚势垒渐近"""
    result = angular_consistent_thick_transmission(3.0, V, A, DEG45)
    assert result.transmission == pytest.approx(0.0044416, abs=1e-5)
    assert result.regime is RegimeKind.EVANESCENT

    usual = usual_thick_transmission(3.0, V, A).transmission
    assert angular_consistent_thick_transmission(3.0, V, A, 0.0).transmission == usual, "θ = 0 时应与常规系数逐位相同"

    with pytest.raises(RegimeError):
        angular_consistent_thick_transmission(13.0, V, A, 0.0)
    # 斜入射把法向能量压到势垒以下
    assert angular_consistent_thick_transmission(13.0, V, A, DEG45).transmission > 0.0


def test_exact_values():
    """精确解的参考值：斜入射下透射被压低，而字面公式预言增强"""
    assert exact_barrier_transmission(6.0, V, A, 0.0).transmission == pytest.approx(0.042719, abs=1e-5)
    assert exact_barrier_transmission(6.0, V, A, DEG45).transmission == pytest.approx(0.011813, abs=1e-5)
    exact_oblique = exact_barrier_transmission(3.0, V, A, DEG45).transmission
    assert exact_oblique == pytest.approx(0.0044444, abs=1e-5)

    assert exact_oblique < exact_barrier_transmission(3.0, V, A, 0.0).transmission
    assert angular_paper_literal_transmission(3.0, V, A, DEG45).transmission > usual_thick_transmission(3.0, V, A).transmission


def test_exact_flux_and_amplitude():
    """三个能区 T + R = 1，|t|² = T"""
    for energy in (3.0, 12.0, 13.0, 40.0):
        result = exact_barrier_transmission(energy, V, A, 0.0)
        assert result.transmission + result.reflection == pytest.approx(1.0, abs=1e-12)
        assert abs(result.amplitude) ** 2 == pytest.approx(result.transmission, rel=1e-9)

    assert exact_barrier_transmission(12.0, V, A, 0.0).regime is RegimeKind.CRITICAL


def test_exact_continuous_through_critical():
    """临界点两侧的精确解连续"""
    below = exact_barrier_transmission(12.0 - 1e-6, V, A, 0.0).transmission
    at = exact_barrier_transmission(12.0, V, A, 0.0).transmission
    above = exact_barrier_transmission(12.0 + 1e-6, V, A, 0.0).transmission
    assert below == pytest.approx(at, rel=1e-6)
    assert above == pytest.approx(at, rel=1e-6)


def test_exact_deep_barrier_no_overflow():
    """很厚的势垒不会溢出，给出极小但有限的值"""
    result = exact_barrier_transmission(1.0, 100.0, 20.0, 0.0)
    assert 0.0 <= result.transmission < 1e-200
    assert math.isfinite(result.transmission)


def test_exact_grazing():
    """掠射：T = 0，R = 1"""
    result = exact_barrier_transmission(6.0, V, A, DEG90)
    assert result.transmission == 0.0
    assert result.reflection == 1.0


def test_step_regime_values():
    """传播区振幅与精确解一致"""
    step = step_regime_transmission(13.0, V, A, 0.0)
    assert step.transmission == pytest.approx(0.362495, abs=1e-5)
    assert step.transmission == pytest.approx(exact_barrier_transmission(13.0, V, A, 0.0).transmission, rel=1e-10)

    oblique = step_regime_transmission(20.0, V, A, degrees_to_radians(30.0))
    exact = exact_barrier_transmission(20.0, V, A, degrees_to_radians(30.0))
    assert oblique.transmission == pytest.approx(exact.transmission, rel=1e-10)


def test_step_regime_literal_is_unity():
    """字面分母对实数 N 给出 |T|² ≡ 1"""
    for energy in (13.0, 20.0, 50.0):
        result = step_regime_transmission(energy, V, A, 0.0, literal=True)
        assert result.transmission == pytest.approx(1.0, abs=1e-12)


def test_step_regime_requires_propagation():
    """法向能量低于势垒时阶跃区公式不适用"""
    with pytest.raises(RegimeError):
        step_regime_transmission(6.0, V, A, 0.0)
    with pytest.raises(RegimeError):
        step_regime_transmission(13.0, V, A, DEG45)


def test_phase_factors():
    """|Z₁| = 1；隧穿区 |Z₂| = e^{−κa} < 1"""
    factors = phase_factors(3.0, V, A, DEG45)
    kappa = math.sqrt(10.5 / HBAR2_OVER_2ME)
    assert abs(factors.Z1) == pytest.approx(1.0, rel=1e-12)
    assert abs(factors.Z2) == pytest.approx(math.exp(-kappa * A), rel=1e-12)


def test_unity_exceeded_is_flagged_not_clipped():
    """近似超过 1 时保留原值并标记"""
    result = usual_thick_transmission(6.0, V, 0.01)
    assert result.transmission > 1.0
    assert WARN_EXCEEDS_UNITY in result.warnings


def test_model_kind_parse():
    """模型名大小写不敏感，未知名称报错"""
    assert ModelKind.parse("usualthick") is ModelKind.USUAL_THICK
    assert ModelKind.parse("ExactClosedForm") is ModelKind.EXACT_CLOSED_FORM
    assert not ModelKind.EXACT_CLOSED_FORM.is_approximate
    assert ModelKind.ANGULAR_PAPER_BETA.is_approximate
    with pytest.raises(DomainError):
        ModelKind.parse("WKB")


def test_validity_interval():
    """模型定义域"""
    assert validity_interval(ModelKind.USUAL_THICK, V, 0.0) == (0.0, V)
    lo, hi = validity_interval(ModelKind.ANGULAR_CONSISTENT_THICK, V, DEG45)
    assert lo == 0.0 and hi == pytest.approx(2 * V)
    lo, hi = validity_interval(ModelKind.STEP_REGIME, V, 0.0)
    assert lo > V and hi == math.inf
    assert validity_interval(ModelKind.EXACT_CLOSED_FORM, V, DEG45) == (0.0, math.inf)


def test_invalid_inputs():
    """负能量、非正势垒、角度越界"""
    with pytest.raises(DomainError):
        exact_barrier_transmission(-1.0, V, A, 0.0)
    with pytest.raises(DomainError):
        exact_barrier_transmission(1.0, 0.0, A, 0.0)
    with pytest.raises(DomainError):
        exact_barrier_transmission(1.0, V, A, 2.0)
    with pytest.raises(DomainError):
        usual_thick_transmission(1.0, V, A, mass=0.0)


def test_thick_barrier_asymptotics():
    """κ_eff·a ≥ 3 时动量守恒渐近与精确解相差不超过 1%；θ = 0 时常规系数相差不超过 5%"""
    rng = np.random.default_rng(20240501)
    for _ in range(1000):
        height = rng.uniform(1.0, 20.0)
        theta = rng.uniform(0.0, degrees_to_radians(80.0))
        e_perp = height * rng.uniform(0.01, 0.99)
        energy = e_perp / math.cos(theta) ** 2
        kappa = math.sqrt((height - e_perp) / HBAR2_OVER_2ME)
        width = (3.0 + rng.uniform(0.0, 10.0)) / kappa

        consistent = angular_consistent_thick_transmission(energy, height, width, theta).transmission
        exact = exact_barrier_transmission(energy, height, width, theta).transmission
        assert 0.99 <= consistent / exact <= 1.01, f"E={energy}, V={height}, a={width}, θ={theta}"

    for _ in range(1000):
        height = rng.uniform(1.0, 20.0)
        energy = height * rng.uniform(0.01, 0.99)
        big_k = math.sqrt((height - energy) / HBAR2_OVER_2ME)
        width = (3.0 + rng.uniform(0.0, 10.0)) / big_k

        usual = usual_thick_transmission(energy, height, width).transmission
        exact = exact_barrier_transmission(energy, height, width, 0.0).transmission
        assert 0.95 <= usual / exact <= 1.05, f"E={energy}, V={height}, a={width}"


def test_angular_models_reduce_to_usual_at_normal_incidence():
    """θ₁ = 0 时三个角向厚势垒公式都等于常规系数"""
    rng = np.random.default_rng(1234)
    for _ in range(1000):
        height = rng.uniform(1.0, 20.0)
        energy = height * rng.uniform(0.01, 0.99)
        width = rng.uniform(0.01, 2.0)
        usual = usual_thick_transmission(energy, height, width).transmission
        for model in (
            angular_paper_literal_transmission,
            angular_paper_beta_transmission,
            angular_consistent_thick_transmission,
        ):
            value = model(energy, height, width, 0.0).transmission
            assert value == pytest.approx(usual, rel=1e-14), f"{model.__name__}: E={energy}, V={height}, a={width}"


def test_exact_flux_random_inputs():
    """10⁴ 个随机斜入射点上精确解 T + R = 1"""
    rng = np.random.default_rng(99)
    for _ in range(10_000):
        height = rng.uniform(1.0, 20.0)
        energy = rng.uniform(0.1, 40.0)
        width = rng.uniform(0.01, 1.0)
        theta = rng.uniform(0.0, degrees_to_radians(85.0))
        result = exact_barrier_transmission(energy, height, width, theta)
        assert result.transmission + result.reflection == pytest.approx(1.0, abs=1e-12), (
            f"E={energy}, V={height}, a={width}, θ={theta}"
        )


def test_step_regime_matches_exact_random_inputs():
    """传播区随机点上阶跃区公式与精确解一致"""
    rng = np.random.default_rng(17)
    for _ in range(1000):
        height = rng.uniform(1.0, 20.0)
        width = rng.uniform(0.01, 1.0)
        theta = rng.uniform(0.0, degrees_to_radians(80.0))
        energy = height * rng.uniform(1.01, 5.0) / math.cos(theta) ** 2
        step = step_regime_transmission(energy, height, width, theta).transmission
        exact = exact_barrier_transmission(energy, height, width, theta).transmission
        assert step == pytest.approx(exact, rel=1e-10), f"E={energy}, V={height}, a={width}, θ={theta}"


def test_exact_decreases_with_width():
    """隧穿区精确透射随势垒宽度严格减小"""
    rng = np.random.default_rng(23)
    widths = np.linspace(0.01, 1.0, 40)
    for _ in range(200):
        height = rng.uniform(1.0, 20.0)
        theta = rng.uniform(0.0, degrees_to_radians(80.0))
        energy = height * rng.uniform(0.05, 0.95) / math.cos(theta) ** 2
        values = [exact_barrier_transmission(energy, height, float(a), theta).transmission for a in widths]
        assert all(a > b for a, b in zip(values, values[1:])), f"E={energy}, V={height}, θ={theta}"
