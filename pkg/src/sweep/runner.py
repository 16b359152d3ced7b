"""
单点计算与能量 / 角度扫描
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from core.config import check_keys, load_yaml_mapping
from core.errors import ConfigError, DomainError, RegimeError
from physics_core.constants import degrees_to_radians
from physics_core.kinematics import BarrierSpec, check_angle, classify_regime
from sweep.emitters import ensure_writable
from tunneling_models.closed_forms import (
    ModelKind,
    TransmissionResult,
    angular_consistent_thick_transmission,
    angular_paper_beta_full_transmission,
    angular_paper_beta_transmission,
    angular_paper_literal_transmission,
    exact_barrier_transmission,
    step_regime_transmission,
    usual_thick_transmission,
)

OUT_OF_REGIME = "out_of_regime"

_SWEEP_KEYS = ("barrier", "mass", "models", "energy_grid", "angle_list", "output", "emit_plot_script")
_OPTIONAL_KEYS = ("threads",)


@dataclass(frozen=True)
class SweepConfig:
    barrier: BarrierSpec
    models: Tuple[ModelKind, ...]
    energy_grid: Tuple[float, float, int]  # (start eV, stop eV, count)
    angle_list: Tuple[float, ...]  # 角度制
    output: str
    mass: float = 1.0
    emit_plot_script: bool = False
    threads: int = 1

    def __post_init__(self):
        start, stop, count = self.energy_grid
        if int(count) != count or count < 2:
            raise ConfigError(f"energy_grid.count 必须是 ≥ 2 的整数，实际 {count}")
        if not 0 < start < stop:
            raise ConfigError(f"energy_grid 需要 0 < start < stop，实际 start={start}, stop={stop}")
        if not self.angle_list:
            raise ConfigError("angle_list 不能为空")
        for angle in self.angle_list:
            if not 0 <= angle <= 90:
                raise ConfigError(f"angle_list 中的角度必须在 [0, 90] 度内，实际 {angle}")
        if not self.models:
            raise ConfigError("models 不能为空")
        if not self.mass > 0:
            raise ConfigError(f"mass 必须为正，实际 {self.mass}")
        if int(self.threads) != self.threads or self.threads < 1:
            raise ConfigError(f"threads 必须是正整数，实际 {self.threads}")

    @property
    def energies(self) -> List[float]:
        start, stop, count = self.energy_grid
        return [float(e) for e in np.linspace(start, stop, int(count))]

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "SweepConfig":
        check_keys("sweep 配置", data, _SWEEP_KEYS, _OPTIONAL_KEYS)
        check_keys("barrier", data["barrier"], ("height", "width"))
        check_keys("energy_grid", data["energy_grid"], ("start", "stop", "count"))
        try:
            barrier = BarrierSpec(float(data["barrier"]["height"]), float(data["barrier"]["width"]))
            models = tuple(ModelKind.parse(name) for name in data["models"])
            grid = data["energy_grid"]
            energy_grid = (float(grid["start"]), float(grid["stop"]), int(grid["count"]))
            angles = tuple(float(a) for a in data["angle_list"])
            output = str(data["output"])
            mass = float(data["mass"])
            threads = int(data.get("threads", 1))
        except (TypeError, ValueError) as e:
            raise ConfigError(f"sweep 配置取值非法: {e}") from e
        if not isinstance(data["emit_plot_script"], bool):
            raise ConfigError("emit_plot_script 必须是 true/false")

        return cls(
            barrier=barrier,
            models=models,
            energy_grid=energy_grid,
            angle_list=angles,
            output=output,
            mass=mass,
            emit_plot_script=data["emit_plot_script"],
            threads=threads,
        )

    @classmethod
    def from_yaml(cls, path) -> "SweepConfig":
        return cls.from_mapping(load_yaml_mapping(path))


@dataclass
class SweepRow:
    energy: float
    angle: float
    values: Dict[str, Optional[float]]
    regime: str
    warnings: List[str] = field(default_factory=list)


def compute_point(
    model: ModelKind,
    energy: float,
    height: float,
    width: float,
    theta1: float,
    mass: float = 1.0,
    literal: bool = False,
) -> TransmissionResult:
    """按模型分派到对应的闭式公式，结果与直接调用库函数完全一致"""
    check_angle(theta1)
    if model is ModelKind.USUAL_THICK:
        return usual_thick_transmission(energy, height, width, mass)
    if model is ModelKind.ANGULAR_PAPER_LITERAL:
        return angular_paper_literal_transmission(energy, height, width, theta1, mass)
    if model is ModelKind.ANGULAR_PAPER_BETA:
        return angular_paper_beta_transmission(energy, height, width, theta1, mass)
    if model is ModelKind.ANGULAR_PAPER_BETA_FULL:
        return angular_paper_beta_full_transmission(energy, height, width, theta1, mass)
    if model is ModelKind.ANGULAR_CONSISTENT_THICK:
        return angular_consistent_thick_transmission(energy, height, width, theta1, mass)
    if model is ModelKind.EXACT_CLOSED_FORM:
        return exact_barrier_transmission(energy, height, width, theta1, mass)
    if model is ModelKind.STEP_REGIME:
        return step_regime_transmission(energy, height, width, theta1, mass, literal=literal)
    raise DomainError(f"未知模型 {model!r}")


def _evaluate_cell(config: SweepConfig, angle: float, energy: float) -> SweepRow:
    theta1 = degrees_to_radians(angle)
    height, width = config.barrier.height, config.barrier.width
    values: Dict[str, Optional[float]] = {}
    warnings: List[str] = []

    for model in config.models:
        try:
            result = compute_point(model, energy, height, width, theta1, config.mass)
        except RegimeError:
            values[model.value] = None
            warnings.append(f"{model.value}:{OUT_OF_REGIME}")
            continue
        values[model.value] = result.transmission
        warnings.extend(f"{model.value}:{w}" for w in result.warnings)

    return SweepRow(
        energy=energy,
        angle=angle,
        values=values,
        regime=classify_regime(energy, height, theta1).value,
        warnings=warnings,
    )


def run_sweep(config: SweepConfig) -> List[SweepRow]:
    """按 (角度优先, 能量其次) 升序逐格计算；单元格相互独立，可多线程"""
    ensure_writable(config.output)

    cells: Sequence[Tuple[float, float]] = [
        (angle, energy) for angle in sorted(config.angle_list) for energy in config.energies
    ]
    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            return list(pool.map(lambda cell: _evaluate_cell(config, *cell), cells))
    return [_evaluate_cell(config, angle, energy) for angle, energy in cells]
