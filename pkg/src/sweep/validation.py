"""
模型交叉验证：在 (E, θ) 网格上比较所有闭式模型、传输矩阵解和数值积分结果
"""
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd

from core.errors import RegimeError
from ode_oracle.integrator import IntegratorConfig, integrate_transmission
from physics_core.constants import degrees_to_radians
from sweep.runner import compute_point
from transfer_matrix.solver import PotentialProfile, solve_profile
from tunneling_models.closed_forms import ModelKind

TRANSFER_MATRIX = "TransferMatrix"
ODE_ORACLE = "OdeOracle"

DEFAULT_ENERGIES = tuple(float(e) for e in np.linspace(0.5, 11.5, 20))
DEFAULT_ANGLES = (0.0, 30.0, 45.0, 60.0)

DEVIATION_COLUMNS = ["model_a", "model_b", "points", "max_abs", "mean_abs", "max_rel", "mean_rel"]


@dataclass
class ValidationReport:
    height: float
    width: float
    mass: float
    values: pd.DataFrame  # energy_eV, angle_deg, 每个模型一列；不适用的格子为 NaN
    deviations: pd.DataFrame  # DEVIATION_COLUMNS
    unity_flags: pd.DataFrame  # model, energy_eV, angle_deg, transmission

    @property
    def columns(self) -> List[str]:
        return [c for c in self.values.columns if c not in ("energy_eV", "angle_deg")]

    def deviation(self, model_a: str, model_b: str) -> pd.Series:
        """按列顺序无关地查找一对模型的偏差统计"""
        frame = self.deviations
        mask = ((frame["model_a"] == model_a) & (frame["model_b"] == model_b)) | (
            (frame["model_a"] == model_b) & (frame["model_b"] == model_a)
        )
        if not mask.any():
            raise KeyError(f"没有 {model_a} / {model_b} 的偏差记录")
        return frame[mask].iloc[0]

    def relative_gap(self, model_a: str, model_b: str, energy: float, angle: float) -> float:
        """单个格点上 |T_a − T_b| / |T_b|"""
        row = self.values[np.isclose(self.values["energy_eV"], energy) & np.isclose(self.values["angle_deg"], angle)]
        if row.empty:
            raise KeyError(f"网格中没有 E = {energy} eV, θ = {angle}° 的格点")
        a, b = float(row[model_a].iloc[0]), float(row[model_b].iloc[0])
        return abs(a - b) / abs(b)


def _evaluate(
    models: Sequence[ModelKind],
    height: float,
    width: float,
    mass: float,
    energy: float,
    angle: float,
    integrator: IntegratorConfig,
) -> dict:
    theta1 = degrees_to_radians(angle)
    record = {"energy_eV": energy, "angle_deg": angle}
    for model in models:
        try:
            record[model.value] = compute_point(model, energy, height, width, theta1, mass).transmission
        except RegimeError:
            record[model.value] = math.nan

    profile = PotentialProfile.single_barrier(height, width)
    _, result = solve_profile(profile, energy, theta1, mass)
    record[TRANSFER_MATRIX] = result.transmission
    try:
        record[ODE_ORACLE] = integrate_transmission(profile, energy, theta1, mass, integrator)
    except RegimeError:
        record[ODE_ORACLE] = math.nan
    return record


def _pair_statistics(values: pd.DataFrame, columns: Sequence[str]) -> pd.DataFrame:
    rows = []
    for name_a, name_b in combinations(columns, 2):
        a = values[name_a].to_numpy(dtype=float)
        b = values[name_b].to_numpy(dtype=float)
        mask = np.isfinite(a) & np.isfinite(b)
        if not mask.any():
            continue
        diff = np.abs(a[mask] - b[mask])
        denominator = np.abs(b[mask])
        nonzero = denominator > 0
        rel = diff[nonzero] / denominator[nonzero]
        rows.append(
            {
                "model_a": name_a,
                "model_b": name_b,
                "points": int(mask.sum()),
                "max_abs": float(diff.max()),
                "mean_abs": float(diff.mean()),
                "max_rel": float(rel.max()) if rel.size else math.nan,
                "mean_rel": float(rel.mean()) if rel.size else math.nan,
            }
        )
    return pd.DataFrame(rows, columns=DEVIATION_COLUMNS)


def _unity_flags(values: pd.DataFrame, models: Sequence[ModelKind]) -> pd.DataFrame:
    frames = []
    for model in models:
        if not model.is_approximate:
            continue
        over = values[values[model.value] > 1.0]
        if over.empty:
            continue
        frames.append(
            pd.DataFrame(
                {
                    "model": model.value,
                    "energy_eV": over["energy_eV"].to_numpy(),
                    "angle_deg": over["angle_deg"].to_numpy(),
                    "transmission": over[model.value].to_numpy(),
                }
            )
        )
    if not frames:
        return pd.DataFrame(columns=["model", "energy_eV", "angle_deg", "transmission"])
    return pd.concat(frames, ignore_index=True)


def validate_models(
    height: float,
    width: float,
    mass: float = 1.0,
    energies: Optional[Iterable[float]] = None,
    angles: Optional[Iterable[float]] = None,
    models: Optional[Sequence[ModelKind]] = None,
    integrator: IntegratorConfig = IntegratorConfig(),
) -> ValidationReport:
    """逐格计算全部模型与两个参照解，统计每一对的最大 / 平均绝对偏差和相对偏差

    相对偏差以每对中的第二个为分母；列顺序为模型顺序、TransferMatrix、OdeOracle。
    """
    energies = list(DEFAULT_ENERGIES if energies is None else energies)
    angles = list(DEFAULT_ANGLES if angles is None else angles)
    models = list(ModelKind) if models is None else list(models)

    records = [
        _evaluate(models, height, width, mass, float(energy), float(angle), integrator)
        for angle in sorted(angles)
        for energy in energies
    ]
    columns = [m.value for m in models] + [TRANSFER_MATRIX, ODE_ORACLE]
    values = pd.DataFrame.from_records(records, columns=["energy_eV", "angle_deg", *columns])

    return ValidationReport(
        height=height,
        width=width,
        mass=mass,
        values=values,
        deviations=_pair_statistics(values, columns),
        unity_flags=_unity_flags(values, models),
    )
