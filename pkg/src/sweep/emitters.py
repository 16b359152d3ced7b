"""
CSV 与绘图脚本输出

CSV 约定：表头 energy_eV,angle_deg,<model>...,regime,warnings；12 位有效数字；LF 换行。
同一配置重复运行得到逐字节相同的文件。
"""
import os
from pathlib import Path
from string import Template
from typing import List, Sequence

import pandas as pd

from core.errors import ConfigError, OutputError

FLOAT_FORMAT = "%.12g"

_PLOT_TEMPLATE = Template('''#!/usr/bin/env python3
"""
PyTunnelScan 绘图脚本：读取扫描 CSV，画出各模型透射概率随能量的变化
运行: python $script_name
"""
from pathlib import Path

import pandas as pd
import plotly.graph_objects as go

CSV_PATH = Path(__file__).resolve().parent / "$csv_rel"
MODELS = $models

frame = pd.read_csv(CSV_PATH)
fig = go.Figure()
for angle, group in frame.groupby("angle_deg"):
    for model in MODELS:
        fig.add_trace(go.Scatter(
            x=group["energy_eV"],
            y=group[model],
            mode="lines",
            name=f"{model} θ={angle:g}°",
        ))
fig.update_layout(
    title="Transmission vs energy",
    xaxis_title="E (eV)",
    yaxis_title="T",
)
# plotly.js 内嵌进 HTML，不需要联网
fig.write_html(CSV_PATH.with_suffix(".html"), include_plotlyjs=True)
print(f"plot written to {CSV_PATH.with_suffix('.html')}")
''')


def ensure_writable(path) -> Path:
    """在任何计算开始前确认输出路径可写"""
    path = Path(path)
    parent = path.resolve().parent
    if path.is_dir():
        raise OutputError("输出路径是一个目录", str(path))
    if not parent.is_dir():
        raise OutputError("输出目录不存在", str(parent))
    if not os.access(parent, os.W_OK) or (path.exists() and not os.access(path, os.W_OK)):
        raise OutputError("输出路径不可写", str(path))
    return path


def _model_columns(rows: Sequence) -> List[str]:
    return list(rows[0].values.keys())


def rows_to_frame(rows: Sequence) -> pd.DataFrame:
    if not rows:
        raise ConfigError("没有可输出的扫描结果")
    models = _model_columns(rows)
    records = []
    for row in rows:
        record = {"energy_eV": row.energy, "angle_deg": row.angle}
        record.update(row.values)
        record["regime"] = row.regime
        record["warnings"] = ";".join(row.warnings)
        records.append(record)

    frame = pd.DataFrame.from_records(records, columns=["energy_eV", "angle_deg", *models, "regime", "warnings"])
    for column in ("energy_eV", "angle_deg", *models):
        frame[column] = pd.to_numeric(frame[column]).astype(float)
    return frame


def emit_csv(rows: Sequence, path) -> Path:
    frame = rows_to_frame(rows)
    path = Path(path)
    try:
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, na_rep="", lineterminator="\n")
    except OSError as e:
        raise OutputError(f"写入 CSV 失败 ({e})", str(path)) from e
    return path


def emit_plot_script(rows: Sequence, path, csv_path) -> Path:
    """生成引用 CSV 相对路径的 plotly 绘图脚本"""
    if not rows:
        raise ConfigError("没有可输出的扫描结果")
    path = Path(path)
    csv_rel = Path(os.path.relpath(Path(csv_path).resolve(), path.resolve().parent)).as_posix()
    script = _PLOT_TEMPLATE.substitute(
        script_name=path.name,
        csv_rel=csv_rel,
        models=repr(_model_columns(rows)),
    )
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(script)
    except OSError as e:
        raise OutputError(f"写入绘图脚本失败 ({e})", str(path)) from e
    return path
