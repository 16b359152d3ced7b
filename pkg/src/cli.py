"""
PyTunnelScan 命令行接口 - 角向量子隧穿的闭式模型、精确解与扫描
"""
import argparse
import dataclasses
import sys
from typing import List, Optional

import numpy as np

from core import console
from core.errors import ConfigError, TunnelScanError
from ode_oracle.integrator import IntegratorConfig
from physics_core.constants import degrees_to_radians
from sweep.crossover import analytic_literal_crossover, find_crossover
from sweep.emitters import emit_csv, emit_plot_script, ensure_writable
from sweep.runner import OUT_OF_REGIME, SweepConfig, compute_point, run_sweep
from sweep.validation import DEFAULT_ANGLES, validate_models
from transfer_matrix.solver import PotentialProfile, solve_profile
from tunneling_models.closed_forms import ModelKind, WARN_EXCEEDS_UNITY
from visualization.html_generator import generate_report

VERSION = "0.1.0"


def _model(value: str) -> ModelKind:
    try:
        return ModelKind.parse(value)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _segment(value: str):
    """V:width，例如 12:0.18"""
    try:
        potential, width = value.split(":")
        return float(potential), float(width)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"势能段格式应为 V:width（eV:nm），实际 {value!r}") from e


def _add_barrier_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--height", type=float, default=12.0, help="势垒高度 V，eV（默认: 12）")
    parser.add_argument("--width", type=float, default=0.18, help="势垒宽度 a，nm（默认: 0.18）")
    parser.add_argument("--mass", type=float, default=1.0, help="粒子质量，单位 mₑ（默认: 1）")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pytunnelscan",
        description="PyTunnelScan - 角向量子隧穿透射概率计算工具",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例:
  %(prog)s point --model UsualThick --energy 6 --angle 0          # 单点透射概率
  %(prog)s point --model StepRegime --energy 13 --literal          # 阶跃区公式的字面分母
  %(prog)s sweep --config configs/paper_reproduction.yaml          # 能量 / 角度扫描，输出 CSV
  %(prog)s crossover --model-a AngularPaperLiteral --model-b UsualThick --angle 45
  %(prog)s validate --html report.html                             # 模型交叉验证报告
  %(prog)s profile --segment 12:0.09 --segment 6:0.2 --energy 5    # 任意分段势
        """,
    )
    parser.add_argument("--quiet", "-q", action="store_true", help="不输出状态信息")
    parser.add_argument("--version", action="version", version=f"PyTunnelScan v{VERSION}")

    subparsers = parser.add_subparsers(dest="command", help="可用命令")

    point_parser = subparsers.add_parser("point", help="计算单个 (E, θ) 点的透射概率")
    point_parser.add_argument("--model", type=_model, required=True, help="模型名称")
    point_parser.add_argument("--energy", type=float, required=True, help="入射能量 E，eV")
    point_parser.add_argument("--angle", type=float, default=0.0, help="入射角，度（默认: 0）")
    _add_barrier_arguments(point_parser)
    point_parser.add_argument("--literal", action="store_true", help="StepRegime 使用字面分母")

    sweep_parser = subparsers.add_parser("sweep", help="按 YAML 配置做能量 / 角度扫描")
    sweep_parser.add_argument("--config", required=True, help="YAML 配置文件路径")
    sweep_parser.add_argument("--out", help="覆盖配置中的输出 CSV 路径")
    sweep_parser.add_argument("--threads", type=int, help="覆盖配置中的线程数")

    crossover_parser = subparsers.add_parser("crossover", help="求两模型透射曲线的交点能量")
    crossover_parser.add_argument("--model-a", type=_model, required=True, help="模型 A")
    crossover_parser.add_argument("--model-b", type=_model, required=True, help="模型 B")
    crossover_parser.add_argument("--angle", type=float, required=True, help="入射角，度")
    _add_barrier_arguments(crossover_parser)
    crossover_parser.add_argument(
        "--bracket", type=float, nargs=2, metavar=("LO", "HI"), help="搜索区间，eV（默认: 1 到 V）"
    )

    validate_parser = subparsers.add_parser("validate", help="在网格上交叉验证全部模型")
    _add_barrier_arguments(validate_parser)
    validate_parser.add_argument(
        "--energy-grid",
        type=float,
        nargs=3,
        metavar=("START", "STOP", "COUNT"),
        default=(0.5, 11.5, 20),
        help="能量网格（默认: 0.5 11.5 20）",
    )
    validate_parser.add_argument(
        "--angles", type=float, nargs="+", default=list(DEFAULT_ANGLES), help="入射角列表，度（默认: 0 30 45 60）"
    )
    validate_parser.add_argument("--models", type=_model, nargs="+", help="参与比较的模型（默认: 全部）")
    validate_parser.add_argument("--ode-step", type=float, default=IntegratorConfig.step, help="积分步长，nm")
    validate_parser.add_argument("--ode-pad", type=float, default=IntegratorConfig.pad, help="两侧平坦区，nm")
    validate_parser.add_argument("--out", help="偏差表 CSV 输出路径")
    validate_parser.add_argument("--html", help="HTML 报告输出路径")

    profile_parser = subparsers.add_parser("profile", help="用传输矩阵求解任意分段常势")
    profile_parser.add_argument(
        "--segment", type=_segment, action="append", default=[], help="势能段 V:width，可重复，按从左到右顺序"
    )
    profile_parser.add_argument("--energy", type=float, required=True, help="入射能量 E，eV")
    profile_parser.add_argument("--angle", type=float, default=0.0, help="入射角，度（默认: 0）")
    profile_parser.add_argument("--mass", type=float, default=1.0, help="粒子质量，单位 mₑ（默认: 1）")

    return parser


def run_point(args) -> int:
    result = compute_point(
        args.model, args.energy, args.height, args.width, degrees_to_radians(args.angle), args.mass, args.literal
    )
    print(f"model: {result.model.value}")
    print(f"transmission: {result.transmission:.12g}")
    if result.reflection is not None:
        print(f"reflection: {result.reflection:.12g}")
    print(f"regime: {result.regime.value}")
    for warning in result.warnings:
        console.warn(warning)
    return 0


def run_sweep_command(args) -> int:
    config = SweepConfig.from_yaml(args.config)
    overrides = {}
    if args.out:
        overrides["output"] = args.out
    if args.threads is not None:
        overrides["threads"] = args.threads
    if overrides:
        config = dataclasses.replace(config, **overrides)

    console.header("能量 / 角度扫描")
    console.info(
        f"V = {config.barrier.height:g} eV, a = {config.barrier.width:g} nm, "
        f"{len(config.energies)} 个能量 × {len(config.angle_list)} 个角度 × {len(config.models)} 个模型"
    )
    rows = run_sweep(config)

    out_of_regime = sum(1 for row in rows for w in row.warnings if w.endswith(OUT_OF_REGIME))
    over_unity = sum(1 for row in rows for w in row.warnings if w.endswith(WARN_EXCEEDS_UNITY))
    if out_of_regime:
        console.warn(f"{out_of_regime} 个格子超出模型适用区间，已留空")
    if over_unity:
        console.warn(f"{over_unity} 个近似值超过 1（未截断）")

    csv_path = emit_csv(rows, config.output)
    console.success(f"CSV 已生成: {csv_path} ({len(rows)} 行)")
    if config.emit_plot_script:
        script_path = csv_path.with_name(f"{csv_path.stem}_plot.py")
        emit_plot_script(rows, script_path, csv_path)
        console.success(f"绘图脚本已生成: {script_path}")
    return 0


def run_crossover(args) -> int:
    bracket = tuple(args.bracket) if args.bracket else (1.0, None)
    theta1 = degrees_to_radians(args.angle)
    energy = find_crossover(args.model_a, args.model_b, theta1, args.height, args.width, args.mass, bracket)
    print(f"{energy:.9f}")

    pair = {args.model_a, args.model_b}
    if pair == {ModelKind.ANGULAR_PAPER_LITERAL, ModelKind.USUAL_THICK}:
        console.info(f"解析交点 E* = 2cos²θ·V/(2cos²θ + 1) = {analytic_literal_crossover(args.height, theta1):.9f} eV")
    return 0


def run_validate(args) -> int:
    start, stop, count = args.energy_grid
    if int(count) != count or count < 1:
        raise ConfigError(f"能量网格点数必须是正整数，实际 {count}")
    energies = [float(e) for e in np.linspace(start, stop, int(count))]

    for path in (args.out, args.html):
        if path:
            ensure_writable(path)

    integrator = IntegratorConfig(step=args.ode_step, pad=args.ode_pad)
    console.header("模型交叉验证")
    console.info(f"{len(energies)} 个能量 × {len(args.angles)} 个角度，积分步长 {integrator.step:g} nm")
    report = validate_models(args.height, args.width, args.mass, energies, args.angles, args.models, integrator)

    print(report.deviations.to_string(index=False, float_format=lambda v: f"{v:.3e}"))
    if len(report.unity_flags):
        console.warn(f"近似模型有 {len(report.unity_flags)} 个格点超过 1")

    if args.out:
        report.deviations.to_csv(args.out, index=False, float_format="%.12g", lineterminator="\n")
        console.success(f"偏差表已保存到: {args.out}")
    if args.html:
        generate_report(report, args.html)
        console.success(f"报告已生成: {args.html}")
    return 0


def run_profile(args) -> int:
    profile = PotentialProfile(tuple(args.segment))
    amplitudes, result = solve_profile(profile, args.energy, degrees_to_radians(args.angle), args.mass)
    print(f"transmission: {result.transmission:.12g}")
    print(f"reflection: {result.reflection:.12g}")
    for warning in result.warnings:
        console.warn(warning)
    if amplitudes is None:
        return 0

    print("region,potential_eV,width_nm,k_perp,forward,backward")
    potentials = [0.0, *(v for v, _ in profile.segments), 0.0]
    for index, (k, forward, backward) in enumerate(
        zip(amplitudes.wavenumbers, amplitudes.forward, amplitudes.backward)
    ):
        print(f"{index},{potentials[index]:g},{amplitudes.widths[index]:g},{k:.6g},{forward:.6g},{backward:.6g}")
    return 0


_HANDLERS = {
    "point": run_point,
    "sweep": run_sweep_command,
    "crossover": run_crossover,
    "validate": run_validate,
    "profile": run_profile,
}


def main(argv: Optional[List[str]] = None) -> int:
    """主函数，返回退出码：0 成功，1 物理域 / 适用区间错误，2 配置 / 输入输出错误"""
    parser = build_parser()
    args = parser.parse_args(argv)
    console.set_quiet(args.quiet)

    handler = _HANDLERS.get(args.command)
    if handler is None:
        parser.print_help()
        return 0

    try:
        return handler(args)
    except TunnelScanError as e:
        console.error(str(e))
        return e.exit_code
    except OSError as e:
        console.error(f"输入输出错误: {e}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
