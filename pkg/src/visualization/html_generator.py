import datetime

import plotly.graph_objects as go

from core.errors import OutputError


def _transmission_chart(report) -> str:
    fig = go.Figure()
    values = report.values
    for angle, group in values.groupby("angle_deg"):
        for column in report.columns:
            fig.add_trace(
                go.Scatter(
                    x=group["energy_eV"],
                    y=group[column],
                    mode="lines+markers",
                    name=f"{column} θ={angle:g}°",
                )
            )
    fig.update_layout(
        xaxis_title="E (eV)",
        yaxis_title="T",
        yaxis_type="log",
        height=600,
        margin=dict(l=40, r=20, t=30, b=40),
    )
    # plotly.js 内嵌，报告可以离线打开
    return fig.to_html(full_html=False, include_plotlyjs=True)


def generate_report(report, output_file="validation_report.html"):
    html_template = """
    <html>
    <head>
        <meta charset="utf-8">
        <title>PyTunnelScan 模型交叉验证报告</title>
        <style>
            body {{ font-family: "Noto Sans SC", Helvetica, Arial, sans-serif; margin: 24px auto; max-width: 1200px; color: #1f2d3a; background: #fafbfc; }}
            .container {{ background: #ffffff; padding: 24px 32px; border: 1px solid #d8dee4; border-radius: 6px; }}
            h1 {{ font-size: 22px; color: #0b3d5c; margin-top: 0; }}
            h2 {{ font-size: 17px; color: #0b3d5c; margin-top: 28px; }}
            .stat-box {{ display: grid; grid-template-columns: repeat(3, 1fr); gap: 12px; margin: 16px 0 24px; }}
            .stat-card {{ padding: 12px; border-radius: 4px; color: #ffffff; text-align: center; font-variant-numeric: tabular-nums; }}
            .ok {{ background-color: #2e7d5b; }}
            .over {{ background-color: #b03a2e; }}
            .neutral {{ background-color: #1d5f8a; }}
            table {{ border-collapse: collapse; margin-bottom: 24px; font-size: 13px; font-variant-numeric: tabular-nums; }}
            th, td {{ border: 1px solid #d8dee4; padding: 4px 8px; text-align: right; }}
            th {{ background: #eef2f6; }}
        </style>
    </head>
    <body>
        <div class="container">
            <h1>⚛️ PyTunnelScan 模型交叉验证报告</h1>
            <p>生成时间: {timestamp}</p>
            <p>势垒: V = {height:g} eV, a = {width:g} nm, m = {mass:g} mₑ</p>
            <div class="stat-box">
                <div class="stat-card neutral">格点数: {points}</div>
                <div class="stat-card neutral">模型对: {pairs}</div>
                <div class="stat-card {flag_class}">近似模型超过 1: {flags}</div>
            </div>
            <h2>透射概率</h2>
            {chart}
            <h2>两两偏差</h2>
            {deviations}
            <h2>超过 1 的近似值</h2>
            {unity}
        </div>
    </body>
    </html>
    """

    flags = len(report.unity_flags)
    full_html = html_template.format(
        timestamp=datetime.datetime.now().strftime("%Y-%m-%d %H:%M:%S"),
        height=report.height,
        width=report.width,
        mass=report.mass,
        points=len(report.values),
        pairs=len(report.deviations),
        flags=flags,
        flag_class="over" if flags else "ok",
        chart=_transmission_chart(report),
        deviations=report.deviations.to_html(index=False, float_format=lambda v: f"{v:.3e}", na_rep="-"),
        unity=report.unity_flags.to_html(index=False, float_format=lambda v: f"{v:.6g}") if flags else "<p>无</p>",
    )

    try:
        with open(output_file, "w", encoding="utf-8") as f:
            f.write(full_html)
    except OSError as e:
        raise OutputError(f"写入 HTML 报告失败 ({e})", str(output_file)) from e
    return output_file
