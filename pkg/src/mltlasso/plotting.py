"""Self-contained SVG line charts of q_hat against alpha, one file per p."""
from __future__ import annotations

from collections import defaultdict
from pathlib import Path
from xml.sax.saxutils import escape

from .experiments import GridCellResult, read_csv

WIDTH, HEIGHT = 480, 360
MARGIN = dict(left=60, right=110, top=40, bottom=50)

# tab10
PALETTE = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
]


def render_svg(p: int, series: dict[int, list[tuple[float, float]]]) -> str:
    """One polyline per n; y-axis fixed to [0, 1]."""
    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]
    alphas = [a for pts in series.values() for a, _ in pts]
    x0, x1 = min(alphas), max(alphas)
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5

    def sx(a):
        return MARGIN["left"] + (a - x0) / (x1 - x0) * pw

    def sy(q):
        return MARGIN["top"] + (1.0 - q) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle" font-size="14">p = {p}</text>',
    ]
    # axes and ticks
    bx, by = MARGIN["left"], MARGIN["top"] + ph
    out.append(f'<line class="axis" x1="{bx}" y1="{by}" x2="{bx + pw}" y2="{by}" stroke="black"/>')
    out.append(f'<line class="axis" x1="{bx}" y1="{MARGIN["top"]}" x2="{bx}" y2="{by}" stroke="black"/>')
    for k in range(6):
        q = k / 5
        y = sy(q)
        out.append(f'<line x1="{bx - 4}" y1="{y:.2f}" x2="{bx}" y2="{y:.2f}" stroke="black"/>')
        out.append(f'<text x="{bx - 7}" y="{y + 4:.2f}" text-anchor="end">{q:.1f}</text>')
    for k in range(6):
        a = x0 + k * (x1 - x0) / 5
        x = sx(a)
        out.append(f'<line x1="{x:.2f}" y1="{by}" x2="{x:.2f}" y2="{by + 4}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{by + 17}" text-anchor="middle">{a:.2f}</text>')
    out.append(
        f'<text class="xlabel" x="{bx + pw / 2:.1f}" y="{HEIGHT - 12}" text-anchor="middle">alpha</text>'
    )
    out.append(
        f'<text class="ylabel" x="16" y="{MARGIN["top"] + ph / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {MARGIN["top"] + ph / 2:.1f})">q_hat</text>'
    )

    for idx, n in enumerate(sorted(series)):
        colour = PALETTE[idx % len(PALETTE)]
        pts = " ".join(f"{sx(a):.2f},{sy(q):.2f}" for a, q in sorted(series[n]))
        out.append(
            f'<polyline class="series" data-n="{n}" points="{pts}" fill="none" '
            f'stroke="{colour}" stroke-width="1.5"/>'
        )
        ly = MARGIN["top"] + 10 + 18 * idx
        lx = WIDTH - MARGIN["right"] + 15
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 20}" y2="{ly}" stroke="{colour}" stroke-width="2"/>')
        out.append(f'<text class="legend" x="{lx + 26}" y="{ly + 4}">{escape(f"n = {n}")}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def group_series(results: list[GridCellResult]) -> dict[int, dict[int, list[tuple[float, float]]]]:
    grouped: dict[int, dict[int, list[tuple[float, float]]]] = defaultdict(lambda: defaultdict(list))
    for r in results:
        grouped[r.p][r.n].append((r.alpha, r.q_hat))
    return grouped


def plot_csv(csv_path, out_dir) -> list[Path]:
    """Write q_p{p}.svg for every p in the CSV. Returns the paths written."""
    results = read_csv(csv_path)
    if not results:
        raise ValueError(f"{csv_path} has a header but no data rows")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for p, series in sorted(group_series(results).items()):
        path = out_dir / f"q_p{p}.svg"
        path.write_text(render_svg(p, dict(series)))
        written.append(path)
    return written
