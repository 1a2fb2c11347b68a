import xml.etree.ElementTree as ET

import pytest

from mltlasso.experiments import GridConfig, results_to_csv, run_grid
from mltlasso.plotting import plot_csv

SVG = "{http://www.w3.org/2000/svg}"


def toy_csv(tmp_path):
    cfg = GridConfig(p_values=[3], alpha_start=0.5, alpha_stop=1.5, alpha_step=0.5, trials=10)
    path = tmp_path / "toy.csv"
    path.write_text(results_to_csv(run_grid(cfg), cfg.alpha_decimals))
    return path


def test_one_svg_with_three_polylines(tmp_path):
    paths = plot_csv(toy_csv(tmp_path), tmp_path / "out")
    assert [p.name for p in paths] == ["q_p3.svg"]
    root = ET.parse(paths[0]).getroot()
    lines = [e for e in root.iter(f"{SVG}polyline") if e.get("class") == "series"]
    assert sorted(int(e.get("data-n")) for e in lines) == [1, 2, 3]
    for e in lines:
        pts = [tuple(map(float, pt.split(","))) for pt in e.get("points").split()]
        xs = [x for x, _ in pts]
        assert len(pts) == 3 and xs == sorted(xs)
    texts = {e.get("class"): e.text for e in root.iter(f"{SVG}text") if e.get("class")}
    assert texts["xlabel"] == "alpha" and texts["ylabel"] == "q_hat"
    # no external references
    assert "href" not in paths[0].read_text()


def test_y_axis_fixed_to_unit_interval(tmp_path):
    paths = plot_csv(toy_csv(tmp_path), tmp_path)
    root = ET.parse(paths[0]).getroot()
    labels = [e.text for e in root.iter(f"{SVG}text")]
    assert "0.0" in labels and "1.0" in labels


def test_empty_body_is_an_error(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("p,n,alpha,trials,successes,nonconverged,q_hat,ci_low,ci_high\n")
    with pytest.raises(ValueError):
        plot_csv(path, tmp_path)


def test_one_file_per_p(tmp_path):
    cfg = GridConfig(p_values=[3, 4, 5], alpha_start=0.5, alpha_stop=1.0, alpha_step=0.5, trials=4)
    path = tmp_path / "grid.csv"
    path.write_text(results_to_csv(run_grid(cfg)))
    paths = plot_csv(path, tmp_path / "svg")
    assert [p.name for p in paths] == ["q_p3.svg", "q_p4.svg", "q_p5.svg"]
    for p, svg in zip((3, 4, 5), paths):
        root = ET.parse(svg).getroot()
        assert len([e for e in root.iter(f"{SVG}polyline")]) == p
