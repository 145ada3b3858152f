import xml.etree.ElementTree as ET
from fractions import Fraction as F

import pytest

from conecalc.cli import run
from conecalc.cones import ConeTerm, SignedConeSum
from conecalc.density import density_at
from conecalc.localization import heckman_cone_sum
from conecalc.plot import density_grid, heckman_overlays, parse_window, render_svg
from conecalc.scenario import load

NS = "{http://www.w3.org/2000/svg}"


def test_parse_window():
    assert parse_window("-1:2,0:1/2", 2) == [(-1, 2), (0, F(1, 2))]
    for bad in ["0:1", "1:0,0:1", "0-1,0:1"]:
        with pytest.raises(ValueError):
            parse_window(bad, 2)


def test_overlays_mark_flipped_edges():
    sc = load("cp2")
    flags = sorted(sum(ov.flipped) for ov in heckman_overlays(sc.fixed_points, sc.direction_v))
    assert flags == [0, 1, 2]


def test_grid_is_exact():
    sc = load("cp2")
    H = heckman_cone_sum(sc.fixed_points, sc.direction_v)
    grid = density_grid(H, [(F(-1), F(2)), (F(-1), F(2))], 6)
    assert len(grid) == 6 and all(len(r) == 6 for r in grid)
    for row in grid:
        for point, d in row:
            assert density_at(H, point) == d


def test_svg_rank_one():
    sc = load("cp2-w012")
    H = heckman_cone_sum(sc.fixed_points, sc.direction_v)
    svg = render_svg(H, [(F(-1), F(3))], 40)
    root = ET.fromstring(svg)
    values = {F(r.get("data-density")) for r in root.iter(NS + "rect")}
    assert max(values) <= F(1, 2) and min(values) == 0


def test_svg_rejects_rank_three():
    H = SignedConeSum.of([ConeTerm(1, (0, 0, 0), rays=((1, 0, 0), (0, 1, 0), (0, 0, 1)))])
    with pytest.raises(ValueError):
        render_svg(H, [(0, 1)] * 3, 2)


def test_plot_cp2(tmp_path):
    out = tmp_path / "cp2.svg"
    assert run(["plot", "cp2", "--window", "-1:2,-1:2", "--res", "200", "--out", str(out)]) == 0
    root = ET.fromstring(out.read_text())
    sc = load("cp2")
    H = heckman_cone_sum(sc.fixed_points, sc.direction_v)
    rects = list(root.iter(NS + "rect"))
    assert {r.get("data-density") for r in rects} == {"0", "1"}
    # spot-check the recorded exact values
    for r in rects[:: max(1, len(rects) // 50)]:
        point = tuple(F(c) for c in r.get("data-point").split(","))
        assert density_at(H, point) == F(r.get("data-density"))
    lines = [ln for ln in root.iter(NS + "line") if ln.get("data-flipped") is not None]
    flipped = [ln for ln in lines if ln.get("data-flipped") == "true"]
    assert len(lines) == 6 and len(flipped) == 3
    assert all(ln.get("stroke") == "#00bcd4" for ln in flipped)
    assert len(list(root.iter(NS + "circle"))) == 3


def test_plot_other_measures(tmp_path):
    for measure in ("bg", "cells"):
        out = tmp_path / f"{measure}.svg"
        assert run(["plot", "cp2", "--measure", measure, "--window", "-1:2,-1:2", "--res", "12", "--out", str(out)]) == 0
        root = ET.fromstring(out.read_text())
        assert {r.get("data-density") for r in root.iter(NS + "rect")} == {"0", "1"}
