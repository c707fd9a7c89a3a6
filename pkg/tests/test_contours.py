import numpy as np
import pytest

from areaflow import analytic, areafn, contours, make_grid, sample


@pytest.fixture(scope="module")
def para41():
    return sample(make_grid(41), analytic.Paraboloid())


def test_gaussian_levels_single_closed_loop(w0_20):
    for lv in np.arange(0.1, 0.95, 0.1):
        polys = contours.contour_polylines(w0_20, lv)
        assert len(polys) == 1
        assert polys[0].closed
        pts = polys[0].points
        assert pts.ndim == 2 and pts.shape[1] == 2 and pts.shape[0] >= 8
        # every contour point sits on the interpolant's level set
        resid = np.abs(areafn.interpolate_pl(w0_20, pts[:, 0], pts[:, 1]) - lv)
        assert resid.max() <= 1e-12


def test_closed_loop_does_not_repeat_first_point(w0_20):
    poly = contours.contour_polylines(w0_20, 0.5)[0]
    assert not np.array_equal(poly.points[0], poly.points[-1])
    # consecutive points are distinct
    steps = np.abs(np.diff(poly.points, axis=0)).sum(axis=1)
    assert steps.min() > 1e-14


def test_disc_loop_area_matches_exact(para41):
    level = -0.0912345
    polys = contours.contour_polylines(para41, level)
    assert len(polys) == 1 and polys[0].closed
    area = abs(areafn.polygon_area(polys[0].points))
    assert area == pytest.approx(np.pi * (-level), abs=2e-3)


def test_level_above_maximum_is_empty(para41):
    assert contours.contour_polylines(para41, 1.0) == []


def test_degenerate_level_splits_into_open_arcs(para41):
    # a level hitting a vertex value exactly passes through the node and the
    # chain cannot continue across it; the pieces stay on the level set
    level = float(para41.values[24, 20])
    polys = contours.contour_polylines(para41, level)
    assert len(polys) > 1
    assert all(not p.closed for p in polys)
    for p in polys:
        resid = np.abs(areafn.interpolate_pl(para41, p.points[:, 0], p.points[:, 1]) - level)
        assert resid.max() <= 1e-12


def test_write_polylines_csv(tmp_path, para41):
    level = -0.0912345
    polys = contours.contour_polylines(para41, level)
    path = tmp_path / "contours.csv"
    contours.write_polylines_csv([(level, polys)], path)
    lines = path.read_text().strip().split("\n")
    assert lines[0] == "level,piece,x,y"
    assert len(lines) == 1 + sum(p.points.shape[0] for p in polys)
    first = lines[1].split(",")
    assert float(first[0]) == level and first[1] == "0"
    assert float(first[2]) == polys[0].points[0, 0]
