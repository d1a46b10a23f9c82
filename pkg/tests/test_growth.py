import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypcrochet.errors import DomainError
from hypcrochet.growth import (
    CSV_HEADER,
    circumference_euclidean,
    circumference_hyperbolic,
    circumference_ratio,
    growth_table,
    layer_radius,
    triangle_height,
)
from hypcrochet.hypmath import ORIGIN, KleinPoint, klein_distance
from hypcrochet.tiling import base_triangle, edge_length, expand_tiling


def test_ratio_on_grid():
    for r in np.linspace(0.0, 5.0, 51)[1:]:
        r = float(r)
        got = circumference_hyperbolic(r) / circumference_euclidean(r)
        assert got == pytest.approx(math.sinh(r) / r, rel=1e-12)
    assert circumference_ratio(5.0) == pytest.approx(math.sinh(5.0) / 5.0, abs=1e-6)


@given(st.floats(1e-6, 20.0))
def test_ratio_against_high_precision(r):
    mpmath.mp.dps = 40
    expect = float(mpmath.sinh(r) / r)
    assert circumference_ratio(r) == pytest.approx(expect, rel=1e-13)


@given(st.floats(0.0, 10.0), st.floats(0.0, 10.0))
def test_ratio_increasing_and_at_least_one(r, s):
    lo, hi = sorted((r, s))
    assert 1.0 <= circumference_ratio(lo) <= circumference_ratio(hi)


def test_zero_radius():
    assert circumference_ratio(0.0) == 1.0
    assert circumference_hyperbolic(0.0) == 0.0


def test_hyperbolic_circumference_measured_in_klein_disk():
    # perimeter of a fine inscribed polygon at hyperbolic radius r
    r, n = 2.0, 20000
    rho = math.tanh(r)
    pts = [KleinPoint(rho * math.cos(2 * math.pi * i / n), rho * math.sin(2 * math.pi * i / n)) for i in range(n)]
    perim = sum(klein_distance(p, q) for p, q in zip(pts, pts[1:] + pts[:1]))
    assert perim == pytest.approx(circumference_hyperbolic(r), rel=1e-6)


def test_table_shape_and_endpoints():
    rows = growth_table(5.0, 51)
    assert len(rows) == 51
    assert rows[0].r == 0.0 and rows[-1].r == 5.0
    assert CSV_HEADER == ("r", "c_euclidean", "c_hyperbolic", "ratio")


@pytest.mark.parametrize("bad", [-1.0, float("nan")])
def test_negative_radius_rejected(bad):
    with pytest.raises(DomainError):
        circumference_hyperbolic(bad)


def test_table_preconditions():
    with pytest.raises(DomainError):
        growth_table(0.0, 5)
    with pytest.raises(DomainError):
        growth_table(1.0, 1)


def test_triangle_height_is_distance_to_opposite_midpoint():
    o, a, b = base_triangle(7)
    # by symmetry the foot of the altitude from O is where the bisecting ray meets chord AB
    ux, uy = math.cos(math.pi / 7), math.sin(math.pi / 7)
    dx, dy = b.x - a.x, b.y - a.y
    t = (a.x * dy - a.y * dx) / (ux * dy - uy * dx)
    foot = KleinPoint(t * ux, t * uy)
    assert triangle_height(edge_length(7)) == pytest.approx(klein_distance(o, foot), rel=1e-12)


def test_layer_radius_is_a_rough_inradius():
    a = edge_length(7)
    patch = expand_tiling(7, 3)
    assert layer_radius(0, a) == pytest.approx(triangle_height(a))
    for L in range(4):
        ring = [klein_distance(ORIGIN, v) for v, r in zip(patch.vertices, patch.vertex_layers) if r == L + 1]
        assert 0.8 * min(ring) <= layer_radius(L, a) <= max(ring)
