import random

import pytest
from hypothesis import given

from lfed.newton import NewtonPolygon, convex_hull, minkowski_sum, polygon_of, vertex_power_check
from lfed.poly import BiPoly
from lfed.sampling import random_nonzero_poly

from conftest import P, Q, nonzero_polys


def test_polygon_examples():
    assert polygon_of(P("x^2*y")).vertices == ((2, 1),)
    seg = polygon_of(P("x + y"))
    assert seg.kind == "segment" and set(seg.vertices) == {(1, 0), (0, 1)}
    sq = polygon_of(P("1 + x + y + x*y"))
    assert sq.vertices == ((0, 0), (1, 0), (1, 1), (0, 1))


def test_zero_has_no_polygon():
    with pytest.raises(ValueError):
        polygon_of(BiPoly.zero(Q))


def test_minkowski_examples():
    assert minkowski_sum(NewtonPolygon(((2, 1),)), NewtonPolygon(((0, 3),))).vertices == ((2, 4),)
    unit = minkowski_sum(NewtonPolygon(((0, 0), (1, 0))), NewtonPolygon(((0, 0), (0, 1))))
    assert unit.vertices == ((0, 0), (1, 0), (1, 1), (0, 1))
    doubled = minkowski_sum(polygon_of(P("x + y")), polygon_of(P("x + y")))
    assert doubled.vertices == ((0, 2), (2, 0))


def test_hull_drops_interior_and_collinear_points():
    pts = [(0, 0), (2, 0), (1, 0), (2, 2), (0, 2), (1, 1), (1, 2)]
    assert convex_hull(pts) == ((0, 0), (2, 0), (2, 2), (0, 2))


def test_vertex_power_examples():
    rep = vertex_power_check(P("x + y"), 3)
    assert rep.passed and set(rep.vertices) == {(1, 0), (0, 1)}
    assert vertex_power_check(P("1 + x*y"), 4).passed


def test_minkowski_identity_on_seeded_pairs():
    rng = random.Random(7)
    for _ in range(100):
        f = random_nonzero_poly(rng, Q, max_deg=5, max_terms=6)
        g = random_nonzero_poly(rng, Q, max_deg=5, max_terms=6)
        assert polygon_of(f * g) == minkowski_sum(polygon_of(f), polygon_of(g))


def test_vertex_power_on_seeded_polynomials():
    rng = random.Random(8)
    for _ in range(100):
        f = random_nonzero_poly(rng, Q, max_deg=6, max_terms=8)
        for m in range(1, 6):
            assert vertex_power_check(f, m).passed


@given(nonzero_polys())
def test_vertices_lie_in_support(f):
    assert set(polygon_of(f).vertices) <= f.support


@given(nonzero_polys(), nonzero_polys())
def test_minkowski_identity(f, g):
    assert polygon_of(f * g) == minkowski_sum(polygon_of(f), polygon_of(g))


@given(nonzero_polys(max_deg=3))
def test_scaling_matches_powers(f):
    assert polygon_of(f**3) == polygon_of(f).scaled(3)
