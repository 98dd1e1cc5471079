"""Newton polygons of bivariate polynomials with exact lattice geometry."""

from __future__ import annotations

from dataclasses import dataclass

from .poly import BiPoly


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> tuple:
    """Extreme points in counterclockwise order from the lexicographically
    smallest one; collinear boundary points are dropped."""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return tuple(pts)
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    # all points collinear: the chains meet in the two endpoints
    if len(hull) == 2:
        return tuple(sorted(hull))
    return tuple(hull)


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple

    @property
    def kind(self) -> str:
        return {1: "point", 2: "segment"}.get(len(self.vertices), "polygon")

    def scaled(self, m: int) -> "NewtonPolygon":
        return NewtonPolygon(tuple((m * i, m * j) for i, j in self.vertices))

    def as_list(self) -> list:
        return [list(v) for v in self.vertices]


def polygon_of(f: BiPoly) -> NewtonPolygon:
    if f.is_zero():
        raise ValueError("the zero polynomial has no Newton polygon")
    return NewtonPolygon(convex_hull(f.support))


def minkowski_sum(P: NewtonPolygon, Q: NewtonPolygon) -> NewtonPolygon:
    return NewtonPolygon(convex_hull((a + c, b + d) for a, b in P.vertices for c, d in Q.vertices))


@dataclass
class VertexPowerReport:
    f: str
    m: int
    vertices: list
    missing: list

    @property
    def passed(self) -> bool:
        return not self.missing


def vertex_power_check(f: BiPoly, m: int) -> VertexPowerReport:
    """Each vertex (i, j) of Pol(f) must give (m i, m j) in the support of f^m."""
    if m < 1:
        raise ValueError("m must be positive")
    poly = polygon_of(f)
    support = (f**m).support
    missing = [v for v in poly.vertices if (m * v[0], m * v[1]) not in support]
    return VertexPowerReport(str(f), m, list(poly.vertices), missing)
