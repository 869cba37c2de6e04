"""Canonical test polytopes and complexes, all with rational coordinates."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import List, Union

from .errors import UnsupportedParameter
from .hull import enumerate_facets, enumerate_vertices
from .polytope import HPolytope, VPolytope

Polytope = Union[HPolytope, VPolytope]


def _need(cond, msg):
    if not cond:
        raise UnsupportedParameter(msg)


def cube(d: int) -> HPolytope:
    """``[0, 1]^d``: rows ``x_i >= 0`` then ``1 - x_i >= 0``."""
    _need(d >= 1, "cube needs d >= 1")
    rows = [[0] + [int(i == j) for j in range(d)] for i in range(d)]
    rows += [[1] + [-int(i == j) for j in range(d)] for i in range(d)]
    return HPolytope.from_rows(rows)


def cube_vertices(d: int) -> VPolytope:
    return VPolytope.from_points(list(itertools.product([0, 1], repeat=d)), d)


def simplex(d: int) -> HPolytope:
    """Standard simplex ``x >= 0, sum x <= 1``."""
    _need(d >= 1, "simplex needs d >= 1")
    rows = [[0] + [int(i == j) for j in range(d)] for i in range(d)]
    rows.append([1] + [-1] * d)
    return HPolytope.from_rows(rows)


def simplex_vertices(d: int) -> VPolytope:
    pts = [[0] * d] + [[int(i == j) for j in range(d)] for i in range(d)]
    return VPolytope.from_points(pts, d)


def crosspoly(d: int) -> VPolytope:
    """Cross-polytope ``conv(+-e_i)``."""
    _need(d >= 1, "crosspoly needs d >= 1")
    pts = []
    for i in range(d):
        for s in (1, -1):
            pts.append([s * int(i == j) for j in range(d)])
    return VPolytope.from_points(pts, d)


def crosspoly_h(d: int) -> HPolytope:
    _need(d >= 1, "crosspoly needs d >= 1")
    rows = [[1] + [-s for s in signs] for signs in itertools.product([1, -1], repeat=d)]
    return HPolytope.from_rows(rows)


def cyclic(d: int, n: int) -> VPolytope:
    """Points ``(t, t^2, ..., t^d)`` on the moment curve for ``t = 1..n``."""
    _need(d >= 2 and n >= d + 1, "cyclic needs d >= 2 and n >= d + 1")
    return VPolytope.from_points([[t ** k for k in range(1, d + 1)] for t in range(1, n + 1)], d)


def polygon(n: int) -> VPolytope:
    """Rational points on the unit circle at roughly equal angles.

    Points come from the parametrisation ``((1-u^2)/(1+u^2), 2u/(1+u^2))`` with
    ``u`` a small-denominator approximation of ``tan(theta/2)``; points on a
    circle are always in convex position.
    """
    _need(n >= 3, "polygon needs n >= 3")
    pts = []
    for k in range(n):
        theta = 2 * math.pi * (k + 0.25) / n - math.pi
        u = Fraction(math.tan(theta / 2)).limit_denominator(1000)
        den = 1 + u * u
        pts.append(((1 - u * u) / den, 2 * u / den))
    _need(len(set(pts)) == n, "polygon resolution exhausted")
    return VPolytope(2, tuple(pts))


def hexagon() -> VPolytope:
    return VPolytope.from_points([[2, 0], [1, 1], [-1, 1], [-2, 0], [-1, -1], [1, -1]])


def as_h(P: Polytope) -> HPolytope:
    return P if isinstance(P, HPolytope) else enumerate_facets(P)


def as_v(P: Polytope) -> VPolytope:
    return P if isinstance(P, VPolytope) else enumerate_vertices(P)


def product(a: Polytope, b: Polytope) -> Polytope:
    """Cartesian product; H stays H when both factors are H, otherwise V."""
    if isinstance(a, HPolytope) and isinstance(b, HPolytope):
        rows = [r + (Fraction(0),) * b.d for r in a.rows]
        rows += [(r[0],) + (Fraction(0),) * a.d + r[1:] for r in b.rows]
        return HPolytope(a.d + b.d, tuple(rows))
    va, vb = as_v(a), as_v(b)
    pts = tuple(p + q for p in va.points for q in vb.points)
    return VPolytope(va.d + vb.d, pts)


def prism(base: Polytope) -> Polytope:
    seg = HPolytope.from_rows([[0, 1], [1, -1]])
    return product(base, seg if isinstance(base, HPolytope) else as_v(seg))


def pyramid(base: Polytope) -> VPolytope:
    """Cone over ``base`` with apex above its vertex centroid at height 1."""
    vb = as_v(base)
    n = len(vb.points)
    centroid = tuple(sum(p[k] for p in vb.points) / n for k in range(vb.d))
    pts = tuple(p + (Fraction(0),) for p in vb.points) + (centroid + (Fraction(1),),)
    return VPolytope(vb.d + 1, pts)


def dodecahedron() -> VPolytope:
    """Pyritohedral dodecahedron with roof parameter 1/2 (twelve planar pentagons)."""
    h = Fraction(1, 2)
    a, b = 1 + h, 1 - h * h
    pts = [list(p) for p in itertools.product([1, -1], repeat=3)]
    for s, t in itertools.product([1, -1], repeat=2):
        pts.append([0, s * a, t * b])
        pts.append([s * a, t * b, 0])
        pts.append([t * b, 0, s * a])
    return VPolytope.from_points(pts, 3)


def polar(P: Polytope) -> VPolytope:
    """Polar of a polytope containing the origin in its interior."""
    H = as_h(P)
    pts = []
    for r in H.rows:
        if r[0] <= 0:
            raise UnsupportedParameter("polar needs the origin in the interior")
        pts.append(tuple(-x / r[0] for x in r[1:]))
    return VPolytope(H.d, tuple(pts))


def icosahedron() -> VPolytope:
    """Polar of the rational dodecahedron: a combinatorial icosahedron."""
    return polar(dodecahedron())


def tetrahedron() -> VPolytope:
    return VPolytope.from_points([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]])


RP2_6 = (
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
    (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3),
)


def rp2_6():
    """Six-vertex triangulation of the real projective plane."""
    from .complex import SimplicialComplex

    return SimplicialComplex.from_facets(RP2_6, n=6)


def generate(name: str, *params) -> object:
    """Dispatch used by the CLI ``gen`` subcommand."""
    ints: List[int] = []
    for p in params:
        try:
            ints.append(int(p))
        except (TypeError, ValueError):
            raise UnsupportedParameter(f"integer parameter expected, got {p!r}") from None
    table = {
        "cube": (cube, 1),
        "simplex": (simplex, 1),
        "crosspoly": (crosspoly, 1),
        "cyclic": (cyclic, 2),
        "polygon": (polygon, 1),
        "dodecahedron": (dodecahedron, 0),
        "icosahedron": (icosahedron, 0),
        "rp2_6": (rp2_6, 0),
    }
    if name == "prism":
        _need(len(ints) == 1, "prism takes the polygon size")
        return prism(polygon(ints[0]))
    if name == "product":
        # product of two simplices of the given dimensions
        _need(len(ints) == 2, "product takes two simplex dimensions")
        return product(simplex(ints[0]), simplex(ints[1]))
    if name not in table:
        raise UnsupportedParameter(f"unknown generator {name!r}")
    fn, arity = table[name]
    _need(len(ints) == arity, f"{name} takes {arity} parameter(s)")
    return fn(*ints)
