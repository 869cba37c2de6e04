import random
from itertools import product as iproduct

import pytest
from hypothesis import given, strategies as st

from polywork import generators as gen
from polywork.errors import DimensionMismatch, NotBounded
from polywork.hull import contains, enumerate_facets, enumerate_vertices, vertices_by_bases, verify
from polywork.kernel import rank, remove_redundancy
from polywork.polytope import HPolytope, VPolytope, dot

import corpus


def test_cube_vertices():
    V = enumerate_vertices(gen.cube(3))
    assert V.point_set() == frozenset(iproduct((0, 1), repeat=3))
    assert list(V.points) == sorted(V.points)


def test_hexagon_squared_has_36_vertices():
    P = gen.as_h(gen.product(gen.hexagon(), gen.hexagon()))
    assert P.m == 12 and P.d == 4
    assert len(enumerate_vertices(P).points) == 36
    assert len(vertices_by_bases(P).points) == 36


def test_simplex_vertices():
    for d in range(1, 6):
        assert len(enumerate_vertices(gen.simplex(d)).points) == d + 1


def test_facet_counts():
    assert enumerate_facets(gen.cube_vertices(3)).m == 6
    assert enumerate_facets(gen.crosspoly(3)).m == 8
    assert enumerate_facets(gen.cyclic(4, 8)).m == 20


def test_unbounded_rejected():
    with pytest.raises(NotBounded):
        enumerate_vertices(HPolytope.from_rows([[0, 1, 0], [0, 0, 1]]))


def test_lower_dimensional_facets():
    seg = VPolytope.from_points([[0, 0, 0], [1, 1, 0]])
    H = enumerate_facets(seg)
    assert enumerate_vertices(H).point_set() == seg.point_set()


def test_verify_examples():
    assert verify(gen.cube(3), gen.cube_vertices(3))
    seven = VPolytope(3, gen.cube_vertices(3).points[:7])
    assert not verify(gen.cube(3), seven)
    assert not verify(gen.cube(3), gen.crosspoly(3))
    with pytest.raises(DimensionMismatch):
        verify(gen.cube(3), gen.cube_vertices(2))


def test_contains_examples():
    big = HPolytope.from_rows([[1, 1, 0, 0], [1, -1, 0, 0], [1, 0, 1, 0], [1, 0, -1, 0],
                               [1, 0, 0, 1], [1, 0, 0, -1]])
    corners = VPolytope.from_points(list(iproduct((-1, 1), repeat=3)))
    assert contains(big, corners)
    assert not contains(big, gen.crosspoly(3))
    assert contains(gen.crosspoly_h(3), corners)


def test_round_trip_on_corpus():
    for name, P in corpus.polytopes().items():
        V = enumerate_vertices(P)
        H = enumerate_facets(V)
        assert enumerate_vertices(H).point_set() == V.point_set(), name
        assert verify(P, V) and verify(H, V), name


def test_facets_tight_at_d_independent_vertices():
    for name in ("cube3", "crosspoly4", "dodecahedron", "cyclic4_7"):
        V = enumerate_vertices(corpus.polytopes()[name])
        H = enumerate_facets(V)
        for row in H.rows:
            tight = [(1,) + p for p in V.points if row[0] + dot(row[1:], p) == 0]
            assert rank(tight) == V.d, name


def test_product_of_polygons_count():
    for k, m in ((1, 5), (2, 3), (2, 4)):
        P = gen.polygon(m)
        for _ in range(k - 1):
            P = gen.product(P, gen.polygon(m))
        assert len(enumerate_vertices(gen.as_h(P)).points) == m ** k


pts = st.lists(st.tuples(*[st.integers(-3, 3)] * 3), min_size=4, max_size=14)


@given(pts)
def test_round_trip_random(points):
    V = VPolytope.from_points(points)
    irr = remove_redundancy(V)
    back = enumerate_vertices(enumerate_facets(V))
    assert back.point_set() == irr.point_set()


def test_vertex_enumeration_engines_agree():
    rng = random.Random(5)
    for _ in range(15):
        V = VPolytope.from_points([[rng.randint(-5, 5) for _ in range(3)] for _ in range(9)])
        H = enumerate_facets(V)
        if H.d == 3 and all(len(r) == 4 for r in H.rows):
            a = enumerate_vertices(H).point_set()
            assert a == vertices_by_bases(H).point_set()
