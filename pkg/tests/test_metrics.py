import math
import random
from fractions import Fraction as Q
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from polywork import generators as gen
from polywork.errors import LowerDimensional, NotBounded, RankDeficient, SearchBudgetExceeded
from polywork.kernel import LinearProgram, solve_lp
from polywork.metrics import (
    count_vertices,
    diameter,
    feasible_basis_extension,
    full_dimensional_simplices,
    is_degenerate,
    is_integral,
    min_triangulation,
    optimal_vertex,
    simplex_volume,
    triangulate,
    vertex_with_value,
    volume,
)
from polywork.polytope import HPolytope, VPolytope

import corpus


def test_degeneracy():
    assert not is_degenerate(gen.cube(3))
    assert is_degenerate(gen.as_h(gen.pyramid(gen.polygon(4))))
    assert not is_degenerate(gen.simplex(3))


def test_degeneracy_families():
    for a in range(1, 3):
        for b in range(1, 3):
            assert not is_degenerate(gen.as_h(gen.product(gen.simplex(a), gen.simplex(b))))
    assert is_degenerate(gen.as_h(gen.pyramid(gen.cube_vertices(3))))
    assert is_degenerate(gen.as_h(gen.pyramid(gen.polygon(5))))


def test_count_vertices():
    assert count_vertices(gen.cube(3)) == 8
    assert count_vertices(gen.as_h(gen.product(gen.hexagon(), gen.hexagon()))) == 36
    assert count_vertices(gen.simplex(4)) == 5
    with pytest.raises(NotBounded):
        count_vertices(HPolytope.from_rows([[0, 1]]))


def test_feasible_basis_extension():
    assert feasible_basis_extension([[1, 1, 1]], [1], [0])
    assert feasible_basis_extension([[1, 1, 0], [0, 1, 1]], [1, 1], [0, 2])
    assert not feasible_basis_extension([[1, -1]], [-1], [0])
    with pytest.raises(RankDeficient):
        feasible_basis_extension([[1, 1], [2, 2]], [1, 2], [0])


def test_integrality():
    assert is_integral(gen.cube(3))
    assert not is_integral(gen.cube(3).translate([Q(1, 2), 0, 0]))
    assert is_integral(gen.simplex(3))


def test_diameter():
    assert diameter(gen.cube(3)) == 3
    assert diameter(gen.as_h(gen.hexagon())) == 3
    for d in range(1, 7):
        assert diameter(gen.cube(d)) == d
        assert diameter(gen.simplex(d)) == 1


def _valid(T):
    d = len(T.points[0])
    for s, t in combinations(T.simplices, 2):
        from polywork.metrics import _proper_pair

        assert _proper_pair(s, t, T.points)
    for s in T.simplices:
        assert simplex_volume([T.points[i] for i in s]) > 0
        assert len(s) == d + 1


def test_triangulate_examples():
    T = triangulate(gen.cube_vertices(2))
    assert len(T) == 2 and T.volume() == 1
    T = triangulate(gen.cube_vertices(3))
    assert len(T) in (5, 6) and T.volume() == 1
    _valid(T)
    assert len(triangulate(gen.simplex_vertices(3))) == 1
    with pytest.raises(LowerDimensional):
        triangulate(VPolytope.from_points([[0, 0], [1, 1], [2, 2]]))


def test_triangulation_valid_on_corpus():
    from polywork.generators import as_v

    for name in ("crosspoly3", "prism5", "icosahedron", "simplex2x2"):
        Q_ = as_v(corpus.polytopes()[name])
        T = triangulate(Q_)
        _valid(T)
        assert T.volume() == volume(Q_)


def test_min_triangulation():
    sq = gen.cube_vertices(2)
    assert min_triangulation(sq, 2)
    assert not min_triangulation(sq, 1)
    c3 = gen.cube_vertices(3)
    assert len(full_dimensional_simplices(c3)) == 58
    assert min_triangulation(c3, 5)
    assert not min_triangulation(c3, 4)
    with pytest.raises(SearchBudgetExceeded):
        min_triangulation(c3, 4, budget=5)


def test_min_triangulation_monotone():
    P = gen.as_v(gen.prism(gen.polygon(3)))
    k = len(triangulate(P))
    assert min_triangulation(P, k)
    answers = [min_triangulation(P, K) for K in range(1, k + 2)]
    assert answers == sorted(answers)


def test_volume_anchors():
    assert volume(gen.cube(3)) == 1
    assert volume(gen.simplex(3)) == Q(1, 6)
    for d in range(1, 6):
        assert volume(gen.simplex(d)) == Q(1, math.factorial(d))
    assert volume(gen.crosspoly(3)) == Q(4, 3)
    assert volume(gen.crosspoly_h(3)) == Q(4, 3)
    flat = VPolytope.from_points([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    assert volume(flat, with_flag=True) == (0, False)


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=3, max_size=8),
       st.tuples(st.integers(-5, 5), st.integers(-5, 5)), st.integers(1, 3))
def test_volume_translation_and_scaling(points, t, lam):
    V = VPolytope.from_points(points)
    v0 = volume(V)
    assert volume(V.translate(t)) == v0
    assert volume(V.scale(lam)) == v0 * lam ** 2


def test_volume_independent_of_order():
    rng = random.Random(3)
    V = gen.as_v(corpus.polytopes()["crosspoly4"])
    for _ in range(3):
        pts = list(V.points)
        rng.shuffle(pts)
        assert volume(VPolytope(V.d, tuple(pts))) == Q(2 ** 4, math.factorial(4))


def test_optimal_vertex():
    assert optimal_vertex(gen.cube(3), [1, 1, 1]) == (0, (0, 0, 0))
    orthant = HPolytope.from_rows([[0, 1, 0], [0, 0, 1]])
    assert optimal_vertex(orthant, [-1, -1]) == (0, (0, 0))
    assert optimal_vertex(gen.cube(2), [1, 0]) == (0, (0, 0))
    halfplane = HPolytope.from_rows([[0, 1, 0]])
    assert optimal_vertex(halfplane, [1, 0])[0] == math.inf


def test_optimal_vertex_matches_lp():
    rng = random.Random(11)
    for name, P in corpus.polytopes().items():
        c = [rng.randint(-4, 4) for _ in range(P.d)]
        r = solve_lp(LinearProgram.make(P.A, P.b, c))
        assert optimal_vertex(P, c)[0] == r.value, name


def test_vertex_with_value():
    assert vertex_with_value(gen.cube(3), [1, 1, 1], 2)
    assert not vertex_with_value(gen.cube(3), [1, 1, 1], Q(3, 2))
    assert vertex_with_value(gen.simplex(3), [1, 1, 1], 1)
