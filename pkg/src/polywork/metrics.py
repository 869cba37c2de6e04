"""Geometric diagnostics computed from H- or V-descriptions.

Most of these problems are hard in general (#P- or NP-hard); here they are
solved by explicit vertex enumeration or exhaustive search, which is fine for
the small instances this package targets.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    Budget,
    InputError,
    LowerDimensional,
    NotBounded,
    RankDeficient,
)
from .hull import enumerate_facets, enumerate_vertices, vertices_by_bases
from .kernel import (
    Status,
    _solve_standard,
    affine_dimension,
    det,
    is_bounded,
    rank,
    remove_redundancy,
    solve_square,
)
from .polytope import HPolytope, QVector, VPolytope, dot, qvec, q

ZERO = Fraction(0)
ONE = Fraction(1)


def _bounded_vertices(P: HPolytope) -> VPolytope:
    if not is_bounded(P):
        raise NotBounded("polytope required, got an unbounded polyhedron")
    return enumerate_vertices(P)


def is_degenerate(P: HPolytope) -> bool:
    """True if some vertex lies on more than ``d`` facets."""
    V = _bounded_vertices(P)
    facets = remove_redundancy(P)
    d = affine_dimension(P)
    return any(len(facets.tight_set(v)) > d for v in V.points)


def count_vertices(P: HPolytope) -> int:
    return len(_bounded_vertices(P).points)


def feasible_basis_extension(A, b, S) -> bool:
    """Is there a feasible basis of ``A x = b, x >= 0`` whose index set contains ``S``?

    ``S`` uses 0-based column indices. Decided by enumerating column bases.
    """
    A = [qvec(r) for r in A]
    b = qvec(b)
    m = len(A)
    s = len(A[0]) if A else 0
    S = sorted(set(S))
    if any(j < 0 or j >= s for j in S):
        raise InputError("index set out of range")
    if rank(A) < m:
        raise RankDeficient("A must have full row rank")
    if len(S) > m:
        return False
    rest = [j for j in range(s) if j not in S]
    for extra in itertools.combinations(rest, m - len(S)):
        B = sorted(S + list(extra))
        cols = [[A[i][j] for j in B] for i in range(m)]
        x = solve_square(cols, b)
        if x is not None and all(v >= 0 for v in x):
            return True
    return False


def is_integral(P: HPolytope) -> bool:
    return all(x.denominator == 1 for v in _bounded_vertices(P).points for x in v)


def vertex_graph(P: HPolytope) -> Tuple[List[QVector], List[Tuple[int, int]]]:
    """Vertices and edges; two vertices span an edge iff their common tight
    rows have rank ``d - 1``."""
    V = list(_bounded_vertices(P).points)
    rows = P.rows
    tight = [P.tight_set(v) for v in V]
    d = P.d
    edges = []
    for i, j in itertools.combinations(range(len(V)), 2):
        common = tight[i] & tight[j]
        if len(common) >= d - 1 and rank([rows[k][1:] for k in common]) == d - 1:
            edges.append((i, j))
    return V, edges


def diameter(P: HPolytope) -> int:
    """Graph diameter of the vertex-edge graph (0 for a single point)."""
    V, edges = vertex_graph(P)
    adj = [[] for _ in V]
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    best = 0
    for s in range(len(V)):
        dist = [-1] * len(V)
        dist[s] = 0
        dq = deque([s])
        while dq:
            u = dq.popleft()
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    dq.append(w)
        best = max(best, max(dist))
    return best


# --------------------------------------------------------------------------
# triangulations and volume

@dataclass(frozen=True)
class Triangulation:
    """Simplices as sorted index tuples into ``points``."""

    points: Tuple[QVector, ...]
    simplices: Tuple[Tuple[int, ...], ...]

    def __len__(self):
        return len(self.simplices)

    def volume(self) -> Fraction:
        return sum((simplex_volume([self.points[i] for i in s]) for s in self.simplices), ZERO)


def _orient(pts: Sequence[QVector]) -> Fraction:
    p0 = pts[0]
    return det([[a - b for a, b in zip(p, p0)] for p in pts[1:]])


def simplex_volume(pts: Sequence[QVector]) -> Fraction:
    d = len(pts) - 1
    return abs(_orient(pts)) / math.factorial(d)


def triangulate(Q: VPolytope) -> Triangulation:
    """Placing triangulation in lexicographic point order.

    The first affinely independent points form the seed simplex; each later
    point is coned over every boundary facet it sees strictly.
    """
    pts = sorted(set(Q.points))
    d = Q.d
    if affine_dimension(VPolytope(d, tuple(pts))) < d:
        raise LowerDimensional("triangulation needs a full-dimensional hull")
    seed = [0]
    for i in range(1, len(pts)):
        trial = seed + [i]
        if rank([[a - b for a, b in zip(pts[j], pts[seed[0]])] for j in trial[1:]]) == len(trial) - 1:
            seed = trial
            if len(seed) == d + 1:
                break
    simplices = [tuple(seed)]
    # boundary facet -> the vertex of its unique simplex opposite to it
    boundary: Dict[Tuple[int, ...], int] = {}
    for k in seed:
        boundary[tuple(x for x in seed if x != k)] = k
    for i in range(len(pts)):
        if i in seed:
            continue
        p = pts[i]
        visible = []
        for facet, opp in boundary.items():
            fpts = [pts[j] for j in facet]
            s_p = _orient(fpts + [p])
            s_o = _orient(fpts + [pts[opp]])
            if s_p != 0 and (s_p > 0) != (s_o > 0):
                visible.append(facet)
        for facet in visible:
            del boundary[facet]
            simplex = tuple(sorted(facet + (i,)))
            simplices.append(simplex)
            for k in facet:
                sub = tuple(sorted(x for x in simplex if x != k))
                if sub in boundary:
                    del boundary[sub]
                else:
                    boundary[sub] = k
    return Triangulation(tuple(pts), tuple(simplices))


def volume(P, with_flag: bool = False):
    """Exact volume: sum of ``|det| / d!`` over a placing triangulation.

    Lower-dimensional input has volume 0; pass ``with_flag=True`` to get
    ``(volume, full_dimensional)``.
    """
    if isinstance(P, HPolytope):
        Q = _bounded_vertices(P)
    elif isinstance(P, VPolytope):
        Q = P
    else:
        raise InputError(f"expected HPolytope or VPolytope, got {type(P).__name__}")
    full = affine_dimension(Q) == Q.d
    vol = triangulate(Q).volume() if full else ZERO
    return (vol, full) if with_flag else vol


def _proper_pair(a: Sequence[int], b: Sequence[int], pts: Sequence[QVector]) -> bool:
    """conv(a) and conv(b) meet in conv(a & b): one LP on barycentric weights."""
    only_a = [i for i in a if i not in b]
    if not only_a or all(i in a for i in b):
        return True
    d = len(pts[0])
    na, nb = len(a), len(b)
    # lam over a, mu over b; sum lam = sum mu = 1; sum lam p - sum mu p = 0
    A = [[ONE] * na + [ZERO] * nb, [ZERO] * na + [ONE] * nb]
    for k in range(d):
        A.append([pts[i][k] for i in a] + [-pts[j][k] for j in b])
    rhs = [ONE, ONE] + [ZERO] * d
    c = [-ONE if i in only_a else ZERO for i in a] + [ZERO] * nb
    res = _solve_standard(A, rhs, c)
    return res.status is not Status.OPTIMAL or res.value == 0


def full_dimensional_simplices(Q: VPolytope) -> List[Tuple[int, ...]]:
    pts = sorted(set(Q.points))
    d = Q.d
    return [s for s in itertools.combinations(range(len(pts)), d + 1) if _orient([pts[i] for i in s]) != 0]


def min_triangulation(Q: VPolytope, K: int, budget: Optional[int] = None) -> bool:
    """Is there a triangulation with at most ``K`` simplices on the vertices of ``Q``?

    Depth-first search: start with the simplices through the first vertex,
    then repeatedly pick an interior ridge that has a simplex on one side only
    and branch over compatible simplices closing it from the other side.
    Candidates are tried in decreasing volume order.
    """
    Q = remove_redundancy(VPolytope(Q.d, tuple(sorted(set(Q.points)))))
    pts = sorted(Q.points)
    d = Q.d
    if affine_dimension(Q) < d:
        raise LowerDimensional("min_triangulation needs a full-dimensional hull")
    if K <= 0:
        return False
    total = volume(Q)
    H = enumerate_facets(VPolytope(d, tuple(pts)))
    facet_sets = [frozenset(i for i, p in enumerate(pts) if r[0] + dot(r[1:], p) == 0) for r in H.rows]
    cands = full_dimensional_simplices(VPolytope(d, tuple(pts)))
    vols = {s: simplex_volume([pts[i] for i in s]) for s in cands}
    cands.sort(key=lambda s: (-vols[s], s))
    compat_cache: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], bool] = {}

    def compatible(s, t):
        key = (s, t) if s < t else (t, s)
        if key not in compat_cache:
            compat_cache[key] = _proper_pair(s, t, pts)
        return compat_cache[key]

    def on_boundary(ridge):
        rs = frozenset(ridge)
        return any(rs <= f for f in facet_sets)

    def side(ridge, apex):
        return _orient([pts[i] for i in ridge] + [pts[apex]]) > 0

    counter = Budget("min_triangulation", budget)

    def search(chosen, vol):
        counter.tick()
        if vol == total:
            return True
        if len(chosen) >= K:
            return False
        # an interior ridge used by exactly one chosen simplex
        used: Dict[Tuple[int, ...], List[int]] = {}
        for s in chosen:
            for k in s:
                ridge = tuple(x for x in s if x != k)
                used.setdefault(ridge, []).append(k)
        open_ridge = None
        for ridge, apexes in used.items():
            if len(apexes) == 1 and not on_boundary(ridge):
                open_ridge = (ridge, apexes[0])
                break
        if open_ridge is None:  # pragma: no cover - covered volume is then complete
            return False
        ridge, apex = open_ridge
        apex_side = side(ridge, apex)
        for t in cands:
            if t in chosen or not set(ridge) <= set(t):
                continue
            w = next(x for x in t if x not in ridge)
            if side(ridge, w) == apex_side:
                continue
            if vol + vols[t] > total:
                continue
            if all(compatible(t, s) for s in chosen):
                if search(chosen + [t], vol + vols[t]):
                    return True
        return False

    for t in cands:
        if 0 in t and search([t], vols[t]):
            return True
    return False


# --------------------------------------------------------------------------
# vertex objectives

def optimal_vertex(P: HPolytope, c) -> Tuple[object, Optional[QVector]]:
    """Minimum of ``c . v`` over the vertices of ``P`` (not over ``P``).

    Returns ``(math.inf, None)`` when ``P`` has no vertex. Ties go to the
    lexicographically smallest vertex. Unbounded ``P`` is handled by basis
    enumeration, which is exponential.
    """
    c = qvec(c)
    V = vertices_by_bases(P).points
    if not V:
        return math.inf, None
    best = min(V, key=lambda v: (dot(c, v), v))
    return dot(c, best), best


def vertex_with_value(P: HPolytope, c, C) -> bool:
    c = qvec(c)
    C = q(C)
    return any(dot(c, v) == C for v in vertices_by_bases(P).points)
