"""H- to V-description conversion and back, plus verification and containment.

Both directions run the double description method on an integer cone:

* vertices of ``{x : b + A x >= 0}`` are the extreme rays of the
  homogenised cone ``{(t, x) : b t + A x >= 0, t >= 0}`` with ``t > 0``;
* facets of ``conv(V)`` are the extreme rays of ``{(b, a) : b + a . v >= 0}``.

Rays are kept as primitive integer tuples and their zero sets as int
bitmasks, so the inner loops never touch Fractions.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import List, Sequence, Tuple

from .errors import DimensionMismatch, EmptyPolyhedron, InputError, NotBounded
from .kernel import in_hull, is_bounded, is_feasible, nullspace, rank, rref, solve_square
from .polytope import HPolytope, VPolytope, canonical_row, primitive

IntRay = Tuple[int, ...]


def _prim(v: Sequence[int]) -> IntRay:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    if g > 1:
        return tuple(x // g for x in v)
    return tuple(v)


def _idot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def extreme_rays(M: Sequence[Sequence[int]]) -> List[Tuple[IntRay, int]]:
    """Extreme rays of the pointed cone ``{y : M y >= 0}``.

    Constraints are inserted in row order after an initial simplicial cone
    built from the first linearly independent rows. Returns pairs
    ``(ray, zero_set)`` where bit ``i`` of ``zero_set`` is set when row ``i``
    vanishes on the ray. Raises ``ValueError`` when the cone has lineality.
    """
    M = [tuple(int(x) for x in row) for row in M]
    if not M:
        raise ValueError("no constraints: the cone is the whole space")
    dim = len(M[0])
    basis = _initial_rows(M, dim)
    if len(basis) < dim:
        raise ValueError("cone has a non-trivial lineality space")
    # columns of the inverse of M[basis] generate the initial simplicial cone
    B = [M[i] for i in basis]
    rays: List[Tuple[IntRay, int]] = []
    for k in range(dim):
        e = [Fraction(int(j == k)) for j in range(dim)]
        col = solve_square(B, e)
        den = 1
        for x in col:
            den = den * x.denominator // math.gcd(den, x.denominator)
        ray = _prim([int(x * den) for x in col])
        rays.append((ray, 0))
    # ray k is tight on every basis row except the k-th
    rays = [(r, sum(1 << basis[j] for j in range(dim) if j != k)) for k, (r, _) in enumerate(rays)]
    in_basis = set(basis)
    for i, row in enumerate(M):
        if i in in_basis:
            continue
        vals = [_idot(row, r) for r, _ in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zer = [k for k, v in enumerate(vals) if v == 0]
        new = [rays[k] for k in pos] + [(rays[k][0], rays[k][1] | (1 << i)) for k in zer]
        if neg and pos:
            zsets = [z for _, z in rays]
            for p in pos:
                rp, zp = rays[p]
                for n in neg:
                    rn, zn = rays[n]
                    common = zp & zn
                    if _adjacent(common, p, n, zsets):
                        sp, sn = vals[p], vals[n]
                        ray = _prim([sp * a - sn * b for a, b in zip(rn, rp)])
                        new.append((ray, common | (1 << i)))
        rays = new
    return rays


def _adjacent(common: int, p: int, n: int, zsets: Sequence[int]) -> bool:
    for k, z in enumerate(zsets):
        if k != p and k != n and (z & common) == common:
            return False
    return True


def _initial_rows(M, dim) -> List[int]:
    chosen: List[int] = []
    rows: list = []
    for i, row in enumerate(M):
        if rank(rows + [list(row)]) > len(rows):
            rows.append(list(row))
            chosen.append(i)
            if len(chosen) == dim:
                break
    return chosen


# --------------------------------------------------------------------------

def _int_rows(P: HPolytope) -> List[IntRay]:
    return [primitive(r) for r in P.rows]


def enumerate_vertices(P: HPolytope) -> VPolytope:
    """Vertex set of a bounded H-polytope, in lexicographic order.

    Raises EmptyPolyhedron for infeasible input and NotBounded when the
    polyhedron has a recession direction.
    """
    if not is_feasible(P):
        raise EmptyPolyhedron("H-description is infeasible")
    if P.d == 0:
        return VPolytope(0, ((),))
    rows = _int_rows(P)
    # homogenising row t >= 0 goes last so the user's order drives insertion
    M = rows + [(1,) + (0,) * P.d]
    try:
        rays = extreme_rays(M)
    except ValueError:
        raise NotBounded("polyhedron contains a line") from None
    pts = set()
    for ray, _ in rays:
        t = ray[0]
        if t == 0:
            raise NotBounded("polyhedron has a recession ray")
        pts.add(tuple(Fraction(x, t) for x in ray[1:]))
    return VPolytope(P.d, tuple(sorted(pts)))


def vertices_by_bases(P: HPolytope) -> VPolytope:
    """Brute-force vertex enumeration: solve every d-subset of rows.

    Works for unbounded polyhedra too (returns only the vertices). Exponential;
    kept as an independent cross-check of the double description code.
    """
    d = P.d
    pts = set()
    A = P.A
    for S in itertools.combinations(range(P.m), d):
        x = solve_square([A[i] for i in S], [-P.rows[i][0] for i in S])
        if x is not None and P.contains_point(x):
            pts.add(x)
    return VPolytope(d, tuple(sorted(pts)))


def affine_hull(Q: VPolytope) -> Tuple[List[int], List[Tuple[Fraction, ...]]]:
    """Pivot coordinates spanning the hull and its defining equations.

    Returns ``(coords, equations)`` where projecting onto ``coords`` is
    injective on ``aff(Q)`` and each equation row ``(c, w)`` means
    ``c + w . x = 0`` on ``aff(Q)``.
    """
    p0 = Q.points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in Q.points[1:]]
    coords = rref(diffs)[1] if diffs else []
    lifted = [[Fraction(1)] + list(p) for p in Q.points]
    eqs = [canonical_row(v, equality=True) for v in nullspace(lifted)]
    return coords, eqs


def enumerate_facets(Q: VPolytope) -> HPolytope:
    """Irredundant H-description of ``conv(Q)``.

    Full-dimensional input gives one row per facet. Otherwise the affine hull
    equations come first, each as a pair of opposite inequalities, followed by
    the facets relative to the hull. Rows are canonical and sorted.
    """
    if not Q.points:
        raise InputError("empty V-description")
    coords, eqs = affine_hull(Q)
    k = len(coords)
    rows = []
    for e in eqs:
        rows.append(e)
        rows.append(tuple(-x for x in e))
    facets = set()
    if k > 0:
        proj = [[p[c] for c in coords] for p in Q.points]
        M = [primitive([Fraction(1)] + row) for row in proj]
        for ray, _ in extreme_rays(M):
            full = [0] * (Q.d + 1)
            full[0] = ray[0]
            for j, c in enumerate(coords):
                full[c + 1] = ray[j + 1]
            facets.add(tuple(Fraction(x) for x in full))
    rows.extend(sorted(facets))
    return HPolytope(Q.d, tuple(rows))


def _check_dims(P, Q):
    if P.d != Q.d:
        raise DimensionMismatch(f"ambient dimensions differ: {P.d} vs {Q.d}")


def verify(P: HPolytope, Q: VPolytope) -> bool:
    """Whether the solution set of ``P`` equals ``conv(Q)``.

    ``Q`` inside ``P`` is checked by substitution, the converse by enumerating
    the vertices of ``P`` (exponential in general).
    """
    _check_dims(P, Q)
    if not Q.points:
        return not is_feasible(P)
    if not all(P.contains_point(x) for x in Q.points):
        return False
    try:
        V = enumerate_vertices(P)
    except NotBounded:
        return False
    qs = Q.point_set()
    return all(v in qs for v in V.points)


def contains(P: HPolytope, Q: VPolytope) -> bool:
    """Whether ``P`` is a subset of ``conv(Q)``: one LP per vertex of ``P``."""
    _check_dims(P, Q)
    if not is_feasible(P):
        return True
    if not is_bounded(P):
        raise NotBounded("containment needs a bounded P")
    pts = list(Q.point_set())
    return all(v in Q.point_set() or in_hull(pts, v) for v in enumerate_vertices(P).points)
