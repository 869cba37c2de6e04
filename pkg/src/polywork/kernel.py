"""Exact rational linear algebra and linear programming.

The LP solver is a two-phase primal simplex on a dense tableau of
Fractions, using Bland's smallest-index rule so it cannot cycle. It is
slow but exact; every other module uses it at desk scale.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .errors import DimensionMismatch, EmptyPolyhedron, InputError
from .polytope import HPolytope, QMatrix, QVector, VPolytope, dot, q, qmat, qvec

ZERO = Fraction(0)
ONE = Fraction(1)


# --------------------------------------------------------------------------
# elimination

def rref(M: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    R = [[q(x) for x in row] for row in M]
    if not R:
        return R, []
    ncols = len(R[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(R):
            break
        p = next((i for i in range(r, len(R)) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        piv = R[r][c]
        if piv != 1:
            R[r] = [x / piv for x in R[r]]
        row = R[r]
        nz = [k for k in range(c, ncols) if row[k] != 0]
        for i in range(len(R)):
            if i != r:
                f = R[i][c]
                if f != 0:
                    Ri = R[i]
                    for k in nz:
                        Ri[k] -= f * row[k]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M: Sequence[Sequence]) -> int:
    """Rank of ``M`` by fraction-exact Gaussian elimination."""
    return len(rref(M)[1])


def nullspace(M: Sequence[Sequence], ncols: int | None = None) -> list[QVector]:
    """A basis of ``{y : M y = 0}``."""
    if not M:
        if ncols is None:
            raise InputError("column count needed for an empty matrix")
        return [tuple(ONE if i == j else ZERO for i in range(ncols)) for j in range(ncols)]
    R, piv = rref(M)
    n = len(R[0])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        y = [ZERO] * n
        y[f] = ONE
        for i, p in enumerate(piv):
            y[p] = -R[i][f]
        basis.append(tuple(y))
    return basis


def solve_square(M: Sequence[Sequence], rhs: Sequence) -> Optional[QVector]:
    """Solve ``M x = rhs`` for square ``M``; None if singular."""
    n = len(M)
    aug = [list(row) + [r] for row, r in zip(M, rhs)]
    R, piv = rref(aug)
    if piv != list(range(n)):
        return None
    return tuple(R[i][n] for i in range(n))


def det(M: Sequence[Sequence]) -> Fraction:
    A = [[q(x) for x in row] for row in M]
    n = len(A)
    out = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            A[c], A[p] = A[p], A[c]
            out = -out
        piv = A[c][c]
        out *= piv
        for i in range(c + 1, n):
            f = A[i][c] / piv
            if f:
                Ai, Ac = A[i], A[c]
                for k in range(c + 1, n):
                    Ai[k] -= f * Ac[k]
    return out


# --------------------------------------------------------------------------
# linear programming

class Status(str, enum.Enum):
    OPTIMAL = "Optimal"
    UNBOUNDED = "Unbounded"
    INFEASIBLE = "Infeasible"


@dataclass(frozen=True)
class LinearProgram:
    """``min c.x`` subject to either ``b + A x >= 0`` (inequality form, x free)
    or ``A x = b, x >= 0`` (standard form)."""

    A: QMatrix
    b: QVector
    c: QVector
    form: str = "inequality"

    def __post_init__(self):
        if self.form not in ("inequality", "standard"):
            raise InputError(f"unknown LP form {self.form!r}")
        if len(self.b) != len(self.A):
            raise DimensionMismatch("|b| differs from the number of constraint rows")
        for row in self.A:
            if len(row) != len(self.c):
                raise DimensionMismatch("constraint row length differs from |c|")

    @classmethod
    def make(cls, A, b, c, form="inequality") -> "LinearProgram":
        return cls(qmat(A), qvec(b), qvec(c), form)


@dataclass(frozen=True)
class LPResult:
    status: Status
    value: Optional[Fraction] = None
    point: Optional[QVector] = None


def _pivot(T: List[list], objs: List[list], r: int, j: int) -> None:
    piv = T[r][j]
    row = T[r]
    if piv != 1:
        row = [x / piv for x in row]
        T[r] = row
    nz = [k for k, x in enumerate(row) if x != 0]
    for Ti in (*T, *objs):
        if Ti is row:
            continue
        f = Ti[j]
        if f != 0:
            for k in nz:
                Ti[k] -= f * row[k]


def _bland(T, basis, obj, allowed, extra_objs=()) -> Optional[int]:
    """Run simplex iterations; return the entering column on unboundedness."""
    while True:
        j = next((k for k in allowed if obj[k] < 0), None)
        if j is None:
            return None
        best = None
        for i, Ti in enumerate(T):
            a = Ti[j]
            if a > 0:
                ratio = Ti[-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return j
        r = best[1]
        _pivot(T, [obj, *extra_objs], r, j)
        basis[r] = j


def _solve_standard(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction], c: Sequence[Fraction]) -> LPResult:
    m, s = len(A), len(c)
    T = []
    for i in range(m):
        row = list(A[i]) + [ZERO] * m + [b[i]]
        if b[i] < 0:
            row = [-x for x in row]
        row[s + i] = ONE
        T.append(row)
    basis = [s + i for i in range(m)]
    width = s + m + 1

    # phase 1: minimise the sum of artificials
    obj1 = [ZERO] * s + [ONE] * m + [ZERO]
    for Ti in T:
        obj1 = [o - t for o, t in zip(obj1, Ti)]
    obj2 = [ZERO] * width
    for k in range(s):
        obj2[k] = c[k]
    _bland(T, basis, obj1, range(s + m), extra_objs=[obj2])
    if -obj1[-1] > 0:
        return LPResult(Status.INFEASIBLE)

    # drive artificials out of the basis; rows where that fails are redundant
    i = 0
    while i < len(T):
        if basis[i] >= s:
            j = next((k for k in range(s) if T[i][k] != 0), None)
            if j is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, [obj2], i, j)
            basis[i] = j
        i += 1

    # phase 2: obj2 was carried along, so it is already in reduced form
    for i, bi in enumerate(basis):
        f = obj2[bi]
        if f != 0:
            obj2 = [o - f * t for o, t in zip(obj2, T[i])]
    if _bland(T, basis, obj2, range(s)) is not None:
        return LPResult(Status.UNBOUNDED)
    x = [ZERO] * s
    for i, bi in enumerate(basis):
        x[bi] = T[i][-1]
    x = tuple(x)
    return LPResult(Status.OPTIMAL, dot(c, x), x)


def _solve_inequality(rows: Sequence[Sequence[Fraction]], c: Sequence[Fraction]) -> LPResult:
    """min c.x s.t. rows[i][0] + rows[i][1:].x >= 0 with free x."""
    d = len(c)
    m = len(rows)
    # x = xp - xn, A xp - A xn - s = -b
    A = []
    for i, r in enumerate(rows):
        a = r[1:]
        A.append(list(a) + [-x for x in a] + [-ONE if k == i else ZERO for k in range(m)])
    b = [-r[0] for r in rows]
    cc = list(c) + [-x for x in c] + [ZERO] * m
    if m == 0:
        if any(x != 0 for x in c):
            return LPResult(Status.UNBOUNDED)
        return LPResult(Status.OPTIMAL, ZERO, (ZERO,) * d)
    res = _solve_standard(A, b, cc)
    if res.status is not Status.OPTIMAL:
        return res
    x = tuple(res.point[k] - res.point[d + k] for k in range(d))
    return LPResult(Status.OPTIMAL, dot(c, x), x)


def _push_to_vertex(rows, x, c) -> QVector:
    """Move an optimal point of a pointed region to an optimal vertex."""
    d = len(x)
    x = list(x)
    while True:
        slack = [r[0] + dot(r[1:], x) for r in rows]
        tight = [r[1:] for r, s in zip(rows, slack) if s == 0]
        ns = nullspace(tight, d)
        if not ns:
            return tuple(x)
        y = ns[0]
        cy = dot(c, y)
        neg = tuple(-v for v in y)
        dirs = [y] if cy < 0 else [neg] if cy > 0 else [y, neg]
        for direction in dirs:
            step = None
            for r, s in zip(rows, slack):
                ay = dot(r[1:], direction)
                if ay < 0 and (step is None or s / -ay < step):
                    step = s / -ay
            if step is not None:
                x = [xi + step * yi for xi, yi in zip(x, direction)]
                break
        else:  # pragma: no cover - a pointed region always blocks one way
            return tuple(x)


def solve_lp(lp: LinearProgram, lexicographic: bool = False) -> LPResult:
    """Exact optimum of ``lp``.

    For the inequality form over a pointed region the returned point is a
    vertex. With ``lexicographic=True`` it is the lexicographically smallest
    optimal point; otherwise it is whatever vertex Bland's rule lands on.
    """
    if lp.form == "standard":
        return _solve_standard(lp.A, lp.b, lp.c)
    rows = [(bi,) + tuple(ai) for ai, bi in zip(lp.A, lp.b)]
    res = _solve_inequality(rows, lp.c)
    if res.status is not Status.OPTIMAL:
        return res
    d = len(lp.c)
    if lexicographic:
        fixed = list(rows)
        v = res.value
        fixed.append((-v,) + tuple(lp.c))
        fixed.append((v,) + tuple(-x for x in lp.c))
        point = res.point
        for k in range(d):
            e = tuple(ONE if i == k else ZERO for i in range(d))
            sub = _solve_inequality(fixed, e)
            if sub.status is not Status.OPTIMAL:
                break
            point = sub.point
            fixed.append((-sub.value,) + e)
            fixed.append((sub.value,) + tuple(-x for x in e))
        return LPResult(Status.OPTIMAL, dot(lp.c, point), point)
    point = res.point
    if rows and rank([r[1:] for r in rows]) == d:
        point = _push_to_vertex(rows, point, lp.c)
    return LPResult(Status.OPTIMAL, dot(lp.c, point), point)


def minimize(P: HPolytope, c) -> LPResult:
    """Shorthand for ``min c.x`` over an H-polytope."""
    return solve_lp(LinearProgram(P.A, P.b, qvec(c)))


def is_feasible(P: HPolytope) -> bool:
    return _solve_inequality(P.rows, (ZERO,) * P.d).status is Status.OPTIMAL


def feasible_point(P: HPolytope) -> Optional[QVector]:
    return _solve_inequality(P.rows, (ZERO,) * P.d).point


def in_hull(points: Sequence[QVector], p: Sequence[Fraction]) -> bool:
    """Whether ``p`` is a convex combination of ``points`` (one LP)."""
    if not points:
        return False
    d = len(p)
    A = [[ONE] * len(points)] + [[pt[k] for pt in points] for k in range(d)]
    b = [ONE] + list(p)
    return _solve_standard(A, b, [ZERO] * len(points)).status is Status.OPTIMAL


# --------------------------------------------------------------------------
# description-level operations

def remove_redundancy(desc):
    """Drop rows (or points) one at a time when an LP certifies them redundant.

    Survivors keep their input order, so the result is deterministic; the
    operation is idempotent.
    """
    if isinstance(desc, HPolytope):
        if not desc.rows:
            raise InputError("empty H-description")
        if not is_feasible(desc):
            raise EmptyPolyhedron("H-description is infeasible")
        keep = list(range(desc.m))
        for i in range(desc.m):
            row = desc.rows[i]
            others = [desc.rows[j] for j in keep if j != i]
            res = _solve_inequality(others, row[1:])
            if res.status is Status.OPTIMAL and row[0] + res.value >= 0:
                keep.remove(i)
        return HPolytope(desc.d, tuple(desc.rows[j] for j in keep))
    if isinstance(desc, VPolytope):
        if not desc.points:
            raise InputError("empty V-description")
        keep = list(range(desc.n))
        for i in range(desc.n):
            p = desc.points[i]
            others = [desc.points[j] for j in keep if j != i]
            if p in others or in_hull(others, p):
                keep.remove(i)
        return VPolytope(desc.d, tuple(desc.points[j] for j in keep))
    raise InputError(f"expected HPolytope or VPolytope, got {type(desc).__name__}")


def implicit_equalities(P: HPolytope) -> list[int]:
    """Indices of rows that hold with equality on all of the (non-empty) ``P``."""
    x0 = feasible_point(P)
    if x0 is None:
        raise EmptyPolyhedron("H-description is infeasible")
    candidates = [i for i, s in enumerate(P.slack(x0)) if s == 0]
    eq = []
    for i in candidates:
        row = P.rows[i]
        res = _solve_inequality(P.rows, tuple(-a for a in row[1:]))
        if res.status is Status.OPTIMAL and row[0] - res.value == 0:
            eq.append(i)
    return eq


def affine_dimension(desc) -> int:
    """Dimension of the polyhedron or hull; -1 when empty."""
    if isinstance(desc, VPolytope):
        if not desc.points:
            return -1
        p0 = desc.points[0]
        return rank([[a - b for a, b in zip(p, p0)] for p in desc.points[1:]])
    if isinstance(desc, HPolytope):
        if not is_feasible(desc):
            return -1
        eq = implicit_equalities(desc)
        return desc.d - rank([desc.rows[i][1:] for i in eq]) if eq else desc.d
    raise InputError(f"expected HPolytope or VPolytope, got {type(desc).__name__}")


def is_bounded(P: HPolytope) -> bool:
    """Rank test plus one LP.

    With ``A`` of full column rank, ``{y : A y >= 0}`` is trivial iff some
    strictly positive ``lam`` has ``A^T lam = 0`` (Stiemke). Writing
    ``lam = 1 + mu`` turns that into one standard-form feasibility LP.
    """
    if not is_feasible(P):
        raise EmptyPolyhedron("H-description is infeasible")
    if P.d == 0:
        return True
    A = P.A
    if rank(A) < P.d:
        return False
    At = [[A[i][k] for i in range(P.m)] for k in range(P.d)]
    rhs = [-sum(row, ZERO) for row in At]
    res = _solve_standard(At, rhs, [ZERO] * P.m)
    return res.status is Status.OPTIMAL
