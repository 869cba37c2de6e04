"""Exact rational scalars, vectors and the two polytope descriptions.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator). Vectors and matrices are plain tuples of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from .errors import DimensionMismatch, InputError

QVector = Tuple[Fraction, ...]
QMatrix = Tuple[QVector, ...]


def q(x) -> Fraction:
    """Coerce ``x`` to an exact rational.

    Strings like ``"3/4"`` and ``"-2"`` are accepted; floats go through their
    shortest decimal repr so ``0.1`` becomes ``1/10``.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError("booleans are not numbers here")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise InputError(f"non-finite value {x!r}")
        return Fraction(repr(x))
    if isinstance(x, (str, Decimal)):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse rational {x!r}") from exc
    raise InputError(f"cannot convert {type(x).__name__} to a rational")


def qvec(xs: Iterable) -> QVector:
    return tuple(q(x) for x in xs)


def qmat(rows: Iterable[Iterable]) -> QMatrix:
    out = tuple(qvec(r) for r in rows)
    if out and len({len(r) for r in out}) != 1:
        raise InputError("matrix rows have different lengths")
    return out


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def fmt_q(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def primitive(row: Sequence[Fraction]) -> Tuple[int, ...]:
    """Scale a rational row to coprime integers, keeping its orientation."""
    den = 1
    for x in row:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


def canonical_row(row: Sequence[Fraction], equality: bool = False) -> QVector:
    ints = primitive(row)
    if equality:
        for v in ints[1:]:
            if v:
                if v < 0:
                    ints = tuple(-w for w in ints)
                break
    return tuple(Fraction(v) for v in ints)


@dataclass(frozen=True)
class HPolytope:
    """Solution set of ``b + a . x >= 0`` over the rows ``(b, a_1, ..., a_d)``."""

    d: int
    rows: QMatrix

    def __post_init__(self):
        for r in self.rows:
            if len(r) != self.d + 1:
                raise DimensionMismatch(
                    f"row of length {len(r)} in an H-description of dimension {self.d}"
                )

    @classmethod
    def from_rows(cls, rows, d: int | None = None) -> "HPolytope":
        rows = qmat(rows)
        if d is None:
            if not rows:
                raise InputError("dimension needed for an empty H-description")
            d = len(rows[0]) - 1
        return cls(d, rows)

    @classmethod
    def from_Ab(cls, A, b) -> "HPolytope":
        """Build from ``A x <= b`` (the usual textbook orientation)."""
        A = qmat(A)
        b = qvec(b)
        if len(A) != len(b):
            raise DimensionMismatch("A and b disagree on the number of rows")
        d = len(A[0]) if A else 0
        return cls(d, tuple((bi,) + tuple(-a for a in ai) for ai, bi in zip(A, b)))

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def b(self) -> QVector:
        return tuple(r[0] for r in self.rows)

    @property
    def A(self) -> QMatrix:
        return tuple(r[1:] for r in self.rows)

    def slack(self, x: Sequence[Fraction]) -> QVector:
        return tuple(r[0] + dot(r[1:], x) for r in self.rows)

    def contains_point(self, x: Sequence[Fraction]) -> bool:
        return all(s >= 0 for s in self.slack(x))

    def tight_set(self, x: Sequence[Fraction]) -> frozenset:
        return frozenset(i for i, s in enumerate(self.slack(x)) if s == 0)

    def canonical(self) -> "HPolytope":
        """Rows scaled to coprime integers with exact duplicates removed (first kept)."""
        seen = set()
        out = []
        for r in self.rows:
            c = canonical_row(r)
            if c not in seen:
                seen.add(c)
                out.append(c)
        return HPolytope(self.d, tuple(out))

    def translate(self, t: Sequence) -> "HPolytope":
        t = qvec(t)
        return HPolytope(self.d, tuple((r[0] - dot(r[1:], t),) + r[1:] for r in self.rows))

    def scale(self, lam) -> "HPolytope":
        lam = q(lam)
        if lam <= 0:
            raise InputError("scale factor must be positive")
        return HPolytope(self.d, tuple((r[0] * lam,) + r[1:] for r in self.rows))


@dataclass(frozen=True)
class VPolytope:
    """Convex hull of ``points``."""

    d: int
    points: QMatrix

    def __post_init__(self):
        for p in self.points:
            if len(p) != self.d:
                raise DimensionMismatch(
                    f"point of length {len(p)} in a V-description of dimension {self.d}"
                )

    @classmethod
    def from_points(cls, points, d: int | None = None) -> "VPolytope":
        pts = qmat(points)
        if d is None:
            if not pts:
                raise InputError("dimension needed for an empty point set")
            d = len(pts[0])
        return cls(d, pts)

    @property
    def n(self) -> int:
        return len(self.points)

    def canonical(self) -> "VPolytope":
        """Distinct points in lexicographic order."""
        return VPolytope(self.d, tuple(sorted(set(self.points))))

    def point_set(self) -> frozenset:
        return frozenset(self.points)

    def translate(self, t: Sequence) -> "VPolytope":
        t = qvec(t)
        return VPolytope(self.d, tuple(tuple(a + b for a, b in zip(p, t)) for p in self.points))

    def scale(self, lam) -> "VPolytope":
        lam = q(lam)
        return VPolytope(self.d, tuple(tuple(a * lam for a in p) for p in self.points))

    def transform(self, M, t=None) -> "VPolytope":
        """Image under ``x -> M x + t``."""
        M = qmat(M)
        t = qvec(t) if t is not None else (Fraction(0),) * len(M)
        pts = tuple(tuple(dot(row, p) + ti for row, ti in zip(M, t)) for p in self.points)
        return VPolytope(len(M), pts)
