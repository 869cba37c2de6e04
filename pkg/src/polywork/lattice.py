"""Face lattices from vertex-facet incidences.

Faces are vertex sets stored as int bitmasks (bit ``v`` = vertex ``v``), so
meets are ``&`` and face identity is integer equality.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import InputError
from .hull import enumerate_vertices
from .kernel import is_bounded, remove_redundancy
from .errors import NotBounded
from .polytope import HPolytope


def bits(mask: int) -> List[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(items: Iterable[int]) -> int:
    m = 0
    for i in items:
        m |= 1 << i
    return m


def _lex_key(mask: int) -> Tuple[int, ...]:
    return tuple(bits(mask))


@dataclass(frozen=True)
class IncidenceMatrix:
    """0/1 vertex-facet incidences; ``rows[v]`` is the facet bitmask of vertex ``v``."""

    n: int
    m: int
    rows: Tuple[int, ...]

    @classmethod
    def from_lists(cls, table: Sequence[Sequence[int]]) -> "IncidenceMatrix":
        n = len(table)
        m = len(table[0]) if table else 0
        if any(len(r) != m for r in table):
            raise InputError("incidence rows have different lengths")
        rows = []
        for r in table:
            if any(x not in (0, 1, True, False) for x in r):
                raise InputError("incidence entries must be 0 or 1")
            rows.append(mask_of(j for j, x in enumerate(r) if x))
        return cls(n, m, tuple(rows))

    @classmethod
    def from_text(cls, text: str) -> "IncidenceMatrix":
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        table = []
        for ln in lines:
            if set(ln) - {"0", "1"}:
                raise InputError(f"bad incidence line {ln!r}")
            table.append([int(ch) for ch in ln])
        return cls.from_lists(table)

    def to_text(self) -> str:
        return "".join(
            "".join("1" if (r >> j) & 1 else "0" for j in range(self.m)) + "\n" for r in self.rows
        )

    def to_lists(self) -> List[List[int]]:
        return [[(r >> j) & 1 for j in range(self.m)] for r in self.rows]

    @property
    def cols(self) -> Tuple[int, ...]:
        """Vertex bitmask of each facet."""
        return tuple(mask_of(v for v in range(self.n) if (self.rows[v] >> j) & 1) for j in range(self.m))

    @property
    def alpha(self) -> int:
        return sum(popcount(r) for r in self.rows)

    def transpose(self) -> "IncidenceMatrix":
        return IncidenceMatrix(self.m, self.n, self.cols)

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "IncidenceMatrix":
        """Matrix ``B`` with ``B[row_perm[i]][col_perm[j]] = A[i][j]``."""
        out = [0] * self.n
        for i, r in enumerate(self.rows):
            out[row_perm[i]] = mask_of(col_perm[j] for j in bits(r))
        return IncidenceMatrix(self.n, self.m, tuple(out))

    def validate(self) -> List[str]:
        """The cheap structural checks; returns a list of problems (empty if fine).

        Whether the matrix comes from an actual polytope is not checked.
        """
        problems = []
        full_row = (1 << self.m) - 1
        full_col = (1 << self.n) - 1
        if len(set(self.rows)) != self.n:
            problems.append("duplicate rows")
        if len(set(self.cols)) != self.m:
            problems.append("duplicate columns")
        if any(r == full_row for r in self.rows):
            problems.append("all-ones row")
        if any(c == full_col for c in self.cols):
            problems.append("all-ones column")
        return problems


@dataclass(frozen=True)
class FaceLattice:
    """Hasse diagram of a face lattice.

    ``faces[i]`` is a vertex bitmask, ``dims[i]`` its dimension and
    ``covers[i]`` the indices of the faces it covers (one dimension lower).
    Faces are sorted by dimension, then lexicographically by vertex list.
    """

    n: int
    faces: Tuple[int, ...]
    dims: Tuple[int, ...]
    covers: Tuple[Tuple[int, ...], ...]
    work: int = field(default=0, compare=False)

    @property
    def phi(self) -> int:
        return len(self.faces)

    @property
    def dim(self) -> int:
        return max(self.dims)

    @property
    def rank(self) -> int:
        return self.dim + 1

    def index(self) -> Dict[int, int]:
        return {f: i for i, f in enumerate(self.faces)}

    def of_dim(self, k: int) -> List[int]:
        return [f for f, d in zip(self.faces, self.dims) if d == k]

    def f_vector(self, full: bool = False) -> Tuple[int, ...]:
        return f_vector(self, full)

    def incidence(self) -> IncidenceMatrix:
        """Atom/coatom incidences, vertices numbered by their atom bit."""
        atoms = self.of_dim(0)
        coatoms = self.of_dim(self.dim - 1)
        verts = sorted(bits(a)[0] for a in atoms)
        pos = {v: i for i, v in enumerate(verts)}
        rows = [0] * len(verts)
        for j, F in enumerate(coatoms):
            for v in bits(F):
                rows[pos[v]] |= 1 << j
        return IncidenceMatrix(len(verts), len(coatoms), tuple(rows))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "nodes": {
                str(i): {"dim": d, "vertices": bits(f), "covers": list(c)}
                for i, (f, d, c) in enumerate(zip(self.faces, self.dims, self.covers))
            },
        }

    @classmethod
    def from_json(cls, data) -> "FaceLattice":
        if isinstance(data, str):
            data = json.loads(data)
        nodes = data.get("nodes", data) if isinstance(data, dict) else None
        if not isinstance(nodes, dict):
            raise InputError("lattice JSON must map node ids to {dim, vertices, covers}")
        try:
            ids = sorted(nodes, key=lambda k: int(k))
            pos = {k: i for i, k in enumerate(ids)}
            faces = tuple(mask_of(nodes[k]["vertices"]) for k in ids)
            dims = tuple(int(nodes[k]["dim"]) for k in ids)
            covers = tuple(tuple(pos[str(c)] for c in nodes[k]["covers"]) for k in ids)
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(f"malformed lattice JSON: {exc}") from exc
        n = data.get("n") if "nodes" in data else None
        if n is None:
            n = max((f.bit_length() for f in faces), default=0)
        return cls(int(n), faces, dims, covers)


def _assemble(n: int, faces_dim: Dict[int, int], lower: Dict[int, set], work: int) -> FaceLattice:
    order = sorted(faces_dim, key=lambda f: (faces_dim[f], _lex_key(f)))
    idx = {f: i for i, f in enumerate(order)}
    covers = tuple(tuple(sorted(idx[g] for g in lower.get(f, ()))) for f in order)
    return FaceLattice(n, tuple(order), tuple(faces_dim[f] for f in order), covers, work)


def build_lattice(A: IncidenceMatrix) -> FaceLattice:
    """Full Hasse diagram, top-down.

    The faces covered by a face ``F`` are the inclusion-maximal proper
    intersections of ``F`` with the facets. ``work`` counts the elementary
    set operations performed.
    """
    facets = A.cols
    top = (1 << A.n) - 1
    level = {top}
    levels = [level]
    lower: Dict[int, set] = {}
    work = 0
    seen = {top}
    while level:
        nxt = set()
        for F in level:
            cands = set()
            for G in facets:
                H = F & G
                if H != F:
                    cands.add(H)
            work += len(facets)
            ordered = sorted(cands, key=popcount, reverse=True)
            maximal = []
            for H in ordered:
                work += len(maximal)
                if not any(H & M == H for M in maximal):
                    maximal.append(H)
            lower[F] = set(maximal)
            for H in maximal:
                if H not in seen:
                    seen.add(H)
                    nxt.add(H)
        level = nxt
        if level:
            levels.append(level)
    d = len(levels) - 2
    faces_dim = {}
    for k, lv in enumerate(levels):
        for F in lv:
            faces_dim[F] = d - k
    return _assemble(A.n, faces_dim, lower, work)


def dimension_from_incidences(A: IncidenceMatrix) -> int:
    """Count rounds of "replace S by a maximal proper intersection with a facet".

    Starts from the first facet. Among several maximal intersections the
    lexicographically smallest vertex list is taken; the count does not
    depend on that choice. Garbage input gives an unspecified number.
    """
    facets = A.cols
    if not facets:
        return 0
    S = facets[0]
    rounds = 0
    while S:
        cands = {S & G for G in facets if S & G != S}
        if not cands:
            break
        maximal = [H for H in cands if not any(H != K and H & K == H for K in cands)]
        S = min(maximal, key=_lex_key)
        rounds += 1
    return rounds


def k_skeleton(A: IncidenceMatrix, k: int) -> FaceLattice:
    """Faces of dimension at most ``k`` (plus the empty face), bottom-up.

    The faces covering ``F`` are the minimal closures of ``F + {v}``, where the
    closure of a vertex set is the intersection of all facets containing it.
    No face above dimension ``k`` is ever formed.
    """
    facets = A.cols
    rows = A.rows
    full_facets = (1 << A.m) - 1
    top = (1 << A.n) - 1

    def closure(S: int) -> int:
        fs = full_facets
        for v in bits(S):
            fs &= rows[v]
        out = top
        for j in bits(fs):
            out &= facets[j]
        return out

    bottom = closure(0)
    faces_dim = {bottom: -1}
    lower: Dict[int, set] = {}
    level = {bottom}
    dim = -1
    work = 0
    while level and dim < k:
        nxt = set()
        for F in level:
            cands = set()
            for v in range(A.n):
                if not (F >> v) & 1:
                    cands.add(closure(F | (1 << v)))
                    work += 1
            minimal = [G for G in cands if not any(H != G and H & G == H for H in cands)]
            for G in minimal:
                lower.setdefault(G, set()).add(F)
                nxt.add(G)
        dim += 1
        for G in nxt:
            faces_dim[G] = dim
        level = nxt
    return _assemble(A.n, faces_dim, lower, work)


def f_vector(L: FaceLattice, full: bool = False) -> Tuple[int, ...]:
    """``(f_0, ..., f_{d-1})``: proper non-empty faces by dimension.

    With ``full=True`` the result is ``(f_{-1}, f_0, ..., f_d)`` including the
    empty face and the polytope itself.
    """
    d = L.dim
    lo, hi = (-1, d) if full else (0, d - 1)
    return tuple(sum(1 for x in L.dims if x == k) for k in range(lo, hi + 1))


def vertex_facet_incidences(P: HPolytope) -> IncidenceMatrix:
    """Incidences of a bounded, full-dimensional H-polytope.

    Redundant rows are dropped first, so columns are facets.
    """
    if not is_bounded(P):
        raise NotBounded("incidences need a bounded polytope")
    facets = remove_redundancy(P)
    V = enumerate_vertices(P)
    rows = []
    for v in V.points:
        rows.append(mask_of(facets.tight_set(v)))
    return IncidenceMatrix(len(V.points), facets.m, tuple(rows))


def lattice_from_H(P: HPolytope) -> FaceLattice:
    return build_lattice(vertex_facet_incidences(P))


def lattice_from_sets(n: int, facet_sets: Iterable[Iterable[int]]) -> FaceLattice:
    """Lattice of an abstract polytope given by the vertex sets of its facets."""
    cols = [mask_of(s) for s in facet_sets]
    rows = tuple(mask_of(j for j, c in enumerate(cols) if (c >> v) & 1) for v in range(n))
    return build_lattice(IncidenceMatrix(n, len(cols), rows))
