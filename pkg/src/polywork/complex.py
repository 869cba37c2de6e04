"""Finite abstract simplicial complexes given by their facets.

Faces are vertex bitmasks. The empty face is always a member; the complex
whose only facet is the empty set is allowed (it arises from unsatisfiable
formulas), the complex with no faces at all is not.
"""

from __future__ import annotations

import itertools
import json
import logging
import os
from collections import Counter
from dataclasses import dataclass
from math import gcd
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from .errors import Budget, InputError, NotPure
from .lattice import bits, mask_of, popcount

log = logging.getLogger(__name__)


def _maximal(masks: Iterable[int]) -> List[int]:
    """Inclusion-maximal members, sorted by (size desc, lex)."""
    ordered = sorted(set(masks), key=lambda m: (-popcount(m), bits(m)))
    out: List[int] = []
    for m in ordered:
        if not any(m & f == m for f in out):
            out.append(m)
    return out


def _submasks(F: int) -> Iterator[int]:
    sub = F
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & F


@dataclass(frozen=True)
class SimplicialComplex:
    """Facets as an antichain of bitmasks over vertices ``0..n-1``."""

    n: int
    facets: Tuple[int, ...]

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]], n: Optional[int] = None) -> "SimplicialComplex":
        masks = []
        for f in facets:
            f = list(f)
            if any(not isinstance(v, int) or isinstance(v, bool) or v < 0 for v in f):
                raise InputError(f"vertices must be non-negative integers, got {f!r}")
            masks.append(mask_of(f))
        if not masks:
            raise InputError("a simplicial complex needs at least one facet")
        top = max(m.bit_length() for m in masks)
        if n is None:
            n = top
        elif n < top:
            raise InputError(f"vertex index out of range for n = {n}")
        return cls(n, tuple(_maximal(masks)))

    @classmethod
    def from_json(cls, data) -> "SimplicialComplex":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "facets" not in data:
            raise InputError('complex JSON needs a "facets" list')
        return cls.from_facets(data["facets"], data.get("n"))

    def to_json(self) -> dict:
        return {"n": self.n, "facets": [bits(f) for f in self.facets]}

    @property
    def m(self) -> int:
        return len(self.facets)

    @property
    def dim(self) -> int:
        return max(popcount(f) for f in self.facets) - 1

    def facet_lists(self) -> List[List[int]]:
        return [bits(f) for f in self.facets]

    def is_pure(self) -> bool:
        return len({popcount(f) for f in self.facets}) == 1

    def faces(self, include_empty: bool = True, budget: Optional[int] = None) -> Set[int]:
        counter = Budget("face enumeration", budget)
        out: Set[int] = set()
        for F in self.facets:
            for G in _submasks(F):
                counter.tick()
                out.add(G)
        if not include_empty:
            out.discard(0)
        return out

    def __contains__(self, face) -> bool:
        G = face if isinstance(face, int) else mask_of(face)
        return any(G & F == G for F in self.facets)


# --------------------------------------------------------------------------
# counting

def f_vector_complex(D: SimplicialComplex, budget: Optional[int] = None) -> Tuple[int, ...]:
    """``(f_0, ..., f_dim)``; empty for the complex ``{emptyset}``."""
    counts = Counter(popcount(G) for G in D.faces(include_empty=False, budget=budget))
    return tuple(counts[k + 1] for k in range(D.dim + 1))


def count_faces(D: SimplicialComplex, k: int, budget: Optional[int] = None) -> int:
    """``f_k``: faces with ``k + 1`` vertices (0 when ``k`` is out of range)."""
    if k < -1:
        return 0
    counter = Budget("face count", budget)
    seen = set()
    for F in D.facets:
        vs = bits(F)
        for c in itertools.combinations(vs, k + 1):
            counter.tick()
            seen.add(mask_of(c))
    return len(seen)


def _euler_direct(D: SimplicialComplex, budget=None) -> int:
    return sum(1 if popcount(G) % 2 else -1 for G in D.faces(include_empty=False, budget=budget))


def intersection_closures(D: SimplicialComplex, budget: Optional[int] = None) -> List[int]:
    """All intersections of non-empty facet families, in lectic order.

    NextClosure over the operator ``S -> intersection of facets containing S``.
    The full vertex set is reported only when it is itself a facet.
    """
    facets = D.facets
    full = (1 << D.n) - 1
    counter = Budget("intersection closure", budget)

    def closure(S: int) -> int:
        out = full
        for F in facets:
            if S & F == S:
                out &= F
        return out

    result = []
    A = closure(0)
    while True:
        counter.tick()
        result.append(A)
        for i in range(D.n - 1, -1, -1):
            if (A >> i) & 1:
                continue
            low = (1 << i) - 1
            B = closure((A & low) | (1 << i))
            if (B & low) == (A & low):
                A = B
                break
        else:
            break
    if full not in facets:
        result = [X for X in result if X != full]
    return result


def _euler_closure(D: SimplicialComplex, budget=None) -> int:
    # Crosscut: the alternating sum over facet families with empty
    # intersection equals the Moebius value mu(emptyset, top) in V + top.
    V = intersection_closures(D, budget)
    log.debug("euler: %d closed sets for %d facets", len(V), len(D.facets))
    if 0 not in V:
        return 1
    V.sort(key=popcount)
    mu: Dict[int, int] = {}
    for X in V:
        if X == 0:
            mu[X] = 1
        else:
            mu[X] = -sum(mu[Y] for Y in mu if Y != X and Y & X == Y)
    return 1 - sum(mu.values())


def _test_mode() -> bool:
    return os.environ.get("POLYWORK_TEST_MODE", "") not in ("", "0")


def euler_characteristic(D: SimplicialComplex, engine: str = "closure", check: Optional[bool] = None,
                         budget: Optional[int] = None) -> int:
    """Non-reduced Euler characteristic ``sum_i (-1)^i f_i``.

    ``engine`` is ``"direct"`` (face enumeration) or ``"closure"``
    (intersection lattice and Moebius function). With ``check`` (default: the
    ``POLYWORK_TEST_MODE`` environment variable) both run and must agree.
    """
    if engine not in ("direct", "closure"):
        raise InputError(f"unknown engine {engine!r}")
    if check is None:
        check = _test_mode()
    value = _euler_direct(D, budget) if engine == "direct" else _euler_closure(D, budget)
    if check:
        other = _euler_closure(D, budget) if engine == "direct" else _euler_direct(D, budget)
        if other != value:  # pragma: no cover - would be a library bug
            raise AssertionError(f"Euler engines disagree: {value} vs {other}")
    return value


# --------------------------------------------------------------------------
# SAT reduction

def literal_element(lit: int) -> int:
    """Ground-set element forbidden by a literal: ``x_i -> f_i``, ``-x_i -> t_i``.

    Elements are ordered ``t_1, f_1, t_2, f_2, ...`` (0-based bits
    ``t_i = 2(i-1)``, ``f_i = 2i - 1``).
    """
    i = abs(lit)
    return 2 * i - 1 if lit > 0 else 2 * (i - 1)


def circuits_of_cnf(cnf: Sequence[Sequence[int]], nvars: int) -> List[int]:
    """Minimal circuits: one per clause plus ``{t_i, f_i}`` per variable."""
    circ = []
    for clause in cnf:
        if not clause:
            raise InputError("empty clause: the complex would have no faces")
        for lit in clause:
            if lit == 0 or abs(lit) > nvars:
                raise InputError(f"literal {lit} out of range for {nvars} variables")
        circ.append(mask_of(literal_element(l) for l in clause))
    circ += [(1 << (2 * i)) | (1 << (2 * i + 1)) for i in range(nvars)]
    circ = set(circ)
    return sorted(c for c in circ if not any(o != c and o & c == o for o in circ))


def independent_facets(N: int, circuits: Sequence[int], budget: Optional[int] = None) -> List[int]:
    """Maximal subsets of ``0..N-1`` containing no circuit, by depth-first search."""
    counter = Budget("independent sets", budget)
    out = []

    def free(S):
        return not any(c & S == c for c in circuits)

    def go(i, S):
        counter.tick()
        if i == N:
            if all(not free(S | (1 << j)) for j in range(N) if not (S >> j) & 1):
                out.append(S)
            return
        T = S | (1 << i)
        if free(T):
            go(i + 1, T)
        go(i + 1, S)

    if free(0):
        go(0, 0)
    return out


def sat_to_complex(cnf: Sequence[Sequence[int]], nvars: int,
                   budget: Optional[int] = None) -> Tuple[SimplicialComplex, SimplicialComplex]:
    """The complexes ``(Delta, Delta_bar)`` of a CNF formula on ``2 nvars`` elements.

    ``f_{n-1}(Delta)`` counts satisfying assignments and
    ``f_{n-1}(Delta) + f_{n-1}(Delta_bar) = C(2n, n)``.
    """
    N = 2 * nvars
    circ = circuits_of_cnf(cnf, nvars)
    D = SimplicialComplex(N, tuple(_maximal(independent_facets(N, circ, budget)) or [0]))
    full = (1 << N) - 1
    Dbar = SimplicialComplex(N, tuple(_maximal(full & ~c for c in circ)))
    return D, Dbar


def count_models(cnf: Sequence[Sequence[int]], nvars: int) -> int:
    """Brute-force truth-table count."""
    total = 0
    for bitsv in itertools.product((False, True), repeat=nvars):
        if all(any(bitsv[abs(l) - 1] == (l > 0) for l in cl) for cl in cnf):
            total += 1
    return total


# --------------------------------------------------------------------------
# homology

@dataclass(frozen=True)
class HomologyGroup:
    rank: int
    torsion: Tuple[int, ...] = ()

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " ⊕ ".join(parts) if parts else "0"

    def format(self, i: int) -> str:
        return f"H_{i} = {self}"

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


def smith_diagonal(M: Sequence[Sequence[int]]) -> List[int]:
    """Non-zero invariant factors of an integer matrix, each dividing the next."""
    A = [list(r) for r in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    diag = []
    t = 0
    while t < rows and t < cols:
        # smallest non-zero entry in the trailing block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for r in A:
            r[t], r[j] = r[j], r[t]
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if A[i][t]:
                    f = A[i][t] // p
                    if f:
                        Ai, At = A[i], A[t]
                        for j in range(t, cols):
                            Ai[j] -= f * At[j]
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if A[t][j]:
                    f = A[t][j] // p
                    if f:
                        for r in A[t:]:
                            r[j] -= f * r[t]
                    if A[t][j]:
                        dirty = True
            if not dirty:
                # pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if A[i][j] % p), None)
                if bad is None:
                    break
                i, _ = bad
                for j in range(t, cols):
                    A[t][j] += A[i][j]
                continue
            # move the smallest entry of row/column t to the pivot
            cands = [(abs(A[i][t]), i, t) for i in range(t, rows) if A[i][t]]
            cands += [(abs(A[t][j]), t, j) for j in range(t, cols) if A[t][j]]
            _, i, j = min(cands)
            A[t], A[i] = A[i], A[t]
            for r in A:
                r[t], r[j] = r[j], r[t]
        diag.append(abs(A[t][t]))
        t += 1
    # normalise to a divisibility chain
    for a in range(len(diag)):
        for b in range(a + 1, len(diag)):
            g = gcd(diag[a], diag[b])
            l = diag[a] * diag[b] // g
            diag[a], diag[b] = g, l
    return diag


def _sorted_faces(D: SimplicialComplex, k: int, budget=None) -> List[int]:
    faces = {G for G in D.faces(budget=budget) if popcount(G) == k + 1}
    return sorted(faces, key=bits)


def boundary_matrix(D: SimplicialComplex, k: int, budget=None) -> List[List[int]]:
    """``d_k : C_k -> C_{k-1}`` with rows indexed by ``(k-1)``-faces.

    Vertices are sorted ascending and dropping position ``p`` carries sign
    ``(-1)^p``. ``d_0`` is the zero map to the trivial group (unreduced).
    """
    if k <= 0:
        return []
    hi = _sorted_faces(D, k, budget)
    lo = _sorted_faces(D, k - 1, budget)
    pos = {G: i for i, G in enumerate(lo)}
    M = [[0] * len(hi) for _ in lo]
    for j, G in enumerate(hi):
        for p, v in enumerate(bits(G)):
            M[pos[G & ~(1 << v)]][j] = -1 if p % 2 else 1
    return M


def homology(D: SimplicialComplex, i: int, budget: Optional[int] = None) -> HomologyGroup:
    """Unreduced integral simplicial homology ``H_i``."""
    if i < 0:
        raise InputError("homology degree must be non-negative")
    n_i = len(_sorted_faces(D, i, budget))
    if n_i == 0:
        return HomologyGroup(0)
    r_out = len(smith_diagonal(boundary_matrix(D, i, budget))) if i > 0 else 0
    inv = smith_diagonal(boundary_matrix(D, i + 1, budget))
    torsion = tuple(t for t in inv if t > 1)
    return HomologyGroup(n_i - r_out - len(inv), torsion)


def betti_numbers(D: SimplicialComplex, budget: Optional[int] = None) -> Tuple[int, ...]:
    return tuple(homology(D, i, budget).rank for i in range(D.dim + 1))


# --------------------------------------------------------------------------
# shellability

def _require_pure(D: SimplicialComplex):
    if not D.is_pure():
        raise NotPure("complex is not pure")


def _step_ok(F: int, earlier: Sequence[int]) -> bool:
    if not earlier:
        return True
    inter = _maximal(F & G for G in earlier)
    k = popcount(F) - 1
    return all(popcount(X) == k for X in inter)


def is_shelling_order(D: SimplicialComplex, order: Sequence[int]) -> bool:
    """``order`` lists facet indices; each facet must meet the union of the
    earlier ones in a pure complex of codimension one."""
    _require_pure(D)
    if sorted(order) != list(range(D.m)):
        raise InputError("order must be a permutation of the facet indices")
    seq = [D.facets[i] for i in order]
    return all(_step_ok(seq[j], seq[:j]) for j in range(len(seq)))


def _graph_components(D: SimplicialComplex) -> List[Tuple[Set[int], List[int]]]:
    """Connected components of a 1-dimensional complex as (vertices, facet indices)."""
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for F in D.facets:
        vs = bits(F)
        for v in vs:
            find(v)
        for v in vs[1:]:
            parent[find(v)] = find(vs[0])
    comps: Dict[int, Tuple[Set[int], List[int]]] = {}
    for idx, F in enumerate(D.facets):
        root = find(bits(F)[0]) if F else None
        verts, fs = comps.setdefault(root, (set(), []))
        verts.update(bits(F))
        fs.append(idx)
    return list(comps.values())


def shellable(D: SimplicialComplex, budget: Optional[int] = None) -> Optional[Tuple[int, ...]]:
    """A shelling order (facet indices) or None.

    Graphs take the connectivity fast path; otherwise depth-first search over
    facet sequences with memoised dead prefixes.
    """
    _require_pure(D)
    if D.dim <= 0:
        return tuple(range(D.m))
    if D.dim == 1:
        comps = _graph_components(D)
        if len(comps) != 1:
            return None
        # grow along edges touching what is already built
        order, built, left = [], set(), list(range(D.m))
        while left:
            for k, idx in enumerate(left):
                vs = bits(D.facets[idx])
                if not order or built.intersection(vs):
                    order.append(idx)
                    built.update(vs)
                    del left[k]
                    break
        return tuple(order)
    counter = Budget("shellability search", budget)
    dead: Set[int] = set()
    facets = D.facets

    def go(order, used):
        counter.tick()
        if len(order) == D.m:
            return list(order)
        if used in dead:
            return None
        earlier = [facets[i] for i in order]
        for i in range(D.m):
            if not (used >> i) & 1 and _step_ok(facets[i], earlier):
                order.append(i)
                res = go(order, used | (1 << i))
                if res:
                    return res
                order.pop()
        dead.add(used)
        return None

    res = go([], 0)
    if res is not None:
        assert is_shelling_order(D, res)
        return tuple(res)
    return None


# --------------------------------------------------------------------------
# partitionability

@dataclass(frozen=True)
class PartitionScheme:
    """Intervals ``[R(F), F]`` as ``(R, F)`` bitmask pairs, one per facet."""

    intervals: Tuple[Tuple[int, int], ...]

    def verify(self, D: SimplicialComplex) -> bool:
        tops = sorted(F for _, F in self.intervals)
        if tops != sorted(D.facets):
            return False
        if any(R & F != R for R, F in self.intervals):
            return False
        covered = Counter()
        for R, F in self.intervals:
            for extra in _submasks(F & ~R):
                covered[R | extra] += 1
        faces = D.faces()
        return set(covered) == faces and all(c == 1 for c in covered.values())

    def to_json(self) -> list:
        return [{"R": bits(R), "F": bits(F)} for R, F in self.intervals]


def _graph_partition(D: SimplicialComplex) -> Optional[PartitionScheme]:
    comps = _graph_components(D)
    R_of: Dict[int, int] = {}

    def is_tree(c):
        verts, fs = c
        return any(popcount(D.facets[i]) == 2 for i in fs) and len(fs) == len(verts) - 1

    trees = [c for c in comps if is_tree(c)]
    if len(trees) > 1:
        return None
    # component that absorbs the empty face
    if trees:
        empty_comp = trees[0]
    else:
        singles = [c for c in comps if len(c[1]) == 1 and popcount(D.facets[c[1][0]]) <= 1]
        empty_comp = singles[0] if singles else comps[0]
    for comp in comps:
        verts, fs = comp
        edges = [i for i in fs if popcount(D.facets[i]) == 2]
        if not edges:
            i = fs[0]
            R_of[i] = 0 if comp is empty_comp else D.facets[i]
            continue
        adj: Dict[int, List[int]] = {}
        for i in edges:
            u, v = bits(D.facets[i])
            adj.setdefault(u, []).append(i)
            adj.setdefault(v, []).append(i)
        if comp is empty_comp:
            root_edge = edges[0]
            start = bits(D.facets[root_edge])
            R_of[root_edge] = 0
        else:
            # a non-tree edge pays for the root vertex
            tree_edges = set()
            seen = {min(verts)}
            stack = [min(verts)]
            while stack:
                u = stack.pop()
                for i in adj[u]:
                    w = bits(D.facets[i] & ~(1 << u))[0]
                    if w not in seen:
                        seen.add(w)
                        tree_edges.add(i)
                        stack.append(w)
            extra = next(i for i in edges if i not in tree_edges)
            x = bits(D.facets[extra])[0]
            R_of[extra] = 1 << x
            start = [x]
        seen = set(start)
        stack = list(start)
        while stack:
            u = stack.pop()
            for i in adj[u]:
                w = bits(D.facets[i] & ~(1 << u))[0]
                if w not in seen and i not in R_of:
                    seen.add(w)
                    R_of[i] = 1 << w
                    stack.append(w)
        for i in edges:
            R_of.setdefault(i, D.facets[i])
    return PartitionScheme(tuple((R_of[i], D.facets[i]) for i in range(D.m)))


def partitionable(D: SimplicialComplex, budget: Optional[int] = None) -> Optional[PartitionScheme]:
    """A Stanley partition into intervals topped by facets, or None.

    Exact cover: the smallest uncovered face ``G`` must be the bottom of its
    interval (all its proper subsets are covered already), so the search only
    branches on which unused facet ``F`` above ``G`` closes ``[G, F]``.
    """
    if D.facets == (0,):
        return PartitionScheme(((0, 0),))
    if D.dim <= 1:
        res = _graph_partition(D)
        if res is not None:
            assert res.verify(D)
        return res
    counter = Budget("partition search", budget)
    faces = sorted(D.faces(), key=lambda G: (popcount(G), bits(G)))
    facets = D.facets
    covered: Set[int] = set()
    chosen: Dict[int, int] = {}

    def go(k):
        counter.tick()
        while k < len(faces) and faces[k] in covered:
            k += 1
        if k == len(faces):
            return True
        G = faces[k]
        for i, F in enumerate(facets):
            if i in chosen or G & F != G:
                continue
            block = [G | e for e in _submasks(F & ~G)]
            if any(x in covered for x in block):
                continue
            covered.update(block)
            chosen[i] = G
            if go(k + 1):
                return True
            del chosen[i]
            covered.difference_update(block)
        return False

    if not go(0):
        return None
    scheme = PartitionScheme(tuple((chosen[i], F) for i, F in enumerate(facets)))
    assert scheme.verify(D)
    return scheme


# --------------------------------------------------------------------------

def is_pseudomanifold(D: SimplicialComplex) -> bool:
    """Pure, every ridge in at most two facets, connected dual graph."""
    _require_pure(D)
    ridges: Dict[int, List[int]] = {}
    for i, F in enumerate(D.facets):
        for v in bits(F):
            ridges.setdefault(F & ~(1 << v), []).append(i)
    if any(len(fs) > 2 for fs in ridges.values()):
        return False
    adj = [set() for _ in D.facets]
    for fs in ridges.values():
        if len(fs) == 2:
            a, b = fs
            adj[a].add(b)
            adj[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u] - seen:
            seen.add(w)
            stack.append(w)
    return len(seen) == D.m
