"""Affine, combinatorial, incidence and lattice isomorphism tests.

Graph matching uses colour refinement plus individualisation with plain
backtracking (no canonical form). Every certificate is re-checked by
substitution before it is returned.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import Budget
from .hull import enumerate_facets
from .kernel import affine_dimension, rank, remove_redundancy, solve_square
from .lattice import FaceLattice, IncidenceMatrix, bits, mask_of
from .polytope import VPolytope, dot


@dataclass(frozen=True)
class Bijection:
    """Certificate for an isomorphism.

    ``forward[i]`` is the image of element ``i``. For ``kind="vertex-facet"``
    ``forward`` maps rows and ``secondary`` maps columns.
    """

    forward: Tuple[int, ...]
    kind: str
    secondary: Optional[Tuple[int, ...]] = None

    def inverse(self) -> "Bijection":
        def inv(p):
            out = [0] * len(p)
            for i, j in enumerate(p):
                out[j] = i
            return tuple(out)

        return Bijection(inv(self.forward), self.kind, inv(self.secondary) if self.secondary else None)

    def compose(self, other: "Bijection") -> "Bijection":
        """``other`` after ``self``."""
        fwd = tuple(other.forward[j] for j in self.forward)
        sec = None
        if self.secondary is not None and other.secondary is not None:
            sec = tuple(other.secondary[j] for j in self.secondary)
        return Bijection(fwd, self.kind, sec)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "forward": list(self.forward)}
        if self.secondary is not None:
            out["secondary"] = list(self.secondary)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json())


# --------------------------------------------------------------------------
# coloured graph isomorphism

def _refine(adjA, adjB, colA, colB):
    """Joint colour refinement; None if the two colourings diverge."""
    while True:
        sigA = [(colA[v], tuple(sorted(colA[w] for w in adjA[v]))) for v in range(len(adjA))]
        sigB = [(colB[v], tuple(sorted(colB[w] for w in adjB[v]))) for v in range(len(adjB))]
        if sorted(sigA) != sorted(sigB):
            return None
        table = {s: i for i, s in enumerate(sorted(set(sigA)))}
        newA = [table[s] for s in sigA]
        newB = [table[s] for s in sigB]
        if len(table) == len(set(colA)):
            return newA, newB
        colA, colB = newA, newB


def graph_isomorphism(adjA, adjB, colA=None, colB=None, budget=None) -> Optional[List[int]]:
    """Colour-preserving isomorphism ``A -> B`` as a list, or None.

    ``adjA``/``adjB`` are neighbour lists. Candidates at each branching step
    are the vertices of the smallest non-singleton colour class, by index.
    """
    n = len(adjA)
    if n != len(adjB):
        return None
    colA = list(colA) if colA is not None else [0] * n
    colB = list(colB) if colB is not None else [0] * n
    setsB = [set(x) for x in adjB]
    counter = Budget("graph isomorphism", budget)

    def search(cA, cB):
        counter.tick()
        ref = _refine(adjA, adjB, cA, cB)
        if ref is None:
            return None
        cA, cB = ref
        classes: Dict[int, List[int]] = {}
        for v, c in enumerate(cA):
            classes.setdefault(c, []).append(v)
        big = [(len(vs), c) for c, vs in classes.items() if len(vs) > 1]
        if not big:
            where = {c: v for v, c in enumerate(cB)}
            f = [where[c] for c in cA]
            if all(f[w] in setsB[f[v]] for v in range(n) for w in adjA[v]):
                return f
            return None
        _, c = min(big)
        v = classes[c][0]
        fresh = max(cA) + 1
        for w in (u for u in range(n) if cB[u] == c):
            nA = list(cA)
            nB = list(cB)
            nA[v] = fresh
            nB[w] = fresh
            f = search(nA, nB)
            if f is not None:
                return f
        return None

    return search(colA, colB)


# --------------------------------------------------------------------------

def incidence_isomorphic(A: IncidenceMatrix, B: IncidenceMatrix, budget=None) -> Optional[Bijection]:
    """Row and column permutations carrying ``A`` onto ``B``, or None."""
    if (A.n, A.m) != (B.n, B.m) or A.alpha != B.alpha:
        return None

    def bipartite(M):
        adj = [[] for _ in range(M.n + M.m)]
        for v, r in enumerate(M.rows):
            for j in bits(r):
                adj[v].append(M.n + j)
                adj[M.n + j].append(v)
        return adj

    col = [0] * A.n + [1] * A.m
    f = graph_isomorphism(bipartite(A), bipartite(B), col, col, budget)
    if f is None:
        return None
    rp = tuple(f[:A.n])
    cp = tuple(x - A.n for x in f[A.n:])
    if A.permuted(rp, cp) != B:  # pragma: no cover - certificate check
        raise AssertionError("incidence isomorphism failed verification")
    return Bijection(rp, "vertex-facet", cp)


def _lattice_vertex_order(L: FaceLattice) -> List[int]:
    return sorted(bits(a)[0] for a in L.of_dim(0))


def lattice_isomorphic(L: FaceLattice, M: FaceLattice, budget=None) -> Optional[Bijection]:
    """Rank-preserving isomorphism of Hasse diagrams via atom/coatom incidences.

    ``forward`` maps face indices of ``L`` to face indices of ``M``.
    """
    if L.dim != M.dim or sorted(L.dims) != sorted(M.dims):
        return None
    inc = incidence_isomorphic(L.incidence(), M.incidence(), budget)
    if inc is None:
        return None
    vl, vm = _lattice_vertex_order(L), _lattice_vertex_order(M)
    vmap = {vl[i]: vm[inc.forward[i]] for i in range(len(vl))}
    idxM = M.index()
    fwd = []
    for F in L.faces:
        G = mask_of(vmap[v] for v in bits(F))
        if F == max(L.faces):  # top: full vertex set of M
            G = max(M.faces)
        if G not in idxM:
            return None
        fwd.append(idxM[G])
    if sorted(fwd) != list(range(M.phi)):
        return None
    for i, cov in enumerate(L.covers):
        if sorted(fwd[j] for j in cov) != sorted(M.covers[fwd[i]]):
            return None
    return Bijection(tuple(fwd), "lattice-map")


def self_dual(L: FaceLattice, budget=None) -> Optional[Bijection]:
    """Permutations turning the incidence matrix ``A`` into its transpose.

    ``forward`` sends vertices to facets and ``secondary`` facets to vertices,
    which together describe an order-reversing lattice automorphism.
    """
    A = L.incidence()
    cert = incidence_isomorphic(A, A.transpose(), budget)
    if cert is None:
        return None
    return Bijection(cert.forward, "vertex-facet", cert.secondary)


# --------------------------------------------------------------------------
# V-polytopes

def _vertices(P: VPolytope) -> List[Tuple[Fraction, ...]]:
    return sorted(remove_redundancy(P.canonical()).points)


def _barycentric(basis, p):
    """Affine coordinates of ``p`` w.r.t. affinely independent ``basis``."""
    k = len(basis) - 1
    b0 = basis[0]
    D = [[basis[j + 1][i] - b0[i] for j in range(k)] for i in range(len(b0))]
    # least-squares-free solve: pick k independent coordinate rows
    rows = []
    chosen = []
    for i, r in enumerate(D):
        if rank(rows + [r]) > len(rows):
            rows.append(r)
            chosen.append(i)
        if len(rows) == k:
            break
    rhs = [p[i] - b0[i] for i in chosen]
    lam = solve_square(rows, rhs) if k else ()
    return (1 - sum(lam, Fraction(0)),) + tuple(lam)


def affinely_equivalent(P: VPolytope, Q: VPolytope) -> Optional[Bijection]:
    """Vertex bijection induced by an affine isomorphism between the hulls.

    Vertices are indexed in lexicographic order of the irredundant vertex
    lists. Enumerates ordered affine bases of ``Q`` as images of one fixed
    affine basis of ``P``.
    """
    VP, VQ = _vertices(P), _vertices(Q)
    if len(VP) != len(VQ):
        return None
    k = affine_dimension(VPolytope(P.d, tuple(VP)))
    if k != affine_dimension(VPolytope(Q.d, tuple(VQ))):
        return None
    basis = [0]
    for i in range(1, len(VP)):
        trial = basis + [i]
        if rank([[a - b for a, b in zip(VP[j], VP[0])] for j in trial[1:]]) == len(trial) - 1:
            basis = trial
        if len(basis) == k + 1:
            break
    coords = [_barycentric([VP[i] for i in basis], p) for p in VP]
    qindex = {p: i for i, p in enumerate(VQ)}
    for images in itertools.permutations(range(len(VQ)), k + 1):
        imgs = [VQ[j] for j in images]
        if k and rank([[a - b for a, b in zip(x, imgs[0])] for x in imgs[1:]]) < k:
            continue
        fwd = []
        for lam in coords:
            y = tuple(sum((l * q[i] for l, q in zip(lam, imgs)), Fraction(0)) for i in range(Q.d))
            j = qindex.get(y)
            if j is None:
                break
            fwd.append(j)
        else:
            if len(set(fwd)) == len(fwd):
                return Bijection(tuple(fwd), "vertex-map")
    return None


def vertex_facet_matrix(P: VPolytope) -> IncidenceMatrix:
    """Incidences of ``conv(P)`` with vertices in lexicographic order."""
    V = _vertices(P)
    H = enumerate_facets(VPolytope(P.d, tuple(V)))
    facets = []
    for r in H.rows:
        tight = mask_of(i for i, v in enumerate(V) if r[0] + dot(r[1:], v) == 0)
        if tight != (1 << len(V)) - 1:
            facets.append(tight)
    rows = tuple(mask_of(j for j, f in enumerate(facets) if (f >> v) & 1) for v in range(len(V)))
    return IncidenceMatrix(len(V), len(facets), rows)


def combinatorially_equivalent(P: VPolytope, Q: VPolytope, budget=None) -> Optional[Bijection]:
    """Isomorphic face lattices, decided on vertex-facet incidences."""
    return incidence_isomorphic(vertex_facet_matrix(P), vertex_facet_matrix(Q), budget)
