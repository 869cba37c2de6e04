"""Simple polytopes seen through their graphs.

Facet reconstruction follows Kalai's counting argument. For an ordering of
the nodes let ``up(v)`` be the number of neighbours after ``v`` and score the
ordering by ``sum_v 2^up(v)``. Every ordering scores at least the number of
faces, with equality exactly for orderings from abstract objective
functions, and a candidate node set ``H`` is a face iff some optimal
ordering lists ``H`` first. For a facet candidate that restricted optimum
splits as ``2 g(H) + g(V - H)``, where ``g(S)`` is the best score of the
induced subgraph on ``S``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import Budget, InputError, NotRegular
from .lattice import bits, lattice_from_sets, mask_of, popcount
from .polytope import HPolytope


@dataclass(frozen=True)
class AbstractGraph:
    """Simple undirected graph on nodes ``0..n-1``; edges are sorted pairs."""

    n: int
    edges: Tuple[Tuple[int, int], ...]

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], n: Optional[int] = None) -> "AbstractGraph":
        out = set()
        top = 0
        for e in edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise InputError(f"loop at node {u}")
            if u < 0 or v < 0:
                raise InputError("node indices must be non-negative")
            out.add((min(u, v), max(u, v)))
            top = max(top, u + 1, v + 1)
        if n is None:
            n = top
        elif n < top:
            raise InputError(f"edge endpoint out of range for n = {n}")
        return cls(n, tuple(sorted(out)))

    @classmethod
    def from_text(cls, text: str) -> "AbstractGraph":
        """Edge list, one ``u v`` pair per line. A lone integer on the first
        data line fixes the node count; ``#`` starts a comment."""
        n = None
        edges = []
        for k, raw in enumerate(ln.split("#")[0].strip() for ln in text.splitlines()):
            if not raw:
                continue
            parts = raw.split()
            try:
                nums = [int(p) for p in parts]
            except ValueError:
                raise InputError(f"bad edge line {raw!r}") from None
            if len(nums) == 1 and n is None and not edges:
                n = nums[0]
            elif len(nums) == 2:
                edges.append(nums)
            else:
                raise InputError(f"bad edge line {raw!r}")
        return cls.from_edges(edges, n)

    def to_text(self) -> str:
        return f"{self.n}\n" + "".join(f"{u} {v}\n" for u, v in self.edges)

    @property
    def adj(self) -> Tuple[int, ...]:
        """Neighbour bitmask per node."""
        out = [0] * self.n
        for u, v in self.edges:
            out[u] |= 1 << v
            out[v] |= 1 << u
        return tuple(out)

    def degrees(self) -> List[int]:
        return [popcount(a) for a in self.adj]

    def is_connected(self, mask: Optional[int] = None) -> bool:
        return _connected(self.adj, (1 << self.n) - 1 if mask is None else mask)

    def regularity(self) -> int:
        """The common degree ``d``; raises NotRegular otherwise."""
        degs = set(self.degrees())
        if len(degs) != 1:
            raise NotRegular(f"graph is not regular (degrees {sorted(degs)})")
        if not self.is_connected():
            raise NotRegular("graph is not connected")
        return degs.pop()


def _connected(adj, mask: int) -> bool:
    if mask == 0:
        return True
    start = mask & -mask
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        nxt &= mask & ~seen
        seen |= nxt
        frontier = nxt
    return seen == mask


@dataclass(frozen=True)
class FacetSystem:
    """Node sets of the facets, as sorted bitmasks."""

    n: int
    sets: Tuple[int, ...]

    @classmethod
    def from_lists(cls, n: int, lists: Iterable[Iterable[int]]) -> "FacetSystem":
        masks = [mask_of(s) for s in lists]
        if any(m >> n for m in masks):
            raise InputError("facet node out of range")
        return cls(n, tuple(sorted(set(masks), key=bits)))

    @classmethod
    def from_json(cls, n: int, data) -> "FacetSystem":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, list):
            raise InputError("facet system JSON must be a list of node lists")
        return cls.from_lists(n, data)

    def to_lists(self) -> List[List[int]]:
        return [bits(s) for s in self.sets]

    def problems(self, G: AbstractGraph) -> List[str]:
        """Violations of the simple-polytope facet invariants."""
        d = G.regularity()
        adj = G.adj
        out = []
        for s in self.sets:
            if not _connected(adj, s):
                out.append(f"facet {bits(s)} is not connected")
            if any(popcount(adj[v] & s) != d - 1 for v in bits(s)):
                out.append(f"facet {bits(s)} is not {d - 1}-regular")
        for v in range(G.n):
            k = sum(1 for s in self.sets if (s >> v) & 1)
            if k != d:
                out.append(f"node {v} lies in {k} facets, expected {d}")
        return out


@dataclass(frozen=True)
class Orientation:
    """``forward[i]`` is True when ``edges[i] = (u, v)`` is directed ``u -> v``."""

    graph: AbstractGraph
    forward: Tuple[bool, ...]

    @classmethod
    def from_ordering(cls, G: AbstractGraph, order: Sequence[int]) -> "Orientation":
        """Each edge points at its endpoint that comes earlier in ``order``."""
        rank = {v: i for i, v in enumerate(order)}
        return cls(G, tuple(rank[v] < rank[u] for u, v in G.edges))

    @classmethod
    def from_values(cls, G: AbstractGraph, values: Sequence) -> "Orientation":
        """Edges point towards the smaller value (ties are rejected)."""
        fwd = []
        for u, v in G.edges:
            if values[u] == values[v]:
                raise InputError(f"tie on edge {(u, v)}")
            fwd.append(values[v] < values[u])
        return cls(G, tuple(fwd))

    @classmethod
    def from_arcs(cls, G: AbstractGraph, arcs: Iterable[Sequence[int]]) -> "Orientation":
        want = {}
        for a, b in arcs:
            want[(min(a, b), max(a, b))] = a < b
        if set(want) != set(G.edges):
            raise InputError("arcs must cover every edge exactly once")
        return cls(G, tuple(want[e] for e in G.edges))

    def arcs(self) -> List[Tuple[int, int]]:
        return [(u, v) if f else (v, u) for (u, v), f in zip(self.graph.edges, self.forward)]

    def out_masks(self) -> List[int]:
        out = [0] * self.graph.n
        for a, b in self.arcs():
            out[a] |= 1 << b
        return out

    def reversed(self) -> "Orientation":
        return Orientation(self.graph, tuple(not f for f in self.forward))

    def flipped(self, edge: Sequence[int]) -> "Orientation":
        e = (min(edge), max(edge))
        i = self.graph.edges.index(e)
        fwd = list(self.forward)
        fwd[i] = not fwd[i]
        return Orientation(self.graph, tuple(fwd))

    def to_json(self) -> list:
        return [list(a) for a in self.arcs()]


# --------------------------------------------------------------------------
# Kalai's ordering score

class _Scorer:
    """Memoised ``g(S)``: the minimum over orderings of ``S`` of ``sum 2^up``."""

    def __init__(self, G: AbstractGraph, budget=None):
        self.adj = G.adj
        self.memo: Dict[int, int] = {0: 0}
        self.counter = Budget("ordering score", budget)

    def g(self, S: int) -> int:
        hit = self.memo.get(S)
        if hit is not None:
            return hit
        self.counter.tick()
        adj = self.adj
        best = None
        for v in bits(S):
            val = (1 << popcount(adj[v] & S)) + self.g(S & ~(1 << v))
            if best is None or val < best:
                best = val
        self.memo[S] = best
        return best

    def best_order(self, S: int) -> List[int]:
        """An ordering of ``S`` attaining ``g(S)``, earliest node first."""
        order = []
        adj = self.adj
        while S:
            target = self.g(S)
            for v in bits(S):
                if (1 << popcount(adj[v] & S)) + self.g(S & ~(1 << v)) == target:
                    order.append(v)
                    S &= ~(1 << v)
                    break
        return order


def _candidates(adj, d: int, v: int, w: int, full: int, counter: Budget) -> List[int]:
    """Connected ``(d-1)``-regular induced node sets containing ``v`` and its
    neighbours other than ``w``, and avoiding ``w``."""
    found = []

    def settle(inside: int, outside: int):
        counter.tick()
        # propagate forced choices
        changed = True
        while changed:
            changed = False
            for u in bits(inside):
                nb = adj[u]
                n_in = popcount(nb & inside)
                n_out = popcount(nb & outside)
                if n_in > d - 1 or n_out > 1:
                    return
                free = nb & ~inside & ~outside
                if not free:
                    continue
                if n_out == 1:
                    if free & outside:
                        return
                    inside |= free
                    changed = True
                elif n_in == d - 1:
                    outside |= free
                    changed = True
            if inside & outside:
                return
        # branch on an unsettled node: which free neighbour stays outside
        for u in bits(inside):
            free = adj[u] & ~inside & ~outside
            if free:
                for x in bits(free):
                    settle(inside | (free & ~(1 << x)), outside | (1 << x))
                return
        if inside != full and _connected(adj, inside):
            found.append(inside)

    settle((1 << v) | (adj[v] & ~(1 << w)), 1 << w)
    return sorted(set(found))


def reconstruct_facets(G: AbstractGraph, budget: Optional[int] = None) -> FacetSystem:
    """Facet node sets of the simple polytope whose graph is ``G``.

    For each node ``v`` and omitted neighbour ``w`` exactly one facet contains
    ``v`` but not ``w``; among the candidate sets it is the one with the
    smallest restricted ordering score.
    """
    d = G.regularity()
    n = G.n
    adj = G.adj
    full = (1 << n) - 1
    if d == 0:
        return FacetSystem(n, ())
    counter = Budget("facet reconstruction", budget)
    scorer = _Scorer(G, budget)
    facets: List[int] = []
    for v in range(n):
        for w in bits(adj[v]):
            if any((F >> v) & 1 and not (F >> w) & 1 for F in facets):
                continue
            cands = _candidates(adj, d, v, w, full, counter)
            if not cands:
                raise InputError(f"no facet candidate through node {v} avoiding {w}")
            scored = sorted((2 * scorer.g(H) + scorer.g(full & ~H), bits(H), H) for H in cands)
            if len(scored) > 1 and scored[0][0] == scored[1][0]:
                raise InputError("graph is not the graph of a simple polytope (ambiguous facet)")
            facets.append(scored[0][2])
    system = FacetSystem(n, tuple(sorted(set(facets), key=bits)))
    bad = system.problems(G)
    if bad:
        raise InputError("graph is not the graph of a simple polytope: " + bad[0])
    return system


def verify_facet_system(G: AbstractGraph, F: FacetSystem, budget: Optional[int] = None) -> bool:
    if F.n != G.n or F.problems(G):
        return False
    return set(F.sets) == set(reconstruct_facets(G, budget).sets)


# --------------------------------------------------------------------------
# orientations

def _acyclic(out: Sequence[int], n: int) -> bool:
    indeg = [0] * n
    for o in out:
        for b in bits(o):
            indeg[b] += 1
    stack = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for b in bits(out[v]):
            indeg[b] -= 1
            if indeg[b] == 0:
                stack.append(b)
    return seen == n


def faces_of(F: FacetSystem) -> List[int]:
    """Non-empty faces (node bitmasks) from the facet incidences."""
    L = lattice_from_sets(F.n, [bits(s) for s in F.sets])
    return [f for f in L.faces if f]


def count_sinks(out: Sequence[int], face: int) -> int:
    return sum(1 for v in bits(face) if not out[v] & face)


def is_AOF(G: AbstractGraph, F: FacetSystem, O: Orientation) -> bool:
    """Acyclic and a unique sink on the subgraph of every non-empty face."""
    if O.graph != G:
        raise InputError("orientation belongs to a different graph")
    out = O.out_masks()
    if not _acyclic(out, G.n):
        return False
    return all(count_sinks(out, face) == 1 for face in faces_of(F))


def is_USO(G: AbstractGraph, F: FacetSystem, O: Orientation) -> bool:
    out = O.out_masks()
    return all(count_sinks(out, face) == 1 for face in faces_of(F))


def kalai_score(O: Orientation) -> int:
    """``sum_v 2^indeg(v)`` where arcs point towards the sink side."""
    out = O.out_masks()
    indeg = [0] * O.graph.n
    for o in out:
        for b in bits(o):
            indeg[b] += 1
    return sum(1 << k for k in indeg)


def find_AOF(G: AbstractGraph, F: FacetSystem, budget: Optional[int] = None) -> Orientation:
    """An AOF orientation from an ordering of minimum score, certified."""
    G.regularity()
    scorer = _Scorer(G, budget)
    order = scorer.best_order((1 << G.n) - 1)
    O = Orientation.from_ordering(G, order)
    if not is_AOF(G, F, O):
        raise InputError("facet system does not match the graph: no AOF from an optimal ordering")
    return O


# --------------------------------------------------------------------------

def graph_and_facets(P: HPolytope) -> Tuple[AbstractGraph, FacetSystem]:
    """Graph and geometric facet node sets of a bounded full-dimensional polytope.

    Nodes are the vertices in lexicographic order.
    """
    from .kernel import remove_redundancy
    from .metrics import vertex_graph

    V, edges = vertex_graph(P)
    G = AbstractGraph.from_edges(edges, len(V))
    H = remove_redundancy(P)
    sets = []
    for r in H.rows:
        sets.append(mask_of(i for i, v in enumerate(V) if r[0] + sum(a * x for a, x in zip(r[1:], v)) == 0))
    return G, FacetSystem(len(V), tuple(sorted(set(sets), key=bits)))
