"""Lattice axioms and the Steinitz problem in dimension at most three.

Planarity comes from networkx. Its answer is never trusted on its own: a Yes
carries a rotation system whose traced faces must satisfy Euler's formula and
coincide with the facets, and 3-connectivity is confirmed by trying every pair
of cut vertices.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import networkx as nx

from .errors import AxiomViolation, InputError
from .lattice import FaceLattice, bits, popcount


@dataclass(frozen=True)
class Poset:
    """Finite poset given by its Hasse diagram (``covers[x]`` = lower covers)."""

    covers: Tuple[Tuple[int, ...], ...]
    labels: Tuple[str, ...] = ()

    @property
    def size(self) -> int:
        return len(self.covers)

    @classmethod
    def from_lattice(cls, L: FaceLattice) -> "Poset":
        return cls(tuple(tuple(c) for c in L.covers), tuple(str(i) for i in range(L.phi)))

    @classmethod
    def from_json(cls, data) -> "Poset":
        """Same node format as face-lattice JSON; ``dim`` and ``vertices`` are optional."""
        if isinstance(data, str):
            data = json.loads(data)
        nodes = data.get("nodes", data) if isinstance(data, dict) else None
        if not isinstance(nodes, dict) or not nodes:
            raise InputError("poset JSON must map node ids to {covers: [...]} objects")
        ids = sorted(nodes, key=lambda k: (len(str(k)), str(k)))
        pos = {str(k): i for i, k in enumerate(ids)}
        try:
            covers = tuple(tuple(pos[str(c)] for c in nodes[k].get("covers", [])) for k in ids)
        except KeyError as exc:
            raise InputError(f"cover refers to unknown node {exc}") from None
        except AttributeError:
            raise InputError("each node must be an object") from None
        return cls(covers, tuple(str(k) for k in ids))

    def delete(self, x: int) -> "Poset":
        """Remove element ``x`` and every cover relation touching it."""
        keep = [i for i in range(self.size) if i != x]
        pos = {old: new for new, old in enumerate(keep)}
        covers = tuple(tuple(pos[c] for c in self.covers[i] if c != x) for i in keep)
        labels = tuple(self.labels[i] for i in keep) if self.labels else ()
        return Poset(covers, labels)


@dataclass
class AxiomReport:
    lattice: bool
    ranked: bool
    atomic: bool
    coatomic: bool
    diamond: bool
    rank: Optional[int]
    problems: List[str] = field(default_factory=list)

    @property
    def candidate_dim(self) -> Optional[int]:
        return None if self.rank is None else self.rank - 1

    @property
    def ok(self) -> bool:
        return self.lattice and self.ranked and self.atomic and self.coatomic

    def to_json(self) -> dict:
        return {"lattice": self.lattice, "ranked": self.ranked, "atomic": self.atomic,
                "coatomic": self.coatomic, "diamond": self.diamond,
                "candidate_dim": self.candidate_dim, "problems": self.problems}


class _Order:
    """Down-sets and up-sets as bitmasks over the elements."""

    def __init__(self, P: Poset):
        n = P.size
        upper: List[List[int]] = [[] for _ in range(n)]
        for x, cs in enumerate(P.covers):
            for c in cs:
                if not 0 <= c < n or c == x:
                    raise AxiomViolation(f"bad cover relation at element {x}")
                upper[c].append(x)
        indeg = [len(cs) for cs in P.covers]
        order = [x for x in range(n) if indeg[x] == 0]
        k = 0
        while k < len(order):
            x = order[k]
            k += 1
            for y in upper[x]:
                indeg[y] -= 1
                if indeg[y] == 0:
                    order.append(y)
        if len(order) != n:
            raise AxiomViolation("cover relation has a cycle")
        self.topo = order
        self.upper = upper
        below = [0] * n
        lo = [0] * n
        hi = [0] * n
        for x in order:
            b = 1 << x
            for c in P.covers[x]:
                b |= below[c]
            below[x] = b
            if P.covers[x]:
                lo[x] = 1 + min(lo[c] for c in P.covers[x])
                hi[x] = 1 + max(hi[c] for c in P.covers[x])
        above = [0] * n
        for x in reversed(order):
            a = 1 << x
            for y in upper[x]:
                a |= above[y]
            above[x] = a
        self.below, self.above, self.lo, self.hi = below, above, lo, hi


def check_lattice_axioms(P) -> AxiomReport:
    """Lattice, ranked, atomic and coatomic tests (plus the diamond property).

    Accepts a Poset or a FaceLattice. The candidate dimension is rank - 1.
    """
    if isinstance(P, FaceLattice):
        P = Poset.from_lattice(P)
    n = P.size
    if n == 0:
        raise AxiomViolation("empty poset")
    O = _Order(P)
    problems = []
    bottoms = [x for x in range(n) if not P.covers[x]]
    tops = [x for x in range(n) if not O.upper[x]]
    if len(bottoms) != 1 or len(tops) != 1:
        problems.append(f"{len(bottoms)} minimal and {len(tops)} maximal elements")
        return AxiomReport(False, False, False, False, False, None, problems)
    bot, top = bottoms[0], tops[0]
    ranked = all(O.lo[x] == O.hi[x] for x in range(n))
    if not ranked:
        problems.append("maximal chains of different lengths")
    rank = O.hi[top] if ranked else None

    lattice = True
    for x, y in itertools.combinations(range(n), 2):
        ub = O.above[x] & O.above[y]
        z = min(bits(ub), key=lambda e: O.hi[e])
        if O.above[z] != ub:
            lattice = False
            problems.append(f"elements {x} and {y} have no join")
            break

    atoms = [x for x in range(n) if P.covers[x] == (bot,)]
    coatoms = [x for x in range(n) if O.upper[x] == [top]]
    full = (1 << n) - 1
    atomic = True
    for x in range(n):
        if x == bot:
            continue
        meet_up = full
        for a in atoms:
            if (O.below[x] >> a) & 1:
                meet_up &= O.above[a]
        if meet_up != O.above[x]:
            atomic = False
            problems.append(f"element {x} is not the join of the atoms below it")
            break
    coatomic = True
    for x in range(n):
        if x == top:
            continue
        join_down = full
        for c in coatoms:
            if (O.above[x] >> c) & 1:
                join_down &= O.below[c]
        if join_down != O.below[x]:
            coatomic = False
            problems.append(f"element {x} is not the meet of the coatoms above it")
            break

    diamond = True
    for x in range(n):
        for z in range(n):
            if (O.above[x] >> z) & 1 and O.hi[z] - O.hi[x] == 2:
                between = popcount(O.above[x] & O.below[z]) - 2
                if between != 2:
                    diamond = False
                    break
        if not diamond:
            problems.append("an interval of length two is not a diamond")
            break
    return AxiomReport(lattice, ranked, atomic, coatomic, diamond, rank, problems)


# --------------------------------------------------------------------------

@dataclass
class SteinitzResult:
    answer: str  # "Yes", "No" or "Unsupported"
    reason: str
    certificate: Optional[dict] = None

    def to_json(self) -> dict:
        return {"answer": self.answer, "reason": self.reason, "certificate": self.certificate}


def _structure(P: Poset, O: _Order):
    n = P.size
    bot = next(x for x in range(n) if not P.covers[x])
    top = next(x for x in range(n) if not O.upper[x])
    by_rank: Dict[int, List[int]] = {}
    for x in range(n):
        by_rank.setdefault(O.hi[x], []).append(x)
    atoms = sorted(by_rank.get(1, []))
    atom_index = {a: i for i, a in enumerate(atoms)}

    def atom_set(x):
        return frozenset(atom_index[a] for a in atoms if (O.below[x] >> a) & 1)

    return bot, top, by_rank, atoms, atom_set


def two_cuts(G: nx.Graph) -> List[Tuple[int, int]]:
    """All vertex pairs whose removal disconnects ``G`` (exhaustive)."""
    out = []
    nodes = sorted(G.nodes)
    for u, v in itertools.combinations(nodes, 2):
        H = G.subgraph([w for w in nodes if w not in (u, v)])
        if H.number_of_nodes() and not nx.is_connected(H):
            out.append((u, v))
    return out


def trace_faces(rotation: Dict[int, List[int]]) -> List[List[int]]:
    """Faces of a rotation system: after arriving at ``v`` from ``u`` leave
    along the successor of ``u`` in the rotation at ``v``."""
    seen = set()
    faces = []
    for u in rotation:
        for v in rotation[u]:
            if (u, v) in seen:
                continue
            face = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                face.append(a)
                rot = rotation[b]
                a, b = b, rot[(rot.index(a) + 1) % len(rot)]
            faces.append(face)
    return faces


def verify_certificate(cert: dict, n_vertices: int, edges, facets) -> bool:
    """Rotation system is planar (Euler) and its faces are the given facets."""
    rotation = {int(k): [int(x) for x in v] for k, v in cert["rotation"].items()}
    E = {frozenset(e) for e in edges}
    if {frozenset((u, v)) for u in rotation for v in rotation[u]} != E:
        return False
    faces = trace_faces(rotation)
    if n_vertices - len(E) + len(faces) != 2:
        return False
    if sorted(sorted(f) for f in faces) != sorted(sorted(f) for f in facets):
        return False
    if any(len(set(f)) != len(f) for f in faces):
        return False
    G = nx.Graph()
    G.add_nodes_from(range(n_vertices))
    G.add_edges_from(tuple(e) for e in E)
    return not two_cuts(G)


def steinitz_3d(P) -> SteinitzResult:
    """Is the lattice the face lattice of a polytope of dimension at most 3?"""
    if isinstance(P, FaceLattice):
        P = Poset.from_lattice(P)
    report = check_lattice_axioms(P)
    if not report.ok:
        raise AxiomViolation("; ".join(report.problems) or "lattice axioms fail")
    d = report.candidate_dim
    if d >= 4:
        return SteinitzResult("Unsupported", f"candidate dimension {d} >= 4")
    O = _Order(P)
    bot, top, by_rank, atoms, atom_set = _structure(P, O)
    if d <= 0:
        return SteinitzResult("Yes", "empty set or point", {"dimension": d})
    if d == 1:
        if len(atoms) == 2:
            return SteinitzResult("Yes", "segment", {"dimension": 1})
        return SteinitzResult("No", "a segment has two vertices")
    edges = []
    for e in by_rank.get(2, []):
        s = atom_set(e)
        if len(s) != 2:
            return SteinitzResult("No", f"rank-2 element {e} has {len(s)} atoms, not 2")
        edges.append(tuple(sorted(s)))
    G = nx.Graph()
    G.add_nodes_from(range(len(atoms)))
    G.add_edges_from(edges)
    if d == 2:
        if len(atoms) >= 3 and nx.is_connected(G) and all(deg == 2 for _, deg in G.degree()):
            cycle = [u for u, _ in nx.find_cycle(G, 0)]
            return SteinitzResult("Yes", "polygon", {"dimension": 2, "cycle": cycle})
        return SteinitzResult("No", "atom graph is not a single cycle")
    # d == 3
    facets = [sorted(atom_set(c)) for c in by_rank.get(3, [])]
    planar, emb = nx.check_planarity(G)
    if not planar:
        return SteinitzResult("No", "atom graph is not planar")
    cuts = two_cuts(G) if len(atoms) > 3 else []
    if cuts:
        return SteinitzResult("No", "atom graph is not 3-connected", {"cut": list(cuts[0])})
    rotation = {v: list(emb.neighbors_cw_order(v)) for v in G.nodes}
    cert = {"dimension": 3, "rotation": {str(k): v for k, v in rotation.items()}}
    if not verify_certificate(cert, len(atoms), edges, facets):
        return SteinitzResult("No", "facets do not match the faces of the plane embedding")
    cert["faces"] = [sorted(f) for f in trace_faces(rotation)]
    return SteinitzResult("Yes", "planar, 3-connected, facets are the embedding faces", cert)
