"""Unique-sink orientations of the d-cube behind a counting oracle.

Vertices are ints whose bit ``i`` is coordinate ``i``. A signature is an int
mask: bit ``i`` set (``'+'``) means the edge from ``v`` to ``v ^ (1 << i)``
leaves ``v``. The sink is the vertex with signature 0 (all ``'-'``).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import DegenerateWeights, InconsistentOracle, InputError, NonTermination, NotUSO


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


def sign_string(sig: int, d: int) -> str:
    return "".join("+" if (sig >> i) & 1 else "-" for i in range(d))


def parse_sign_string(s: str) -> int:
    if set(s) - {"+", "-"}:
        raise InputError(f"bad sign string {s!r}")
    return sum(1 << i for i, ch in enumerate(s) if ch == "+")


def vertex_string(v: int, d: int) -> str:
    return "".join(str((v >> i) & 1) for i in range(d))


class CubeOracle:
    """Counting wrapper around a signature function ``{0,1}^d -> {+,-}^d``."""

    def __init__(self, d: int, fn: Callable[[int], int], name: str = "oracle"):
        if d < 0:
            raise InputError("cube dimension must be non-negative")
        self.d = d
        self._fn = fn
        self.name = name
        self.calls = 0

    def eval(self, v: int) -> int:
        if v < 0 or v >> self.d:
            raise InputError(f"vertex {v} outside the {self.d}-cube")
        self.calls += 1
        return self._fn(v)

    def peek(self, v: int) -> int:
        """Evaluate without counting (for generators and reports only)."""
        return self._fn(v)

    def reset(self) -> None:
        self.calls = 0

    def table(self) -> List[int]:
        return [self._fn(v) for v in range(1 << self.d)]

    def to_text(self) -> str:
        """``2^d`` lines; line ``v`` holds the signature of vertex ``v``."""
        return "".join(sign_string(s, self.d) + "\n" for s in self.table())

    @classmethod
    def from_table(cls, d: int, table: Sequence[int], name: str = "table") -> "CubeOracle":
        if len(table) != 1 << d:
            raise InputError(f"expected {1 << d} signatures, got {len(table)}")
        tab = tuple(table)
        if any(s < 0 or s >> d for s in tab):
            raise InputError("signature has bits beyond d")
        return cls(d, tab.__getitem__, name)

    @classmethod
    def from_text(cls, text: str) -> "CubeOracle":
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines:
            raise InputError("empty oracle table")
        d = len(lines[0])
        if len(lines) != 1 << d or any(len(ln) != d for ln in lines):
            raise InputError(f"an oracle table for d = {d} needs {1 << d} lines of {d} signs")
        return cls.from_table(d, [parse_sign_string(ln) for ln in lines], "table")


# --------------------------------------------------------------------------
# generators

def linear(weights: Sequence) -> CubeOracle:
    """Orientation towards smaller ``w . v``; weights must be generic."""
    w = list(weights)
    d = len(w)
    if any(x == 0 for x in w):
        raise DegenerateWeights("zero weight")
    if d <= 16:
        values = set()
        for v in range(1 << d):
            val = sum(w[i] for i in range(d) if (v >> i) & 1)
            if val in values:
                raise DegenerateWeights("two vertices share an objective value")
            values.add(val)
    pos = sum(1 << i for i in range(d) if w[i] > 0)
    neg = ((1 << d) - 1) & ~pos

    def fn(v: int) -> int:
        # leaving along i lowers the value: 1 -> 0 with w_i > 0, or 0 -> 1 with w_i < 0
        return (v & pos) | (~v & neg)

    return CubeOracle(d, fn, f"linear{tuple(w)}")


def random_linear(d: int, rng: random.Random) -> CubeOracle:
    while True:
        w = [rng.choice((-1, 1)) * rng.randint(1, 10 ** 6) for _ in range(d)]
        try:
            return linear(w)
        except DegenerateWeights:  # pragma: no cover - astronomically rare
            continue


def klee_minty(d: int) -> CubeOracle:
    """``'+'`` at coordinate ``i`` iff ``v_i`` xor the parity of ``v_{i+1..}`` is 1."""

    def fn(v: int) -> int:
        out = 0
        for i in range(d):
            if ((v >> i) & 1) ^ _parity(v >> (i + 1)):
                out |= 1 << i
        return out

    return CubeOracle(d, fn, f"klee_minty({d})")


def product(a: CubeOracle, b: CubeOracle) -> CubeOracle:
    """Coordinates of ``a`` first, then those of ``b``."""
    da, fa, fb = a.d, a._fn, b._fn
    mask = (1 << da) - 1
    return CubeOracle(a.d + b.d, lambda v: fa(v & mask) | (fb(v >> da) << da), f"product({a.name},{b.name})")


def flip(o: CubeOracle, edges: Iterable[Tuple[int, int]], validate: bool = True) -> CubeOracle:
    """Reverse the edges given as ``(vertex, coordinate)`` pairs.

    With ``validate`` the result must be a USO, otherwise NotUSO is raised.
    """
    tab = o.table()
    for v, i in edges:
        if not 0 <= i < o.d:
            raise InputError(f"coordinate {i} out of range")
        tab[v] ^= 1 << i
        tab[v ^ (1 << i)] ^= 1 << i
    out = CubeOracle.from_table(o.d, tab, f"flip({o.name})")
    if validate and not validate_uso(CubeOracle.from_table(o.d, tab)):
        raise NotUSO("flipped orientation is not a unique-sink orientation")
    return out


# --------------------------------------------------------------------------
# validation

def check_consistency(table: Sequence[int], d: int) -> None:
    for v, s in enumerate(table):
        for i in range(d):
            if ((s >> i) & 1) == ((table[v ^ (1 << i)] >> i) & 1):
                raise InconsistentOracle(
                    f"vertices {vertex_string(v, d)} and {vertex_string(v ^ (1 << i), d)} "
                    f"disagree on the direction of their edge"
                )


def validate_uso(o: CubeOracle, cap: int = 16) -> bool:
    """Every one of the ``3^d`` subcubes has exactly one sink.

    Reads all ``2^d`` signatures through the oracle. ``w`` is the sink of the
    subcube spanned at ``w`` by coordinates ``J`` iff ``J`` avoids the
    signature of ``w``; the map ``(w, J) -> subcube`` must be a bijection.
    """
    d = o.d
    if d > cap:
        raise InputError(f"full validation capped at d = {cap}")
    table = [o.eval(v) for v in range(1 << d)]
    check_consistency(table, d)
    full = (1 << d) - 1
    seen = set()
    for w, s in enumerate(table):
        free = full & ~s
        J = free
        while True:
            key = (w & ~J, J)
            if key in seen:
                return False
            seen.add(key)
            if J == 0:
                break
            J = (J - 1) & free
    return len(seen) == 3 ** d


def is_uso_pairwise(table: Sequence[int], d: int) -> bool:
    """Independent check: ``(u ^ v) & (s(u) ^ s(v)) != 0`` for all ``u != v``."""
    n = 1 << d
    return all((u ^ v) & (table[u] ^ table[v]) for u, v in combinations(range(n), 2))


# --------------------------------------------------------------------------
# sink finding

@dataclass(frozen=True)
class SinkReport:
    sink: int
    d: int
    calls: int
    algorithm: str
    seed: Optional[int]

    @property
    def sink_bits(self) -> str:
        return vertex_string(self.sink, self.d)

    @property
    def alpha(self) -> float:
        """Measured base ``calls^(1/d)``."""
        return self.calls ** (1 / self.d) if self.d else float(self.calls)

    def to_json(self) -> dict:
        return {"sink": self.sink_bits, "calls": self.calls, "algorithm": self.algorithm,
                "seed": self.seed, "alpha": self.alpha}


class _Memo:
    """Caches evaluations so each vertex costs at most one oracle call."""

    def __init__(self, o: CubeOracle):
        self.o = o
        self.cache: Dict[int, int] = {}
        self.cap = 1 << (o.d + 1)
        self.steps = 0

    def __call__(self, v: int) -> int:
        self.steps += 1
        if self.steps > self.cap * max(1, self.o.d):
            raise NonTermination("sink search", self.cap)
        s = self.cache.get(v)
        if s is None:
            s = self.o.eval(v)
            self.cache[v] = s
            if len(self.cache) > self.cap:  # pragma: no cover - impossible on a cube
                raise NonTermination("sink search", self.cap)
        return s


def _finish(o: CubeOracle, ev: _Memo, sink: int, start_calls: int, name: str, seed) -> SinkReport:
    if ev(sink) != 0:
        raise NotUSO(f"{name} ended at {vertex_string(sink, o.d)}, which is not a sink")
    return SinkReport(sink, o.d, o.calls - start_calls, name, seed)


def exhaustive_sink(o: CubeOracle) -> SinkReport:
    """Scan every vertex; the reference answer."""
    start = o.calls
    sinks = [v for v in range(1 << o.d) if o.eval(v) == 0]
    if len(sinks) != 1:
        raise NotUSO(f"{len(sinks)} global sinks")
    return SinkReport(sinks[0], o.d, o.calls - start, "exhaustive", None)


def random_facet_sink(o: CubeOracle, seed: int) -> SinkReport:
    """Random-facet simplex: solve a random facet through the current vertex;
    if its sink leaves along the fixed coordinate, solve the opposite facet."""
    rng = random.Random(seed)
    start = o.calls
    ev = _Memo(o)
    d = o.d

    def rf(v: int, coords: List[int]) -> int:
        if not coords:
            return v
        i = coords[rng.randrange(len(coords))]
        rest = [c for c in coords if c != i]
        u = rf(v, rest)
        if (ev(u) >> i) & 1:
            return rf(u ^ (1 << i), rest)
        return u

    v0 = rng.randrange(1 << d)
    return _finish(o, ev, rf(v0, list(range(d))), start, "random_facet", seed)


def sw_sink(o: CubeOracle, seed: int) -> SinkReport:
    """Product strategy: peel off one random coordinate at a time.

    For coordinate ``i`` the sinks of the ``i``-edges induce a USO on the
    remaining coordinates whose sink lies on the edge holding the global sink.
    An edge is solved by evaluating a random endpoint and jumping across when
    that endpoint leaves along ``i`` (expected 1.5 evaluations per level).
    """
    rng = random.Random(seed)
    start = o.calls
    ev = _Memo(o)
    d = o.d

    def base(w: int) -> Tuple[int, int]:
        return w, ev(w)

    f = base
    order = list(range(d))
    rng.shuffle(order)
    for i in order:
        f = _edge_solver(f, i, rng)
    v0 = rng.randrange(1 << d)
    sink, _ = f(v0)
    return _finish(o, ev, sink, start, "sw_product", seed)


def _edge_solver(f, i: int, rng: random.Random):
    bit = 1 << i

    def g(w: int) -> Tuple[int, int]:
        if rng.random() < 0.5:
            w ^= bit
        u, s = f(w)
        if (s >> i) & 1:
            return f(u ^ bit)
        return u, s

    return g


def sink(o: CubeOracle, algorithm: str = "random_facet", seed: Optional[int] = None) -> SinkReport:
    if algorithm == "exhaustive":
        return exhaustive_sink(o)
    if seed is None:
        raise InputError(f"{algorithm} is randomised and needs a seed")
    if algorithm == "random_facet":
        return random_facet_sink(o, seed)
    if algorithm in ("sw", "sw_product"):
        return sw_sink(o, seed)
    raise InputError(f"unknown algorithm {algorithm!r}")


def rf_bound(d: int) -> float:
    """``e^{2 sqrt d} - 1``."""
    return math.exp(2 * math.sqrt(d)) - 1
