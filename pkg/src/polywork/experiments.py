"""Seeded sink-finding runs over generated cube orientations, as CSV rows."""

from __future__ import annotations

import csv
import io
import random
from typing import Iterable, List, Sequence

from .cube import (
    CubeOracle,
    exhaustive_sink,
    klee_minty,
    product,
    random_facet_sink,
    random_linear,
    sw_sink,
)
from .errors import InputError

COLUMNS = ("d", "generator", "algorithm", "seed", "calls", "sink")

ALGORITHMS = {
    "random_facet": random_facet_sink,
    "sw": sw_sink,
}


def make_oracle(generator: str, d: int, seed: int) -> CubeOracle:
    """``linear`` (random weights from ``seed``), ``klee_minty`` or ``product``
    (random linear on the low half times Klee-Minty on the rest)."""
    rng = random.Random(seed)
    if generator == "linear":
        return random_linear(d, rng)
    if generator == "klee_minty":
        return klee_minty(d)
    if generator == "product":
        return product(random_linear(d // 2, rng), klee_minty(d - d // 2))
    raise InputError(f"unknown generator {generator!r}")


def run(ds: Iterable[int], generators: Sequence[str], algorithms: Sequence[str],
        seeds: Iterable[int], check: bool = True) -> List[dict]:
    """One row per (d, generator, algorithm, seed).

    With ``check`` every sink is compared against an exhaustive scan.
    """
    rows = []
    seeds = list(seeds)
    for d in ds:
        for gen in generators:
            for seed in seeds:
                o = make_oracle(gen, d, seed)
                ref = exhaustive_sink(o).sink if check else None
                for alg in algorithms:
                    if alg not in ALGORITHMS:
                        raise InputError(f"unknown algorithm {alg!r}")
                    o.reset()
                    rep = ALGORITHMS[alg](o, seed)
                    if check and rep.sink != ref:  # pragma: no cover - would be a bug
                        raise AssertionError(f"{alg} missed the sink on {gen} d={d} seed={seed}")
                    rows.append({"d": d, "generator": gen, "algorithm": alg, "seed": seed,
                                 "calls": rep.calls, "sink": rep.sink_bits})
    return rows


def to_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()
