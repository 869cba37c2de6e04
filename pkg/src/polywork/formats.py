"""Readers and writers for the on-disk formats.

* ``.ine`` / ``.ext``: cdd-flavoured H- and V-descriptions with exact rationals
* ``.inc``: incidence matrices, one 0/1 string per vertex
* JSON for lattices, complexes, facet systems, linear programs
* DIMACS CNF, edge-list graphs and cube-oracle sign tables
"""

from __future__ import annotations

import json
from typing import List, Sequence, Tuple, Union

from .errors import InputError
from .polytope import HPolytope, VPolytope, fmt_q, q

Polytope = Union[HPolytope, VPolytope]


def _data_lines(text: str) -> List[str]:
    out = []
    for ln in text.splitlines():
        ln = ln.split("*")[0].strip()
        if ln:
            out.append(ln)
    return out


def parse_cdd(text: str) -> Polytope:
    """Parse an ``.ine`` or ``.ext`` file.

    H rows ``b a_1 .. a_d`` mean ``b + a.x >= 0``; rows listed on a
    ``linearity`` line are equations and become two opposite inequalities.
    V rows are ``1 v_1 .. v_d``; rays (leading 0) are rejected.
    """
    lines = _data_lines(text)
    kind = "H"
    linearity: List[int] = []
    i = 0
    while i < len(lines) and lines[i].lower() != "begin":
        low = lines[i].lower()
        if low.startswith("v-representation"):
            kind = "V"
        elif low.startswith("h-representation"):
            kind = "H"
        elif low.startswith("linearity"):
            parts = low.split()[1:]
            try:
                k = int(parts[0])
                linearity = [int(x) - 1 for x in parts[1:1 + k]]
            except (IndexError, ValueError):
                raise InputError(f"bad linearity line {lines[i]!r}") from None
            if len(linearity) != k:
                raise InputError("linearity count does not match its index list")
        i += 1
    if i == len(lines):
        raise InputError("missing 'begin'")
    try:
        header = lines[i + 1].split()
        m, cols = int(header[0]), int(header[1])
    except (IndexError, ValueError):
        raise InputError("expected 'm d+1 rational' after 'begin'") from None
    if len(header) > 2 and header[2] not in ("rational", "integer"):
        raise InputError(f"number type {header[2]!r} not supported (use rational or integer)")
    body = lines[i + 2:i + 2 + m]
    if len(body) != m:
        raise InputError(f"expected {m} data rows")
    if i + 2 + m >= len(lines) or lines[i + 2 + m].lower() != "end":
        raise InputError("missing 'end'")
    rows = []
    for ln in body:
        parts = ln.split()
        if len(parts) != cols:
            raise InputError(f"row {ln!r} has {len(parts)} entries, expected {cols}")
        rows.append(tuple(q(x) for x in parts))
    d = cols - 1
    if d < 0:
        raise InputError("column count must be at least 1")
    if kind == "V":
        if linearity:
            raise InputError("linearity in a V-description is not supported")
        pts = []
        for r in rows:
            if r[0] != 1:
                raise InputError("V rows must start with 1 (rays are not supported)")
            pts.append(r[1:])
        return VPolytope(d, tuple(pts))
    if any(k < 0 or k >= m for k in linearity):
        raise InputError("linearity index out of range")
    out = []
    for k, r in enumerate(rows):
        out.append(r)
        if k in linearity:
            out.append(tuple(-x for x in r))
    return HPolytope(d, tuple(out))


def format_ine(P: HPolytope) -> str:
    lines = ["H-representation", "begin", f"{P.m} {P.d + 1} rational"]
    lines += [" ".join(fmt_q(x) for x in r) for r in P.rows]
    lines.append("end")
    return "\n".join(lines) + "\n"


def format_ext(Q: VPolytope) -> str:
    lines = ["V-representation", "begin", f"{len(Q.points)} {Q.d + 1} rational"]
    lines += [" ".join(["1"] + [fmt_q(x) for x in p]) for p in Q.points]
    lines.append("end")
    return "\n".join(lines) + "\n"


def format_polytope(P: Polytope) -> str:
    return format_ine(P) if isinstance(P, HPolytope) else format_ext(P)


def read_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def parse_dimacs(text: str) -> Tuple[int, List[List[int]]]:
    """``(nvars, clauses)`` from DIMACS CNF."""
    nvars = None
    nclauses = None
    tokens: List[int] = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("c") or ln.startswith("%"):
            continue
        if ln.startswith("p"):
            parts = ln.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise InputError(f"bad problem line {ln!r}")
            try:
                nvars, nclauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise InputError(f"bad problem line {ln!r}") from None
            continue
        try:
            tokens += [int(t) for t in ln.split()]
        except ValueError:
            raise InputError(f"bad clause line {ln!r}") from None
    if nvars is None:
        raise InputError("missing 'p cnf' line")
    clauses, cur = [], []
    for t in tokens:
        if t == 0:
            clauses.append(cur)
            cur = []
        else:
            if abs(t) > nvars:
                raise InputError(f"literal {t} exceeds {nvars} variables")
            cur.append(t)
    if cur:
        clauses.append(cur)
    if nclauses is not None and len(clauses) != nclauses:
        raise InputError(f"header announces {nclauses} clauses, found {len(clauses)}")
    return nvars, clauses


def format_dimacs(nvars: int, clauses: Sequence[Sequence[int]]) -> str:
    lines = [f"p cnf {nvars} {len(clauses)}"]
    lines += [" ".join(str(l) for l in cl) + " 0" for cl in clauses]
    return "\n".join(lines) + "\n"


def parse_lp(text: str):
    """LP JSON ``{"A": [[...]], "b": [...], "c": [...], "form": ...}``.

    The inequality form means ``b + A x >= 0``; the standard form
    ``A x = b, x >= 0``. Entries may be integers or ``"p/q"`` strings.
    """
    from .kernel import LinearProgram

    data = read_json(text)
    if not isinstance(data, dict) or not {"A", "b", "c"} <= set(data):
        raise InputError('LP JSON needs "A", "b" and "c"')
    return LinearProgram.make(data["A"], data["b"], data["c"], data.get("form", "inequality"))


def parse_vector(text: str) -> Tuple:
    parts = [p for p in text.replace(",", " ").split() if p]
    if not parts:
        raise InputError("empty vector")
    return tuple(q(p) for p in parts)
