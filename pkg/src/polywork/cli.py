"""``polywork`` command-line front end.

Exit codes: 0 computed, 1 a decision problem answered No, 2 input error,
3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

from . import complex as cx
from . import cube, experiments, generators, hull, iso, kernel, lattice, metrics, simple, steinitz
from .errors import InputError, PolyworkError, SearchBudgetExceeded
from .formats import (
    dumps,
    format_ext,
    format_ine,
    format_polytope,
    parse_cdd,
    parse_dimacs,
    parse_lp,
    parse_vector,
    read_json,
)
from .polytope import HPolytope, VPolytope, fmt_q

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class Outcome:
    text: str
    answer: Any
    certificate: Any = None
    stats: Dict[str, Any] = field(default_factory=dict)
    decision: Optional[bool] = None  # None for non-decision problems

    @property
    def code(self) -> int:
        return EXIT_NO if self.decision is False else EXIT_OK


def _yes_no(flag: bool, certificate=None, stats=None) -> Outcome:
    word = "Yes" if flag else "No"
    return Outcome(word + "\n", word, certificate, stats or {}, bool(flag))


def _jsonable(x):
    if isinstance(x, Fraction):
        return fmt_q(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


# --------------------------------------------------------------------------
# loaders

def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_polytope(path: str):
    return parse_cdd(_read(path))


def load_h(path: str) -> HPolytope:
    P = load_polytope(path)
    if not isinstance(P, HPolytope):
        raise InputError(f"{path}: expected an H-representation")
    return P


def load_v(path: str) -> VPolytope:
    P = load_polytope(path)
    if not isinstance(P, VPolytope):
        raise InputError(f"{path}: expected a V-representation")
    return P


def load_incidences(path: str, force: bool = False) -> lattice.IncidenceMatrix:
    """Incidences from an ``.inc`` file, or computed from an ``.ine``/``.ext`` file."""
    text = _read(path)
    if force or path.endswith(".inc"):
        return lattice.IncidenceMatrix.from_text(text)
    P = parse_cdd(text)
    if isinstance(P, HPolytope):
        return lattice.vertex_facet_incidences(P)
    return iso.vertex_facet_matrix(P)


def load_lattice(path: str, force_inc: bool = False) -> lattice.FaceLattice:
    if path.endswith(".json"):
        return lattice.FaceLattice.from_json(read_json(_read(path)))
    return lattice.build_lattice(load_incidences(path, force_inc))


def load_complex(path: str) -> cx.SimplicialComplex:
    return cx.SimplicialComplex.from_json(read_json(_read(path)))


def load_graph(path: str) -> simple.AbstractGraph:
    return simple.AbstractGraph.from_text(_read(path))


def load_oracle(args) -> cube.CubeOracle:
    if args.gen:
        name, _, param = args.gen.partition(":")
        try:
            d = int(param)
        except ValueError:
            raise InputError("--gen expects NAME:D, e.g. klee_minty:5") from None
        if name in ("linear", "product") and args.seed is None:
            raise InputError(f"{name} oracles are random and need --seed")
        return experiments.make_oracle(name, d, args.seed or 0)
    if not args.inputs:
        raise InputError("give an oracle table file or --gen NAME:D")
    return cube.CubeOracle.from_text(_read(args.inputs[0]))


# --------------------------------------------------------------------------
# handlers taking one input path

def h_vertices(args, path):
    V = hull.enumerate_vertices(load_h(path))
    return Outcome(format_ext(V), len(V.points), None, {"vertices": len(V.points)})


def h_facets(args, path):
    H = hull.enumerate_facets(load_v(path))
    return Outcome(format_ine(H), H.m, None, {"rows": H.m})


def h_lattice(args, path):
    L = load_lattice(path, args.incidences)
    data = L.to_json()
    return Outcome(dumps(data), data, None, {"phi": L.phi, "work": L.work})


def h_fvector(args, path):
    L = load_lattice(path, args.incidences)
    f = L.f_vector()
    return Outcome(" ".join(map(str, f)) + "\n", list(f), None, {"phi": L.phi})


def h_skeleton(args, path):
    L = lattice.k_skeleton(load_incidences(path, args.incidences), args.k)
    data = L.to_json()
    return Outcome(dumps(data), data, None, {"faces": L.phi})


def h_dim(args, path):
    if args.incidences or path.endswith(".inc"):
        d = lattice.dimension_from_incidences(load_incidences(path, True))
    else:
        d = kernel.affine_dimension(load_polytope(path))
    return Outcome(f"{d}\n", d)


def h_degenerate(args, path):
    return _yes_no(metrics.is_degenerate(load_h(path)))


def h_nvertices(args, path):
    n = metrics.count_vertices(load_h(path))
    return Outcome(f"{n}\n", n)


def h_basis_ext(args, path):
    data = read_json(_read(path))
    if not isinstance(data, dict) or not {"A", "b", "S"} <= set(data):
        raise InputError('basis-ext JSON needs "A", "b" and "S" (0-based columns)')
    return _yes_no(metrics.feasible_basis_extension(data["A"], data["b"], data["S"]))


def h_integral(args, path):
    return _yes_no(metrics.is_integral(load_h(path)))


def h_diameter(args, path):
    k = metrics.diameter(load_h(path))
    return Outcome(f"{k}\n", k)


def h_triangulate(args, path):
    T = metrics.triangulate(load_v(path))
    simplices = [list(s) for s in T.simplices]
    text = "".join(" ".join(map(str, s)) + "\n" for s in simplices)
    return Outcome(text, simplices, {"points": _jsonable(T.points)}, {"simplices": len(T)})


def h_mintri(args, path):
    if args.K is None:
        raise InputError("mintri needs --K")
    return _yes_no(metrics.min_triangulation(load_v(path), args.K, args.budget))


def h_volume(args, path):
    P = load_polytope(path)
    vol, full = metrics.volume(P, with_flag=True)
    return Outcome(fmt_q(vol) + "\n", fmt_q(vol), None, {"full_dimensional": full})


def h_lp(args, path):
    res = kernel.solve_lp(parse_lp(_read(path)), lexicographic=args.lex)
    lines = [res.status.value]
    if res.value is not None:
        lines.append(fmt_q(res.value))
        lines.append(" ".join(fmt_q(x) for x in res.point))
    answer = {"status": res.status.value, "value": _jsonable(res.value), "point": _jsonable(res.point)}
    return Outcome("\n".join(lines) + "\n", answer)


def h_optvertex(args, path):
    if args.c is None:
        raise InputError("optvertex needs --c")
    val, v = metrics.optimal_vertex(load_h(path), parse_vector(args.c))
    if v is None:
        return Outcome("inf\n", "inf")
    return Outcome(f"{fmt_q(val)}\n{' '.join(fmt_q(x) for x in v)}\n",
                   {"value": fmt_q(val), "vertex": _jsonable(v)})


def h_valvertex(args, path):
    if args.c is None or args.value is None:
        raise InputError("valvertex needs --c and --value")
    return _yes_no(metrics.vertex_with_value(load_h(path), parse_vector(args.c), args.value))


def h_reconstruct(args, path):
    F = simple.reconstruct_facets(load_graph(path), args.budget)
    lists = F.to_lists()
    return Outcome(json.dumps(lists) + "\n", lists, None, {"facets": len(lists)})


def h_aof(args, path):
    G = load_graph(path)
    if args.facets:
        F = simple.FacetSystem.from_json(G.n, read_json(_read(args.facets)))
    else:
        F = simple.reconstruct_facets(G, args.budget)
    O = simple.find_AOF(G, F, args.budget)
    arcs = O.to_json()
    return Outcome(json.dumps(arcs) + "\n", arcs, {"facets": F.to_lists()},
                   {"score": simple.kalai_score(O)})


def h_selfdual(args, path):
    cert = iso.self_dual(load_lattice(path, args.incidences), args.budget)
    return _yes_no(cert is not None, cert.to_json() if cert else None)


def h_steinitz(args, path):
    res = steinitz.steinitz_3d(load_lattice(path, args.incidences))
    out = Outcome(f"{res.answer}\n", res.answer, res.certificate, {"reason": res.reason})
    if res.answer == "No":
        out.decision = False
    return out


def h_euler(args, path):
    D = load_complex(path)
    chi = cx.euler_characteristic(D, engine=args.engine, budget=args.budget)
    return Outcome(f"{chi}\n", chi, None,
                   {"intersections": len(cx.intersection_closures(D, args.budget))})


def h_cfvector(args, path):
    f = cx.f_vector_complex(load_complex(path), args.budget)
    return Outcome(" ".join(map(str, f)) + "\n", list(f))


def h_sat2complex(args, path):
    n, clauses = parse_dimacs(_read(path))
    D, Dbar = cx.sat_to_complex(clauses, n, args.budget)
    f, fbar = cx.count_faces(D, n - 1), cx.count_faces(Dbar, n - 1)
    answer = {"delta": D.to_json(), "delta_bar": Dbar.to_json(),
              "f_n_minus_1": f, "f_n_minus_1_bar": fbar}
    text = f"f_{n - 1}(Delta) = {f}\nf_{n - 1}(Delta_bar) = {fbar}\n" + dumps(answer)
    return Outcome(text, answer, None, {"binomial": f + fbar})


def h_homology(args, path):
    D = load_complex(path)
    degrees = [args.i] if args.i is not None else list(range(max(D.dim, 0) + 1))
    groups = {i: cx.homology(D, i, args.budget) for i in degrees}
    text = "".join(g.format(i) + "\n" for i, g in groups.items())
    return Outcome(text, {str(i): g.to_json() for i, g in groups.items()})


def h_shellable(args, path):
    D = load_complex(path)
    order = cx.shellable(D, args.budget)
    return _yes_no(order is not None, {"order": list(order)} if order is not None else None)


def h_partitionable(args, path):
    D = load_complex(path)
    scheme = cx.partitionable(D, args.budget)
    return _yes_no(scheme is not None, scheme.to_json() if scheme else None)


def h_pseudomanifold(args, path):
    return _yes_no(cx.is_pseudomanifold(load_complex(path)))


SINGLE: Dict[str, Callable] = {
    "vertices": h_vertices, "facets": h_facets, "lattice": h_lattice, "fvector": h_fvector,
    "skeleton": h_skeleton, "dim": h_dim, "degenerate": h_degenerate, "nvertices": h_nvertices,
    "basis-ext": h_basis_ext, "integral": h_integral, "diameter": h_diameter,
    "triangulate": h_triangulate, "mintri": h_mintri, "volume": h_volume, "lp": h_lp,
    "optvertex": h_optvertex, "valvertex": h_valvertex, "reconstruct": h_reconstruct,
    "aof": h_aof, "selfdual": h_selfdual, "steinitz": h_steinitz, "euler": h_euler,
    "cfvector": h_cfvector, "sat2complex": h_sat2complex, "homology": h_homology,
    "shellable": h_shellable, "partitionable": h_partitionable,
    "pseudomanifold": h_pseudomanifold,
}


# --------------------------------------------------------------------------
# handlers taking two inputs or none

def _two(args):
    if len(args.inputs) != 2:
        raise InputError(f"{args.command} takes exactly two input files")
    return args.inputs


def h_verify(args):
    a, b = _two(args)
    return _yes_no(hull.verify(load_h(a), load_v(b)))


def h_contain(args):
    a, b = _two(args)
    return _yes_no(hull.contains(load_h(a), load_v(b)))


def h_verify_facets(args):
    g, f = _two(args)
    G = load_graph(g)
    F = simple.FacetSystem.from_json(G.n, read_json(_read(f)))
    return _yes_no(simple.verify_facet_system(G, F, args.budget))


def _iso_outcome(cert):
    word = "ISOMORPHIC" if cert else "NOT-ISOMORPHIC"
    return Outcome(word + "\n", word, cert.to_json() if cert else None, {}, cert is not None)


def h_iso(args):
    a, b = _two(args)
    if a.endswith(".json") or b.endswith(".json"):
        cert = iso.lattice_isomorphic(load_lattice(a), load_lattice(b), args.budget)
    else:
        cert = iso.incidence_isomorphic(load_incidences(a, args.incidences),
                                        load_incidences(b, args.incidences), args.budget)
    return _iso_outcome(cert)


def h_affeq(args):
    a, b = _two(args)
    return _iso_outcome(iso.affinely_equivalent(load_v(a), load_v(b)))


def h_combeq(args):
    a, b = _two(args)
    return _iso_outcome(iso.combinatorially_equivalent(load_v(a), load_v(b), args.budget))


def h_uso_validate(args):
    o = load_oracle(args)
    ok = cube.validate_uso(o)
    return _yes_no(ok, None, {"calls": o.calls, "d": o.d})


def h_uso_sink(args):
    alg = args.algorithm
    if alg != "exhaustive" and args.seed is None:
        raise InputError(f"{alg} is randomised: --seed is required")
    if args.csv:
        if not args.gen:
            raise InputError("--csv runs need --gen NAME:D")
        name, _, param = args.gen.partition(":")
        seeds = range(args.seed, args.seed + args.runs)
        algs = ["random_facet", "sw"] if alg == "exhaustive" else [alg]
        rows = experiments.run([int(param)], [name], algs, seeds)
        return Outcome(experiments.to_csv(rows), rows)
    o = load_oracle(args)
    rep = cube.sink(o, alg, args.seed)
    return Outcome(rep.sink_bits + "\n", rep.sink_bits, None, rep.to_json())


def h_gen(args):
    if not args.inputs:
        raise InputError("gen needs a generator name")
    name, params = args.inputs[0], args.inputs[1:]
    obj = generators.generate(name, *params)
    if isinstance(obj, cx.SimplicialComplex):
        text = json.dumps(obj.to_json()) + "\n"
    else:
        text = format_polytope(obj)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        return Outcome("", args.output)
    return Outcome(text, text)


MULTI: Dict[str, Callable] = {
    "verify": h_verify, "contain": h_contain, "verify-facets": h_verify_facets,
    "iso": h_iso, "affeq": h_affeq, "combeq": h_combeq,
    "uso-validate": h_uso_validate, "uso-sink": h_uso_sink, "gen": h_gen,
}

COMMANDS = sorted(list(SINGLE) + list(MULTI))


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polywork", description="Exact polytope and complex computations.")
    p.add_argument("command", choices=COMMANDS, metavar="COMMAND",
                   help="one of: " + ", ".join(COMMANDS))
    p.add_argument("inputs", nargs="*", help="input files (or generator name and parameters for gen)")
    p.add_argument("--json", action="store_true", help="machine-readable envelope output")
    p.add_argument("--seed", type=int, help="seed for randomised commands (required there)")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers across input files")
    p.add_argument("--budget", type=int, help="search node cap (default: POLYWORK_BUDGET or 2000000)")
    p.add_argument("--incidences", action="store_true", help="treat inputs as .inc incidence files")
    p.add_argument("-k", "--k", type=int, default=1, help="skeleton dimension")
    p.add_argument("-K", "--K", type=int, help="simplex bound for mintri")
    p.add_argument("--c", help="objective vector, e.g. '1,2,-1'")
    p.add_argument("--value", help="target objective value for valvertex")
    p.add_argument("--lex", action="store_true", help="lexicographically smallest LP optimum")
    p.add_argument("--facets", help="facet system JSON for aof")
    p.add_argument("--gen", help="cube oracle generator NAME:D (linear, klee_minty, product)")
    p.add_argument("--algorithm", default="random_facet",
                   choices=["random_facet", "sw", "exhaustive"], help="sink-finding algorithm")
    p.add_argument("--csv", action="store_true", help="uso-sink: CSV rows over --runs seeds")
    p.add_argument("--runs", type=int, default=1, help="number of consecutive seeds for --csv")
    p.add_argument("--engine", default="closure", choices=["closure", "direct"])
    p.add_argument("-i", type=int, help="homology degree (default: all)")
    p.add_argument("-o", "--output", help="write gen output to this file")
    return p


def _error(exc: Exception) -> int:
    return EXIT_BUDGET if isinstance(exc, SearchBudgetExceeded) else EXIT_INPUT


def _run_one(args, path) -> Outcome:
    handler = SINGLE.get(args.command)
    return handler(args, path) if handler else MULTI[args.command](args)


def _guarded(args, path):
    try:
        return _run_one(args, path), None
    except (PolyworkError, ValueError, ZeroDivisionError) as exc:
        return None, (type(exc).__name__, str(exc), _error(exc))


def _emit(args, out: Optional[Outcome], err, label: Optional[str]) -> int:
    if err is not None:
        kind, msg, code = err
        if args.json:
            sys.stderr.write(json.dumps({"problem": args.command, "error": kind,
                                         "message": msg, "input": label}) + "\n")
        else:
            where = f"{label}: " if label else ""
            sys.stderr.write(f"error: {where}{kind}: {msg}\n")
        return code
    if args.json:
        env = {"problem": args.command, "answer": _jsonable(out.answer),
               "certificate": _jsonable(out.certificate), "stats": _jsonable(out.stats)}
        if label:
            env["input"] = label
        sys.stdout.write(json.dumps(env) + "\n")
    else:
        if label:
            sys.stdout.write(f"# {label}\n")
        sys.stdout.write(out.text)
    return out.code


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_intermixed_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    if args.budget is not None and args.budget <= 0:
        sys.stderr.write("error: --budget must be positive\n")
        return EXIT_INPUT
    saved = os.environ.get("POLYWORK_BUDGET")
    if args.budget is not None:
        os.environ["POLYWORK_BUDGET"] = str(args.budget)
    try:
        return _dispatch(args)
    finally:
        if saved is None:
            os.environ.pop("POLYWORK_BUDGET", None)
        else:
            os.environ["POLYWORK_BUDGET"] = saved


def _dispatch(args) -> int:
    if args.command in SINGLE:
        if not args.inputs:
            sys.stderr.write(f"error: {args.command} needs at least one input file\n")
            return EXIT_INPUT
        paths = args.inputs
        if args.jobs > 1 and len(paths) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(_guarded, [args] * len(paths), paths))
        else:
            results = [_guarded(args, p) for p in paths]
        label = len(paths) > 1
        codes = [_emit(args, out, err, p if label else None) for (out, err), p in zip(results, paths)]
        return max(codes)
    out, err = _guarded(args, None)
    return _emit(args, out, err, None)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
