"""Realized polytopes shared by several test modules."""

from functools import lru_cache

from polywork import generators as gen


@lru_cache(maxsize=None)
def polytopes():
    """``name -> HPolytope`` for bounded full-dimensional corpus members."""
    out = {}
    for d in range(1, 5):
        out[f"cube{d}"] = gen.cube(d)
    for d in range(1, 6):
        out[f"simplex{d}"] = gen.simplex(d)
    for d in range(2, 5):
        out[f"crosspoly{d}"] = gen.crosspoly_h(d)
    for n in (5, 6, 7):
        out[f"cyclic4_{n}"] = gen.as_h(gen.cyclic(4, n))
    out["pentagon"] = gen.as_h(gen.polygon(5))
    out["hexagon"] = gen.as_h(gen.hexagon())
    out["prism3"] = gen.as_h(gen.prism(gen.polygon(3)))
    out["prism5"] = gen.as_h(gen.prism(gen.polygon(5)))
    out["simplex1x2"] = gen.as_h(gen.product(gen.simplex(1), gen.simplex(2)))
    out["simplex2x2"] = gen.as_h(gen.product(gen.simplex(2), gen.simplex(2)))
    out["pyramid4"] = gen.as_h(gen.pyramid(gen.polygon(4)))
    out["dodecahedron"] = gen.as_h(gen.dodecahedron())
    out["icosahedron"] = gen.as_h(gen.icosahedron())
    return out


def simple_polytopes():
    """Simple members with at most 20 vertices (for graph reconstruction)."""
    out = {}
    for d in range(1, 6):
        out[f"simplex{d}"] = gen.simplex(d)
    for d in range(1, 5):
        out[f"cube{d}"] = gen.cube(d)
    out["prism3"] = gen.as_h(gen.prism(gen.polygon(3)))
    out["prism5"] = gen.as_h(gen.prism(gen.polygon(5)))
    out["prism6"] = gen.as_h(gen.prism(gen.polygon(6)))
    out["simplex1x2"] = gen.as_h(gen.product(gen.simplex(1), gen.simplex(2)))
    out["simplex1x3"] = gen.as_h(gen.product(gen.simplex(1), gen.simplex(3)))
    out["simplex2x2"] = gen.as_h(gen.product(gen.simplex(2), gen.simplex(2)))
    out["simplex2x3"] = gen.as_h(gen.product(gen.simplex(2), gen.simplex(3)))
    out["dodecahedron"] = gen.as_h(gen.dodecahedron())
    return out
