"""Exact-arithmetic toolkit for polytopes, face lattices, cube orientations
and simplicial complexes."""

from .errors import (
    AxiomViolation,
    DegenerateWeights,
    DimensionMismatch,
    EmptyPolyhedron,
    InconsistentOracle,
    InputError,
    LowerDimensional,
    NonTermination,
    NotBounded,
    NotPure,
    NotRegular,
    NotUSO,
    PolyworkError,
    RankDeficient,
    SearchBudgetExceeded,
    UnsupportedParameter,
)
from .polytope import HPolytope, VPolytope
from .kernel import (
    LinearProgram,
    LPResult,
    Status,
    affine_dimension,
    is_bounded,
    rank,
    remove_redundancy,
    solve_lp,
)
from .hull import contains, enumerate_facets, enumerate_vertices, verify
from .lattice import (
    FaceLattice,
    IncidenceMatrix,
    build_lattice,
    dimension_from_incidences,
    f_vector,
    k_skeleton,
)
from .complex import SimplicialComplex

__version__ = "0.1.0"

__all__ = [
    "AxiomViolation",
    "DegenerateWeights",
    "DimensionMismatch",
    "EmptyPolyhedron",
    "FaceLattice",
    "HPolytope",
    "IncidenceMatrix",
    "InconsistentOracle",
    "InputError",
    "LPResult",
    "LinearProgram",
    "LowerDimensional",
    "NonTermination",
    "NotBounded",
    "NotPure",
    "NotRegular",
    "NotUSO",
    "PolyworkError",
    "RankDeficient",
    "SearchBudgetExceeded",
    "SimplicialComplex",
    "Status",
    "UnsupportedParameter",
    "VPolytope",
    "affine_dimension",
    "build_lattice",
    "contains",
    "dimension_from_incidences",
    "enumerate_facets",
    "enumerate_vertices",
    "f_vector",
    "is_bounded",
    "k_skeleton",
    "rank",
    "remove_redundancy",
    "solve_lp",
    "verify",
]
