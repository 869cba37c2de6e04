import itertools
import random
from math import comb

import pytest
from hypothesis import given, strategies as st

from polywork import generators as gen
from polywork.complex import (
    HomologyGroup,
    PartitionScheme,
    SimplicialComplex,
    betti_numbers,
    boundary_matrix,
    circuits_of_cnf,
    count_faces,
    count_models,
    euler_characteristic,
    f_vector_complex,
    homology,
    intersection_closures,
    is_pseudomanifold,
    is_shelling_order,
    partitionable,
    sat_to_complex,
    shellable,
    smith_diagonal,
)
from polywork.errors import InputError, NotPure, SearchBudgetExceeded

sympy = pytest.importorskip("sympy")
from sympy import ZZ, Matrix  # noqa: E402
from sympy.matrices.normalforms import smith_normal_form  # noqa: E402


def C(*facets, n=None):
    return SimplicialComplex.from_facets(facets, n)


def boundary(k):
    """Boundary of the k-simplex on vertices 0..k."""
    return SimplicialComplex.from_facets(itertools.combinations(range(k + 1), k))


TET = boundary(3)
RP2 = gen.rp2_6()


def random_complex(rng, n, m, kmax=None):
    kmax = kmax or n
    facets = [rng.sample(range(n), rng.randint(1, min(kmax, n))) for _ in range(m)]
    return SimplicialComplex.from_facets(facets, n)


def random_graph_complex(rng, n, p):
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    isolated = [[v] for v in range(n) if not any(v in e for e in edges)]
    return SimplicialComplex.from_facets([list(e) for e in edges] + isolated, n)


# --- construction --------------------------------------------------------

def test_construction():
    D = C([0, 1, 2], [0, 1])
    assert D.facets == (0b111,)
    assert D.dim == 2 and D.m == 1
    with pytest.raises(InputError):
        SimplicialComplex.from_facets([])
    assert SimplicialComplex.from_json(TET.to_json()) == TET


# --- Euler characteristic -------------------------------------------------

def test_euler_examples():
    assert euler_characteristic(TET) == 2
    for n in range(1, 8):
        assert euler_characteristic(C(list(range(n)))) == 1
    assert euler_characteristic(RP2) == 1
    assert f_vector_complex(RP2) == (6, 15, 10)


def test_euler_engines_agree_on_random_complexes():
    rng = random.Random(1)
    for _ in range(200):
        D = random_complex(rng, rng.randint(1, 14), rng.randint(1, 8), kmax=6)
        direct = euler_characteristic(D, engine="direct", check=False)
        closure = euler_characteristic(D, engine="closure", check=False)
        assert direct == closure
        f = f_vector_complex(D)
        assert direct == sum((-1) ** i * x for i, x in enumerate(f))


def test_intersection_closures_are_intersections():
    rng = random.Random(2)
    for _ in range(30):
        D = random_complex(rng, 8, 5)
        got = set(intersection_closures(D))
        want = set()
        for k in range(1, D.m + 1):
            for combo in itertools.combinations(D.facets, k):
                x = (1 << D.n) - 1
                for f in combo:
                    x &= f
                want.add(x)
        assert got == want


# --- f-vectors and the SAT reduction --------------------------------------

def test_f_vector_examples():
    assert f_vector_complex(TET) == (4, 6, 4)
    assert f_vector_complex(C([0, 1], [1, 2], [0, 2])) == (3, 3)


def test_sat_examples():
    D, Dbar = sat_to_complex([[1, 2]], 2)
    assert count_faces(D, 1) == 3 == count_models([[1, 2]], 2)
    assert count_faces(D, 1) + count_faces(Dbar, 1) == comb(4, 2)
    # elements: t_i = 2(i-1), f_i = 2i-1; circuits {f1,f2}, {t1,f1}, {t2,f2}
    assert sorted(circuits_of_cnf([[1, 2]], 2)) == sorted([0b1010, 0b0011, 0b1100])
    D, _ = sat_to_complex([[1], [-1]], 1)
    assert D.facets == (0,)
    assert count_faces(D, 0) == 0


def test_sat_rejects_bad_input():
    with pytest.raises(InputError):
        sat_to_complex([[]], 2)
    with pytest.raises(InputError):
        sat_to_complex([[3]], 2)


@given(st.integers(1, 5), st.lists(st.lists(st.integers(1, 5).flatmap(
    lambda v: st.sampled_from([v, -v])), min_size=1, max_size=3), min_size=1, max_size=6))
def test_sat_identity_property(n, cnf):
    cnf = [[l for l in cl if abs(l) <= n] or [1] for cl in cnf]
    D, Dbar = sat_to_complex(cnf, n)
    a, b = count_faces(D, n - 1), count_faces(Dbar, n - 1)
    assert a == count_models(cnf, n)
    assert a + b == comb(2 * n, n)


# --- homology -------------------------------------------------------------

def test_homology_examples():
    assert betti_numbers(TET) == (1, 0, 1)
    assert all(homology(TET, i).torsion == () for i in range(3))
    square = C([0, 1], [1, 2], [2, 3], [0, 3])
    assert homology(square, 1).rank == 1
    h1 = homology(RP2, 1)
    assert h1.rank == 0 and h1.torsion == (2,)
    assert homology(RP2, 2) == HomologyGroup(0, ())


def test_homology_formatting():
    assert homology(RP2, 1).format(1) == "H_1 = Z/2"
    assert str(HomologyGroup(2, (2, 6))) == "Z^2 ⊕ Z/2 ⊕ Z/6"
    assert str(HomologyGroup(0, ())) == "0"
    assert str(HomologyGroup(1, ())) == "Z"


def _mul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def test_boundary_of_boundary():
    for D in (TET, RP2, boundary(4), C([0, 1, 2, 3], [2, 3, 4])):
        for k in range(2, D.dim + 1):
            A, B = boundary_matrix(D, k - 1), boundary_matrix(D, k)
            if A and B and A[0]:
                assert all(x == 0 for row in _mul(A, B) for x in row)


@given(st.lists(st.lists(st.integers(-6, 6), min_size=1, max_size=4), min_size=1, max_size=4))
def test_smith_against_sympy(rows):
    width = len(rows[0])
    rows = [r[:width] + [0] * (width - len(r)) for r in rows]
    S = smith_normal_form(Matrix(rows), domain=ZZ)
    want = sorted(abs(S[i, i]) for i in range(min(S.shape)) if S[i, i] != 0)
    got = smith_diagonal(rows)
    assert sorted(got) == want
    assert all(b % a == 0 for a, b in zip(got, got[1:]))


def test_alternating_betti_sum_is_euler():
    rng = random.Random(3)
    for _ in range(40):
        D = random_complex(rng, rng.randint(2, 7), rng.randint(1, 5), kmax=4)
        b = betti_numbers(D)
        assert sum((-1) ** i * x for i, x in enumerate(b)) == euler_characteristic(D)


def test_homology_against_sympy_ranks():
    # H_1 torsion of RP2 from the SNF of the explicit boundary map
    B2 = boundary_matrix(RP2, 2)
    S = smith_normal_form(Matrix(B2), domain=ZZ)
    diag = [abs(S[i, i]) for i in range(min(S.shape)) if S[i, i] != 0]
    assert [x for x in diag if x > 1] == [2]


# --- shellability -----------------------------------------------------------

def test_shelling_order_examples():
    for perm in itertools.permutations(range(TET.m)):
        assert is_shelling_order(TET, perm)
    two = C([0, 1, 2], [3, 4, 5])
    assert not is_shelling_order(two, [0, 1])
    assert not is_shelling_order(two, [1, 0])
    with pytest.raises(NotPure):
        is_shelling_order(C([0, 1, 2], [3, 4]), [0, 1])


def annulus():
    """Triangulated annulus between the triangles 012 and 345."""
    return C([0, 1, 3], [1, 3, 4], [1, 2, 4], [2, 4, 5], [0, 2, 5], [0, 3, 5])


def test_annulus_detached_order():
    A = annulus()
    facets = [set(f) for f in A.facet_lists()]
    idx = lambda s: facets.index(set(s))
    good = [idx(s) for s in ([0, 1, 3], [1, 3, 4], [1, 2, 4], [2, 4, 5], [0, 2, 5], [0, 3, 5])]
    bad = [idx(s) for s in ([0, 1, 3], [2, 4, 5], [1, 3, 4], [1, 2, 4], [0, 2, 5], [0, 3, 5])]
    assert not is_shelling_order(A, bad)
    # the annulus has a shelling prefix but is not shellable (last step closes a loop)
    assert not is_shelling_order(A, good)
    assert shellable(A) is None


def test_shellable_examples():
    assert shellable(C([0, 1], [1, 2], [2, 3])) is not None
    assert shellable(C([0, 1], [2, 3])) is None
    order = shellable(boundary(4))
    assert order is not None and is_shelling_order(boundary(4), order)


def test_shellable_budget():
    with pytest.raises(SearchBudgetExceeded):
        shellable(annulus(), budget=3)


def test_graph_shellable_iff_connected():
    import networkx as nx

    rng = random.Random(4)
    for _ in range(60):
        D = random_graph_complex(rng, rng.randint(2, 8), 0.35)
        if not D.is_pure() or D.dim != 1:
            continue
        G = nx.Graph([tuple(f) for f in D.facet_lists()])
        G.add_nodes_from(range(D.n))
        assert (shellable(D) is not None) == nx.is_connected(G)


# --- partitionability -------------------------------------------------------

def test_partition_examples():
    one_tree = C([0, 1], [1, 2], [3, 4], [4, 5], [3, 5])
    assert partitionable(one_tree) is not None
    two_trees = C([0, 1], [2, 3], [4, 5], [5, 6], [4, 6])
    assert partitionable(two_trees) is None
    P = partitionable(TET)
    assert P is not None and P.verify(TET)


def test_partition_counting_identity():
    rng = random.Random(5)
    for _ in range(40):
        D = random_complex(rng, 6, rng.randint(1, 4), kmax=3)
        P = partitionable(D)
        if P is None:
            continue
        assert P.verify(D)
        total = sum(2 ** (bin(F).count("1") - bin(R).count("1")) for R, F in P.intervals)
        assert total == len(D.faces(include_empty=True))


def test_shellable_implies_partitionable():
    rng = random.Random(6)
    for _ in range(40):
        D = random_complex(rng, 6, rng.randint(1, 4), kmax=3)
        if D.is_pure() and shellable(D) is not None:
            assert partitionable(D) is not None


def test_partition_scheme_rejects_overlap():
    bad = PartitionScheme(((0, 0b111), (0, 0b011)))
    assert not bad.verify(C([0, 1, 2]))


def test_nonpartitionable_higher_dimension():
    # a triangle plus a disjoint triangle: two empty-set intervals are needed
    assert partitionable(C([0, 1, 2], [3, 4, 5])) is None
    P = partitionable(RP2)
    assert P is not None and P.verify(RP2)
    # nonzero mod-2 homology in degree 1 rules out a shelling
    assert shellable(RP2) is None


# --- pseudomanifolds ---------------------------------------------------------

def test_pseudomanifold_examples():
    assert is_pseudomanifold(TET)
    assert not is_pseudomanifold(C([0, 1, 2], [0, 1, 3], [0, 1, 4]))
    assert is_pseudomanifold(C([0, 1, 2], [0, 1, 3]))
    assert not is_pseudomanifold(C([0, 1, 2], [3, 4, 5]))
    with pytest.raises(NotPure):
        is_pseudomanifold(C([0, 1, 2], [3, 4]))
