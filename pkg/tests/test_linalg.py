import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bredon.errors import CompositionNonzero, NotChainMap
from bredon.linalg import (AbelianGroupInvariants, ChainComplex, FPAbelianGroup, IntMatrix,
                           chain_homology, cokernel_invariants, hermite_normal_form,
                           homology_induced_map, in_span, is_isomorphism, kernel_basis,
                           simplify_presentation, smith_normal_form, solve)

from oracles import presented_group, rational_rank, sympy_factors


def matrices(max_dim=6, bound=20):
    def build(shape):
        r, c = shape
        return st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                        min_size=r, max_size=r).map(lambda d: IntMatrix(d, r, c))
    return st.tuples(st.integers(0, max_dim), st.integers(0, max_dim)).flatmap(build)


def random_unimodular(n, rng, steps=12):
    U = IntMatrix.identity(n).tolist()
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        q = rng.randint(-3, 3)
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]
    if n and rng.random() < 0.5:
        U[0] = [-a for a in U[0]]
    return IntMatrix(U, n, n)


def assert_smith(A, D, U, V):
    assert U @ A @ V == D
    assert abs(U.det()) == 1 and abs(V.det()) == 1
    diag = [D[i, i] for i in range(min(D.rows, D.cols))]
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j:
                assert D[i, j] == 0
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (a == 0 and b == 0) or (a != 0 and b % a == 0)


# -- Hermite form -------------------------------------------------------------

def test_hermite_example_is_reduced_above_pivots():
    A = IntMatrix([[2, 4], [6, 8]])
    H, U = hermite_normal_form(A)
    assert U @ A == H
    assert abs(U.det()) == 1
    assert H == IntMatrix([[2, 0], [0, 4]])


def test_hermite_identity_and_zero():
    H, U = hermite_normal_form(IntMatrix.identity(3))
    assert H == IntMatrix.identity(3) and U == IntMatrix.identity(3)
    Z = IntMatrix.zeros(2, 3)
    H, U = hermite_normal_form(Z)
    assert H == Z and U == IntMatrix.identity(2)


@given(matrices())
def test_hermite_form_properties(A):
    H, U = hermite_normal_form(A)
    assert U @ A == H
    assert abs(U.det()) == 1
    last = -1
    seen_zero = False
    for i in range(H.rows):
        row = H.row(i)
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            seen_zero = True
            continue
        assert not seen_zero, "zero rows must come last"
        p = nz[0]
        assert p > last
        last = p
        assert H[i, p] > 0
        for k in range(i):
            assert 0 <= H[k, p] < H[i, p]


# -- Smith form ---------------------------------------------------------------

def test_smith_examples():
    D, U, V = smith_normal_form(IntMatrix([[2, 4], [6, 8]]))
    assert D == IntMatrix.diag([2, 4])
    D, U, V = smith_normal_form(IntMatrix.diag([2, 3]))
    assert D == IntMatrix.diag([1, 6])
    Z = IntMatrix.zeros(2, 3)
    assert smith_normal_form(Z)[0] == Z


def test_smith_of_diag_2_3_matches_group_enumeration():
    # Z/2 + Z/3 has an element of order 6, so it is cyclic of order 6
    orders = set()
    for a in range(2):
        for b in range(3):
            k = 1
            while (k * a % 2, k * b % 3) != (0, 0):
                k += 1
            orders.add(k)
    assert max(orders) == 6
    assert cokernel_invariants(IntMatrix.diag([2, 3])) == AbelianGroupInvariants(0, (6,))


@settings(max_examples=200)
@given(matrices(max_dim=7, bound=50))
def test_smith_form_properties_and_sympy_agreement(A):
    D, U, V = smith_normal_form(A)
    assert_smith(A, D, U, V)
    ours = [D[i, i] for i in range(min(A.rows, A.cols)) if D[i, i]]
    assert ours == sympy_factors(A.tolist(), A.rows, A.cols)


def test_smith_handles_huge_entries():
    A = IntMatrix([[10 ** 30 + 1, 10 ** 29], [7, 10 ** 31 - 3]])
    D, U, V = smith_normal_form(A)
    assert_smith(A, D, U, V)
    assert D[0, 0] * D[1, 1] == abs(A.det())


# -- kernels and cokernels ----------------------------------------------------

def test_kernel_examples():
    assert kernel_basis(IntMatrix([[1, 1]])) == IntMatrix([[1], [-1]])
    assert kernel_basis(IntMatrix.identity(3)).cols == 0
    K = kernel_basis(IntMatrix.zeros(1, 2))
    assert K.cols == 2 and cokernel_invariants(K).is_trivial


def test_kernel_of_1_1_matches_small_solution_search():
    sols = [(a, b) for a in range(-3, 4) for b in range(-3, 4) if a + b == 0 and (a, b) != (0, 0)]
    K = kernel_basis(IntMatrix([[1, 1]]))
    v = K.col(0)
    assert all(any(t * v[0] == a and t * v[1] == b for t in range(-3, 4)) for a, b in sols)


@given(matrices(max_dim=6, bound=9))
def test_kernel_basis_is_a_saturated_basis(A):
    K = kernel_basis(A)
    assert K.rows == A.cols
    assert (A @ K).is_zero()
    assert K.cols == A.cols - rational_rank(A.tolist())
    # a saturated sublattice has a free quotient
    assert cokernel_invariants(K).torsion == ()
    for j in range(K.cols):
        col = K.col(j)
        assert next(x for x in col if x) > 0


def test_cokernel_examples():
    assert cokernel_invariants(IntMatrix.diag([2, 0])) == AbelianGroupInvariants(1, (2,))
    assert cokernel_invariants(IntMatrix.zeros(2, 0)) == AbelianGroupInvariants(2, ())
    assert cokernel_invariants(IntMatrix.identity(2)).is_trivial


@given(matrices(max_dim=6, bound=12), st.integers(0, 10 ** 6))
def test_cokernel_invariants_ignore_unimodular_changes(A, seed):
    rng = random.Random(seed)
    U, V = random_unimodular(A.rows, rng), random_unimodular(A.cols, rng)
    before = cokernel_invariants(A)
    assert cokernel_invariants(U @ A @ V) == before
    free, torsion = presented_group(A.rows, A.columns())
    assert (before.free_rank, before.torsion) == (free, torsion)


@given(matrices(max_dim=5, bound=6), st.lists(st.integers(-5, 5), min_size=5, max_size=5))
def test_solver_finds_integer_solutions(A, x):
    x = IntMatrix([[v] for v in x[:A.cols]], A.cols, 1)
    B = A @ x
    X = solve(A, B)
    assert X is not None and A @ X == B
    assert in_span(A, B)


def test_solver_rejects_non_integral_systems():
    assert solve(IntMatrix([[2]]), IntMatrix([[1]])) is None
    assert not in_span(IntMatrix([[2, 4]]), IntMatrix([[3]]))


@given(matrices(max_dim=6, bound=4))
def test_simplified_presentation_is_isomorphic(A):
    fp = FPAbelianGroup(A.rows, A)
    sp = simplify_presentation(fp)
    assert sp.group.invariants() == fp.invariants()
    assert sp.group.generator_count <= fp.generator_count
    assert is_isomorphism(sp.proj, fp, sp.group)
    assert is_isomorphism(sp.lift, sp.group, fp)


def test_abelian_group_json_round_trip():
    a = AbelianGroupInvariants(2, (2, 6))
    assert AbelianGroupInvariants.from_json(a.to_json()) == a
    with pytest.raises(ValueError):
        AbelianGroupInvariants(0, (4, 6))


def test_matrices_serialize_as_decimal_strings():
    A = IntMatrix([[10 ** 40, -3]])
    data = A.to_json()
    assert data == [[str(10 ** 40), "-3"]]
    assert IntMatrix.from_json(data) == A


# -- homology -----------------------------------------------------------------

TRIANGLE_BOUNDARY = [IntMatrix.zeros(0, 3), IntMatrix([[-1, -1, 0], [1, 0, -1], [0, 1, 1]])]


def test_triangle_boundary_homology():
    assert chain_homology(TRIANGLE_BOUNDARY, 0) == AbelianGroupInvariants(1)
    assert chain_homology(TRIANGLE_BOUNDARY, 1) == AbelianGroupInvariants(1)


def test_point_and_two_points():
    point = [IntMatrix.zeros(0, 1)]
    assert chain_homology(point, 0) == AbelianGroupInvariants(1)
    assert chain_homology(point, 1).is_trivial
    assert chain_homology([IntMatrix.zeros(0, 2)], 0) == AbelianGroupInvariants(2)


def test_nonzero_composite_is_rejected():
    bad = [IntMatrix.zeros(0, 1), IntMatrix([[1]]), IntMatrix([[1]])]
    with pytest.raises(CompositionNonzero):
        chain_homology(bad, 1)


def test_torsion_homology_of_projective_plane_presentation():
    # one vertex, one edge, one 2-cell attached by degree 2
    C = ChainComplex({0: 1, 1: 1, 2: 1}, {1: IntMatrix([[0]]), 2: IntMatrix([[2]])})
    assert C.homology_invariants(1) == AbelianGroupInvariants(0, (2,))
    assert C.homology_invariants(2).is_trivial


def simplicial_chain_complex(simplices, reduced=False):
    by_dim = {}
    for s in sorted({tuple(sorted(s)) for s in simplices}):
        by_dim.setdefault(len(s) - 1, []).append(s)
    ranks = {p: len(v) for p, v in by_dim.items()}
    diffs = {}
    for p in range(1, max(by_dim) + 1):
        pos = {s: i for i, s in enumerate(by_dim.get(p - 1, []))}
        d = [[0] * len(by_dim.get(p, [])) for _ in pos]
        for j, s in enumerate(by_dim.get(p, [])):
            for i in range(len(s)):
                d[pos[s[:i] + s[i + 1:]]][j] += (-1) ** i
        diffs[p] = IntMatrix(d, len(pos), len(by_dim.get(p, [])))
    if reduced:
        ranks[-1] = 1
        diffs[0] = IntMatrix([[1] * ranks[0]])
    return ChainComplex(ranks, diffs), by_dim


def simplicial_chain_map(vertex_map, source, target):
    """Chain map induced by a simplicial vertex map, as a dict of matrices."""
    C, sb = source
    D, tb = target
    maps = {}
    for p, cells in sb.items():
        pos = {s: i for i, s in enumerate(tb.get(p, []))}
        m = [[0] * len(cells) for _ in pos]
        for j, s in enumerate(cells):
            image = [vertex_map[v] for v in s]
            if len(set(image)) < len(image):
                continue
            order = sorted(range(len(image)), key=lambda i: image[i])
            inversions = sum(1 for a in range(len(order)) for b in range(a + 1, len(order))
                             if order[a] > order[b])
            m[pos[tuple(sorted(image))]][j] = (-1) ** inversions
        maps[p] = IntMatrix(m, len(pos), len(cells))
    if -1 in C.ranks:
        maps[-1] = IntMatrix([[1]])
    return maps


def cycle(n):
    return [(i, (i + 1) % n) for i in range(n)] + [(i,) for i in range(n)]


def test_identity_and_zero_chain_maps():
    X = simplicial_chain_complex(cycle(3))
    C = X[0]
    ident = {p: IntMatrix.identity(C.rank(p)) for p in C.ranks}
    assert homology_induced_map(C, C, ident, 1) == IntMatrix.identity(1)
    zero = {p: IntMatrix.zeros(C.rank(p), C.rank(p)) for p in C.ranks}
    assert homology_induced_map(C, C, zero, 1).is_zero()


def test_two_points_into_a_path_reduced():
    pts = simplicial_chain_complex([(0,), (2,)], reduced=True)
    path = simplicial_chain_complex([(0, 1), (1, 2), (0,), (1,), (2,)], reduced=True)
    maps = simplicial_chain_map({0: 0, 2: 2}, pts, path)
    F = homology_induced_map(pts[0], path[0], maps, 0)
    assert pts[0].homology_invariants(0) == AbelianGroupInvariants(1)
    assert path[0].homology_invariants(0).is_trivial
    assert F.shape == (0, 1)


def test_non_chain_map_is_rejected():
    X = simplicial_chain_complex(cycle(3))[0]
    maps = {0: IntMatrix.identity(3), 1: IntMatrix.zeros(3, 3)}
    with pytest.raises(NotChainMap):
        homology_induced_map(X, X, maps, 1)


@pytest.mark.parametrize("turn_a,turn_b", [(0, 1), (1, 2), (2, 2), (1, 0)])
def test_induced_maps_are_functorial(turn_a, turn_b):
    hexagon = simplicial_chain_complex(cycle(6))
    triangle = simplicial_chain_complex(cycle(3))
    wrap = {v: (v + turn_a) % 3 for v in range(6)}  # degree 2 cover
    rotate = {v: (v + turn_b) % 3 for v in range(3)}
    f = simplicial_chain_map(wrap, hexagon, triangle)
    g = simplicial_chain_map(rotate, triangle, triangle)
    gf = simplicial_chain_map({v: rotate[wrap[v]] for v in range(6)}, hexagon, triangle)
    for k in (0, 1):
        Hf = homology_induced_map(hexagon[0], triangle[0], f, k)
        Hg = homology_induced_map(triangle[0], triangle[0], g, k)
        Hgf = homology_induced_map(hexagon[0], triangle[0], gf, k)
        assert Hg @ Hf == Hgf
    assert abs(homology_induced_map(hexagon[0], triangle[0], f, 1)[0, 0]) == 2
