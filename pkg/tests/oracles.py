"""Reference computations that share no code with the package.

Everything here works from raw data (lists, permutation tables) and uses
sympy for exact linear algebra, so agreement with the package is evidence
rather than tautology.
"""

from itertools import combinations

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors


def sympy_factors(rows, n_rows=None, n_cols=None):
    """Nonzero invariant factors of an integer matrix given as a list of rows."""
    if n_rows is None:
        n_rows = len(rows)
    if n_cols is None:
        n_cols = len(rows[0]) if rows else 0
    if n_rows == 0 or n_cols == 0:
        return []
    return [int(d) for d in invariant_factors(Matrix(rows), domain=ZZ) if d != 0]


def rational_rank(rows):
    if not rows or not rows[0]:
        return 0
    return Matrix(rows).rank()


def presented_group(n_gens, relation_columns):
    """``(free_rank, torsion)`` of ``Z^n_gens`` modulo the given relation columns."""
    if not relation_columns:
        return n_gens, ()
    rows = [[c[i] for c in relation_columns] for i in range(n_gens)]
    factors = sympy_factors(rows, n_gens, len(relation_columns))
    return n_gens - len(factors), tuple(d for d in factors if d > 1)


def boundary_rows(simplices, p):
    """Boundary ``C_p -> C_{p-1}`` as a list of rows, simplices in sorted order."""
    if p == 0:
        return [], 0, sum(1 for s in simplices if len(s) == 1)
    lower = sorted(s for s in simplices if len(s) == p)
    upper = sorted(s for s in simplices if len(s) == p + 1)
    pos = {s: i for i, s in enumerate(lower)}
    rows = [[0] * len(upper) for _ in lower]
    for j, s in enumerate(upper):
        for i in range(len(s)):
            rows[pos[s[:i] + s[i + 1:]]][j] += (-1) ** i
    return rows, len(lower), len(upper)


def simplicial_homology(simplices, k, reduced=False):
    """``(free_rank, torsion)`` of ``H_k`` of an abstract simplicial complex."""
    simplices = {tuple(sorted(s)) for s in simplices}
    count = lambda p: sum(1 for s in simplices if len(s) == p + 1)
    if k == -1:
        if not reduced:
            return 0, ()
        return (1, ()) if count(0) == 0 else (0, ())
    dk, _, _ = boundary_rows(simplices, k)
    dk1, r1, c1 = boundary_rows(simplices, k + 1)
    rank_k = rational_rank(dk) if k > 0 else 0
    if k == 0 and reduced and count(0):
        rank_k = 1
    rank_k1 = rational_rank(dk1) if c1 and r1 else 0
    free = count(k) - rank_k - rank_k1
    torsion = tuple(d for d in sympy_factors(dk1, r1, c1) if d > 1)
    return free, torsion


def fixed_simplices(simplices, action, elements):
    """Simplices whose vertices are all fixed by every listed group element."""
    return [tuple(s) for s in simplices
            if all(action[h][v] == v for h in elements for v in s)]


def all_faces(facets):
    out = set()
    for f in facets:
        f = tuple(sorted(f))
        for r in range(1, len(f) + 1):
            out.update(combinations(f, r))
    return out


def compose_permutations(perms):
    """Cayley table with ``a * b = a after b``, for a list of permutations."""
    index = {tuple(p): i for i, p in enumerate(perms)}
    return [[index[tuple(a[b[x]] for x in range(len(a)))] for b in perms] for a in perms]


def brute_hom_count(table, source, target):
    """``|{gL : g^-1 X g <= L}|`` from a raw Cayley table."""
    n = len(table)
    e = next(i for i in range(n) if all(table[i][j] == j for j in range(n)))
    inv = [next(j for j in range(n) if table[i][j] == e) for i in range(n)]
    cosets = set()
    for g in range(n):
        if all(table[table[inv[g]][x]][g] in target for x in source):
            cosets.add(frozenset(table[g][h] for h in target))
    return len(cosets)


def brute_subconjugate(table, h, k):
    n = len(table)
    e = next(i for i in range(n) if all(table[i][j] == j for j in range(n)))
    inv = [next(j for j in range(n) if table[i][j] == e) for i in range(n)]
    return any(all(table[table[g][x]][inv[g]] in k for x in h) for g in range(n))


def brute_cover(table, members, chosen):
    """Every member is subconjugate to something chosen."""
    return all(any(brute_subconjugate(table, m, c) for c in chosen) for m in members)


def _sample_elements(n_gens):
    """Basis vectors, their negatives and pairwise sums: a spanning set with redundancy."""
    basis = [[int(i == j) for j in range(n_gens)] for i in range(n_gens)]
    out = list(basis) + [[-x for x in v] for v in basis]
    for i in range(n_gens):
        for j in range(i + 1, n_gens):
            out.append([a + b for a, b in zip(basis[i], basis[j])])
    return out


def _apply(matrix_rows, v):
    return [sum(a * b for a, b in zip(row, v)) for row in matrix_rows]


def coend_group(right, left, morphisms):
    """``(free_rank, torsion)`` of the coend, written out element by element.

    ``right`` and ``left`` are dicts with ``gens`` (per object), ``relations``
    (per object, list of columns) and ``actions`` (per morphism id, list of
    rows).  ``morphisms`` lists ``(id, source, target)``.  The right module
    acts from the target value to the source value, the left one the other
    way.  Balancing relations ``N(f) n (x) m - n (x) M(f) m`` are imposed for
    a redundant sample of elements rather than generators only.
    """
    n_obj = len(right["gens"])
    offset, total = [], 0
    for o in range(n_obj):
        offset.append(total)
        total += right["gens"][o] * left["gens"][o]

    def simple_tensor(o, n, m):
        v = [0] * total
        gm = left["gens"][o]
        for i, x in enumerate(n):
            for j, y in enumerate(m):
                v[offset[o] + i * gm + j] += x * y
        return v

    relations = []
    for o in range(n_obj):
        gn, gm = right["gens"][o], left["gens"][o]
        for r in right["relations"][o]:
            for m in _sample_elements(gm):
                relations.append(simple_tensor(o, r, m))
        for r in left["relations"][o]:
            for n in _sample_elements(gn):
                relations.append(simple_tensor(o, n, r))
    for mid, a, b in morphisms:
        for n in _sample_elements(right["gens"][b]):
            for m in _sample_elements(left["gens"][a]):
                lhs = simple_tensor(a, _apply(right["actions"][mid], n), m)
                rhs = simple_tensor(b, n, _apply(left["actions"][mid], m))
                relations.append([x - y for x, y in zip(lhs, rhs)])
    return presented_group(total, relations)


def inclusion_rank(small, big, k):
    """Rational rank of ``H_k(small) -> H_k(big)`` for a subcomplex inclusion."""
    small = {tuple(sorted(s)) for s in small}
    big = {tuple(sorted(s)) for s in big}
    cells = sorted(s for s in big if len(s) == k + 1)
    pos = {s: i for i, s in enumerate(cells)}
    if k == 0:
        cycles = [[int(pos[s] == i) for i in range(len(cells))] for s in sorted(small) if len(s) == 1]
    else:
        rows, _, n_cols = boundary_rows(small, k)
        own = sorted(s for s in small if len(s) == k + 1)
        basis = Matrix(rows).nullspace() if rows else [Matrix.eye(n_cols)[:, j] for j in range(n_cols)]
        cycles = []
        for v in basis:
            w = [0] * len(cells)
            for j, s in enumerate(own):
                w[pos[s]] = v[j]
            cycles.append(w)
    bound, r, c = boundary_rows(big, k + 1)
    bound_cols = [[bound[i][j] for i in range(r)] for j in range(c)]
    span = lambda cols: Matrix(cols).rank() if cols else 0
    return span(cycles + bound_cols) - span(bound_cols)
