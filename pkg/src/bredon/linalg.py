"""
Exact integer linear algebra.

Everything here works over Python integers, so there is no overflow no
matter how large intermediate entries get.  The main entry points are

* :func:`hermite_normal_form` and :func:`smith_normal_form` with their
  unimodular transforms,
* :func:`kernel_basis` and :func:`cokernel_invariants`,
* :class:`ChainComplex` / :class:`HomologyGroup` for homology of chain
  complexes of finitely presented abelian groups, together with
  :func:`homology_induced_map`.

Finitely presented abelian groups are ``Z^g / column span(R)``.  All
normal forms are canonical so that downstream output is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd

from .errors import CompositionNonzero, NotChainMap


class IntMatrix:
    """Immutable dense integer matrix, stored row-major."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data=(), rows=None, cols=None):
        data = tuple(tuple(int(x) for x in row) for row in data)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if not data and rows:
            data = ((),) * rows if cols == 0 else None
            if data is None:
                raise ValueError("matrix data missing")
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"entry count does not match shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self._data = data

    @classmethod
    def _wrap(cls, data, rows, cols):
        m = object.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._data = tuple(tuple(r) for r in data) if rows else ()
        if rows and cols == 0:
            m._data = ((),) * rows
        return m

    @classmethod
    def zeros(cls, rows, cols):
        return cls._wrap([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n):
        return cls._wrap([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diag(cls, entries, rows=None, cols=None):
        entries = list(entries)
        rows = len(entries) if rows is None else rows
        cols = len(entries) if cols is None else cols
        data = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(entries):
            data[i][i] = int(d)
        return cls._wrap(data, rows, cols)

    @classmethod
    def from_columns(cls, columns, rows):
        columns = [list(c) for c in columns]
        data = [[c[i] for c in columns] for i in range(rows)]
        return cls._wrap(data, rows, len(columns))

    @classmethod
    def from_json(cls, data, rows=None, cols=None):
        data = [[int(x) for x in row] for row in data]
        if rows is not None and not data:
            return cls.zeros(rows, cols or 0)
        return cls(data, rows, cols)

    def to_json(self):
        return [[str(x) for x in row] for row in self._data]

    def tolist(self):
        return [list(r) for r in self._data]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i):
        return self._data[i]

    def col(self, j):
        return tuple(r[j] for r in self._data)

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    @property
    def T(self):
        return IntMatrix._wrap([list(c) for c in zip(*self._data)] if self.rows else
                               [[] for _ in range(self.cols)], self.cols, self.rows)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return IntMatrix._wrap(_matmul(self._data, other._data, other.cols),
                               self.rows, other.cols)

    def __add__(self, other):
        self._check_same(other)
        return IntMatrix._wrap([[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
                               self.rows, self.cols)

    def __sub__(self, other):
        self._check_same(other)
        return IntMatrix._wrap([[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
                               self.rows, self.cols)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, k):
        return IntMatrix._wrap([[k * a for a in r] for r in self._data], self.rows, self.cols)

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def is_zero(self):
        return not any(any(r) for r in self._data)

    def select_rows(self, idx):
        idx = list(idx)
        return IntMatrix._wrap([self._data[i] for i in idx], len(idx), self.cols)

    def select_cols(self, idx):
        idx = list(idx)
        return IntMatrix._wrap([[r[j] for j in idx] for r in self._data], self.rows, len(idx))

    def det(self):
        """Determinant by fraction-free Bareiss elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __repr__(self):
        return f"IntMatrix({self.tolist()}, rows={self.rows}, cols={self.cols})"


def _matmul(a, b, bcols):
    nz = [[(j, v) for j, v in enumerate(r) if v] for r in b]
    out = []
    for row in a:
        acc = [0] * bcols
        for k, x in enumerate(row):
            if x:
                for j, v in nz[k]:
                    acc[j] += x * v
        out.append(acc)
    return out


def as_matrix(m):
    return m if isinstance(m, IntMatrix) else IntMatrix(m)


def hstack(blocks, rows=None):
    blocks = list(blocks)
    if not blocks:
        return IntMatrix.zeros(rows or 0, 0)
    r = blocks[0].rows
    if any(b.rows != r for b in blocks):
        raise ValueError("hstack row mismatch")
    data = [sum((list(b.row(i)) for b in blocks), []) for i in range(r)]
    return IntMatrix._wrap(data, r, sum(b.cols for b in blocks))


def vstack(blocks, cols=None):
    blocks = list(blocks)
    if not blocks:
        return IntMatrix.zeros(0, cols or 0)
    c = blocks[0].cols
    if any(b.cols != c for b in blocks):
        raise ValueError("vstack column mismatch")
    data = [list(row) for b in blocks for row in b._data]
    return IntMatrix._wrap(data, sum(b.rows for b in blocks), c)


def block_diag(blocks):
    blocks = list(blocks)
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    data = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b._data):
            data[r0 + i][c0:c0 + b.cols] = row
        r0 += b.rows
        c0 += b.cols
    return IntMatrix._wrap(data, rows, cols)


def kron(a, b):
    """Kronecker product; index (i, j) of the result is ``i * b.rows + j``."""
    rows, cols = a.rows * b.rows, a.cols * b.cols
    data = [[0] * cols for _ in range(rows)]
    for i, arow in enumerate(a._data):
        for k, x in enumerate(arow):
            if not x:
                continue
            for j, brow in enumerate(b._data):
                target = data[i * b.rows + j]
                base = k * b.cols
                for l, y in enumerate(brow):
                    if y:
                        target[base + l] += x * y
    return IntMatrix._wrap(data, rows, cols)


# ---------------------------------------------------------------------------
# normal forms

def _row_sub(rows, i, r, q, start=0):
    # rows[i] -= q * rows[r]
    ri, rr = rows[i], rows[r]
    for t in range(start, len(ri)):
        if rr[t]:
            ri[t] -= q * rr[t]


def _hnf_in_place(a, m, n, u=None):
    """Row-style Hermite form of the list-of-lists ``a`` (m x n), in place.

    Applies the same row operations to ``u`` when given.  Returns pivot columns.
    """
    r = 0
    pivots = []
    for j in range(n):
        if r == m:
            break
        while True:
            best = -1
            for i in range(r, m):
                v = a[i][j]
                if v and (best < 0 or abs(v) < abs(a[best][j])):
                    best = i
            if best < 0:
                break
            if best != r:
                a[r], a[best] = a[best], a[r]
                if u is not None:
                    u[r], u[best] = u[best], u[r]
            p = a[r][j]
            clean = True
            for i in range(r + 1, m):
                v = a[i][j]
                if v:
                    q = v // p
                    if q:
                        _row_sub(a, i, r, q, j)
                        if u is not None:
                            _row_sub(u, i, r, q)
                    if a[i][j]:
                        clean = False
            if clean:
                break
        if r < m and a[r][j]:
            if a[r][j] < 0:
                a[r] = [-x for x in a[r]]
                if u is not None:
                    u[r] = [-x for x in u[r]]
            p = a[r][j]
            for i in range(r):
                q = a[i][j] // p
                if q:
                    _row_sub(a, i, r, q, j)
                    if u is not None:
                        _row_sub(u, i, r, q)
            pivots.append(j)
            r += 1
    return pivots


def hermite_normal_form(A):
    """Return ``(H, U)`` with ``U`` unimodular and ``U @ A == H``.

    ``H`` is in reduced row echelon form over the integers: pivots are
    positive and every entry above a pivot lies in ``[0, pivot)``.
    """
    A = as_matrix(A)
    a = A.tolist()
    u = IntMatrix.identity(A.rows).tolist()
    _hnf_in_place(a, A.rows, A.cols, u)
    return IntMatrix._wrap(a, A.rows, A.cols), IntMatrix._wrap(u, A.rows, A.rows)


def _col_sub(a, j, t, q, start=0):
    # column j -= q * column t
    for i in range(start, len(a)):
        row = a[i]
        if row[t]:
            row[j] -= q * row[t]


def _swap_cols(a, i, j):
    for row in a:
        row[i], row[j] = row[j], row[i]


class _SNF:
    """Smith normal form with optional transforms.

    Pivot choice: the nonzero entry of least magnitude in the active
    submatrix, ties broken by row then column index.
    """

    def __init__(self, A, track=True):
        self.m, self.n = A.rows, A.cols
        self.a = A.tolist()
        self.track = track
        if track:
            self.u = IntMatrix.identity(self.m).tolist()
            self.uinv = IntMatrix.identity(self.m).tolist()
            self.v = IntMatrix.identity(self.n).tolist()
        self.diagonal = []
        self._run()

    # row i -= q row r
    def _rop(self, i, r, q):
        _row_sub(self.a, i, r, q)
        if self.track:
            _row_sub(self.u, i, r, q)
            # inverse: column r += q column i
            _col_sub(self.uinv, r, i, -q)

    def _rswap(self, i, r):
        a = self.a
        a[i], a[r] = a[r], a[i]
        if self.track:
            self.u[i], self.u[r] = self.u[r], self.u[i]
            _swap_cols(self.uinv, i, r)

    def _rneg(self, r):
        self.a[r] = [-x for x in self.a[r]]
        if self.track:
            self.u[r] = [-x for x in self.u[r]]
            for row in self.uinv:
                row[r] = -row[r]

    def _cop(self, j, t, q):
        _col_sub(self.a, j, t, q)
        if self.track:
            _col_sub(self.v, j, t, q)

    def _cswap(self, i, j):
        _swap_cols(self.a, i, j)
        if self.track:
            _swap_cols(self.v, i, j)

    def _run(self):
        a, m, n = self.a, self.m, self.n
        for t in range(min(m, n)):
            best = None
            for i in range(t, m):
                row = a[i]
                for j in range(t, n):
                    v = row[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, pi, pj = best
            if pi != t:
                self._rswap(pi, t)
            if pj != t:
                self._cswap(pj, t)
            while True:
                p = a[t][t]
                for i in range(t + 1, m):
                    v = a[i][t]
                    if v:
                        self._rop(i, t, v // p)
                for j in range(t + 1, n):
                    v = a[t][j]
                    if v:
                        self._cop(j, t, v // p)
                best = None
                for i in range(t + 1, m):
                    v = a[i][t]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, None)
                for j in range(t + 1, n):
                    v = a[t][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), None, j)
                if best is not None:
                    _, bi, bj = best
                    if bi is not None:
                        self._rswap(bi, t)
                    else:
                        self._cswap(bj, t)
                    continue
                bad = None
                for i in range(t + 1, m):
                    row = a[i]
                    for j in range(t + 1, n):
                        if row[j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                self._rop(t, bad, -1)
            if a[t][t] < 0:
                self._rneg(t)
            self.diagonal.append(a[t][t])


def smith_normal_form(A):
    """Return ``(D, U, V)`` with ``U @ A @ V == D``.

    ``U`` and ``V`` are unimodular and ``D`` is diagonal with nonnegative
    entries ``d1 | d2 | ...``.
    """
    A = as_matrix(A)
    s = _SNF(A)
    return (IntMatrix._wrap(s.a, A.rows, A.cols), IntMatrix._wrap(s.u, A.rows, A.rows),
            IntMatrix._wrap(s.v, A.cols, A.cols))


@dataclass(frozen=True)
class AbelianGroupInvariants:
    """``Z^free_rank + Z/d1 + ... + Z/dk`` with ``d1 | d2 | ... | dk`` and every ``di >= 2``."""

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0 or any(d < 2 for d in self.torsion):
            raise ValueError(f"bad invariants {self.free_rank}, {self.torsion}")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    @property
    def rank(self):
        return self.free_rank

    def to_json(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["free_rank"]), tuple(int(d) for d in data["torsion"]))

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"


def direct_sum(*groups):
    groups = list(groups)
    torsion = [d for g in groups for d in g.torsion]
    free = sum(g.free_rank for g in groups)
    if not torsion:
        return AbelianGroupInvariants(free)
    return AbelianGroupInvariants(free, cokernel_invariants(IntMatrix.diag(torsion)).torsion)


def _invariants_from_diagonal(diagonal, rows):
    nonzero = [d for d in diagonal if d]
    return AbelianGroupInvariants(rows - len(nonzero), tuple(d for d in nonzero if d > 1))


def cokernel_invariants(A):
    """Invariants of ``Z^rows / column span(A)``."""
    A = as_matrix(A)
    reduced = simplify_presentation(FPAbelianGroup(A.rows, A)).group
    s = _SNF(reduced.relations, track=False)
    return _invariants_from_diagonal(s.diagonal, reduced.generator_count)


def invariant_factors(A):
    """Nonzero diagonal entries of the Smith form of ``A``."""
    return [d for d in _SNF(as_matrix(A), track=False).diagonal if d]


def rank(A):
    return len(invariant_factors(A))


# ---------------------------------------------------------------------------
# lattices, kernels and integer solving

def lattice_basis(vectors, dim):
    """Canonical basis (HNF rows) of the lattice spanned by ``vectors`` in ``Z^dim``."""
    a = [list(v) for v in vectors]
    pivots = _hnf_in_place(a, len(a), dim)
    return [tuple(a[i]) for i in range(len(pivots))]


def kernel_basis(A):
    """Columns form the canonical Z-basis of ``{x : A x = 0}``.

    The basis is the Hermite form of any kernel basis, so each vector has a
    positive leading entry.
    """
    A = as_matrix(A)
    n = A.cols
    at = A.T.tolist()
    u = IntMatrix.identity(n).tolist()
    pivots = _hnf_in_place(at, n, A.rows, u)
    basis = lattice_basis(u[len(pivots):], n)
    return IntMatrix.from_columns(basis, n)


def column_lattice(A):
    """Canonical basis matrix (columns) of the column span of ``A``."""
    A = as_matrix(A)
    return IntMatrix.from_columns(lattice_basis(A.columns(), A.rows), A.rows)


class IntegerSolver:
    """Solve ``A X = B`` over the integers for many right-hand sides."""

    def __init__(self, A):
        A = as_matrix(A)
        self.A = A
        s = _SNF(A)
        self.u = IntMatrix._wrap(s.u, A.rows, A.rows)
        self.v = IntMatrix._wrap(s.v, A.cols, A.cols)
        self.diagonal = s.diagonal

    def solve(self, B):
        """Return ``X`` with ``A X = B`` or ``None`` when no integral solution exists."""
        B = as_matrix(B)
        if B.rows != self.A.rows:
            raise ValueError("right-hand side has the wrong number of rows")
        c = (self.u @ B).tolist()
        d = self.diagonal
        y = [[0] * B.cols for _ in range(self.A.cols)]
        for i, row in enumerate(c):
            di = d[i] if i < len(d) else 0
            if di == 0:
                if any(row):
                    return None
                continue
            for j, x in enumerate(row):
                if x % di:
                    return None
                y[i][j] = x // di
        return self.v @ IntMatrix._wrap(y, self.A.cols, B.cols)

    def contains(self, B):
        return self.solve(B) is not None


def solve(A, B):
    return IntegerSolver(A).solve(B)


def in_span(R, X):
    """True when every column of ``X`` is an integer combination of columns of ``R``."""
    X = as_matrix(X)
    if X.is_zero():
        return True
    if R is None or R.cols == 0:
        return False
    return IntegerSolver(R).contains(X)


# ---------------------------------------------------------------------------
# finitely presented abelian groups

@dataclass(frozen=True)
class FPAbelianGroup:
    """``Z^generator_count / column span(relations)``."""

    generator_count: int
    relations: IntMatrix = None

    def __post_init__(self):
        rel = self.relations
        if rel is None:
            rel = IntMatrix.zeros(self.generator_count, 0)
        rel = as_matrix(rel)
        if rel.rows != self.generator_count:
            raise ValueError("relations must have one row per generator")
        object.__setattr__(self, "relations", rel)

    @classmethod
    def free(cls, n):
        return cls(n, IntMatrix.zeros(n, 0))

    @classmethod
    def cyclic(cls, order):
        return cls(1, IntMatrix([[order]]))

    @property
    def is_free_presentation(self):
        return self.relations.cols == 0 or self.relations.is_zero()

    def invariants(self):
        return cokernel_invariants(self.relations)

    def contains(self, X):
        """Is every column of ``X`` zero in the group?"""
        return in_span(self.relations, X)

    def to_json(self):
        return {"generators": self.generator_count, "relations": self.relations.to_json()}

    @classmethod
    def from_json(cls, data):
        g = int(data["generators"])
        rel = data.get("relations") or []
        return cls(g, IntMatrix.from_json(rel) if rel else IntMatrix.zeros(g, 0))


def direct_sum_presentation(groups):
    groups = list(groups)
    n = sum(g.generator_count for g in groups)
    return FPAbelianGroup(n, block_diag([g.relations for g in groups]) if groups else
                          IntMatrix.zeros(0, 0))


@dataclass(frozen=True)
class SimplifiedPresentation:
    """A smaller presentation of the same group.

    ``proj`` (new x old) carries old generators to the new ones, ``lift``
    (old x new) sends each new generator to the old generator it came from.
    Both induce mutually inverse isomorphisms on the quotients.
    """

    group: FPAbelianGroup
    proj: IntMatrix
    lift: IntMatrix


def simplify_presentation(fp):
    """Eliminate generators that some relation expresses with a unit coefficient."""
    g = fp.generator_count
    rels = {}
    for c, col in enumerate(fp.relations.columns()):
        d = {i: v for i, v in enumerate(col) if v}
        if d:
            rels[c] = d
    # occurrence index: generator -> relation ids
    occ = {i: set() for i in range(g)}
    for c, d in rels.items():
        for i in d:
            occ[i].add(c)
    # image of each old generator, in terms of current generators
    image = {i: {i: 1} for i in range(g)}
    img_occ = {i: {i} for i in range(g)}
    alive = set(range(g))

    def pick():
        best = None
        for c, d in rels.items():
            for i, v in d.items():
                if v in (1, -1):
                    key = (len(d), len(occ[i]), c, i)
                    if best is None or key < best[0]:
                        best = (key, c, i, v)
                    break
            if best is not None and best[0][0] <= 2:
                break
        return best

    def eliminate(target, pivot_rel, i, u, factor_of):
        # target -= (target[i] * u) * pivot_rel, so the coefficient of i vanishes
        q = factor_of * u
        for j, w in pivot_rel.items():
            nv = target.get(j, 0) - q * w
            if nv:
                target[j] = nv
            else:
                target.pop(j, None)

    while True:
        found = pick()
        if found is None:
            break
        _, c, i, u = found
        r = rels.pop(c)
        for j in r:
            occ[j].discard(c)
        for c2 in list(occ[i]):
            d = rels[c2]
            before = set(d)
            eliminate(d, r, i, u, d[i])
            for j in before - set(d):
                occ[j].discard(c2)
            for j in set(d) - before:
                occ[j].add(c2)
            if not d:
                del rels[c2]
        for old in list(img_occ[i]):
            d = image[old]
            before = set(d)
            eliminate(d, r, i, u, d[i])
            for j in before - set(d):
                img_occ[j].discard(old)
            for j in set(d) - before:
                img_occ[j].add(old)
        alive.discard(i)
        del occ[i]
    survivors = sorted(alive)
    index = {old: k for k, old in enumerate(survivors)}
    ng = len(survivors)
    rel_cols = []
    for c in sorted(rels):
        col = [0] * ng
        for j, v in rels[c].items():
            col[index[j]] = v
        rel_cols.append(col)
    proj = [[0] * g for _ in range(ng)]
    for old in range(g):
        for j, v in image[old].items():
            proj[index[j]][old] = v
    lift = [[0] * ng for _ in range(g)]
    for k, old in enumerate(survivors):
        lift[old][k] = 1
    group = FPAbelianGroup(ng, IntMatrix.from_columns(rel_cols, ng))
    return SimplifiedPresentation(group, IntMatrix._wrap(proj, ng, g), IntMatrix._wrap(lift, g, ng))


def map_kernel_lattice(F, target_relations):
    """Basis of ``{x : F x in span(target_relations)}`` as columns."""
    n = F.cols
    if target_relations is None or target_relations.cols == 0:
        return kernel_basis(F)
    K = kernel_basis(hstack([F, target_relations]))
    top = [K.col(j)[:n] for j in range(K.cols)]
    return IntMatrix.from_columns(lattice_basis(top, n), n)


def is_zero_map(F, target):
    return target.contains(F)


def is_isomorphism(F, source, target):
    """Does ``F`` (on generators) induce an isomorphism ``source -> target``?"""
    F = as_matrix(F)
    if not target.contains(F @ source.relations):
        return False
    surj = cokernel_invariants(hstack([F, target.relations]))
    if not surj.is_trivial:
        return False
    K = map_kernel_lattice(F, target.relations)
    return source.contains(K)


# ---------------------------------------------------------------------------
# homology

class HomologyGroup:
    """``H = Z / B`` for a cycle lattice ``Z`` and boundary lattice ``B``.

    Generators are cycle representatives in the basis induced by the Smith
    form of the boundaries written in cycle coordinates; trivial ones are
    dropped.  Torsion generators come first (ascending order), then free
    ones, matching :attr:`invariants`.
    """

    def __init__(self, cycles, boundaries):
        self.cycles = cycles
        dim, z = cycles.rows, cycles.cols
        self.ambient_dim = dim
        if z:
            self._cycle_solver = IntegerSolver(cycles)
            Y = self._cycle_solver.solve(boundaries)
            if Y is None:
                raise CompositionNonzero(None)
        else:
            self._cycle_solver = None
            Y = IntMatrix.zeros(0, boundaries.cols)
        s = _SNF(Y)
        self._u = IntMatrix._wrap(s.u, z, z) if z else IntMatrix.zeros(0, 0)
        uinv = IntMatrix._wrap(s.uinv, z, z) if z else IntMatrix.zeros(0, 0)
        diag = list(s.diagonal) + [0] * (z - len(s.diagonal))
        keep = [i for i, d in enumerate(diag) if d != 1]
        self._keep = keep
        self.orders = tuple(diag[i] for i in keep)
        basis = cycles @ uinv
        self.generators = basis.select_cols(keep)
        self.invariants = AbelianGroupInvariants(sum(1 for d in self.orders if d == 0),
                                                 tuple(d for d in self.orders if d))

    @property
    def ngens(self):
        return len(self.orders)

    def presentation(self):
        torsion = [d for d in self.orders if d]
        rel = IntMatrix.diag(torsion, rows=self.ngens, cols=len(torsion))
        return FPAbelianGroup(self.ngens, rel)

    def coordinates(self, X):
        """Coordinates of the cycles in the columns of ``X`` on :attr:`generators`."""
        X = as_matrix(X)
        if self.cycles.cols == 0:
            if any(v for row in X.tolist() for v in row):
                raise ValueError("vector is not a cycle")
            return IntMatrix.zeros(0, X.cols)
        c = self._cycle_solver.solve(X)
        if c is None:
            raise ValueError("vector is not a cycle")
        w = (self._u @ c).select_rows(self._keep).tolist()
        for i, d in enumerate(self.orders):
            if d:
                w[i] = [x % d for x in w[i]]
        return IntMatrix._wrap(w, self.ngens, X.cols)

    def __repr__(self):
        return f"HomologyGroup({self.invariants})"


class ChainComplex:
    """Chain complex of finitely presented abelian groups.

    ``differentials[k]`` is the matrix of ``C_k -> C_{k-1}`` on generators and
    ``relations[k]`` presents ``C_k`` (omitted means free).  Degrees that are
    not mentioned are zero.
    """

    def __init__(self, ranks, differentials=None, relations=None, check=True):
        self.ranks = {int(k): int(v) for k, v in ranks.items()}
        self.differentials = {int(k): as_matrix(v) for k, v in (differentials or {}).items()}
        self.relations = {int(k): as_matrix(v) for k, v in (relations or {}).items()}
        for k, d in self.differentials.items():
            if d.shape != (self.rank(k - 1), self.rank(k)):
                raise ValueError(f"differential {k} has shape {d.shape}, expected "
                                 f"{(self.rank(k - 1), self.rank(k))}")
        for k, r in self.relations.items():
            if r.rows != self.rank(k):
                raise ValueError(f"relations in degree {k} have the wrong number of rows")
        self._homology = {}
        if check:
            self.check()

    @classmethod
    def from_boundaries(cls, boundaries):
        """``boundaries[k]`` is ``d_k : C_k -> C_{k-1}``; ``boundaries[0]`` may have zero rows."""
        boundaries = [as_matrix(b) for b in boundaries]
        ranks = {k: b.cols for k, b in enumerate(boundaries)}
        if boundaries and boundaries[0].rows:
            ranks[-1] = boundaries[0].rows
        return cls(ranks, dict(enumerate(boundaries)))

    def degrees(self):
        return sorted(k for k, v in self.ranks.items() if v)

    def rank(self, k):
        return self.ranks.get(k, 0)

    def d(self, k):
        if k in self.differentials:
            return self.differentials[k]
        return IntMatrix.zeros(self.rank(k - 1), self.rank(k))

    def rel(self, k):
        if k in self.relations:
            return self.relations[k]
        return IntMatrix.zeros(self.rank(k), 0)

    def group(self, k):
        return FPAbelianGroup(self.rank(k), self.rel(k))

    def check(self):
        for k in self.differentials:
            if k - 1 not in self.differentials:
                continue
            comp = self.d(k - 1) @ self.d(k)
            if not in_span(self.rel(k - 2), comp):
                raise CompositionNonzero(k)
            # differentials must respect relations
        for k, r in self.relations.items():
            if r.cols and not in_span(self.rel(k - 1), self.d(k) @ r):
                raise CompositionNonzero(k)

    def homology(self, k):
        if k not in self._homology:
            n = self.rank(k)
            cycles = map_kernel_lattice(self.d(k), self.rel(k - 1) if self.relations else None)
            boundaries = hstack([self.d(k + 1), self.rel(k)], rows=n)
            self._homology[k] = HomologyGroup(cycles, boundaries)
        return self._homology[k]

    def homology_invariants(self, k):
        return self.homology(k).invariants


def chain_homology(boundaries, k):
    """Invariants of ``ker d_k / im d_{k+1}`` for ``boundaries[k] = d_k``."""
    boundaries = [as_matrix(b) for b in boundaries]
    for j in range(1, len(boundaries)):
        if not (boundaries[j - 1] @ boundaries[j]).is_zero():
            raise CompositionNonzero(j)
    return ChainComplex.from_boundaries(boundaries).homology_invariants(k)


def check_chain_map(source, target, maps):
    """Raise :class:`NotChainMap` unless ``maps`` commutes with the differentials."""
    degrees = set(source.ranks) | set(target.ranks)
    for k in sorted(degrees):
        fk = _map_at(source, target, maps, k)
        fk1 = _map_at(source, target, maps, k - 1)
        lhs = target.d(k) @ fk
        rhs = fk1 @ source.d(k)
        if not in_span(target.rel(k - 1), lhs - rhs):
            raise NotChainMap(k)


def _map_at(source, target, maps, k):
    if k in maps:
        m = as_matrix(maps[k])
        if m.shape != (target.rank(k), source.rank(k)):
            raise ValueError(f"chain map in degree {k} has shape {m.shape}")
        return m
    return IntMatrix.zeros(target.rank(k), source.rank(k))


def homology_induced_map(source, target, maps, k, check=True):
    """Matrix of ``H_k(f)`` on the canonical homology generators."""
    if check:
        check_chain_map(source, target, maps)
    hs, ht = source.homology(k), target.homology(k)
    fk = _map_at(source, target, maps, k)
    return ht.coordinates(fk @ hs.generators)


def presented_map_is_zero(F, target):
    return target.contains(F)


def gcd_list(values):
    return reduce(gcd, values, 0)
