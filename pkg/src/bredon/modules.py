"""
Finitely presented Bredon modules over an orbit category.

A module stores, for every object, a finitely presented abelian group and,
for *every* morphism of the category, the matrix of the induced map on
generators.  Right modules are contravariant: a morphism ``f : a -> b``
acts as a matrix ``M(b) -> M(a)``.  Left modules are covariant.

All constructions are componentwise, which is how limits and colimits of
functor categories are computed.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .errors import BudgetExceeded, VarianceMismatch
from .linalg import (ChainComplex, FPAbelianGroup, IntegerSolver, IntMatrix, block_diag,
                     hstack, lattice_basis, map_kernel_lattice, solve)

RIGHT = "right"
LEFT = "left"
DEFAULT_BUDGET = 20000


def budget():
    return int(os.environ.get("BREDON_BUDGET", DEFAULT_BUDGET))


class BredonModule:
    """A functor from the orbit category to finitely presented abelian groups."""

    def __init__(self, category, variance, values, actions, check=True):
        if variance not in (RIGHT, LEFT):
            raise ValueError(f"variance must be 'right' or 'left', not {variance!r}")
        self.category = category
        self.variance = variance
        self.values = tuple(values)
        self.actions = tuple(actions)
        if len(self.values) != category.n_objects:
            raise ValueError("one value per object is required")
        if len(self.actions) != len(category.morphisms):
            raise ValueError("one action matrix per morphism is required")
        for m in category.morphisms:
            a = self.actions[m.id]
            want = (self.gens(self.action_target(m.id)), self.gens(self.action_source(m.id)))
            if a.shape != want:
                raise ValueError(f"action of morphism {m.id} has shape {a.shape}, expected {want}")
        self._solvers = {}
        if check:
            bad = self._ill_defined()
            if bad is not None:
                raise ValueError(f"action of morphism {bad} does not respect relations")

    def gens(self, o):
        return self.values[o].generator_count

    def value(self, o):
        return self.values[o]

    def action(self, f):
        return self.actions[f]

    def action_source(self, f):
        """Object whose value the action of ``f`` starts from."""
        m = self.category.morphisms[f]
        return m.target if self.variance == RIGHT else m.source

    def action_target(self, f):
        m = self.category.morphisms[f]
        return m.source if self.variance == RIGHT else m.target

    def relation_solver(self, o):
        if o not in self._solvers:
            rel = self.values[o].relations
            self._solvers[o] = IntegerSolver(rel) if rel.cols else None
        return self._solvers[o]

    def is_zero_at(self, o, X):
        """Are all columns of ``X`` zero in ``M(o)``?"""
        if X.is_zero():
            return True
        s = self.relation_solver(o)
        return s is not None and s.contains(X)

    def _ill_defined(self):
        for m in self.category.morphisms:
            src = self.action_source(m.id)
            rel = self.values[src].relations
            if rel.cols and not self.is_zero_at(self.action_target(m.id), self.actions[m.id] @ rel):
                return m.id
        return None

    def invariants(self):
        return [v.invariants() for v in self.values]

    def is_zero(self):
        return all(v.invariants().is_trivial for v in self.values)

    @property
    def total_generators(self):
        return sum(v.generator_count for v in self.values)

    def to_json(self):
        objects = []
        for o in range(self.category.n_objects):
            acts = {str(m.id): self.actions[m.id].to_json()
                    for m in self.category.morphisms if m.source == o}
            d = self.values[o].to_json()
            d["actions"] = acts
            objects.append(d)
        return {"variance": self.variance, "objects": objects}

    @classmethod
    def from_json(cls, category, data):
        values, actions = [], [None] * len(category.morphisms)
        for o, obj in enumerate(data["objects"]):
            values.append(FPAbelianGroup.from_json(obj))
        variance = data["variance"]
        for o, obj in enumerate(data["objects"]):
            for mid, mat in obj.get("actions", {}).items():
                m = category.morphisms[int(mid)]
                s, t = (m.target, m.source) if variance == RIGHT else (m.source, m.target)
                actions[m.id] = IntMatrix.from_json(mat, values[t].generator_count,
                                                    values[s].generator_count)
        if any(a is None for a in actions):
            raise ValueError("module JSON is missing action matrices")
        return cls(category, variance, values, actions)

    def __repr__(self):
        vals = ", ".join(str(v.invariants()) for v in self.values)
        return f"BredonModule({self.variance}: {vals})"


@dataclass
class ModuleReport:
    valid: bool
    violations: list = field(default_factory=list)


def validate_module(M):
    """Check functoriality modulo relations; never raises."""
    cat = M.category
    problems = []
    bad = M._ill_defined()
    if bad is not None:
        problems.append(f"action of morphism {bad} does not respect relations")
    for s, ident in enumerate(cat.identities):
        n = M.gens(s)
        if not M.is_zero_at(s, M.action(ident) - IntMatrix.identity(n)):
            problems.append(f"identity of object {s} does not act as the identity")
    for f in cat.morphisms:
        for h in cat.morphisms:
            if f.target != h.source:
                continue
            c = cat.compose(f.id, h.id)
            if M.variance == RIGHT:
                expect = M.action(f.id) @ M.action(h.id)
                where = f.source
            else:
                expect = M.action(h.id) @ M.action(f.id)
                where = h.target
            if not M.is_zero_at(where, M.action(c) - expect):
                problems.append(f"composite of morphisms {f.id} then {h.id} (= {c}) is not respected")
                if len(problems) > 20:
                    return ModuleReport(False, problems)
    return ModuleReport(not problems, problems)


def trivial_module(category, variance=RIGHT):
    """The constant functor with value Z and identity actions."""
    values = [FPAbelianGroup.free(1)] * category.n_objects
    one = IntMatrix([[1]])
    return BredonModule(category, variance, values, [one] * len(category.morphisms), check=False)


def constant_module(category, group, variance=RIGHT):
    """Constant functor with value ``group`` (an :class:`FPAbelianGroup`)."""
    ident = IntMatrix.identity(group.generator_count)
    return BredonModule(category, variance, [group] * category.n_objects,
                        [ident] * len(category.morphisms), check=False)


def zero_module(category, variance=RIGHT):
    return BredonModule(category, variance, [FPAbelianGroup.free(0)] * category.n_objects,
                        [IntMatrix.zeros(0, 0)] * len(category.morphisms), check=False)


class FreeModule(BredonModule):
    """Direct sum of represented modules, one summand per entry of ``basis``.

    For a right module the summand at ``b`` is ``Z[-, G/L_b]``, whose value at
    ``o`` has basis ``hom(o, b)``; for a left module it is ``Z[G/L_b, -]``
    with basis ``hom(b, o)`` at ``o``.  Values list the summands in basis
    order, each in morphism-id order.
    """

    def __init__(self, category, variance, basis):
        self.basis = tuple(int(b) for b in basis)
        cat = category
        n = cat.n_objects
        self._index = []
        for o in range(n):
            idx = {}
            for bi, b in enumerate(self.basis):
                ms = cat.hom(o, b) if variance == RIGHT else cat.hom(b, o)
                for m in ms:
                    idx[(bi, m)] = len(idx)
            self._index.append(idx)
        values = [FPAbelianGroup.free(len(idx)) for idx in self._index]
        actions = []
        for m in cat.morphisms:
            if variance == RIGHT:
                src, tgt = m.target, m.source
            else:
                src, tgt = m.source, m.target
            data = [[0] * len(self._index[src]) for _ in range(len(self._index[tgt]))]
            for (bi, psi), j in self._index[src].items():
                image = cat.compose(m.id, psi) if variance == RIGHT else cat.compose(psi, m.id)
                data[self._index[tgt][(bi, image)]][j] = 1
            actions.append(IntMatrix._wrap(data, len(self._index[tgt]), len(self._index[src])))
        super().__init__(category, variance, values, actions, check=False)

    def index(self, o, b, morphism):
        """Position of basis element ``(b, morphism)`` in the value at ``o``."""
        return self._index[o][(b, morphism)]

    def generator_index(self, b):
        """Position of the identity of summand ``b`` in its own object's value."""
        o = self.basis[b]
        return self._index[o][(b, self.category.identities[o])]

    def entries(self, o):
        return list(self._index[o])

    @property
    def multiplicities(self):
        out = []
        for b in self.basis:
            if out and out[-1][0] == b:
                out[-1] = (b, out[-1][1] + 1)
            else:
                out.append((b, 1))
        return out

    def __repr__(self):
        return f"FreeModule({self.variance}, basis={list(self.basis)})"


def representable(category, obj, variance=RIGHT):
    """``Z[-, G/L]`` (right) or ``Z[G/L, -]`` (left) for the object ``obj``."""
    return FreeModule(category, variance, (obj,))


class BredonMorphism:
    """Natural transformation given by one matrix per object."""

    def __init__(self, source, target, components, check=True):
        if source.variance != target.variance:
            raise VarianceMismatch("morphism between modules of different variance")
        if source.category is not target.category:
            raise ValueError("morphism between modules over different categories")
        self.source = source
        self.target = target
        self.components = tuple(components)
        for o, c in enumerate(self.components):
            if c.shape != (target.gens(o), source.gens(o)):
                raise ValueError(f"component {o} has shape {c.shape}")
        if check:
            problem = self.first_violation()
            if problem is not None:
                raise ValueError(problem)

    @property
    def category(self):
        return self.source.category

    def first_violation(self):
        M, N = self.source, self.target
        for o, c in enumerate(self.components):
            rel = M.values[o].relations
            if rel.cols and not N.is_zero_at(o, c @ rel):
                return f"component {o} does not respect relations"
        for m in self.category.morphisms:
            s, t = M.action_source(m.id), M.action_target(m.id)
            lhs = N.action(m.id) @ self.components[s]
            rhs = self.components[t] @ M.action(m.id)
            if not N.is_zero_at(t, lhs - rhs):
                return f"naturality square for morphism {m.id} does not commute"
        return None

    def is_natural(self):
        return self.first_violation() is None

    def then(self, other):
        """``self`` followed by ``other``."""
        return BredonMorphism(self.source, other.target,
                              [b @ a for a, b in zip(self.components, other.components)], check=False)

    def __add__(self, other):
        return BredonMorphism(self.source, self.target,
                              [a + b for a, b in zip(self.components, other.components)], check=False)

    def scale(self, k):
        return BredonMorphism(self.source, self.target, [c.scale(k) for c in self.components],
                              check=False)

    def is_zero(self):
        return all(self.target.is_zero_at(o, c) for o, c in enumerate(self.components))

    def equals(self, other):
        return (self - other).is_zero()

    def __sub__(self, other):
        return self + other.scale(-1)

    def is_isomorphism(self):
        from .linalg import is_isomorphism
        return all(is_isomorphism(c, self.source.values[o], self.target.values[o])
                   for o, c in enumerate(self.components))


def identity_morphism(M):
    return BredonMorphism(M, M, [IntMatrix.identity(M.gens(o)) for o in range(M.category.n_objects)],
                          check=False)


def zero_morphism(M, N):
    return BredonMorphism(M, N, [IntMatrix.zeros(N.gens(o), M.gens(o))
                                 for o in range(M.category.n_objects)], check=False)


def direct_sum(modules):
    """Direct sum with its injections and projections."""
    modules = list(modules)
    cat = modules[0].category
    variance = modules[0].variance
    if any(m.variance != variance for m in modules):
        raise VarianceMismatch("direct sum of modules of different variance")
    from .linalg import direct_sum_presentation
    values = [direct_sum_presentation([m.values[o] for m in modules]) for o in range(cat.n_objects)]
    actions = [block_diag([m.actions[f.id] for m in modules]) for f in cat.morphisms]
    S = BredonModule(cat, variance, values, actions, check=False)
    injections, projections = [], []
    for i, mod in enumerate(modules):
        inj, proj = [], []
        for o in range(cat.n_objects):
            before = sum(m.gens(o) for m in modules[:i])
            total = S.gens(o)
            g = mod.gens(o)
            e = [[int(r == before + c) for c in range(g)] for r in range(total)]
            inj.append(IntMatrix._wrap(e, total, g))
            proj.append(IntMatrix._wrap([list(row) for row in zip(*e)] if total else
                                        [[] for _ in range(g)], g, total))
        injections.append(BredonMorphism(mod, S, inj, check=False))
        projections.append(BredonMorphism(S, mod, proj, check=False))
    return S, injections, projections


# ---------------------------------------------------------------------------
# kernels and cokernels

def kernel(phi):
    """Componentwise kernel of ``phi`` with its inclusion."""
    M, N = phi.source, phi.target
    cat = M.category
    bases, values = [], []
    for o in range(cat.n_objects):
        B = map_kernel_lattice(phi.components[o], N.values[o].relations)
        rel = M.values[o].relations
        if rel.cols:
            Y = solve(B, rel)
            assert Y is not None, "relations must lie in the kernel"
        else:
            Y = IntMatrix.zeros(B.cols, 0)
        bases.append(B)
        values.append(FPAbelianGroup(B.cols, Y))
    solvers = [IntegerSolver(B) if B.cols else None for B in bases]
    actions = []
    for m in cat.morphisms:
        s, t = M.action_source(m.id), M.action_target(m.id)
        image = M.action(m.id) @ bases[s]
        if solvers[t] is None:
            actions.append(IntMatrix.zeros(0, bases[s].cols))
            continue
        Z = solvers[t].solve(image)
        if Z is None:
            raise ValueError("kernel is not preserved by the action")
        actions.append(Z)
    K = BredonModule(cat, M.variance, values, actions, check=False)
    return K, BredonMorphism(K, M, bases, check=False)


def cokernel(phi):
    """Componentwise cokernel of ``phi`` with its projection."""
    M, N = phi.source, phi.target
    cat = M.category
    values = [FPAbelianGroup(N.gens(o), hstack([N.values[o].relations, phi.components[o]]))
              for o in range(cat.n_objects)]
    C = BredonModule(cat, N.variance, values, N.actions, check=False)
    return C, BredonMorphism(N, C, [IntMatrix.identity(N.gens(o)) for o in range(cat.n_objects)],
                             check=False)


def image_module(phi):
    """Image of ``phi`` as the cokernel of its kernel inclusion (source side)."""
    K, incl = kernel(phi)
    return cokernel(incl)


# ---------------------------------------------------------------------------
# Yoneda

def _yoneda_components(M, obj, x):
    cat = M.category
    x = IntMatrix.from_columns([x], M.gens(obj)) if not isinstance(x, IntMatrix) else x
    comps = []
    for o in range(cat.n_objects):
        ms = cat.hom(o, obj) if M.variance == RIGHT else cat.hom(obj, o)
        cols = [M.action(psi) @ x for psi in ms]
        comps.append(hstack(cols, rows=M.gens(o)) if cols else IntMatrix.zeros(M.gens(o), 0))
    return comps


def free_morphism(P, M, images):
    """Morphism from the free module ``P`` sending summand ``b``'s identity to ``images[b]``."""
    cat = P.category
    if P.variance != M.variance:
        raise VarianceMismatch("free morphism between modules of different variance")
    per_basis = [_yoneda_components(M, b, x) for b, x in zip(P.basis, images)]
    comps = []
    for o in range(cat.n_objects):
        blocks = [pb[o] for pb in per_basis]
        comps.append(hstack(blocks, rows=M.gens(o)) if blocks else IntMatrix.zeros(M.gens(o), 0))
    return BredonMorphism(P, M, comps, check=False)


def yoneda(M, obj, x):
    """The morphism from the represented module at ``obj`` to ``M`` sending the identity to ``x``."""
    return free_morphism(representable(M.category, obj, M.variance), M, [list(x)])


def yoneda_inverse(phi, obj=None):
    """Evaluate a morphism out of a represented module at the identity."""
    P = phi.source
    if obj is None:
        obj = P.basis[0]
    col = P.generator_index(0) if isinstance(P, FreeModule) else None
    return list(phi.components[obj].col(col))


# ---------------------------------------------------------------------------
# free covers and resolutions

class _Span:
    """Integer span of vectors in ``Z^dim``, kept in Hermite form."""

    def __init__(self, dim, vectors=()):
        self.dim = dim
        self.rows = lattice_basis(list(vectors), dim) if vectors else []

    def add(self, vectors):
        vectors = [v for v in vectors if any(v)]
        if vectors:
            self.rows = lattice_basis(self.rows + vectors, self.dim)

    def contains(self, v):
        v = list(v)
        for row in self.rows:
            p = next(i for i, x in enumerate(row) if x)
            if v[p] % row[p]:
                return False
            q = v[p] // row[p]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return not any(v)


def _processing_order(category, variance):
    # a generator at L reaches objects whose subgroup is subconjugate to L (right)
    # or contains a conjugate of L (left)
    sign = -1 if variance == RIGHT else 1
    return sorted(range(category.n_objects), key=lambda o: (sign * category.objects[o].order, o))


def free_cover(M, greedy=False):
    """A finitely generated free module ``P`` with an epimorphism ``P -> M``.

    Free modules cover themselves by the identity.  Otherwise every
    presentation generator of every value contributes one summand, in
    object order.  With ``greedy=True`` objects are visited so that
    generators placed early reach as many later objects as possible, and a
    generator already in the submodule generated so far is skipped.
    """
    cat = M.category
    if isinstance(M, FreeModule):
        P = FreeModule(cat, M.variance, M.basis)
        return P, identity_morphism(P)
    if greedy:
        chosen = _greedy_generators(M)
    else:
        chosen = [(o, j) for o in range(cat.n_objects) for j in range(M.gens(o))]
    P = FreeModule(cat, M.variance, [b for b, _ in chosen])
    images = []
    for b, j in chosen:
        e = [0] * M.gens(b)
        e[j] = 1
        images.append(e)
    return P, free_morphism(P, M, images)


def _greedy_generators(M):
    cat = M.category
    chosen = []  # (object, generator index)
    for o in _processing_order(cat, M.variance):
        g = M.gens(o)
        if g == 0:
            continue
        span = _Span(g, M.values[o].relations.columns())
        for (b, j) in chosen:
            ms = cat.hom(o, b) if M.variance == RIGHT else cat.hom(b, o)
            span.add([M.action(psi).col(j) for psi in ms])
        endo = cat.hom(o, o)
        for j in range(g):
            e = [0] * g
            e[j] = 1
            if span.contains(e):
                continue
            chosen.append((o, j))
            span.add([M.action(psi).col(j) for psi in endo])
    return chosen


@dataclass
class Resolution:
    """``P_n -> ... -> P_0 -> M -> 0``; ``differentials[k] : P_k -> P_{k-1}`` for ``k >= 1``."""

    target: BredonModule
    terms: list
    differentials: list
    augmentation: BredonMorphism

    @property
    def length(self):
        return len(self.terms) - 1

    def ranks(self):
        return [len(P.basis) for P in self.terms]

    def object_ranks(self):
        return [[P.gens(o) for o in range(P.category.n_objects)] for P in self.terms]

    def object_complex(self, o):
        """The augmented complex at object ``o``, with ``M(o)`` in degree -1."""
        ranks = {-1: self.target.gens(o)}
        diffs = {0: self.augmentation.components[o]}
        for k, P in enumerate(self.terms):
            ranks[k] = P.gens(o)
            if k:
                diffs[k] = self.differentials[k].components[o]
        return ChainComplex(ranks, diffs, {-1: self.target.values[o].relations}, check=False)

    def is_exact(self):
        """Exactness at ``M`` and at ``P_0 .. P_{n-1}``, at every object."""
        for o in range(self.target.category.n_objects):
            C = self.object_complex(o)
            for k in range(-1, self.length):
                if not C.homology_invariants(k).is_trivial:
                    return False
        return True


def _check_budget(P, what):
    size = P.total_generators
    limit = budget()
    if size > limit:
        raise BudgetExceeded(what, size, limit)


def resolve(M, n, verify=True, greedy=True):
    """Free resolution of ``M`` up to degree ``n`` by iterated covers of kernels."""
    if n < 0:
        raise ValueError("resolution degree must be nonnegative")
    P0, eps = free_cover(M, greedy)
    _check_budget(P0, "P_0")
    terms, diffs = [P0], [None]
    K, incl = kernel(eps)
    for k in range(1, n + 1):
        Pk, cover = free_cover(K, greedy)
        _check_budget(Pk, f"P_{k}")
        d = BredonMorphism(Pk, terms[-1], [i @ c for c, i in zip(cover.components, incl.components)],
                           check=False)
        terms.append(Pk)
        diffs.append(d)
        if k < n:
            K, incl = kernel(d)
    res = Resolution(M, terms, diffs, eps)
    if verify and not res.is_exact():
        raise AssertionError("constructed resolution is not exact")
    return res


@dataclass
class FPReport:
    holds: bool
    degree: int
    resolution: Resolution
    ranks: list
    object_ranks: list

    def to_json(self):
        return {"holds": self.holds, "degree": self.degree, "ranks": self.ranks,
                "object_ranks": self.object_ranks,
                "bases": [list(P.basis) for P in self.resolution.terms]}


def fp_n_report(M, n):
    """Witness that ``M`` is of type FP_n over a finite orbit category.

    Over a finite category every such module is, so the verdict is always
    true; the explicit resolution and its ranks are the useful output.
    """
    res = resolve(M, n)
    return FPReport(True, n, res, res.ranks(), res.object_ranks())
