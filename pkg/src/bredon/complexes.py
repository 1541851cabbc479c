"""
Finite admissible G-simplicial complexes and their Bredon homology.

Simplices are sorted vertex tuples; the canonical simplex order is by
dimension, then lexicographically, and simplex ids refer to that order.
Orientation comes from the global vertex order, so ``g`` sends the
oriented simplex ``s`` to ``sign * g.s`` where ``sign`` is the parity of the
permutation sorting the image vertices.  Admissibility (a group element
stabilizing a simplex fixes it pointwise) makes every such sign +1 on
fixed simplices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import NotAdmissible, NotClosedUnderFaces, NotEquivariant, ValidationError
from .groups import Subgroup, intersect_family
from .linalg import ChainComplex, FPAbelianGroup, IntMatrix, homology_induced_map
from .modules import RIGHT, BredonModule, BredonMorphism, fp_n_report, trivial_module
from .orbit import GammaSet, OrbitCategory


def _parity(seq):
    """+1 or -1 according to the parity of the permutation sorting ``seq``."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def _canonical(simplices):
    out = {tuple(sorted(int(v) for v in s)) for s in simplices}
    if any(len(set(s)) != len(s) or not s for s in out):
        raise ValidationError("simplices must be non-empty with distinct vertices")
    return sorted(out, key=lambda s: (len(s), s))


def face_closure(facets):
    out = set()
    for f in facets:
        f = tuple(sorted(int(v) for v in f))
        for r in range(1, len(f) + 1):
            out.update(combinations(f, r))
    return _canonical(out)


class SimplicialComplex:
    """A finite abstract simplicial complex without group action."""

    def __init__(self, simplices):
        self.simplices = _canonical(simplices)
        self.by_dim = {}
        for s in self.simplices:
            self.by_dim.setdefault(len(s) - 1, []).append(s)
        self.position = {s: i for p in self.by_dim for i, s in enumerate(self.by_dim[p])}

    @property
    def dim(self):
        return max(self.by_dim, default=-1)

    @property
    def vertices(self):
        return [s[0] for s in self.by_dim.get(0, [])]

    def count(self, p):
        return len(self.by_dim.get(p, []))

    def boundary(self, p):
        """``d_p : C_p -> C_{p-1}``."""
        rows, cols = self.count(p - 1), self.count(p)
        data = [[0] * cols for _ in range(rows)]
        for j, s in enumerate(self.by_dim.get(p, [])):
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                data[self.position[face]][j] += (-1) ** i
        return IntMatrix._wrap(data, rows, cols)

    def chain_complex(self, reduced=False):
        top = max(self.dim, 0)
        ranks = {p: self.count(p) for p in range(top + 1)}
        diffs = {p: self.boundary(p) for p in range(1, top + 1)}
        if reduced:
            ranks[-1] = 1
            diffs[0] = IntMatrix._wrap([[1] * self.count(0)], 1, self.count(0))
        return ChainComplex(ranks, diffs, check=False)

    def homology(self, k, reduced=False):
        return self.chain_complex(reduced).homology_invariants(k)

    def __len__(self):
        return len(self.simplices)

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.simplices == other.simplices

    def __repr__(self):
        return f"SimplicialComplex({len(self.simplices)} simplices)"


class GammaComplex:
    """A finite simplicial complex with a simplicial action of a finite group."""

    def __init__(self, group, n_vertices, action, simplices, check=True):
        self.group = group
        self.n_vertices = int(n_vertices)
        self.action = tuple(tuple(int(v) for v in p) for p in action)
        self.simplices = _canonical(simplices)
        self.index = {s: i for i, s in enumerate(self.simplices)}
        self.by_dim = {}
        for s in self.simplices:
            self.by_dim.setdefault(len(s) - 1, []).append(s)
        self.position = {s: i for p in self.by_dim for i, s in enumerate(self.by_dim[p])}
        if check:
            self.validate()

    # -- construction ---------------------------------------------------------

    @classmethod
    def from_json(cls, group, data, check=True):
        n = int(data["vertices"])
        act = data.get("action")
        if act is None:
            action = [list(range(n))] * group.order
        elif isinstance(act, dict):
            action = [act[str(g)] if str(g) in act else list(range(n)) for g in group.elements]
        else:
            action = act
        if "simplices" in data:
            simplices = data["simplices"]
        else:
            simplices = face_closure(data.get("facets", []))
        return cls(group, n, action, simplices, check=check)

    def to_json(self):
        return {"vertices": self.n_vertices,
                "action": {str(g): list(p) for g, p in enumerate(self.action)},
                "simplices": [list(s) for s in self.simplices]}

    def subcomplex(self, simplices, check=True):
        return GammaComplex(self.group, self.n_vertices, self.action, simplices, check=check)

    def skeleton(self, n):
        return self.subcomplex([s for s in self.simplices if len(s) - 1 <= n], check=False)

    # -- validation -----------------------------------------------------------

    def validate(self):
        G = self.group
        if len(self.action) != G.order:
            raise ValidationError("the action needs one vertex permutation per group element")
        for p in self.action:
            if sorted(p) != list(range(self.n_vertices)):
                raise ValidationError(f"{list(p)} is not a permutation of the vertices")
        for g in G.elements:
            for h in G.elements:
                gh = G.mul(g, h)
                if any(self.action[gh][v] != self.action[g][self.action[h][v]]
                       for v in range(self.n_vertices)):
                    raise ValidationError(f"vertex action is not a homomorphism at ({g}, {h})")
        for s in self.simplices:
            if any(not 0 <= v < self.n_vertices for v in s):
                raise ValidationError(f"simplex {list(s)} uses an unknown vertex")
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                if face and face not in self.index:
                    raise NotClosedUnderFaces(list(s), list(face))
        for g in G.elements:
            for s in self.simplices:
                image = self.act(g, s)
                if image not in self.index:
                    raise NotEquivariant(g, list(s))
                if image == s and any(self.action[g][v] != v for v in s):
                    raise NotAdmissible(g, list(s))
        return self

    def is_admissible(self):
        try:
            self.validate()
        except NotAdmissible:
            return False
        return True

    # -- action ---------------------------------------------------------------

    def act(self, g, s):
        return tuple(sorted(self.action[g][v] for v in s))

    def sign(self, g, s):
        return _parity([self.action[g][v] for v in s])

    @property
    def dim(self):
        return max(self.by_dim, default=-1)

    def cells(self, p):
        return self.by_dim.get(p, [])

    def count(self, p):
        return len(self.by_dim.get(p, []))

    def stabilizer(self, s):
        return Subgroup(self.group, (g for g in self.group.elements if self.act(g, s) == s))

    def cell_gset(self, p):
        """The G-set of ``p``-simplices, in canonical order."""
        cells = self.cells(p)
        pos = {s: i for i, s in enumerate(cells)}
        action = [[pos[self.act(g, s)] for s in cells] for g in self.group.elements]
        return GammaSet(self.group, len(cells), action, check=False)

    def orbit_representatives(self, p):
        """Least simplex of each orbit of ``p``-simplices."""
        reps, seen = [], set()
        for s in self.cells(p):
            if s in seen:
                continue
            orbit = {self.act(g, s) for g in self.group.elements}
            seen |= orbit
            reps.append(min(orbit))
        return reps

    def is_invariant(self, simplices):
        sset = set(simplices)
        return all(self.act(g, s) in sset for s in sset for g in self.group.elements)

    def fixed_vertices(self, subgroup):
        """Vertices of the complex fixed by ``subgroup``."""
        return [s[0] for s in self.cells(0)
                if all(self.action[h][s[0]] == s[0] for h in subgroup.elements)]

    def fixed_cells(self, subgroup, p):
        fixed = set(self.fixed_vertices(subgroup))
        return [s for s in self.cells(p) if all(v in fixed for v in s)]

    def __len__(self):
        return len(self.simplices)

    def __repr__(self):
        return f"GammaComplex({self.n_vertices} vertices, {len(self.simplices)} simplices)"


def validate_complex(group, data):
    return GammaComplex.from_json(group, data, check=True)


def barycentric_subdivision(X):
    """Subdivision whose vertices are the simplices of ``X`` (by simplex id)."""
    cells = X.simplices
    idx = X.index
    chains = []
    memo = {}

    # flags sigma_0 < ... < sigma_k ending at s, built downward
    def flags_memo(s):
        if s not in memo:
            out = [(idx[s],)]
            for r in range(1, len(s)):
                for f in combinations(s, r):
                    out.extend(fl + (idx[s],) for fl in flags_memo(f))
            memo[s] = out
        return memo[s]

    for s in cells:
        chains.extend(flags_memo(s))
    action = [[idx[X.act(g, s)] for s in cells] for g in X.group.elements]
    return GammaComplex(X.group, len(cells), action, chains, check=True)


def fixed_subcomplex(X, subgroup):
    """Simplices all of whose vertices are fixed by ``subgroup``."""
    fixed = set(X.fixed_vertices(subgroup))
    return SimplicialComplex([s for s in X.simplices if all(v in fixed for v in s)])


def cone(X, apex=None):
    """Cone on ``X`` with a new fixed apex (vertex ``n_vertices``)."""
    a = X.n_vertices if apex is None else apex
    action = [list(p) + [a] for p in X.action]
    simplices = list(X.simplices) + [(a,)] + [s + (a,) for s in X.simplices]
    return GammaComplex(X.group, X.n_vertices + 1, action, simplices)


# ---------------------------------------------------------------------------
# Bredon chains and homology

@dataclass
class BredonChainComplex:
    """``C_p`` as right modules with boundary morphisms ``d_p : C_p -> C_{p-1}``.

    With ``augmented`` the constant module sits in degree -1.
    """

    complex: GammaComplex
    category: OrbitCategory
    modules: dict
    differentials: dict
    augmented: bool
    cells: dict = field(repr=False, default_factory=dict)

    def object_complex(self, o):
        ranks = {p: M.gens(o) for p, M in self.modules.items()}
        diffs = {p: d.components[o] for p, d in self.differentials.items()}
        return ChainComplex(ranks, diffs, check=False)

    def object_map(self, f):
        """Chain map of the action of morphism ``f``, degree by degree."""
        return {p: M.action(f) for p, M in self.modules.items()}

    @property
    def degrees(self):
        return sorted(self.modules)


def bredon_chain_complex(X, category, augmented=False):
    cat = category
    fixed_vertices = [set(X.fixed_vertices(L)) for L in cat.objects]
    top = max(X.dim, 0)
    modules, cells = {}, {}
    for p in range(top + 1):
        per_obj = [[s for s in X.cells(p) if all(v in fv for v in s)] for fv in fixed_vertices]
        pos = [{s: i for i, s in enumerate(c)} for c in per_obj]
        cells[p] = (per_obj, pos)
        values = [FPAbelianGroup.free(len(c)) for c in per_obj]
        actions = []
        for m in cat.morphisms:
            src, tgt = per_obj[m.target], per_obj[m.source]
            data = [[0] * len(src) for _ in tgt]
            for j, s in enumerate(src):
                data[pos[m.source][X.act(m.rep, s)]][j] = X.sign(m.rep, s)
            actions.append(IntMatrix._wrap(data, len(tgt), len(src)))
        modules[p] = BredonModule(cat, RIGHT, values, actions, check=False)
    diffs = {}
    for p in range(1, top + 1):
        comps = []
        for o in range(cat.n_objects):
            rows, cols = cells[p - 1][0][o], cells[p][0][o]
            rpos = cells[p - 1][1][o]
            data = [[0] * len(cols) for _ in rows]
            for j, s in enumerate(cols):
                for i in range(len(s)):
                    data[rpos[s[:i] + s[i + 1:]]][j] += (-1) ** i
            comps.append(IntMatrix._wrap(data, len(rows), len(cols)))
        diffs[p] = BredonMorphism(modules[p], modules[p - 1], comps, check=False)
    if augmented:
        modules[-1] = trivial_module(cat, RIGHT)
        comps = [IntMatrix._wrap([[1] * len(c)], 1, len(c)) for c in cells[0][0]]
        diffs[0] = BredonMorphism(modules[0], modules[-1], comps, check=False)
    return BredonChainComplex(X, cat, modules, diffs, augmented, cells)


def _homology_module(chains, k):
    cat = chains.category
    complexes = [chains.object_complex(o) for o in range(cat.n_objects)]
    groups = [C.homology(k) for C in complexes]
    values = [h.presentation() for h in groups]
    actions = []
    for m in cat.morphisms:
        src, tgt = m.target, m.source
        F = homology_induced_map(complexes[src], complexes[tgt], chains.object_map(m.id), k,
                                 check=False)
        actions.append(F)
    return BredonModule(cat, RIGHT, values, actions, check=False), complexes


def bredon_homology(X, category, k, reduced=False, chains=None):
    """``H_k`` of the fixed-point complexes as a right module."""
    if chains is None:
        chains = bredon_chain_complex(X, category, augmented=reduced)
    return _homology_module(chains, k)[0]


def reduced_bredon_homology(X, category, k, chains=None):
    return bredon_homology(X, category, k, reduced=True, chains=chains)


@dataclass
class AcyclicityReport:
    acyclic: bool
    degree: int
    failure: tuple = None  # (object, degree, invariants)

    def to_json(self):
        out = {"acyclic": self.acyclic, "degree": self.degree}
        if self.failure is not None:
            o, k, inv = self.failure
            out["failure"] = {"object": o, "degree": k, "group": inv.to_json()}
        return out


def is_F_acyclic(X, category, n):
    """Is reduced Bredon homology zero in degrees ``-1 .. n`` at every object?"""
    chains = bredon_chain_complex(X, category, augmented=True)
    for k in range(-1, n + 1):
        for o in range(category.n_objects):
            inv = chains.object_complex(o).homology_invariants(k)
            if not inv.is_trivial:
                return AcyclicityReport(False, n, (o, k, inv))
    return AcyclicityReport(True, n)


@dataclass
class StabilizerCheck:
    simplex: tuple
    dimension: int
    stabilizer: Subgroup
    contained: bool
    fp_degree: int
    ranks: list = None

    @property
    def holds(self):
        return self.contained and self.ranks is not None

    def to_json(self):
        return {"simplex": list(self.simplex), "dimension": self.dimension,
                "stabilizer": list(self.stabilizer.elements), "family_contained": self.contained,
                "fp_degree": self.fp_degree, "resolution_ranks": self.ranks, "holds": self.holds}


@dataclass
class GoodnessReport:
    n: int
    acyclicity: AcyclicityReport
    stabilizers: list

    @property
    def condition_i(self):
        return self.acyclicity.acyclic

    @property
    def condition_ii(self):
        return all(s.holds for s in self.stabilizers)

    @property
    def good(self):
        return self.condition_i and self.condition_ii

    def to_json(self):
        return {"n": self.n, "good": self.good, "condition_i": self.acyclicity.to_json(),
                "condition_ii": [s.to_json() for s in self.stabilizers]}


def stabilizer_check(X, category, s, degree):
    stab = X.stabilizer(s)
    local, contained, _ = intersect_family(category.family, stab)
    ranks = None
    if contained:
        report = fp_n_report(trivial_module(OrbitCategory(local), RIGHT), degree)
        ranks = report.ranks
    return StabilizerCheck(s, len(s) - 1, stab, contained, degree, ranks)


def is_F_n_good(X, category, n):
    acyc = is_F_acyclic(X, category, n - 1)
    checks = []
    for p in range(0, min(n, X.dim) + 1):
        for s in X.orbit_representatives(p):
            checks.append(stabilizer_check(X, category, s, n - p))
    return GoodnessReport(n, acyc, checks)


# ---------------------------------------------------------------------------
# filtrations and directed systems

class Filtration:
    """An ascending finite chain of invariant subcomplexes ending at ``X``."""

    def __init__(self, complex, stages, check=True):
        self.complex = complex
        self.stages = list(stages)
        if check:
            self.validate()

    @classmethod
    def from_ids(cls, X, stage_ids):
        stages = [X.subcomplex([X.simplices[int(i)] for i in ids]) for ids in stage_ids]
        return cls(X, stages)

    @classmethod
    def from_json(cls, X, data):
        if data.get("skeleta"):
            return cls.skeleta(X)
        return cls.from_ids(X, data["stages"])

    def to_json(self):
        X = self.complex
        return {"stages": [[X.index[s] for s in st.simplices] for st in self.stages]}

    @classmethod
    def skeleta(cls, X):
        return cls(X, [X.skeleton(p) for p in range(max(X.dim, 0) + 1)])

    @classmethod
    def constant(cls, X, length=2):
        return cls(X, [X] * length)

    def validate(self):
        X = self.complex
        if not self.stages:
            raise ValidationError("a filtration needs at least one stage")
        prev = set()
        for i, st in enumerate(self.stages):
            cur = set(st.simplices)
            if not cur <= set(X.simplices):
                raise ValidationError(f"stage {i} is not a subcomplex of the complex")
            if not X.is_invariant(cur):
                raise ValidationError(f"stage {i} is not invariant under the group")
            if not prev <= cur:
                raise ValidationError(f"stage {i} does not contain stage {i - 1}")
            prev = cur
        if set(self.stages[-1].simplices) != set(X.simplices):
            raise ValidationError("the last stage must be the whole complex")

    def __len__(self):
        return len(self.stages)


def inclusion_chain_map(small, big, category, o, augmented=True):
    """Inclusion of the fixed chains of ``small`` into those of ``big`` at object ``o``."""
    L = category.objects[o]
    maps = {}
    if augmented:
        maps[-1] = IntMatrix.identity(1)
    for p in range(max(big.dim, 0) + 1):
        src = small.fixed_cells(L, p)
        tgt = big.fixed_cells(L, p)
        pos = {s: i for i, s in enumerate(tgt)}
        data = [[0] * len(src) for _ in tgt]
        for j, s in enumerate(src):
            data[pos[s]][j] = 1
        maps[p] = IntMatrix._wrap(data, len(tgt), len(src))
    return maps


@dataclass
class HomologySystem:
    degree: int
    modules: list
    maps: dict  # (a, b) -> BredonMorphism for a <= b

    def map(self, a, b):
        return self.maps[(a, b)]

    def is_functorial(self):
        n = len(self.modules)
        for a in range(n):
            for b in range(a, n):
                for c in range(b, n):
                    comp = self.maps[(a, b)].then(self.maps[(b, c)])
                    if not comp.equals(self.maps[(a, c)]):
                        return False
        return True


def homology_system(filtration, category, k, reduced=True):
    stages = filtration.stages
    chains = [bredon_chain_complex(X, category, augmented=reduced) for X in stages]
    mods, cplx = zip(*[_homology_module(c, k) for c in chains])
    maps = {}
    for a in range(len(stages)):
        for b in range(a, len(stages)):
            comps = []
            for o in range(category.n_objects):
                inc = inclusion_chain_map(stages[a], stages[b], category, o, augmented=reduced)
                comps.append(homology_induced_map(cplx[a][o], cplx[b][o], inc, k, check=False))
            maps[(a, b)] = BredonMorphism(mods[a], mods[b], comps, check=False)
    return HomologySystem(k, list(mods), maps)


@dataclass
class EssentialTriviality:
    trivial: bool
    witnesses: dict  # alpha -> smallest beta with zero map
    violating: int = None

    def to_json(self):
        return {"essentially_trivial": self.trivial,
                "witnesses": {str(a): b for a, b in self.witnesses.items()},
                "violating_stage": self.violating}


def essentially_trivial(system):
    n = len(system.modules)
    witnesses = {}
    for a in range(n):
        beta = next((b for b in range(a, n) if system.maps[(a, b)].is_zero()), None)
        if beta is None:
            return EssentialTriviality(False, witnesses, a)
        witnesses[a] = beta
    return EssentialTriviality(True, witnesses)
