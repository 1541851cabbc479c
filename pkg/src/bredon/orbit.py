"""
Orbit categories and finite G-sets.

Objects of the orbit category are the cosets spaces ``G/L`` for ``L`` in the
family, one per family member (no reduction to conjugacy classes).  A
G-map ``G/X -> G/L`` is determined by the coset ``gL`` it sends ``X`` to,
which requires ``g^-1 X g <= L``; it is stored by the least element of
that coset.  Composition "first ``g``, then ``k``" is the coset of ``gk``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import ValidationError
from .groups import Subgroup


@dataclass(frozen=True)
class OrbitMorphism:
    id: int
    source: int
    target: int
    rep: int


class OrbitCategory:
    """The orbit category of a group with respect to a family."""

    def __init__(self, family):
        self.family = family
        self.group = G = family.group
        self.objects = family.members
        self._rep = [self._coset_reps(L) for L in self.objects]
        self.morphisms = []
        self.hom_sets = {}
        self._lookup = {}
        for s, X in enumerate(self.objects):
            for t, L in enumerate(self.objects):
                ids = []
                for g in sorted(set(self._rep[t])):
                    ginv = G.inv(g)
                    if all(G.conj(ginv, x) in L for x in X.elements):
                        m = OrbitMorphism(len(self.morphisms), s, t, g)
                        self.morphisms.append(m)
                        self._lookup[(s, t, g)] = m.id
                        ids.append(m.id)
                self.hom_sets[(s, t)] = tuple(ids)
        self.identities = tuple(self._lookup[(s, s, self._rep[s][G.identity])]
                                for s in range(len(self.objects)))
        self._comp = {}

    def _coset_reps(self, L):
        G = self.group
        return tuple(min(G.mul(x, l) for l in L.elements) for x in G.elements)

    def __len__(self):
        return len(self.objects)

    @property
    def n_objects(self):
        return len(self.objects)

    def hom(self, s, t):
        return self.hom_sets[(s, t)]

    def morphism(self, s, t, g):
        """The morphism ``G/X_s -> G/L_t`` given by the coset ``gL_t``."""
        return self._lookup[(s, t, self._rep[t][g])]

    def compose(self, f, h):
        """``f`` followed by ``h`` (so ``h o f``)."""
        key = (f, h)
        out = self._comp.get(key)
        if out is None:
            mf, mh = self.morphisms[f], self.morphisms[h]
            if mf.target != mh.source:
                raise ValueError(f"morphisms {f} and {h} are not composable")
            out = self.morphism(mf.source, mh.target, self.group.mul(mf.rep, mh.rep))
            self._comp[key] = out
        return out

    def object_index(self, subgroup):
        return self.family.index(subgroup)

    def object_name(self, s):
        return "G/" + self.objects[s].name()

    def hom_table(self):
        n = len(self.objects)
        return [[len(self.hom_sets[(s, t)]) for t in range(n)] for s in range(n)]

    def check(self):
        """Exhaustive unit and associativity check; returns a list of problems."""
        problems = []
        for m in self.morphisms:
            if self.compose(self.identities[m.source], m.id) != m.id:
                problems.append(f"left identity fails for {m}")
            if self.compose(m.id, self.identities[m.target]) != m.id:
                problems.append(f"right identity fails for {m}")
        n = len(self.objects)
        for a in range(n):
            for b in range(n):
                for f in self.hom_sets[(a, b)]:
                    for c in range(n):
                        for g in self.hom_sets[(b, c)]:
                            fg = self.compose(f, g)
                            for d in range(n):
                                for h in self.hom_sets[(c, d)]:
                                    if self.compose(fg, h) != self.compose(f, self.compose(g, h)):
                                        problems.append(f"associativity fails for {f},{g},{h}")
        return problems

    @cached_property
    def is_connected(self):
        n = len(self.objects)
        seen = {0}
        stack = [0]
        while stack:
            a = stack.pop()
            for b in range(n):
                if b not in seen and (self.hom_sets[(a, b)] or self.hom_sets[(b, a)]):
                    seen.add(b)
                    stack.append(b)
        return len(seen) == n

    def __repr__(self):
        return f"OrbitCategory({self.family!r})"


def build(family):
    return OrbitCategory(family)


class GammaSet:
    """A finite left G-set; ``action[g][x] = g.x``."""

    def __init__(self, group, size, action, check=True):
        self.group = group
        self.size = int(size)
        self.action = tuple(tuple(int(y) for y in p) for p in action)
        if check:
            self._validate()

    def _validate(self):
        G = self.group
        if len(self.action) != G.order:
            raise ValidationError("a G-set needs one permutation per group element")
        for p in self.action:
            if sorted(p) != list(range(self.size)):
                raise ValidationError(f"{p} is not a permutation of {self.size} points")
        for g in G.elements:
            for h in G.elements:
                gh = G.mul(g, h)
                pg, ph, pgh = self.action[g], self.action[h], self.action[gh]
                if any(pgh[x] != pg[ph[x]] for x in range(self.size)):
                    raise ValidationError(f"action is not a homomorphism at ({g}, {h})")

    def act(self, g, x):
        return self.action[g][x]

    def fixed_points(self, subgroup):
        return [x for x in range(self.size) if all(self.action[h][x] == x for h in subgroup.elements)]

    def stabilizer(self, x):
        return Subgroup(self.group, (g for g in self.group.elements if self.action[g][x] == x))

    def orbits(self):
        seen = set()
        out = []
        for x in range(self.size):
            if x in seen:
                continue
            orb = sorted({p[x] for p in self.action})
            seen.update(orb)
            out.append(orb)
        return out

    def stabilizer_family(self):
        return sorted({self.stabilizer(x) for x in range(self.size)}, key=Subgroup.sort_key)

    @classmethod
    def coset_space(cls, subgroup):
        """``G/H`` with cosets ordered by their least element."""
        G = subgroup.group
        reps = sorted({min(G.mul(x, h) for h in subgroup.elements) for x in G.elements})
        index = {}
        for i, r in enumerate(reps):
            for h in subgroup.elements:
                index[G.mul(r, h)] = i
        action = [[index[G.mul(g, r)] for r in reps] for g in G.elements]
        gs = cls(G, len(reps), action, check=False)
        gs.coset_reps = tuple(reps)
        return gs

    @classmethod
    def point(cls, group):
        return cls(group, 1, [[0] for _ in group.elements], check=False)

    @classmethod
    def empty(cls, group):
        return cls(group, 0, [[] for _ in group.elements], check=False)

    def disjoint_union(self, other):
        n = self.size
        action = [list(p) + [n + y for y in q] for p, q in zip(self.action, other.action)]
        return GammaSet(self.group, n + other.size, action, check=False)

    def product(self, other):
        """Points ``(x, y)`` numbered ``x * other.size + y``."""
        m = other.size
        action = [[p[x] * m + q[y] for x in range(self.size) for y in range(m)]
                  for p, q in zip(self.action, other.action)]
        return GammaSet(self.group, self.size * m, action, check=False)

    def to_json(self):
        return {"size": self.size, "action": {str(g): list(p) for g, p in enumerate(self.action)}}

    def __repr__(self):
        return f"GammaSet(size={self.size})"


def fixed_points(gset, subgroup):
    return gset.fixed_points(subgroup)


def hom_module(category, gset):
    """The right module ``Z[-, D]``: at ``G/L`` the free group on ``D^L``.

    A morphism given by ``g`` acts by ``x -> g.x``.
    """
    from .modules import BredonModule
    from .linalg import FPAbelianGroup, IntMatrix

    fixed = [gset.fixed_points(L) for L in category.objects]
    pos = [{x: i for i, x in enumerate(f)} for f in fixed]
    values = [FPAbelianGroup.free(len(f)) for f in fixed]
    actions = []
    for m in category.morphisms:
        src, tgt = fixed[m.source], fixed[m.target]
        data = [[0] * len(tgt) for _ in src]
        for j, x in enumerate(tgt):
            data[pos[m.source][gset.act(m.rep, x)]][j] = 1
        actions.append(IntMatrix._wrap(data, len(src), len(tgt)))
    return BredonModule(category, "right", values, actions, check=False)
