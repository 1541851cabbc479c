"""
Restriction and induction along the inclusion of a subgroup.

For ``L <= G`` with ``{X & L : X in F}`` contained in ``F`` the functor
``I : Or_{F & L}(L) -> Or_F(G)`` sends ``L/X`` to ``G/X``.  Restriction is
precomposition with ``I``; induction is its left adjoint, computed
objectwise as a coend

    Ind N (G/T) = N (x) Z[G/T, I(-)]      (right modules)
    Ind N (G/T) = Z[I(-), G/T] (x) N      (left modules).
"""

from __future__ import annotations

from .errors import FamilyNotContained
from .groups import intersect_family
from .linalg import FPAbelianGroup, IntMatrix, simplify_presentation
from .modules import LEFT, RIGHT, BredonModule, BredonMorphism, free_cover, kernel
from .orbit import GammaSet, OrbitCategory, hom_module
from .tensor import tensor_map_first, tensor_map_second, tensor_over_F


class SubgroupContext:
    """The inclusion functor from the orbit category of a subgroup."""

    def __init__(self, category, subgroup):
        self.ambient = category
        self.subgroup = subgroup
        family, contained, restricted = intersect_family(category.family, subgroup)
        if not contained:
            raise FamilyNotContained(subgroup)
        self.restricted = restricted
        self.local = OrbitCategory(family)
        self.object_map = tuple(category.object_index(restricted.to_ambient(X))
                                for X in self.local.objects)
        emb = restricted.embedding
        self.morphism_map = tuple(
            category.morphism(self.object_map[m.source], self.object_map[m.target], emb[m.rep])
            for m in self.local.morphisms)

    def check_functor(self):
        """Problems with identities or composites (empty when functorial)."""
        problems = []
        for s, ident in enumerate(self.local.identities):
            if self.morphism_map[ident] != self.ambient.identities[self.object_map[s]]:
                problems.append(f"identity of local object {s}")
        for f in self.local.morphisms:
            for h in self.local.morphisms:
                if f.target != h.source:
                    continue
                c = self.local.compose(f.id, h.id)
                if self.morphism_map[c] != self.ambient.compose(self.morphism_map[f.id],
                                                                self.morphism_map[h.id]):
                    problems.append(f"composite of local morphisms {f.id}, {h.id}")
        return problems

    def restrict(self, M):
        values = [M.values[o] for o in self.object_map]
        actions = [M.action(f) for f in self.morphism_map]
        return BredonModule(self.local, M.variance, values, actions, check=False)

    def restrict_morphism(self, phi):
        return BredonMorphism(self.restrict(phi.source), self.restrict(phi.target),
                              [phi.components[o] for o in self.object_map], check=False)

    def _probe(self, theta, variance):
        """``Z[G/T, I(-)]`` (left) or ``Z[I(-), G/T]`` (right) over the local category."""
        amb, loc = self.ambient, self.local
        index, values = [], []
        for X in range(loc.n_objects):
            ms = amb.hom(theta, self.object_map[X]) if variance == LEFT else \
                amb.hom(self.object_map[X], theta)
            index.append({m: i for i, m in enumerate(ms)})
            values.append(FPAbelianGroup.free(len(ms)))
        actions = []
        for mu in loc.morphisms:
            f = self.morphism_map[mu.id]
            if variance == LEFT:
                src, tgt = mu.source, mu.target
                image = {psi: amb.compose(psi, f) for psi in index[src]}
            else:
                src, tgt = mu.target, mu.source
                image = {psi: amb.compose(f, psi) for psi in index[src]}
            data = [[0] * len(index[src]) for _ in index[tgt]]
            for psi, j in index[src].items():
                data[index[tgt][image[psi]]][j] = 1
            actions.append(IntMatrix._wrap(data, len(index[tgt]), len(index[src])))
        return BredonModule(loc, variance, values, actions, check=False), index

    def _probe_map(self, f, variance, probes):
        """Map of probes induced by the ambient morphism ``f``."""
        amb = self.ambient
        m = amb.morphisms[f]
        if variance == LEFT:
            # right module N: f : T' -> T sends hom(T, IX) to hom(T', IX)
            src, tgt = m.target, m.source
            move = lambda psi: amb.compose(f, psi)
        else:
            src, tgt = m.source, m.target
            move = lambda psi: amb.compose(psi, f)
        comps = []
        for X in range(self.local.n_objects):
            si, ti = probes[src][1][X], probes[tgt][1][X]
            data = [[0] * len(si) for _ in ti]
            for psi, j in si.items():
                data[ti[move(psi)]][j] = 1
            comps.append(IntMatrix._wrap(data, len(ti), len(si)))
        return BredonMorphism(probes[src][0], probes[tgt][0], comps, check=False)

    def induce_raw(self, N):
        """Induced module with the unsimplified coend presentations, plus the probes."""
        amb = self.ambient
        probe_var = LEFT if N.variance == RIGHT else RIGHT
        probes = [self._probe(t, probe_var) for t in range(amb.n_objects)]
        if N.variance == RIGHT:
            tensors = [tensor_over_F(N, p[0]) for p in probes]
        else:
            tensors = [tensor_over_F(p[0], N) for p in probes]
        actions = []
        for f in amb.morphisms:
            phi = self._probe_map(f.id, probe_var, probes)
            if N.variance == RIGHT:
                actions.append(tensor_map_second(N, phi))
            else:
                actions.append(tensor_map_first(phi, N))
        values = [t.group for t in tensors]
        return BredonModule(amb, N.variance, values, actions, check=False), probes, tensors

    def induce(self, N):
        raw, _, _ = self.induce_raw(N)
        return simplify_module(raw)[0]

    def induce_map(self, phi):
        """Components of ``Ind phi`` on the presentations produced by :meth:`induce_raw`."""
        probe_var = LEFT if phi.source.variance == RIGHT else RIGHT
        probes = [self._probe(t, probe_var)[0] for t in range(self.ambient.n_objects)]
        if phi.source.variance == RIGHT:
            return [tensor_map_first(phi, p) for p in probes]
        return [tensor_map_second(p, phi) for p in probes]


def simplify_module(M):
    """Same module with simplified objectwise presentations, and the comparison maps.

    Returns ``(S, to_simple, from_simple)`` where the two morphisms are
    mutually inverse isomorphisms.
    """
    cat = M.category
    simple = [simplify_presentation(v) for v in M.values]
    actions = []
    for f in cat.morphisms:
        s, t = M.action_source(f.id), M.action_target(f.id)
        actions.append(simple[t].proj @ M.action(f.id) @ simple[s].lift)
    S = BredonModule(cat, M.variance, [sp.group for sp in simple], actions, check=False)
    to_s = BredonMorphism(M, S, [sp.proj for sp in simple], check=False)
    from_s = BredonMorphism(S, M, [sp.lift for sp in simple], check=False)
    return S, to_s, from_s


def restrict(ctx, M):
    return ctx.restrict(M)


def induce(ctx, N):
    return ctx.induce(N)


def induced_trivial_comparison(ctx):
    """The natural map ``Ind Z_ -> Z[-, G/L]`` sending ``(X, psi = gX)`` to ``gL``.

    Returns ``(induced, target, morphism)``; the morphism is an isomorphism
    exactly when induction of the constant module agrees with the
    represented module, actions included.
    """
    from .modules import trivial_module
    amb = ctx.ambient
    raw, probes, tensors = ctx.induce_raw(trivial_module(ctx.local, RIGHT))
    S, _, from_s = simplify_module(raw)
    cosets = GammaSet.coset_space(ctx.subgroup)
    target = hom_module(amb, cosets)
    G = amb.group
    comps = []
    for t in range(amb.n_objects):
        fixed = cosets.fixed_points(amb.objects[t])
        pos = {x: i for i, x in enumerate(fixed)}
        index = probes[t][1]
        data = [[0] * raw.gens(t) for _ in fixed]
        for X in range(ctx.local.n_objects):
            off = tensors[t].offsets[X]
            for psi, j in index[X].items():
                g = amb.morphisms[psi].rep
                point = cosets.coset_reps.index(min(G.mul(g, h) for h in ctx.subgroup.elements))
                data[pos[point]][off + j] = 1
        comps.append(IntMatrix._wrap(data, len(fixed), raw.gens(t)) @ from_s.components[t])
    return S, target, BredonMorphism(S, target, comps, check=False)


def restriction_is_free(ctx, P):
    """Cover ``Res P`` by a free module and report whether the cover is an isomorphism."""
    R = ctx.restrict(P)
    cover, epi = free_cover(R, greedy=True)
    K, _ = kernel(epi)
    return cover, epi, K.is_zero()
