"""
Finite groups given by Cayley tables, their subgroups and families.

A family is a non-empty set of subgroups closed under conjugation and
nothing else: it need not contain the trivial group, nor be closed under
taking subgroups or intersections.
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations, product

from .errors import EmptySeed, NoIdentity, NoInverse, NotAssociative, ValidationError


class FiniteGroup:
    """Group on the elements ``0 .. order-1`` with ``table[a][b] = a*b``."""

    def __init__(self, table, identity, inverses, labels=None):
        self.table = tuple(tuple(r) for r in table)
        self.order = len(self.table)
        self.identity = identity
        self.inverses = tuple(inverses)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(self.order))

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverses[a]

    def conj(self, g, h):
        """``g h g^-1``."""
        t = self.table
        return t[t[g][h]][self.inverses[g]]

    @property
    def elements(self):
        return range(self.order)

    def label(self, a):
        return self.labels[a]

    @classmethod
    def from_permutations(cls, degree, generators, labels=None):
        """Closure of permutation generators; elements sorted lexicographically."""
        ident = tuple(range(degree))
        gens = [tuple(int(x) for x in g) for g in generators]
        for g in gens:
            if sorted(g) != list(ident):
                raise ValidationError(f"{g} is not a permutation of {degree} points")
        seen = {ident}
        frontier = [ident]
        while frontier:
            new = []
            for p in frontier:
                for g in gens:
                    q = tuple(g[p[i]] for i in range(degree))
                    if q not in seen:
                        seen.add(q)
                        new.append(q)
            frontier = new
        return cls.from_permutation_list(sorted(seen), labels=labels)

    @classmethod
    def from_permutation_list(cls, perms, labels=None):
        """Group whose element ``i`` is ``perms[i]``; product ``a*b`` acts as ``a`` after ``b``."""
        perms = [tuple(p) for p in perms]
        index = {p: i for i, p in enumerate(perms)}
        n = len(perms[0]) if perms else 0
        table = [[index[tuple(a[b[i]] for i in range(n))] for b in perms] for a in perms]
        group = validate_group(table, labels=labels)
        group.permutations = tuple(perms)
        return group

    @classmethod
    def cyclic(cls, n):
        return validate_group([[(a + b) % n for b in range(n)] for a in range(n)])

    @classmethod
    def trivial(cls):
        return cls.cyclic(1)

    def direct_product(self, other):
        n, m = self.order, other.order
        table = [[self.table[a // m][b // m] * m + other.table[a % m][b % m]
                  for b in range(n * m)] for a in range(n * m)]
        labels = [f"({x},{y})" for x in self.labels for y in other.labels]
        return validate_group(table, labels=labels)

    def to_json(self):
        return {"order": self.order, "table": [list(r) for r in self.table], "labels": list(self.labels)}

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    @cached_property
    def all_subgroups(self):
        """Every subgroup, in canonical order."""
        found = {frozenset([self.identity])}
        cyclic = {frozenset(subgroup_generated(self, [g]).elements) for g in self.elements}
        found |= cyclic
        frontier = set(found)
        while frontier:
            new = set()
            for h in frontier:
                for c in cyclic:
                    if c <= h:
                        continue
                    j = frozenset(subgroup_generated(self, sorted(h | c)).elements)
                    if j not in found:
                        new.add(j)
            found |= new
            frontier = new
        return sorted((Subgroup(self, s) for s in found), key=Subgroup.sort_key)


def validate_group(table, labels=None):
    """Check a Cayley table and return the group it defines.

    Associativity is checked first, then a left identity is located and
    two-sided inverses are required with respect to it (which forces the
    identity to be two-sided as well).
    """
    table = [[int(x) for x in row] for row in table]
    n = len(table)
    if n == 0:
        raise NoIdentity()
    if any(len(row) != n for row in table):
        raise ValidationError("Cayley table must be square")
    if any(not 0 <= x < n for row in table for x in row):
        raise ValidationError("Cayley table entries out of range")
    for a, b, c in product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise NotAssociative(a, b, c)
    identity = next((e for e in range(n) if all(table[e][x] == x for x in range(n))), None)
    if identity is None:
        raise NoIdentity()
    inverses = []
    for a in range(n):
        inv = next((b for b in range(n) if table[a][b] == identity == table[b][a]), None)
        if inv is None:
            raise NoInverse(a)
        inverses.append(inv)
    return FiniteGroup(table, identity, inverses, labels)


class Subgroup:
    """A subgroup, stored as the sorted tuple of its element indices."""

    __slots__ = ("group", "elements", "_set")

    def __init__(self, group, elements):
        self.group = group
        self.elements = tuple(sorted(set(elements)))
        self._set = frozenset(self.elements)

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self._set

    def __iter__(self):
        return iter(self.elements)

    def issubset(self, other):
        return self._set <= other._set

    def __le__(self, other):
        return self.issubset(other)

    def intersection(self, other):
        return Subgroup(self.group, self._set & other._set)

    def sort_key(self):
        return (len(self.elements), self.elements)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def name(self):
        g = self.group
        if self.order == 1:
            return "1"
        if self.order == g.order:
            return "G"
        return "<" + ",".join(g.labels[x] for x in self.elements if x != g.identity) + ">"

    def __repr__(self):
        return f"Subgroup{list(self.elements)}"

    def is_valid(self):
        g = self.group
        return (g.identity in self._set
                and all(g.mul(a, b) in self._set for a in self.elements for b in self.elements))


def subgroup_generated(group, elements):
    """Smallest subgroup containing ``elements`` (closure under products)."""
    gens = sorted(set(int(e) for e in elements))
    for e in gens:
        if not 0 <= e < group.order:
            raise ValidationError(f"element {e} out of range")
    members = {group.identity}
    frontier = [group.identity]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = group.mul(x, g)
                if y not in members:
                    members.add(y)
                    new.append(y)
        frontier = new
    return Subgroup(group, members)


def make_subgroup(group, elements):
    """Validate that ``elements`` already form a subgroup."""
    h = Subgroup(group, elements)
    if not h.is_valid():
        raise ValidationError(f"{list(h.elements)} is not a subgroup")
    return h


def conjugate(h, g):
    """``g h g^-1``."""
    grp = h.group
    return Subgroup(grp, (grp.conj(g, x) for x in h.elements))


def is_subconjugate(h, k):
    """First ``g`` (in element order) with ``g h g^-1 <= k``, else ``None``."""
    if len(k) % len(h):
        return None
    grp = h.group
    for g in grp.elements:
        if all(grp.conj(g, x) in k for x in h.elements):
            return g
    return None


class Family:
    """Conjugation-closed, duplicate-free, canonically sorted set of subgroups."""

    def __init__(self, group, members, check=True):
        members = sorted(set(members), key=Subgroup.sort_key)
        if not members:
            raise EmptySeed()
        self.group = group
        self.members = tuple(members)
        self._index = {m: i for i, m in enumerate(self.members)}
        if check:
            for m in self.members:
                for g in group.elements:
                    if conjugate(m, g) not in self._index:
                        raise ValidationError(f"family is not closed under conjugation: {m!r}")

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, h):
        return h in self._index

    def index(self, h):
        return self._index[h]

    def __eq__(self, other):
        return isinstance(other, Family) and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return f"Family({[m.name() for m in self.members]})"

    def to_json(self):
        return {"subgroups": [list(m.elements) for m in self.members], "close_conjugation": False}


def close_family(group, seeds):
    """Smallest family containing ``seeds``."""
    seeds = list(seeds)
    if not seeds:
        raise EmptySeed()
    members = set()
    for s in seeds:
        for g in group.elements:
            members.add(conjugate(s, g))
    return Family(group, members, check=False)


def subconjugacy_cover(family_members, candidates):
    """True when every member is subconjugate to some candidate."""
    return all(any(is_subconjugate(h, k) is not None for k in candidates) for h in family_members)


def fp0_witness(family):
    """A smallest subset to which every member of the family is subconjugate.

    Exhaustive search over subsets in increasing size; among subsets of the
    minimum size the first in canonical order wins.
    """
    members = family.members
    for size in range(1, len(members) + 1):
        for subset in combinations(members, size):
            if subconjugacy_cover(members, subset):
                return list(subset)
    raise AssertionError("the whole family always works")


class RestrictedGroup:
    """A subgroup viewed as a group in its own right.

    Local element ``i`` is the ``i``-th smallest ambient element, so local
    and ambient orders agree.
    """

    def __init__(self, subgroup):
        self.subgroup = subgroup
        self.ambient = subgroup.group
        self.embedding = subgroup.elements
        local = {a: i for i, a in enumerate(self.embedding)}
        self.local_index = local
        amb = self.ambient
        table = [[local[amb.mul(a, b)] for b in self.embedding] for a in self.embedding]
        self.group = FiniteGroup(table, local[amb.identity],
                                 [local[amb.inv(a)] for a in self.embedding],
                                 [amb.labels[a] for a in self.embedding])

    def to_local(self, h):
        return Subgroup(self.group, (self.local_index[x] for x in h.elements))

    def to_ambient(self, h):
        return Subgroup(self.ambient, (self.embedding[x] for x in h.elements))


def intersect_family(family, subgroup):
    """The family ``{X & subgroup}`` over ``subgroup`` and whether it lies inside ``family``.

    Returns ``(local_family, contained, restricted)`` where ``local_family``
    is expressed in the local numbering of ``restricted``.
    """
    restricted = RestrictedGroup(subgroup)
    ambient_members = {m.intersection(subgroup) for m in family.members}
    contained = all(m in family for m in ambient_members)
    local = Family(restricted.group, (restricted.to_local(m) for m in ambient_members), check=False)
    return local, contained, restricted
