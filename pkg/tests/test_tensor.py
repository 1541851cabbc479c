import random

import pytest

from bredon.errors import VarianceMismatch
from bredon.groups import FiniteGroup, close_family
from bredon.linalg import ChainComplex, FPAbelianGroup, simplify_presentation
from bredon.linalg import direct_sum as sum_invariants
from bredon.modules import (LEFT, RIGHT, FreeModule, cokernel, constant_module, direct_sum,
                            free_morphism, representable, resolve, trivial_module, zero_module)
from bredon.orbit import OrbitCategory
from bredon.tensor import (bieri_eckmann_finite_check, bredon_homology_of_group,
                           tensor_map_second, tensor_over_F, tensor_over_Z, tor)

from helpers import c2_category, inv, left_module_zoo, right_module_zoo, s3_category
from oracles import coend_group


def raw(M):
    return {"gens": [M.gens(o) for o in range(M.category.n_objects)],
            "relations": [v.relations.columns() for v in M.values],
            "actions": [a.tolist() for a in M.actions]}


def coend_oracle(N, M):
    morphisms = [(m.id, m.source, m.target) for m in N.category.morphisms]
    return coend_group(raw(N), raw(M), morphisms)


def test_constant_tensor_constant_over_c2():
    cat = c2_category()
    T = tensor_over_F(trivial_module(cat, RIGHT), trivial_module(cat, LEFT))
    assert str(T.invariants) == "Z"
    assert inv(T.invariants) == coend_oracle(trivial_module(cat, RIGHT), trivial_module(cat, LEFT))


def test_tensor_with_representable_evaluates():
    cat = c2_category()
    N = representable(cat, 1, RIGHT)
    T = tensor_over_F(N, representable(cat, 0, LEFT))
    assert str(T.invariants) == "Z"
    assert T.invariants == N.values[0].invariants()


def test_zero_tensor_and_variance_errors():
    cat = c2_category()
    assert tensor_over_F(zero_module(cat, RIGHT), trivial_module(cat, LEFT)).invariants.is_trivial
    with pytest.raises(VarianceMismatch):
        tensor_over_F(trivial_module(cat, LEFT), trivial_module(cat, LEFT))
    with pytest.raises(VarianceMismatch):
        tensor_over_Z(trivial_module(cat, LEFT), trivial_module(cat, RIGHT))


@pytest.mark.parametrize("kind", ["reflections", "all", "rotations"])
def test_coend_matches_element_level_oracle(kind):
    cat = s3_category(kind)
    for _, N in right_module_zoo(cat)[:6]:
        for _, M in left_module_zoo(cat):
            assert inv(tensor_over_F(N, M).invariants) == coend_oracle(N, M)


def test_tensor_over_z_examples():
    cat = c2_category()
    M = representable(cat, 0, RIGHT)
    unit = tensor_over_Z(trivial_module(cat, RIGHT), M)
    assert unit.invariants() == M.invariants()
    two = constant_module(cat, FPAbelianGroup.cyclic(2))
    three = constant_module(cat, FPAbelianGroup.cyclic(3))
    assert tensor_over_Z(two, three).is_zero()
    T = tensor_over_Z(representable(cat, 0), representable(cat, 1))
    assert [str(v.invariants()) for v in T.values] == ["Z^2", "0"]


def test_tor_of_zero_module_vanishes():
    cat = s3_category("all")
    table = tor(zero_module(cat, RIGHT), trivial_module(cat, LEFT), 2)
    assert all(g.is_trivial for g in table.groups)


def test_tor_zero_of_constants_is_z_on_connected_categories():
    for kind in ("reflections", "all", "rotations"):
        cat = s3_category(kind)
        assert cat.is_connected
        table = tor(trivial_module(cat, RIGHT), trivial_module(cat, LEFT), 0)
        assert str(table.groups[0]) == "Z"


def test_group_homology_examples():
    cat = c2_category()
    assert str(bredon_homology_of_group(cat, trivial_module(cat, LEFT), 1).groups[0]) == "Z"
    G = FiniteGroup.trivial()
    one = OrbitCategory(close_family(G, G.all_subgroups))
    H = bredon_homology_of_group(one, trivial_module(one, LEFT), 2).groups
    assert [str(g) for g in H] == ["Z", "0", "0"]
    # the trivial family recovers ordinary group homology of C2
    C2 = FiniteGroup.cyclic(2)
    free = OrbitCategory(close_family(C2, [C2.all_subgroups[0]]))
    H = bredon_homology_of_group(free, trivial_module(free, LEFT), 3).groups
    assert [str(g) for g in H] == ["Z", "Z/2", "0", "Z/2"]


@pytest.mark.parametrize("kind", ["reflections", "all", "rotations"])
def test_tor_is_additive_in_the_second_argument(kind):
    cat = s3_category(kind)
    N = trivial_module(cat, RIGHT)
    zoo = [M for _, M in left_module_zoo(cat)]
    res = resolve(N, 3)
    for A, B in zip(zoo, zoo[1:]):
        S, _, _ = direct_sum([A, B])
        whole = tor(N, S, 2, resolution=res).groups
        parts = [tor(N, X, 2, resolution=res).groups for X in (A, B)]
        assert whole == [sum_invariants(a, b) for a, b in zip(*parts)]


def left_resolution_tor(N, M, degree):
    """Tor computed by resolving the second argument instead of the first."""
    res = resolve(M, degree + 1)
    simple = [simplify_presentation(tensor_over_F(N, P).group) for P in res.terms]
    ranks = {q: sp.group.generator_count for q, sp in enumerate(simple)}
    diffs = {q: simple[q - 1].proj @ tensor_map_second(N, res.differentials[q]) @ simple[q].lift
             for q in range(1, len(simple))}
    rels = {q: sp.group.relations for q, sp in enumerate(simple)}
    C = ChainComplex(ranks, diffs, rels)
    return [C.homology_invariants(k) for k in range(degree + 1)]


@pytest.mark.parametrize("kind", ["reflections", "all", "rotations"])
def test_tor_is_balanced(kind):
    cat = s3_category(kind)
    for _, N in right_module_zoo(cat)[:3]:
        for _, M in left_module_zoo(cat)[:3]:
            assert tor(N, M, 2).groups == left_resolution_tor(N, M, 2)


def random_left_map(cat, rng, n_source=2, n_target=2):
    source = FreeModule(cat, LEFT, [rng.randrange(cat.n_objects) for _ in range(n_source)])
    target = FreeModule(cat, LEFT, [rng.randrange(cat.n_objects) for _ in range(n_target)])
    images = [[rng.randint(-2, 2) for _ in range(target.gens(b))] for b in source.basis]
    return free_morphism(source, target, images)


def exact_at_middle_and_end(N, f, g):
    """Is ``N(x)A -> N(x)B -> N(x)C -> 0`` exact, for ``f : A -> B`` and ``g : B -> C``?"""
    TA, TB, TC = (tensor_over_F(N, X) for X in (f.source, f.target, g.target))
    C = ChainComplex({2: TA.group.generator_count, 1: TB.group.generator_count,
                      0: TC.group.generator_count},
                     {2: tensor_map_second(N, f), 1: tensor_map_second(N, g)},
                     {2: TA.group.relations, 1: TB.group.relations, 0: TC.group.relations})
    return C.homology_invariants(1).is_trivial and C.homology_invariants(0).is_trivial


@pytest.mark.parametrize("seed", range(6))
def test_tensor_is_right_exact(seed):
    rng = random.Random(seed)
    cat = s3_category(["reflections", "all", "rotations"][seed % 3])
    f = random_left_map(cat, rng)
    C, g = cokernel(f)
    for _, N in right_module_zoo(cat)[:4]:
        assert exact_at_middle_and_end(N, f, g)


def test_bieri_eckmann_examples():
    cat = c2_category()
    Z = trivial_module(cat, RIGHT)
    rep = bieri_eckmann_finite_check(Z, 2, {0: 1, 1: 1})
    assert [str(g) for g in rep.left] == ["Z^2", "0", "0"]
    assert rep.left == rep.right and all(rep.isomorphism) and rep.consistent
    assert rep.finite_shadow
    none = bieri_eckmann_finite_check(Z, 1, {})
    assert all(g.is_trivial for g in none.left + none.right)
    cat = s3_category("reflections")
    rep = bieri_eckmann_finite_check(trivial_module(cat, RIGHT), 2, {0: 2, 1: 1})
    assert rep.consistent and all(g.is_trivial for g in rep.left[1:])
