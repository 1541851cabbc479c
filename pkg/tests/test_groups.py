from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bredon.errors import EmptySeed, NoIdentity, NoInverse, NotAssociative, ValidationError
from bredon.groups import (Family, FiniteGroup, close_family, conjugate, fp0_witness,
                           intersect_family, is_subconjugate, make_subgroup, subgroup_generated,
                           validate_group)

from helpers import S3_PERMS, s3
from oracles import brute_cover, compose_permutations

E, R12, R13, R23, ROT, ROT2 = range(6)


def test_c2_table_is_valid():
    G = validate_group([[0, 1], [1, 0]])
    assert G.order == 2 and list(G.inverses) == [0, 1] and G.identity == 0


def test_s3_table_from_permutation_composition():
    table = compose_permutations(S3_PERMS)
    G = validate_group(table)
    assert G.order == 6
    assert [list(r) for r in s3().table] == table


def test_invalid_tables_name_the_problem():
    with pytest.raises(NoInverse) as e:
        validate_group([[0, 1], [0, 1]])
    assert "0" in str(e.value) or "1" in str(e.value)
    with pytest.raises(NotAssociative):
        validate_group([[0, 1, 2], [1, 0, 0], [2, 2, 1]])
    with pytest.raises(NoIdentity):
        validate_group([[1, 1], [1, 1]])


def test_subgroup_generation():
    G = s3()
    assert subgroup_generated(G, [R12]).elements == (E, R12)
    assert subgroup_generated(G, []).elements == (E,)
    C2 = FiniteGroup.cyclic(2)
    assert subgroup_generated(C2, [1]).elements == (0, 1)
    assert subgroup_generated(G, [R12, R13]).order == 6


def test_conjugation():
    G = s3()
    H = make_subgroup(G, [E, R12])
    assert conjugate(H, R13).elements == (E, R23)
    assert conjugate(H, E) == H
    A3 = make_subgroup(G, [E, ROT, ROT2])
    assert all(conjugate(A3, g) == A3 for g in G.elements)


def test_close_family():
    G = s3()
    fam = close_family(G, [make_subgroup(G, [E, R12])])
    assert [m.elements for m in fam] == [(E, R12), (E, R13), (E, R23)]
    assert [m.elements for m in close_family(G, [make_subgroup(G, [E])])] == [(E,)]
    whole = make_subgroup(G, range(6))
    assert list(close_family(G, [whole])) == [whole]
    with pytest.raises(EmptySeed):
        close_family(G, [])


def test_close_family_is_idempotent():
    G = s3()
    for seeds in combinations(G.all_subgroups, 2):
        fam = close_family(G, seeds)
        assert close_family(G, fam.members) == fam


def test_subconjugacy():
    G = s3()
    r12, r13 = make_subgroup(G, [E, R12]), make_subgroup(G, [E, R13])
    g = is_subconjugate(r13, r12)
    assert g is not None and conjugate(r13, g).issubset(r12)
    triv = make_subgroup(G, [E])
    assert is_subconjugate(triv, r12) == E
    assert is_subconjugate(make_subgroup(G, [E, ROT, ROT2]), r12) is None


def test_subconjugacy_is_a_preorder_with_dividing_orders():
    G = s3()
    subs = G.all_subgroups
    rel = {(a, b): is_subconjugate(a, b) is not None for a in subs for b in subs}
    for a in subs:
        assert rel[(a, a)]
        for b in subs:
            if rel[(a, b)]:
                assert b.order % a.order == 0
                for c in subs:
                    if rel[(b, c)]:
                        assert rel[(a, c)]


def test_fp0_witness_examples():
    G = s3()
    fam = close_family(G, [make_subgroup(G, [E]), make_subgroup(G, [E, R12])])
    w = fp0_witness(fam)
    assert [m.elements for m in w] == [(E, R12)]
    triv = close_family(G, [make_subgroup(G, [E])])
    assert [m.elements for m in fp0_witness(triv)] == [(E,)]
    C2 = FiniteGroup.cyclic(2)
    assert [m.elements for m in fp0_witness(close_family(C2, C2.all_subgroups))] == [(0, 1)]


@given(st.sets(st.integers(0, 5), min_size=1))
def test_fp0_witness_is_minimal_by_exhaustion(seed_ids):
    G = s3()
    subs = G.all_subgroups
    fam = close_family(G, [subs[i] for i in seed_ids])
    table = [list(r) for r in G.table]
    members = [set(m.elements) for m in fam]
    w = fp0_witness(fam)
    assert brute_cover(table, members, [set(m.elements) for m in w])
    for smaller in combinations(members, len(w) - 1):
        assert not brute_cover(table, members, list(smaller))


def test_intersect_family():
    G = s3()
    refl = close_family(G, [make_subgroup(G, [E, R12])])
    r12 = make_subgroup(G, [E, R12])
    local, contained, restricted = intersect_family(refl, r12)
    assert sorted(restricted.to_ambient(m).elements for m in local) == [(E,), (E, R12)]
    assert not contained
    with_one = close_family(G, [make_subgroup(G, [E]), r12])
    assert intersect_family(with_one, r12)[1]
    whole = make_subgroup(G, range(6))
    local, contained, restricted = intersect_family(with_one, whole)
    assert contained
    assert {restricted.to_ambient(m) for m in local} == set(with_one.members)
    triv = close_family(G, [make_subgroup(G, [E])])
    local, contained, _ = intersect_family(triv, r12)
    assert contained and len(local) == 1


def test_family_must_be_conjugation_closed():
    G = s3()
    with pytest.raises(ValidationError):
        Family(G, [make_subgroup(G, [E, R12])])


def test_direct_product_and_permutation_generators():
    C2 = FiniteGroup.cyclic(2)
    V = C2.direct_product(C2)
    assert V.order == 4 and all(V.mul(g, g) == V.identity for g in V.elements)
    G = FiniteGroup.from_permutations(3, [[1, 0, 2], [1, 2, 0]])
    assert G.order == 6
    assert len(G.all_subgroups) == 6
