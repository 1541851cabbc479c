"""Corpus lookups and small module zoos shared by the tests."""

from functools import lru_cache
from pathlib import Path

from bredon.groups import FiniteGroup, close_family, make_subgroup
from bredon.linalg import FPAbelianGroup
from bredon.modules import (LEFT, RIGHT, constant_module, representable, trivial_module)
from bredon.orbit import GammaSet, OrbitCategory, hom_module
from bredon.workspace import Workspace

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
MANIFESTS = ["c2_cone.json", "c2_square.json", "s3_reflections.json", "small_groups.json"]

S3_PERMS = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]]


@lru_cache(maxsize=None)
def workspace(name):
    return Workspace.load(CORPUS / name)


def corpus_pairs():
    """Every (manifest, complex name, family name) with matching groups."""
    out = []
    for m in MANIFESTS:
        ws = workspace(m)
        for cname, X in sorted(ws.complexes.items()):
            for fname, fam in sorted(ws.families.items()):
                if fam.group is X.group:
                    out.append((m, cname, fname))
    return out


def corpus_categories():
    """Every (manifest, family name, category)."""
    out = []
    for m in MANIFESTS:
        ws = workspace(m)
        for fname, fam in sorted(ws.families.items()):
            out.append((m, fname, ws.category(fam)))
    return out


def corpus_instances():
    out = []
    for m in MANIFESTS:
        for inst in workspace(m).data.get("instances", []):
            out.append((m, inst))
    return out


def corpus_filtrations():
    """Every (manifest, filtration name, family name) with matching groups."""
    out = []
    for m in MANIFESTS:
        ws = workspace(m)
        for tname, filt in sorted(ws.filtrations.items()):
            for fname, fam in sorted(ws.families.items()):
                if fam.group is filt.complex.group:
                    out.append((m, tname, fname))
    return out


@lru_cache(maxsize=None)
def s3():
    return FiniteGroup.from_permutation_list(S3_PERMS)


@lru_cache(maxsize=None)
def c2_category():
    G = FiniteGroup.cyclic(2)
    return OrbitCategory(close_family(G, G.all_subgroups))


@lru_cache(maxsize=None)
def s3_category(kind="reflections"):
    G = s3()
    seeds = {"reflections": [[0], [0, 1]], "all": None, "rotations": [[0], [0, 4, 5]]}[kind]
    members = G.all_subgroups if seeds is None else [make_subgroup(G, s) for s in seeds]
    return OrbitCategory(close_family(G, members))


def right_module_zoo(cat):
    """A handful of right modules of different shapes over ``cat``."""
    G = cat.group
    zoo = [("trivial", trivial_module(cat, RIGHT)),
           ("constant Z/2", constant_module(cat, FPAbelianGroup.cyclic(2), RIGHT))]
    for o in range(cat.n_objects):
        zoo.append((f"free at {o}", representable(cat, o, RIGHT)))
    for L in G.all_subgroups:
        zoo.append((f"cosets of {list(L.elements)}", hom_module(cat, GammaSet.coset_space(L))))
    return zoo


def left_module_zoo(cat):
    zoo = [("trivial", trivial_module(cat, LEFT)),
           ("constant Z/3", constant_module(cat, FPAbelianGroup.cyclic(3), LEFT))]
    for o in range(cat.n_objects):
        zoo.append((f"free at {o}", representable(cat, o, LEFT)))
    return zoo


def inv(x):
    """``(free_rank, torsion)`` of an AbelianGroupInvariants, for comparison with oracles."""
    return x.free_rank, tuple(x.torsion)
