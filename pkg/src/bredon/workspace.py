"""
Manifest loading.

A manifest is one JSON file naming groups, families, complexes,
filtrations and modules; later sections refer to earlier ones by name.
Everything is validated while loading.
"""

from __future__ import annotations

import json
from pathlib import Path

from .complexes import Filtration, GammaComplex, barycentric_subdivision, cone
from .errors import BredonError, ManifestError
from .groups import Family, FiniteGroup, close_family, make_subgroup, validate_group
from .modules import LEFT, BredonModule, representable, trivial_module
from .orbit import OrbitCategory


def load_group(spec):
    if "cyclic" in spec:
        return FiniteGroup.cyclic(int(spec["cyclic"]))
    if "permutations" in spec:
        return FiniteGroup.from_permutation_list(spec["permutations"], labels=spec.get("labels"))
    if "generators" in spec:
        return FiniteGroup.from_permutations(int(spec["degree"]), spec["generators"],
                                             labels=spec.get("labels"))
    if "table" in spec:
        return validate_group(spec["table"], labels=spec.get("labels"))
    if "product" in spec:
        raise ManifestError("'product' groups must be resolved by the workspace")
    raise ManifestError(f"cannot read group description with keys {sorted(spec)}")


def load_family(group, spec):
    subs = spec.get("subgroups", "all")
    if subs == "all":
        members = list(group.all_subgroups)
    else:
        members = [make_subgroup(group, s) for s in subs]
    if "orders" in spec:
        keep = {int(o) for o in spec["orders"]}
        members = [m for m in members if m.order in keep]
    if spec.get("close_conjugation", True):
        return close_family(group, members)
    return Family(group, members)


class Workspace:
    """Named objects from a manifest, with their orbit categories."""

    def __init__(self, data, source="<manifest>"):
        self.source = source
        self.data = data
        self.groups, self.families, self.categories = {}, {}, {}
        self.complexes, self.filtrations, self.modules = {}, {}, {}
        self.default = data.get("default", {})
        self._loading = set()
        for name in data.get("groups", {}):
            self._load("groups", name)
        for name, spec in data.get("families", {}).items():
            self.families[name] = self._wrap(f"family {name!r}", self._family, spec)
        for name in data.get("complexes", {}):
            self._load("complexes", name)
        for name, spec in data.get("filtrations", {}).items():
            self.filtrations[name] = self._wrap(f"filtration {name!r}", self._filtration, spec)
        for name, spec in data.get("modules", {}).items():
            self.modules[name] = self._wrap(f"module {name!r}", self._module, spec)

    @classmethod
    def load(cls, path):
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as e:
            raise ManifestError(f"{path}: {e.strerror}") from None
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ManifestError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None
        if not isinstance(data, dict):
            raise ManifestError(f"{path}: manifest must be a JSON object")
        return cls(data, str(path))

    def _wrap(self, what, fn, spec):
        try:
            return fn(spec)
        except BredonError as e:
            raise _contextual(e, f"{self.source}: {what}") from None
        except (KeyError, TypeError, ValueError) as e:
            raise ManifestError(f"{self.source}: {what}: {e}") from None

    def _load(self, section, name):
        """Build a group or complex, loading anything it refers to first."""
        table = getattr(self, section)
        if name in table:
            return table[name]
        specs = self.data.get(section, {})
        if name not in specs:
            raise ManifestError(f"{self.source}: unknown {section[:-1]} {name!r}")
        if (section, name) in self._loading:
            raise ManifestError(f"{self.source}: circular reference through {name!r}")
        self._loading.add((section, name))
        build = self._group if section == "groups" else self._complex
        kind = "group" if section == "groups" else "complex"
        table[name] = self._wrap(f"{kind} {name!r}", build, specs[name])
        return table[name]

    def _ref(self, table, name, kind):
        if name not in table:
            raise ManifestError(f"unknown {kind} {name!r}")
        return table[name]

    def _group(self, spec):
        if "product" in spec:
            a, b = (self._load("groups", n) for n in spec["product"])
            return a.direct_product(b)
        return load_group(spec)

    def _family(self, spec):
        group = self._ref(self.groups, spec["group"], "group")
        fam = load_family(group, spec)
        self.categories[id(fam)] = OrbitCategory(fam)
        return fam

    def category(self, family):
        return self.categories[id(family)]

    def _complex(self, spec):
        group = self._load("groups", spec["group"])
        if "cone_over" in spec:
            return cone(self._load("complexes", spec["cone_over"]))
        subdivide = spec.get("subdivide", False)
        X = GammaComplex.from_json(group, spec, check=not subdivide)
        if subdivide:
            X = barycentric_subdivision(X)
        return X

    def _filtration(self, spec):
        X = self._ref(self.complexes, spec["complex"], "complex")
        if "from_subcomplex" in spec:
            Y = self._ref(self.complexes, spec["from_subcomplex"], "complex")
            return Filtration(X, [X.subcomplex(Y.simplices), X])
        return Filtration.from_json(X, spec)

    def _module(self, spec):
        fam = self._ref(self.families, spec["family"], "family")
        cat = self.category(fam)
        kind = spec.get("kind", "trivial")
        variance = spec.get("variance", LEFT)
        if kind == "trivial":
            return trivial_module(cat, variance)
        if kind == "representable":
            sub = make_subgroup(fam.group, spec["subgroup"])
            return representable(cat, cat.object_index(sub), variance)
        if kind == "presented":
            return BredonModule.from_json(cat, spec)
        raise ManifestError(f"unknown module kind {kind!r}")

    # -- selection ------------------------------------------------------------

    def pick(self, kind, name=None):
        table = {"group": self.groups, "family": self.families, "complex": self.complexes,
                 "filtration": self.filtrations, "module": self.modules}[kind]
        if name is None:
            name = self.default.get(kind)
        if name is None:
            if len(table) == 1:
                return next(iter(table.values()))
            if "default" in table:
                return table["default"]
            raise ManifestError(f"{self.source}: choose a {kind} (available: {sorted(table)})")
        return self._ref(table, name, kind)


def _contextual(err, context):
    err.args = (f"{context}: {err}",) + err.args[1:]
    return err
