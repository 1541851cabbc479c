"""
Command line front end.

    bredon orbitcat MANIFEST
    bredon homology --k 0 --reduced MANIFEST
    bredon brown --n 2 MANIFEST --json

Exit status: 0 on success (including CONSISTENT and INAPPLICABLE
verdicts), 2 on invalid input, 3 on THEOREM VIOLATION.
"""

from __future__ import annotations

import argparse
import json
import sys

from .complexes import bredon_homology, is_F_n_good
from .equivariant import (VIOLATION, brown_check, equivariant_homology,
                          fp0_constructive_witness)
from .errors import BredonError, ManifestError
from .groups import fp0_witness, make_subgroup
from .indres import SubgroupContext, induced_trivial_comparison
from .modules import LEFT, RIGHT, fp_n_report, trivial_module
from .tensor import tor
from .workspace import Workspace

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_VIOLATION = 3


def _emit(args, payload, lines):
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print("\n".join(lines))


def _context(ws, args, need_complex=False):
    family = ws.pick("family", args.family)
    cat = ws.category(family)
    X = None
    if need_complex:
        X = ws.pick("complex", args.complex)
        if X.group is not family.group:
            raise ManifestError(f"{ws.source}: complex and family use different groups")
    return family, cat, X


def _object_names(cat):
    return [cat.object_name(o) for o in range(cat.n_objects)]


def cmd_orbitcat(ws, args):
    family, cat, _ = _context(ws, args)
    names = _object_names(cat)
    table = cat.hom_table()
    width = max(len(n) for n in names) + 2
    lines = ["hom-set sizes |[source, target]|", " " * width + "".join(n.ljust(width) for n in names)]
    for s, row in enumerate(table):
        lines.append(names[s].ljust(width) + "".join(str(v).ljust(width) for v in row))
    payload = {"objects": [list(L.elements) for L in cat.objects], "names": names,
               "hom_sizes": table, "morphisms": len(cat.morphisms)}
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_homology(ws, args):
    family, cat, X = _context(ws, args, need_complex=True)
    H = bredon_homology(X, cat, args.k, reduced=args.reduced)
    names = _object_names(cat)
    label = "reduced " if args.reduced else ""
    lines = [f"{label}Bredon homology in degree {args.k}"]
    lines += [f"  {n}: {inv}" for n, inv in zip(names, H.invariants())]
    payload = {"degree": args.k, "reduced": args.reduced, "objects": names,
               "invariants": [inv.to_json() for inv in H.invariants()], "module": H.to_json()}
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_fp0(ws, args):
    family, cat, _ = _context(ws, args)
    witness = fp0_witness(family)
    lines = [f"finite subconjugacy cover of size {len(witness)}:"]
    lines += [f"  {m.name()}" for m in witness]
    payload = {"size": len(witness), "subgroups": [list(m.elements) for m in witness]}
    if args.complex is not None or ws.default.get("complex") is not None:
        X = ws.pick("complex", args.complex)
        built = fp0_constructive_witness(cat, X)
        payload["constructive"] = built.to_json()
        lines.append(f"from vertex stabilizers: size {len(built.members)}, "
                     f"{'valid' if built.valid else 'INVALID'}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_good(ws, args):
    family, cat, X = _context(ws, args, need_complex=True)
    report = is_F_n_good(X, cat, args.n)
    lines = [f"{args.n}-good: {report.good}",
             f"  acyclic up to dimension {args.n - 1}: {report.condition_i}",
             f"  stabilizer conditions: {report.condition_ii} ({len(report.stabilizers)} cell orbits)"]
    if not report.condition_i:
        o, k, inv = report.acyclicity.failure
        lines.append(f"  first failure: {cat.object_name(o)}, degree {k}, group {inv}")
    _emit(args, report.to_json(), lines)
    return EXIT_OK


def cmd_brown(ws, args):
    family, cat, X = _context(ws, args, need_complex=True)
    filt = ws.pick("filtration", args.filtration)
    if filt.complex is not X:
        raise ManifestError(f"{ws.source}: the filtration belongs to a different complex")
    report = brown_check(cat, X, filt, args.n)
    lines = [report.verdict,
             f"  {args.n}-good: {report.goodness.good}",
             f"  FP_{args.n}: {report.fp.holds} (ranks {report.fp.ranks})"]
    for k, s in report.systems.items():
        lines.append(f"  degree {k}: essentially trivial {s.trivial}")
    _emit(args, report.to_json(), lines)
    return EXIT_VIOLATION if report.verdict == VIOLATION else EXIT_OK


def _left_module(ws, args, cat):
    if args.module is None and ws.default.get("module") is None and not ws.modules:
        return trivial_module(cat, LEFT)
    M = ws.pick("module", args.module)
    if M.category is not cat:
        raise ManifestError(f"{ws.source}: module lives over a different family")
    return M


def cmd_tor(ws, args):
    family, cat, _ = _context(ws, args)
    M = _left_module(ws, args, cat)
    table = tor(trivial_module(cat, RIGHT), M, args.k)
    lines = [f"Tor_k(Z, M) for k = 0..{args.k}"]
    lines += [f"  {k}: {g}" for k, g in enumerate(table.groups)]
    _emit(args, {"tor": table.to_json(), "resolution_ranks": table.resolution.ranks()}, lines)
    return EXIT_OK


def cmd_resolve(ws, args):
    family, cat, _ = _context(ws, args)
    report = fp_n_report(trivial_module(cat, RIGHT), args.n)
    names = _object_names(cat)
    lines = [f"free resolution of the constant module to degree {args.n}"]
    for k, P in enumerate(report.resolution.terms):
        summands = ", ".join(f"{names[b]}^{m}" for b, m in P.multiplicities) or "0"
        lines.append(f"  P_{k}: {summands}")
    _emit(args, report.to_json(), lines)
    return EXIT_OK


def cmd_equiv(ws, args):
    family, cat, X = _context(ws, args, need_complex=True)
    M = _left_module(ws, args, cat)
    groups = [equivariant_homology(X, cat, M, k) for k in range(args.k + 1)]
    lines = [f"equivariant homology H_k(X, M) for k = 0..{args.k}"]
    lines += [f"  {k}: {g}" for k, g in enumerate(groups)]
    _emit(args, {str(k): g.to_json() for k, g in enumerate(groups)}, lines)
    return EXIT_OK


def cmd_indres(ws, args):
    family, cat, _ = _context(ws, args)
    elements = [int(x) for x in args.subgroup.split(",") if x.strip()]
    sub = make_subgroup(family.group, elements)
    ctx = SubgroupContext(cat, sub)
    S, T, phi = induced_trivial_comparison(ctx)
    names = _object_names(cat)
    iso = phi.is_natural() and phi.is_isomorphism()
    lines = [f"subgroup {sub.name()}: local orbit category with {ctx.local.n_objects} objects",
             f"  inclusion functor ok: {not ctx.check_functor()}",
             f"  induced constant module matches the represented module: {iso}"]
    lines += [f"  {n}: {a}" for n, a in zip(names, S.invariants())]
    payload = {"subgroup": list(sub.elements), "local_objects": ctx.local.n_objects,
               "functorial": not ctx.check_functor(), "induced_matches_represented": iso,
               "induced": [a.to_json() for a in S.invariants()], "module": S.to_json()}
    _emit(args, payload, lines)
    return EXIT_OK


COMMANDS = {
    "orbitcat": cmd_orbitcat, "homology": cmd_homology, "fp0": cmd_fp0, "good": cmd_good,
    "brown": cmd_brown, "tor": cmd_tor, "resolve": cmd_resolve, "equiv": cmd_equiv,
    "indres": cmd_indres,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="bredon",
                                     description="Bredon homology and finiteness checks.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("manifest", help="manifest JSON file")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--family", help="family name (default from the manifest)")
    common.add_argument("--complex", help="complex name")
    common.add_argument("--filtration", help="filtration name")
    common.add_argument("--module", help="left module name")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("orbitcat", parents=[common], help="hom-set table of the orbit category")
    p = sub.add_parser("homology", parents=[common], help="Bredon homology of a complex")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--reduced", action="store_true")
    sub.add_parser("fp0", parents=[common], help="finite subconjugacy cover of the family")
    p = sub.add_parser("good", parents=[common], help="check the n-good conditions")
    p.add_argument("--n", type=int, required=True)
    p = sub.add_parser("brown", parents=[common], help="run the finiteness criterion")
    p.add_argument("--n", type=int, required=True)
    p = sub.add_parser("tor", parents=[common], help="Tor of the constant module against M")
    p.add_argument("--k", type=int, required=True)
    p = sub.add_parser("resolve", parents=[common], help="free resolution of the constant module")
    p.add_argument("--n", type=int, required=True)
    p = sub.add_parser("equiv", parents=[common], help="equivariant homology with coefficients")
    p.add_argument("--k", type=int, required=True)
    p = sub.add_parser("indres", parents=[common], help="induction from a subgroup")
    p.add_argument("--subgroup", required=True, help="comma-separated element indices")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        ws = Workspace.load(args.manifest)
        return COMMANDS[args.command](ws, args)
    except BredonError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
