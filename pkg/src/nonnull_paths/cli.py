"""Command line: solve, audit, construct and type group-labelled ST-graphs.

Every subcommand prints a JSON document with sorted keys.  Exit status is 0
on success, 2 when a search budget runs out, and 1 for bad input or a
violated precondition.
"""
from __future__ import annotations

import argparse
import json
import logging
import random
import sys

from .connectivity import unbreakability
from .constructions import build_figure1, figure1_n, random_instance, verify_figure1
from .duality import (DEFAULT_WORK_BUDGET, DualityCertificate, hitting, packing, verify_certificate)
from .errors import BudgetExceeded, NonNullPathsError
from .gadget_lab import (CatalogSet, GadgetCatalog, bundled_catalogs, random_lemma6_triple,
                         theorem1_procedure, type_pool, verify_lemma6)
from .graph import STGraph, load_graph, save_graph, to_dot
from .groups import group_from_spec, make_cyclic
from .paths import DEFAULT_PATH_BUDGET
from .type_system import compute_type, types_equal
from .unbreakable import proposition4, proposition4_valid

log = logging.getLogger("nonnull_paths")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read_graph(path) -> STGraph:
    if path in (None, "-"):
        return load_graph(sys.stdin.read())
    with open(path, "rb") as fh:
        return load_graph(fh.read())


def _emit(args, doc, raw: bytes | None = None):
    data = raw if raw is not None else (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode()
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _checked(g, cert: DualityCertificate, frm=None, to=None) -> dict:
    if not verify_certificate(g, cert, frm, to):
        raise NonNullPathsError("internal error: certificate failed its own check")
    return cert.to_json(g)


def _write_dot(args, g, cert=None):
    if args.dot:
        paths = cert.paths if cert is not None and cert.kind == "packing" else ()
        hit = cert.hitset if cert is not None and cert.kind == "hitting" else ()
        with open(args.dot, "w") as fh:
            fh.write(to_dot(g, paths, hit))


def _catalogs(args, group) -> CatalogSet:
    if args.catalog == "bundled":
        return bundled_catalogs()
    if args.catalog:
        with open(args.catalog) as fh:
            r1 = GadgetCatalog.from_json(json.load(fh))
        r0 = GadgetCatalog.build(r1.group, 0, 0)
        return CatalogSet([r0, r1])
    return CatalogSet.build(group, 1, args.nmax)


def cmd_solve(args):
    g = _read_graph(args.input)
    pv, pcert = packing(g, limit=args.budget_paths, work=args.budget_work)
    hv, hcert = hitting(g, work=args.budget_work)
    doc = {"vertices": g.n, "edges": len(g.edges), "packing": pv, "hitting": hv,
           "packing_witness": _checked(g, pcert), "hitting_witness": _checked(g, hcert)}
    _write_dot(args, g, pcert if args.dot_packing else hcert)
    _emit(args, doc)


def cmd_unbreakable(args):
    g = _read_graph(args.input)
    v = unbreakability(g, args.q, args.k, work=args.budget_work)
    doc = {"q": args.q, "k": args.k, "unbreakable": v.unbreakable}
    if v.witness is not None:
        doc["witness"] = {"A": sorted(g.names[x] for x in v.witness.A),
                          "B": sorted(g.names[x] for x in v.witness.B)}
    _emit(args, doc)


def cmd_prop4(args):
    g = _read_graph(args.input)
    cert = proposition4(g, args.q, args.k, limit=args.budget_paths)
    if not proposition4_valid(g, args.q, args.k, cert):
        raise NonNullPathsError("internal error: certificate failed its own check")
    doc = {"q": args.q, "k": args.k, "branch": cert.info["branch"], "bound": cert.info["bound"],
           "certificate": cert.to_json(g)}
    _write_dot(args, g, cert)
    _emit(args, doc)


def cmd_theorem1(args):
    g = _read_graph(args.input)
    cats = _catalogs(args, g.group)
    trace = []
    cert = theorem1_procedure(g, args.k, cats, limit=args.budget_paths, work=args.budget_work,
                              trace=trace, sharp=args.sharp_split)
    doc = {"k": args.k, "sharp_split": args.sharp_split, "f_bound": cert.info["f_bound"],
           "h": cats.ftable(max(args.k, 1)).h_of_k,
           "certificate": _checked(g, cert),
           "trace": [{"depth": s.depth, "k": s.k, "vertices": s.n, "branch": s.branch} for s in trace]}
    doc["h"] = {str(k): v for k, v in doc["h"].items()}
    _write_dot(args, g, cert)
    _emit(args, doc)


def _iface(g, names):
    if names:
        return tuple(g.index[x] for x in names.split(","))
    return g.interface


def cmd_type(args):
    g = _read_graph(args.input)
    fp = compute_type(g, _iface(g, args.iface), r_max=args.r_max)
    doc = fp.to_json()
    doc["digest"] = fp.digest()
    _emit(args, doc)


def cmd_type_eq(args):
    g1 = _read_graph(args.input)
    g2 = _read_graph(args.other)
    eq = types_equal(g1, g1.interface, g2, g2.interface, r_max=args.r_max)
    _emit(args, {"equal": eq})


def cmd_gadget_search(args):
    group = group_from_spec(json.loads(args.group))
    cat = GadgetCatalog.build(group, args.r, args.nmax, r_max=args.r_max)
    if args.catalog_out:
        with open(args.catalog_out, "w") as fh:
            fh.write(cat.dumps())
    doc = {"r": args.r, "n_max": args.nmax, "candidates": cat.candidates_seen,
           "types": len(cat.entries), "h": cat.h(),
           "table": [{"interface_flags": p, "size": s, "types": c} for p, s, c in cat.size_table()]}
    _emit(args, doc)


def cmd_lemma6_audit(args):
    group = make_cyclic(2)
    pools = {r: type_pool(group, r, args.nmax) for r in (0, 1)}
    rng = random.Random(args.seed)
    passed = failed = skipped = 0
    failures = []
    for i in range(args.trials):
        triple = random_lemma6_triple(rng, group, pools)
        if triple is None:
            skipped += 1
            continue
        v = verify_lemma6(*triple)
        if v.passed:
            passed += 1
        else:
            failed += 1
            failures.append({"trial": i, "reason": v.reason, "before": list(v.before),
                             "after": list(v.after)})
    _emit(args, {"trials": args.trials, "passed": passed, "failed": failed, "skipped": skipped,
                 "failures": failures})
    return 0 if failed == 0 else 1


def cmd_construct(args):
    if args.family == "figure1":
        g = build_figure1(args.n)
    else:
        group = group_from_spec(json.loads(args.group))
        g = random_instance(group, args.n, args.edge_prob, args.s_frac, args.t_frac, args.seed)
    _write_dot(args, g)
    _emit(args, None, raw=save_graph(g))


def cmd_verify_figure1(args):
    if args.input is None and args.n is not None:
        g = build_figure1(args.n)
    else:
        g = _read_graph(args.input)
    n = figure1_n(g)
    r = verify_figure1(n, limit=args.budget_paths, work=args.budget_work,
                       with_packing=not args.skip_packing, g=g)
    _emit(args, r.to_json())
    return 0 if r.passed else 1


def cmd_report(args):
    from .report import write_report
    files = write_report(args.out_dir, seed=args.seed, corpus=args.corpus,
                         figure1_max=args.figure1_max, catalog_nmax=args.nmax)
    _emit(args, {"out_dir": args.out_dir, "files": files})


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="graph JSON (default: standard input)")
    common.add_argument("--output", "-o", help="write JSON here instead of standard output")
    common.add_argument("--budget-paths", type=int, default=DEFAULT_PATH_BUDGET,
                        help="maximum number of paths any enumeration may produce")
    common.add_argument("--budget-work", type=int, default=DEFAULT_WORK_BUDGET,
                        help="maximum search nodes for the exact solvers")
    common.add_argument("--r-max", type=int, default=1, help="largest interface size to type")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--dot", help="also write a Graphviz rendering here")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="nonnull-paths", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", parents=[common], help="exact packing and hitting numbers")
    s.add_argument("--dot-packing", action="store_true", help="draw the packing rather than the hitting set")
    s.set_defaults(func=cmd_solve)

    for name, func, helptext in (("unbreakable", cmd_unbreakable, "decide (q, k)-unbreakability"),
                                 ("prop4", cmd_prop4, "packing-or-hitting on an unbreakable graph")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--q", type=int, required=True)
        s.add_argument("--k", type=int, required=True)
        s.set_defaults(func=func)

    s = sub.add_parser("theorem1", parents=[common], help="full recursion with gadget replacement")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--catalog", help="interface-size-1 catalog JSON from gadget-search, or 'bundled'")
    s.add_argument("--nmax", type=int, default=3, help="catalog size when none is given")
    s.add_argument("--sharp-split", action="store_true",
                   help="recurse with k-2 per side when both sides hold a non-null path")
    s.set_defaults(func=cmd_theorem1)

    s = sub.add_parser("type", parents=[common], help="type fingerprint of an interfaced graph")
    s.add_argument("--iface", help="comma-separated interface names (default: the graph's own)")
    s.set_defaults(func=cmd_type)

    s = sub.add_parser("type-eq", parents=[common], help="compare the types of two graphs")
    s.add_argument("other", help="second graph JSON")
    s.set_defaults(func=cmd_type_eq)

    s = sub.add_parser("gadget-search", parents=[common], help="enumerate safe graphs by type")
    s.add_argument("--r", type=int, default=1)
    s.add_argument("--nmax", type=int, default=3)
    s.add_argument("--group", default='{"kind": "cyclic", "n": 2}', help="group spec JSON")
    s.add_argument("--catalog-out", help="write the catalog JSON here")
    s.set_defaults(func=cmd_gadget_search)

    s = sub.add_parser("lemma6-audit", parents=[common], help="random splice-invariance checks")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--nmax", type=int, default=3)
    s.set_defaults(func=cmd_lemma6_audit)

    s = sub.add_parser("construct", parents=[common], help="emit an instance as graph JSON")
    s.add_argument("family", choices=["figure1", "random"])
    s.add_argument("--n", type=int, default=1, help="grid parameter, or vertex count for random")
    s.add_argument("--group", default='{"kind": "cyclic", "n": 2}')
    s.add_argument("--edge-prob", type=float, default=0.4)
    s.add_argument("--s-frac", type=float, default=0.3)
    s.add_argument("--t-frac", type=float, default=0.3)
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("verify-figure1", parents=[common], help="check the grid-with-triangles claims")
    s.add_argument("--n", type=int, help="build the instance instead of reading it")
    s.add_argument("--skip-packing", action="store_true")
    s.set_defaults(func=cmd_verify_figure1)

    s = sub.add_parser("report", parents=[common], help="CSV tables and PNG figures")
    s.add_argument("--out-dir", default="report")
    s.add_argument("--corpus", type=int, default=60)
    s.add_argument("--figure1-max", type=int, default=1)
    s.add_argument("--nmax", type=int, default=3)
    s.set_defaults(func=cmd_report)
    return p


def run(argv=None) -> int:
    """Parse ``argv``, run one subcommand and return its exit status."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    for flag in ("budget_paths", "budget_work"):
        if getattr(args, flag) <= 0:
            print(f"error: --{flag.replace('_', '-')} must be positive", file=sys.stderr)
            return 1
    try:
        rc = args.func(args)
    except BudgetExceeded as e:
        print(f"budget exhausted: {e}", file=sys.stderr)
        return 2
    except (NonNullPathsError, ValueError, KeyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return rc or 0


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
