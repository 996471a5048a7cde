"""Command-line interface: ``latforge <command> ...``.

Exit status is 0 on success, 1 when a construction or verification fails
(or a search budget runs out) and 2 for unusable input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .budget import ENV_VAR, Budget, BudgetExceeded
from .congruence import princ_set
from .constructions import GADGET_POLICIES
from .dot import graph_dot, hasse_dot
from .frucht import SimpleGraph
from .independence import BuildError, build, verify
from .order import OrderError, lattice_from_json, order_from_json
from .rigid_family import CatalogBudgetExhausted, RigidCatalog, default_catalog, mine_family, verify_catalog
from .symmetry import GroupError, group_from_spec, lattice_automorphisms

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc})") from exc


def _load(kind: str, path: str):
    data = _read_json(path)
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    try:
        if kind == "poset":
            return order_from_json(data)
        if kind == "lattice":
            return lattice_from_json(data)
        if kind == "group":
            return group_from_spec(data)
        if kind == "catalog":
            return RigidCatalog.from_json(data)
        if kind == "graph":
            return SimpleGraph.from_json(data)
    except (OrderError, GroupError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: invalid {kind}: {exc}") from exc
    raise AssertionError(kind)


def _write(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        try:
            with open(path, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _dump(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def cmd_build(args) -> int:
    P = _load("poset", args.poset)
    G = _load("group", args.group)
    catalog = _load("catalog", args.catalog) if args.catalog else default_catalog()
    try:
        cert = build(P, G, catalog, policy=args.policy)
    except BuildError as exc:
        print(f"build failed: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(f"witness: {json.dumps(exc.witness)}", file=sys.stderr)
        return EXIT_FAIL
    _write(_dump(cert.to_json()), args.output)
    if args.output not in (None, "-"):
        s = cert.stats
        print(f"wrote {args.output}: |L| = {s['lattice_size']}, |Princ L| = {s['princ_size']}, |Aut L| = {s['aut_order']}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    data = _read_json(args.lattice)
    if isinstance(data, dict) and "lattice" in data and "elements" not in data:
        data = data["lattice"]  # accept a certificate file
    try:
        L = lattice_from_json(data)
    except (OrderError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{args.lattice}: invalid lattice: {exc}") from exc
    P = _load("poset", args.poset)
    G = _load("group", args.group)
    report = verify(L, P, G)
    if not report.ok:
        for m in report.messages:
            print(m, file=sys.stderr)
        return EXIT_FAIL
    _write(_dump(report.certificate.to_json()), args.output)
    return EXIT_OK


def cmd_princ(args) -> int:
    L = _load("lattice", args.lattice)
    _write(_dump(princ_set(L).to_json()), args.output)
    return EXIT_OK


def cmd_aut(args) -> int:
    L = _load("lattice", args.lattice)
    aut = lattice_automorphisms(L)
    out = {
        "order": len(aut),
        "generators": [{L.elements[i]: L.elements[p[i]] for i in range(L.n) if p[i] != i} for p in (aut.elements[g] for g in aut.generators())],
        "group": aut.to_json(),
    }
    _write(_dump(out), args.output)
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.verify:
        c = _load("catalog", args.verify)
        report = verify_catalog(c)
        for line in report.lines():
            print(line, file=sys.stderr if not report.ok else sys.stdout)
        return EXIT_OK if report.ok else EXIT_FAIL
    if args.m < 1 or args.max_size < 1:
        raise InputError("-m and --max-size must be positive")
    try:
        c = mine_family(args.m, args.max_size)
    except CatalogBudgetExhausted as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL
    _write(_dump(c.to_json()), args.output)
    return EXIT_OK


def cmd_export_dot(args) -> int:
    if args.graph:
        _write(graph_dot(_load("graph", args.graph)), args.output)
    else:
        data = _read_json(args.lattice)
        if isinstance(data, dict) and "lattice" in data and "elements" not in data:
            data = data["lattice"]
        try:
            X = order_from_json(data)
        except (OrderError, KeyError, TypeError, ValueError) as exc:
            raise InputError(f"{args.lattice}: invalid order: {exc}") from exc
        _write(hasse_dot(X), args.output)
    return EXIT_OK


def parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="latforge", description="Lattices with prescribed Princ and Aut.")
    ap.add_argument("--budget-ms", type=float, help=f"cap each search (default: ${ENV_VAR})")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct L from an order P and a group G")
    p.add_argument("--poset", required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--catalog", help="rigid catalog JSON (default: the bundled one)")
    p.add_argument("--policy", choices=GADGET_POLICIES, default="all-pairs")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="check Princ L ≅ P and Aut L ≅ G from scratch")
    p.add_argument("--lattice", required=True)
    p.add_argument("--poset", required=True)
    p.add_argument("--group", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("princ", help="print the ordered set of principal congruences")
    p.add_argument("--lattice", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_princ)

    p = sub.add_parser("aut", help="print the automorphism group")
    p.add_argument("--lattice", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("catalog", help="mine (or with --verify, re-check) a rigid catalog")
    p.add_argument("-m", type=int, default=5)
    p.add_argument("--max-size", type=int, default=25)
    p.add_argument("--verify", metavar="CATALOG")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("export-dot", help="Hasse diagram (or graph) in DOT")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--lattice")
    g.add_argument("--graph")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export_dot)
    return ap


def main(argv=None) -> int:
    ap = parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.budget_ms is not None:
            if args.budget_ms <= 0:
                raise InputError("--budget-ms must be positive")
            os.environ[ENV_VAR] = repr(args.budget_ms)
        try:
            Budget()
        except ValueError:
            raise InputError(f"{ENV_VAR} must be a positive number") from None
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
