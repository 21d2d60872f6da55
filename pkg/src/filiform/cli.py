"""``filiform`` command line.

Exit status: 0 when everything checked passes, 1 when a verification finds
violations, 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import appendix, catalog, identities, leibniz, representations
from .core import StructureTable, as_rational
from .parallel import worker_count

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _write_json(path: str, payload) -> None:
    Path(path).write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")


def _emit(args, payload, summary: str) -> None:
    if args.json:
        _write_json(args.json, payload)
        print(summary)
    else:
        print(json.dumps(payload, indent=1))


def _parse_params(text: str) -> list:
    try:
        return [as_rational(p) for p in text.split(",") if p.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad parameter list {text!r}: {exc}") from None


def _load_table(path: str) -> StructureTable:
    try:
        return StructureTable.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise UsageError(f"{path} is not a structure table: {exc}") from None


def cmd_catalog(args) -> int:
    table = catalog.build(args.family, args.dim)
    _emit(args, table.to_json(), f"{table.name}: {len(table.nonzero())} nonzero products")
    return OK


def cmd_repr(args) -> int:
    rep = representations.build_rep(args.family, args.dim)
    if not args.verify:
        _emit(args, rep.to_json(), f"{rep.family}: {rep.dim} images of size {rep.size}")
        return OK
    table = catalog.build(args.family, args.dim)
    hom = representations.verify_homomorphism(table, rep)
    faithful = representations.verify_faithful(rep)
    upper = all(m.is_strictly_upper() for m in rep.images)
    action = representations.verify_action_table(representations.derive_action(rep), rep.family)
    n = rep.dim
    size = f"size {rep.size} = dim {n} (minimal by μ̄ ≥ n)" if rep.size == n else f"size {rep.size} != dim {n}"
    lines = [
        f"homomorphism: {hom.checked - len(hom.violations)}/{hom.checked} pairs ok; "
        f"faithful: {'yes' if faithful else 'no'}; {size}",
        f"strictly upper triangular: {'yes' if upper else 'no'}",
        f"action table: {action.checked - len(action.violations)}/{action.checked} entries match",
    ]
    good = hom.ok and faithful and upper and action.ok and rep.size == n
    payload = {"representation": rep.to_json(), "homomorphism": hom.to_json(), "action_table": action.to_json(),
               "faithful": faithful, "strictly_upper": upper}
    if args.family == "W":
        system = representations.verify_coefficient_system(n)
        lines.append(
            f"coefficient system: {system.checked - len(system.violations)}/{system.checked} instances ok "
            f"({system.details['interior_instances']} interior, {system.details['last_column_instances']} last column)"
        )
        good = good and system.ok
        payload["coefficient_system"] = system.to_json()
    print("\n".join(lines))
    if args.json:
        _write_json(args.json, payload)
    return OK if good else FAILED


def cmd_leibniz(args) -> int:
    values = _parse_params(args.params) if args.params else [0] * leibniz.ARITY[args.family]
    p = leibniz.FamilyParams(args.family, tuple(values))
    ext = leibniz.build_family(p.family, p.values)
    if not args.verify:
        _emit(args, ext.table.to_json(), f"{ext.table.name}: dimension {ext.table.dim}")
        return OK
    report = leibniz.verify_family_instance(p, worker_count())
    lines = [
        f"{ext.table.name}: dimension {ext.table.dim}",
        f"leibniz: {report.leibniz.checked - len(report.leibniz.violations)}/{report.leibniz.checked} triples ok",
        f"x-span ideal with [L,I]=0: {'yes' if report.ideal_ok else 'no'}",
        f"quotient equals {leibniz.BASE[p.family][0]}_{leibniz.BASE[p.family][1]}: {'yes' if report.quotient_ok else 'no'}",
        f"induced action matches representation: {'yes' if report.action_ok else 'no'}",
    ]
    good = report.ok
    if p.family == "lambda":
        nf = leibniz.verify_normal_form(ext)
        lines.append(f"normal form: {'yes' if nf.ok else 'no'}")
        good = good and nf.ok
    lines.extend(report.failures)
    print("\n".join(lines))
    if args.json:
        _write_json(args.json, {
            "table": ext.table.to_json(),
            "leibniz": report.leibniz.to_json(),
            "ideal_ok": report.ideal_ok,
            "quotient_ok": report.quotient_ok,
            "action_ok": report.action_ok,
            "fingerprint": leibniz.fingerprint(ext.table).to_json(),
        })
    return OK if good else FAILED


def cmd_appendix(args) -> int:
    rows = appendix.registry(args.which)
    if not args.check_all:
        for row in rows:
            extra = f"  nonzero: {', '.join(row.nonzero)}" if row.nonzero else ""
            print(f"{row.index:3d}  {row.family}{row.printed}{extra}")
        return OK
    reports = appendix.check_registry(args.which, args.seed, args.samples, worker_count())
    text = "".join(json.dumps(r) + "\n" for r in reports)
    structural = [r["row"] for r in reports if not (r["ideal_ok"] and r["quotient_ok"] and r["action_ok"])]
    errata = [r["row"] for r in reports if r["leibniz_violations"]]
    summary = [
        f"registry {args.which}: {len(reports)} rows checked (seed {args.seed})",
        f"structure checks failing: {structural or 'none'}",
        f"rows with Leibniz violations: {errata or 'none'}",
    ]
    dups = appendix.duplicates(args.which)
    if dups:
        summary.append("rows printed twice: " + ", ".join(f"{a}={b}" for a, b in dups))
    classes = appendix.fingerprint_classes(reports)
    summary.append(f"fingerprint classes with several rows (indistinguishable by implemented invariants): {len(classes)}")
    if args.report:
        Path(args.report).write_text(text, encoding="utf-8")
        print("\n".join(summary))
    else:
        sys.stdout.write(text)
        print("\n".join(summary), file=sys.stderr)
    return FAILED if structural or errata else OK


LAWS = {
    "antisymmetry": lambda t, w: identities.check_antisymmetry(t),
    "jacobi": identities.check_jacobi,
    "leibniz": identities.check_leibniz,
}


def cmd_verify(args) -> int:
    table = _load_table(args.input)
    laws = list(LAWS) if args.law == "all" else [args.law]
    workers = worker_count()
    reports = [LAWS[law](table, workers) for law in laws]
    for r in reports:
        print(f"{r.law}: {len(r.violations)} violations in {r.checked} checked")
    if args.json:
        payload = reports[0].to_json() if len(reports) == 1 else [r.to_json() for r in reports]
        _write_json(args.json, payload)
    return OK if all(r.ok for r in reports) else FAILED


def cmd_fingerprint(args) -> int:
    if args.input:
        table = _load_table(args.input)
    elif args.family in leibniz.ARITY:
        values = _parse_params(args.params) if args.params else [0] * leibniz.ARITY[args.family]
        table = leibniz.build_family(args.family, values).table
    elif args.family:
        if args.dim is None:
            raise UsageError("--dim is required with a catalog family")
        table = catalog.build(args.family, args.dim)
    else:
        raise UsageError("give --input PATH or --family")
    fp = leibniz.fingerprint(table).to_json()
    if args.json:
        _write_json(args.json, fp)
    for key, value in fp.items():
        print(f"{key}: {value}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="filiform", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("catalog", help="structure table of L_n, Q_n, R_n or W_n")
    p.add_argument("--family", required=True, choices=sorted(catalog.BUILDERS))
    p.add_argument("--dim", required=True, type=int)
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("repr", help="minimal faithful representation of Q, R or W")
    p.add_argument("--family", required=True, choices=["L", "Q", "R", "W"])
    p.add_argument("--dim", required=True, type=int)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_repr)

    p = sub.add_parser("leibniz", help="lambda, mu or eta Leibniz algebra")
    p.add_argument("--family", required=True, choices=sorted(leibniz.ARITY))
    p.add_argument("--params", metavar="A1,A2,...", help="comma-separated rationals such as 1,-1/2,0")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_leibniz)

    p = sub.add_parser("appendix", help="list or check a registry of classified algebras")
    p.add_argument("--which", required=True, choices=list(appendix.WHICH))
    p.add_argument("--check-all", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--report", metavar="PATH")
    p.set_defaults(func=cmd_appendix)

    p = sub.add_parser("verify", help="check a law on a structure table JSON file")
    p.add_argument("--input", required=True, metavar="PATH")
    p.add_argument("--law", required=True, choices=[*LAWS, "all"])
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fingerprint", help="isomorphism invariants of an algebra")
    p.add_argument("--input", metavar="PATH")
    p.add_argument("--family", choices=sorted(catalog.BUILDERS) + sorted(leibniz.ARITY))
    p.add_argument("--dim", type=int)
    p.add_argument("--params")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_fingerprint)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"filiform {args.verb}: {exc}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
