"""``hamcayley`` command line: build, verify, search, catalog."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Sequence

from . import catalog as cat
from .builder import build_hamiltonian_cycle, minimal_generating_subset
from .cayley import Letter, to_dot, word_from_json, word_to_json
from .errors import HamCayleyError, HypothesisViolation, InvariantFailure, ParseError, ResourceError
from .group_core import center, identity_quotient
from .oracle import SearchBudget, exhaustive_hamiltonian_search, verify_cycle

EXIT_OK, EXIT_FALSE, EXIT_HYPOTHESIS, EXIT_INTERNAL, EXIT_BUDGET = 0, 1, 2, 3, 4


class InputError(HamCayleyError):
    """Bad command-line input (unknown group, generator, or file)."""


def _source(args) -> tuple[cat.CatalogEntry, dict]:
    try:
        if args.catalog:
            return cat.resolve(args.catalog), {"catalog": args.catalog}
        return cat.load_group(args.group), {"group": str(args.group)}
    except KeyError as exc:
        raise InputError(str(exc.args[0]) if exc.args else str(exc)) from exc


def _generators(entry: cat.CatalogEntry, csv: str | None) -> tuple[list[str], list[int]]:
    if csv:
        names = [n.strip() for n in csv.split(",") if n.strip()]
    elif entry.suggested_generating_sets:
        names = list(entry.suggested_generating_sets[0])
    else:
        names = list(entry.generators)
    ids = []
    for n in names:
        if n in entry.generators:
            ids.append(entry.generators[n])
        elif n in entry.group.labels:
            ids.append(entry.group.labels.index(n))
        else:
            raise InputError(f"unknown generator {n!r} for group {entry.name}")
    return names, ids


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=False) + "\n")


def _record(args, command: str, source: dict, payload: dict, timings: dict, report=None) -> None:
    if not getattr(args, "json", None):
        return
    record = {
        "input": source | {"gens": getattr(args, "gens", None)},
        "command": command,
        "result": payload,
        "path_taken": payload.get("path"),
        "timings": timings,
        "verification": report,
    }
    Path(args.json).write_text(json.dumps(record, indent=2) + "\n")


def _write_dot(path: str, entry: cat.CatalogEntry, ids: list[int], names: list[str], w) -> None:
    G = entry.group
    Path(path).write_text(to_dot(identity_quotient(G), ids, names, w, 0))


def cmd_build(args) -> int:
    entry, source = _source(args)
    names, ids = _generators(entry, args.gens)
    budget = SearchBudget(max_nodes=args.budget) if args.budget else None
    t0 = time.perf_counter()
    result = build_hamiltonian_cycle(entry.group, ids, budget)
    elapsed = time.perf_counter() - t0
    payload = {
        "word": word_to_json(result.word, names),
        "path": result.path_taken,
        "verified": result.verified,
        "order": entry.group.order,
    }
    if args.trace:
        payload["trace"] = result.certificate_chain
    _emit(payload)
    if args.dot:
        _write_dot(args.dot, entry, ids, names, result.word)
    _record(args, "build", source, payload, {"build_s": elapsed}, result.report.to_json(names))
    return EXIT_OK if result.verified else EXIT_FALSE


def _read_word(path: str, names: Sequence[str]):
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read word file {path}: {exc}") from exc
    items = data["word"] if isinstance(data, dict) else data
    try:
        return word_from_json(items, names)
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"bad word file: {exc}") from exc


def cmd_verify(args) -> int:
    entry, source = _source(args)
    names, ids = _generators(entry, args.gens)
    t0 = time.perf_counter()
    w = _read_word(args.word_file, names)
    report = verify_cycle(entry.group, ids, w)
    payload = report.to_json(names)
    _emit(payload)
    _record(args, "verify", source, payload, {"verify_s": time.perf_counter() - t0}, payload)
    return EXIT_OK if report.hamiltonian else EXIT_FALSE


def cmd_search(args) -> int:
    entry, source = _source(args)
    names, ids = _generators(entry, args.gens)
    G = entry.group
    budget = SearchBudget(max_nodes=args.budget) if args.budget else SearchBudget()
    res = exhaustive_hamiltonian_search(G, ids, budget)
    payload = {"status": res.status, "nodes": res.nodes, "order": G.order}
    report = None
    if res.status == "found":
        w = tuple(Letter(j, e) for j, e in res.word)
        rep = verify_cycle(G, ids, w)
        report = rep.to_json(names)
        payload = {"word": word_to_json(w, names), "path": "fallback_search", "verified": rep.hamiltonian,
                   "order": G.order, "nodes": res.nodes}
        if args.dot:
            _write_dot(args.dot, entry, ids, names, w)
    _emit(payload)
    _record(args, "search", source, payload, {"search_s": res.elapsed}, report)
    if res.status == "budget":
        return EXIT_BUDGET
    if res.status == "none":
        return EXIT_FALSE
    return EXIT_OK if payload["verified"] else EXIT_FALSE


def _all_entries() -> list[cat.CatalogEntry]:
    return cat.catalog() + [cat.load_group(p) for p in cat.ingested_files()]


def _ell(entry: cat.CatalogEntry) -> int | None:
    if not entry.suggested_generating_sets:
        return None
    ids = entry.elements_of(entry.suggested_generating_sets[0])
    return len(minimal_generating_subset(entry.group, ids))


def cmd_catalog(args) -> int:
    if args.action == "list":
        rows = []
        for e in _all_entries():
            rows.append(f"{e.name:<14} order={e.group.order:<4} ell={_ell(e)} |G'|={e.expected.get('commutator_order')}")
        sys.stdout.write("\n".join(rows) + "\n")
        return EXIT_OK
    if args.action == "show":
        if not args.name:
            raise InputError("catalog show needs a group name")
        e = cat.resolve(args.name)
        G = e.group
        orders: dict[int, int] = {}
        for o in G.element_orders:
            orders[o] = orders.get(o, 0) + 1
        _emit({
            "name": e.name,
            "order": G.order,
            "abelian": G.is_abelian(),
            "center_order": center(G).order,
            "generators": {n: G.labels[g] for n, g in e.generators.items()},
            "element_orders": {str(k): orders[k] for k in sorted(orders)},
            "properties": cat.recompute_properties(G),
            "generating_sets": e.suggested_generating_sets,
            "description": e.description,
        })
        return EXIT_OK
    ok = True
    for e in _all_entries():
        rep = cat.validate_entry(e)
        ok &= rep.ok
        sys.stdout.write(str(rep) + "\n")
    return EXIT_OK if ok else EXIT_FALSE


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--catalog", metavar="NAME", help="built-in or bundled group name")
    src.add_argument("--group", metavar="FILE", help="JSON group file")
    p.add_argument("--gens", metavar="CSV", help="comma-separated generator names")
    p.add_argument("--json", metavar="PATH", help="write a run record with timings")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hamcayley", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct and verify a hamiltonian cycle")
    _add_source(b)
    b.add_argument("--dot", metavar="PATH", help="write the Cayley graph with the cycle highlighted")
    b.add_argument("--trace", action="store_true", help="include the certificate chain in the output")
    b.add_argument("--budget", metavar="NODES", type=int, help="node budget for fallback search")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="check a word file against a group")
    _add_source(v)
    v.add_argument("word_file", metavar="WORD_FILE")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="backtracking search only")
    _add_source(s)
    s.add_argument("--budget", metavar="NODES", type=int, help="node budget")
    s.add_argument("--dot", metavar="PATH")
    s.set_defaults(func=cmd_search)

    c = sub.add_parser("catalog", help="list, show or validate catalog groups")
    c.add_argument("action", choices=("list", "show", "selftest"))
    c.add_argument("name", nargs="?")
    c.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (HypothesisViolation, InputError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except ResourceError as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantFailure as exc:
        print(f"internal failure: {exc}", file=sys.stderr)
        if exc.trace:
            print(json.dumps(exc.trace, indent=2, default=str), file=sys.stderr)
        return EXIT_INTERNAL
    except HamCayleyError as exc:
        print(f"internal failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
