"""Command-line interface.

Exit codes: 0 all verified, 1 strict inclusions witnessed, 2 a law was
violated (or a replayed witness did not reproduce), 64 usage error,
65 malformed input, 66 missing input file.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Sequence

from .checks import NOT_REPRODUCED, STRICT, VIOLATED, replay
from .errors import FormatError, UltrarelError
from .extensions import star_filter, star_ultra, tilde_filter, tilde_ultra
from .filters_hyper import hyperspace
from .formats import (
    dumps,
    filter_rel_to_obj,
    hyperspace_to_obj,
    read_json,
    rel_from_obj,
    rel_to_obj,
    topology_from_obj,
)
from .harness import PROPERTIES, SUITES, run_suite, search
from .rel_core import Rel
from .sections_closures import ProductRel, lcl, rcl
from .topo import ProductSpace

EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_NOINPUT = 66


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ultrarel", description="Relation extensions, closures and Vietoris hyperspaces on finite carriers.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("extend", help="extend a relation to ultrafilters or filters")
    e.add_argument("--kind", required=True, choices=["star-ultra", "tilde-ultra", "star-filter", "tilde-filter"])
    e.add_argument("--rel", required=True, metavar="FILE")

    c = sub.add_parser("closure", help="apply lcl, rcl, closure or interior in t x t")
    c.add_argument("--topology", required=True, metavar="FILE")
    c.add_argument("--op", required=True, choices=["lcl", "rcl", "cl", "int"])
    c.add_argument("--rel", required=True, metavar="FILE")

    h = sub.add_parser("hyper", help="dump a Vietoris hyperspace topology")
    h.add_argument("--topology", required=True, metavar="FILE")
    h.add_argument("--which", required=True, choices=["lower", "upper", "full"])

    k = sub.add_parser("check", help="run a law suite")
    k.add_argument("--suite", required=True, choices=SUITES)
    k.add_argument("--max-n", type=int, default=None, metavar="K")

    s = sub.add_parser("search", help="search for witnesses of a property")
    s.add_argument("--property", required=True, choices=sorted(PROPERTIES))
    s.add_argument("--max-n", type=int, default=2, metavar="K")
    s.add_argument("--topo-limit", type=int, default=None, metavar="N")
    s.add_argument("--all", action="store_true", help="keep going after the first witness")

    r = sub.add_parser("replay", help="re-run a witness taken from a report")
    r.add_argument("witness", metavar="FILE")
    return p


def _topology(path: str):
    t, _ = topology_from_obj(read_json(path), path)
    return t


def _extend(args) -> int:
    r = rel_from_obj(read_json(args.rel), args.rel)
    if args.kind == "star-ultra":
        out = rel_to_obj(star_ultra(r))
    elif args.kind == "tilde-ultra":
        out = rel_to_obj(tilde_ultra(r))
    elif args.kind == "star-filter":
        out = filter_rel_to_obj(star_filter(r))
    else:
        out = filter_rel_to_obj(tilde_filter(r))
    sys.stdout.write(dumps(out))
    return 0


def _closure(args) -> int:
    t = _topology(args.topology)
    r = rel_from_obj(read_json(args.rel), args.rel)
    if r.n != t.n:
        raise FormatError(f"relation on {r.n} points but topology on {t.n}", args.rel)
    pr = ProductRel.from_rel(ProductSpace(t, t), r)
    ops = {"lcl": lcl, "rcl": rcl, "cl": ProductRel.closure, "int": ProductRel.interior}
    sys.stdout.write(dumps(rel_to_obj(Rel(r.n, ops[args.op](pr).cells))))
    return 0


def _hyper(args) -> int:
    t = _topology(args.topology)
    sys.stdout.write(dumps(hyperspace_to_obj(hyperspace(t), args.which)))
    return 0


def _report(rep, started: float) -> int:
    sys.stdout.write(dumps(rep.to_obj(), indent=2))
    sys.stderr.write(rep.summary() + "\n")
    sys.stderr.write(f"exit {rep.exit_code}; wall time {time.perf_counter() - started:.2f}s\n")
    return rep.exit_code


def _check(args) -> int:
    started = time.perf_counter()
    try:
        rep = run_suite(args.suite, args.max_n)
    except UltrarelError as exc:
        raise UsageError(str(exc)) from None
    return _report(rep, started)


def _search(args) -> int:
    started = time.perf_counter()
    if args.topo_limit is not None and args.topo_limit < 1:
        raise UsageError("--topo-limit must be positive")
    try:
        rep = search(args.property, args.max_n, args.topo_limit, args.all)
    except UltrarelError as exc:
        raise UsageError(str(exc)) from None
    return _report(rep, started)


def _replay(args) -> int:
    obj = read_json(args.witness)
    verdict = replay(obj, args.witness)
    claimed = obj.get("verdict")
    line = {"property": obj["property"], "verdict": verdict}
    if claimed is not None:
        line["claimed"] = claimed
    sys.stdout.write(dumps(line))
    if verdict == NOT_REPRODUCED or (claimed is not None and claimed != verdict):
        return 2
    return {VIOLATED: 2, STRICT: 1}.get(verdict, 0)


_COMMANDS = {
    "extend": _extend,
    "closure": _closure,
    "hyper": _hyper,
    "check": _check,
    "search": _search,
    "replay": _replay,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        sys.stderr.write(f"ultrarel: usage error: {exc}\n")
        return EXIT_USAGE
    except FileNotFoundError as exc:
        sys.stderr.write(f"ultrarel: {exc.filename}: no such file\n")
        return EXIT_NOINPUT
    except (UltrarelError, UnicodeDecodeError, IsADirectoryError) as exc:
        sys.stderr.write(f"ultrarel: {exc}\n")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
