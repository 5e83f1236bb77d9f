"""JSON file formats for relations, topologies, filter relations and hyperspaces.

Parsers raise :class:`ultrarel.errors.FormatError` whose ``where`` names the
source and either the ``line:column`` of a syntax error or the offending
field (``pairs[3]``).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from . import bits
from .errors import FormatError, SizeError, ValidationError
from .extensions import FilterRel, filter_rel_from_pairs
from .filters_hyper import HyperSpace, _filters, parse_filter
from .rel_core import Rel, check_carrier
from .topo import Topology, make_topology


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from None


def read_json(path: str | Path) -> Any:
    p = Path(path)
    return loads(p.read_text(encoding="utf-8"), str(p))


def dumps(obj: Any, indent: int | None = None) -> str:
    return json.dumps(obj, indent=indent, ensure_ascii=False) + "\n"


def _is_int(v: Any) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _object(obj: Any, source: str, keys: tuple[str, ...]) -> dict:
    if not isinstance(obj, dict):
        raise FormatError(f"expected a JSON object, got {type(obj).__name__}", source)
    for k in keys:
        if k not in obj:
            raise FormatError(f"missing field '{k}'", source)
    extra = sorted(set(obj) - set(keys))
    if extra:
        raise FormatError(f"unexpected field(s) {extra}", source)
    return obj


def _carrier(obj: dict, source: str) -> int:
    n = obj["n"]
    if not _is_int(n) or n < 1:
        raise FormatError(f"'n' must be a positive integer, got {n!r}", f"{source}: field 'n'")
    try:
        check_carrier(n)
    except SizeError as exc:
        raise FormatError(str(exc), f"{source}: field 'n'") from None
    return n


def _index_pairs(raw: Any, limit: int, source: str, field: str = "pairs") -> list[tuple[int, int]]:
    if not isinstance(raw, list):
        raise FormatError("must be a list of [i, j] pairs", f"{source}: field '{field}'")
    seen = set()
    out = []
    for k, item in enumerate(raw):
        where = f"{source}: field '{field}[{k}]'"
        if not (isinstance(item, list) and len(item) == 2 and all(_is_int(v) for v in item)):
            raise FormatError(f"expected [i, j] with integer entries, got {item!r}", where)
        x, y = item
        if not (0 <= x < limit and 0 <= y < limit):
            raise FormatError(f"entry {item!r} outside range({limit})", where)
        if (x, y) in seen:
            raise FormatError(f"duplicate pair {item!r}", where)
        seen.add((x, y))
        out.append((x, y))
    return out


def _subset(raw: Any, n: int, where: str) -> int:
    if not isinstance(raw, list) or not all(_is_int(v) for v in raw):
        raise FormatError(f"expected a list of integers, got {raw!r}", where)
    if len(set(raw)) != len(raw):
        raise FormatError(f"repeated element in {raw!r}", where)
    if any(not 0 <= v < n for v in raw):
        raise FormatError(f"element outside range({n}) in {raw!r}", where)
    return bits.mask_of(raw)


# relations


def rel_to_obj(r: Rel) -> dict:
    return {"n": r.n, "pairs": [[x, y] for x, y in r.pairs()]}


def rel_from_obj(obj: Any, source: str = "<input>") -> Rel:
    obj = _object(obj, source, ("n", "pairs"))
    n = _carrier(obj, source)
    return Rel.from_pairs(n, _index_pairs(obj["pairs"], n, source))


# topologies


def topology_to_obj(t: Topology) -> dict:
    return {"n": t.n, "opens": [list(bits.members(o)) for o in t.opens]}


def topology_from_obj(obj: Any, source: str = "<input>") -> tuple[Topology, bool]:
    """Parse a topology; the flag is true when the given sets had to be closed up."""
    obj = _object(obj, source, ("n", "opens"))
    n = _carrier(obj, source)
    raw = obj["opens"]
    if not isinstance(raw, list):
        raise FormatError("must be a list of subsets", f"{source}: field 'opens'")
    gens = [_subset(item, n, f"{source}: field 'opens[{k}]'") for k, item in enumerate(raw)]
    t = make_topology(n, gens)
    return t, set(gens) != t.open_set


# filter relations


def filter_rel_to_obj(fr: FilterRel) -> dict:
    return {
        "n": fr.n,
        "index": [str(f) for f in fr.index],
        "pairs": [[i, j] for i, j in fr.pairs()],
    }


def filter_rel_from_obj(obj: Any, source: str = "<input>") -> FilterRel:
    obj = _object(obj, source, ("n", "index", "pairs"))
    n = _carrier(obj, source)
    expected = [str(f) for f in _filters(n)]
    index = obj["index"]
    if not isinstance(index, list) or len(index) != len(expected):
        raise FormatError(f"must list the {len(expected)} filters over range({n})", f"{source}: field 'index'")
    for k, (got, want) in enumerate(zip(index, expected)):
        where = f"{source}: field 'index[{k}]'"
        if not isinstance(got, str):
            raise FormatError(f"expected a filter literal, got {got!r}", where)
        if str(parse_filter(n, got)) != want:
            raise FormatError(f"expected {want} at this position (canonical order), got {got!r}", where)
    return filter_rel_from_pairs(n, _index_pairs(obj["pairs"], len(expected), source))


# hyperspaces


def hyperspace_to_obj(h: HyperSpace, which: str) -> dict:
    t = h.topology(which)
    obj = topology_to_obj(t)
    obj["points"] = [list(bits.members(c)) for c in h.points]
    return obj


def parse_filter_arg(n: int, text: Any, where: str):
    if not isinstance(text, str):
        raise FormatError(f"expected a filter literal, got {text!r}", where)
    try:
        return parse_filter(n, text)
    except (FormatError, ValidationError) as exc:
        raise FormatError(str(exc), where) from None
