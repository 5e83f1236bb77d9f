"""Instance-level checks shared by the suites, the search tool and replay.

Each check is a predicate on one instance (relations, topologies, filters)
that returns True when the instance is a witness: a counterexample to a law,
a strict inclusion, or some other notable fact.  The check also fixes the
verdict such a witness carries.  Witnesses are serialised with the file
formats of :mod:`ultrarel.formats`, so any of them can be re-run from JSON.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable

from . import bits
from .errors import FormatError, InvariantViolation, UltrarelError, ValidationError
from .extensions import (
    DIAGRAM,
    MultiMap,
    _star_bits,
    _tilde_bits,
    condition,
    filter_projections,
    hom_preservation_check,
    multimap_cells,
    principal_conditions,
    projection_witness,
    r_bullet,
    rectangle_check,
    filter_reduction_check,
    semicontinuity,
    star_as_map,
    star_filter,
    star_filter_literal,
    star_map_continuous,
    star_ultra,
    tilde_ultra,
)
from .filters_hyper import (
    _filters,
    all_filters,
    closure_formula,
    filter_closure_literal,
    filter_index,
    hyperspace,
    meet_of_principals,
    principal,
    ultra_set,
    vietoris_basic,
    vietoris_basic_direct,
    vietoris_basic_meet_form,
)
from .formats import parse_filter_arg, rel_from_obj, rel_to_obj, topology_from_obj, topology_to_obj
from .rel_core import Rel, compose_cells, transpose
from .sections_closures import (
    ProductRel,
    derived_topology,
    lcl,
    lcl_rcl_laws,
    nonidempotence_witness,
    rcl,
    refines,
)
from .topo import ProductSpace, Topology, discrete

VERIFIED = "verified"
STRICT = "witnessed-strict"
FINDING = "finding"
VIOLATED = "violated"
NOT_REPRODUCED = "not-reproduced"


@dataclass(frozen=True)
class Check:
    name: str
    verdict: str
    params: tuple[tuple[str, str], ...]
    fn: Callable[..., bool]
    doc: str


CHECKS: dict[str, Check] = {}


def register(name: str, verdict: str, **params: str):
    def deco(fn):
        CHECKS[name] = Check(name, verdict, tuple(params.items()), fn, " ".join((fn.__doc__ or "").split()))
        return fn
    return deco


# argument codecs


def _encode(kind: str, value: Any) -> Any:
    if kind == "rel":
        return rel_to_obj(value)
    if kind == "topology":
        return topology_to_obj(value)
    if kind == "filter":
        return str(value)
    if kind == "filters":
        return [str(f) for f in value]
    if kind == "pairs":
        return [[x, y] for x, y in value]
    if kind in ("map", "int", "str"):
        return list(value) if kind == "map" else value
    if kind == "set":
        return list(bits.members(value))
    if kind == "sets":
        return [list(bits.members(m)) for m in value]
    raise ValueError(f"unknown argument kind {kind!r}")


def _int_list(raw: Any, where: str) -> list[int]:
    if not isinstance(raw, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in raw):
        raise FormatError(f"expected a list of integers, got {raw!r}", where)
    return raw


def _decode(kind: str, raw: Any, n: int, where: str) -> Any:
    if kind == "rel":
        return rel_from_obj(raw, where)
    if kind == "topology":
        t, closed_up = topology_from_obj(raw, where)
        if closed_up:
            raise FormatError("witness topologies must list the full open-set family", where)
        return t
    if kind == "filter":
        return parse_filter_arg(n, raw, where)
    if kind == "filters":
        if not isinstance(raw, list):
            raise FormatError("expected a list of filter literals", where)
        return [parse_filter_arg(n, v, f"{where}[{k}]") for k, v in enumerate(raw)]
    if kind == "pairs":
        if not isinstance(raw, list):
            raise FormatError("expected a list of pairs", where)
        out = []
        for k, item in enumerate(raw):
            pair = _int_list(item, f"{where}[{k}]")
            if len(pair) != 2:
                raise FormatError(f"expected [x, y], got {item!r}", f"{where}[{k}]")
            out.append((pair[0], pair[1]))
        return out
    if kind == "map":
        return tuple(_int_list(raw, where))
    if kind == "int":
        if not isinstance(raw, int) or isinstance(raw, bool):
            raise FormatError(f"expected an integer, got {raw!r}", where)
        return raw
    if kind == "str":
        if not isinstance(raw, str):
            raise FormatError(f"expected a string, got {raw!r}", where)
        return raw
    if kind == "set":
        return bits.mask_of(_int_list(raw, where))
    if kind == "sets":
        if not isinstance(raw, list):
            raise FormatError("expected a list of subsets", where)
        return tuple(bits.mask_of(_int_list(v, f"{where}[{k}]")) for k, v in enumerate(raw))
    raise ValueError(f"unknown argument kind {kind!r}")


def _carrier_of(args: dict) -> int:
    for v in args.values():
        n = getattr(v, "n", None)
        if isinstance(n, int):
            return n
    for v in args.values():
        if isinstance(v, int):
            return v
    return 1


def make_witness(name: str, **args: Any) -> dict:
    chk = CHECKS[name]
    return {
        "property": name,
        "verdict": chk.verdict,
        "n": _carrier_of(args),
        "args": {k: _encode(kind, args[k]) for k, kind in chk.params},
    }


def decode_witness(obj: Any, source: str = "<witness>") -> tuple[Check, dict]:
    if not isinstance(obj, dict):
        raise FormatError("a witness must be a JSON object", source)
    for key in ("property", "n", "args"):
        if key not in obj:
            raise FormatError(f"missing field '{key}'", source)
    name = obj["property"]
    if name not in CHECKS:
        raise FormatError(f"unknown property {name!r}", f"{source}: field 'property'")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise FormatError(f"'n' must be a positive integer, got {n!r}", f"{source}: field 'n'")
    chk = CHECKS[name]
    raw = obj["args"]
    if not isinstance(raw, dict):
        raise FormatError("'args' must be an object", f"{source}: field 'args'")
    missing = [k for k, _ in chk.params if k not in raw]
    if missing:
        raise FormatError(f"missing argument(s) {missing}", f"{source}: field 'args'")
    args = {k: _decode(kind, raw[k], n, f"{source}: field 'args.{k}'") for k, kind in chk.params}
    return chk, args


def replay(obj: Any, source: str = "<witness>") -> str:
    """Re-run a serialised witness and return the verdict it reproduces."""
    chk, args = decode_witness(obj, source)
    try:
        fired = chk.fn(**args)
    except FormatError:
        raise
    except UltrarelError as exc:
        raise FormatError(f"witness arguments rejected: {exc}", source) from None
    return chk.verdict if fired else NOT_REPRODUCED


# helpers on packed filter relations


def _m(n: int) -> int:
    return (1 << n) - 1


def _star(r: Rel) -> int:
    return _star_bits(r.n, r.bits)


def _tilde(r: Rel) -> int:
    return _tilde_bits(r.n, r.bits)


def _fcell(n: int, c, d) -> int:
    idx = filter_index(n)
    return 1 << (idx[c.gen] * _m(n) + idx[d.gen])


def _fcompose(a: int, b: int, n: int) -> int:
    return compose_cells(a, b, _m(n))


def _ffull(n: int) -> int:
    return bits.full(_m(n) * _m(n))


def first_cell(n: int, diff: int) -> dict:
    """The filter pair at the lowest set bit of a packed filter relation."""
    i, j = divmod((diff & -diff).bit_length() - 1, _m(n))
    fs = _filters(n)
    return {"c": fs[i], "d": fs[j]}


# ------------------------------------------------------------ principal level


@register("principal-collapse", VIOLATED, r="rel")
def principal_collapse(r: Rel) -> bool:
    """Some condition, or one of the two extensions, differs from r at principal pairs."""
    pc = principal_conditions(r)
    return any(v != r for v in pc.values()) or star_ultra(r) != r or tilde_ultra(r) != r


@register("principal-diagram", VIOLATED, r="rel")
def principal_diagram(r: Rel) -> bool:
    """An implication of the condition diagram fails at some principal pair."""
    pc = principal_conditions(r)
    return any(not pc[a].issubset(pc[b]) for a, b in DIAGRAM)


@register("filter-implication", FINDING, r="rel", u="filter", v="filter", premise="str", conclusion="str")
def filter_implication(r: Rel, u, v, premise: str, conclusion: str) -> bool:
    """The premise condition holds at the filter pair (u, v) but the conclusion does not."""
    return condition(r, u, v, premise) and not condition(r, u, v, conclusion)


def _principal_extensions(r: Rel) -> dict[str, Rel]:
    return {
        "A": star_ultra(r.complement()).complement(),
        "B": tilde_ultra(r.inverse()).inverse(),
        "T": tilde_ultra(r),
        "S": star_ultra(r),
        "S'": star_ultra(r.inverse()).inverse(),
        "T'": tilde_ultra(r.complement()).complement(),
    }


@register("principal-inclusions", VIOLATED, r="rel")
def principal_inclusions(r: Rel) -> bool:
    """At principal pairs the inclusion diagram between the four extensions fails."""
    e = _principal_extensions(r)
    chain = [(r, e["A"]), (e["A"], e["B"]), (e["B"], e["S"]), (e["A"], e["T"]), (e["T"], e["S"])]
    return (any(not a.issubset(b) for a, b in chain)
            or e["S"] != e["S'"] or e["T"] != e["T'"])


FILTER_INCLUSIONS = ("A<=B", "B<=S", "A<=T", "T<=S", "S=S'", "T=T'")


def _filter_extensions(r: Rel) -> dict[str, int]:
    n = r.n
    full = _ffull(n)
    m = _m(n)
    return {
        "A": full & ~_star(r.complement()),
        "B": transpose(_tilde(r.inverse()), m),
        "T": _tilde(r),
        "S": _star(r),
        "S'": transpose(_star(r.inverse()), m),
        "T'": full & ~_tilde(r.complement()),
    }


@register("filter-inclusion", FINDING, r="rel", which="str")
def filter_inclusion(r: Rel, which: str) -> bool:
    """The named inclusion or equality between extensions fails on filters."""
    if which not in FILTER_INCLUSIONS:
        raise ValidationError(f"unknown inclusion {which!r}")
    e = _filter_extensions(r)
    if "<=" in which:
        a, b = which.split("<=")
        return e[a] & ~e[b] != 0
    a, b = which.split("=")
    return e[a] != e[b]


@register("empty-extension", VIOLATED, r="rel")
def empty_extension(r: Rel) -> bool:
    """The empty relation has a nonempty extension."""
    if r.bits:
        raise ValidationError("this check takes the empty relation")
    return bool(star_ultra(r).bits or tilde_ultra(r).bits or _star(r) or _tilde(r))


@register("universal-extension", VIOLATED, r="rel")
def universal_extension(r: Rel) -> bool:
    """Some extension of the universal relation is not universal."""
    if r != Rel.universal(r.n):
        raise ValidationError("this check takes the universal relation")
    full = _ffull(r.n)
    return star_ultra(r) != r or tilde_ultra(r) != r or _star(r) != full or _tilde(r) != full


@register("equality-extension", VIOLATED, r="rel")
def equality_extension(r: Rel) -> bool:
    """An extension of the identity differs from the identity at principal pairs."""
    if r != Rel.identity(r.n):
        raise ValidationError("this check takes the identity relation")
    return star_ultra(r) != r or tilde_ultra(r) != r


# ------------------------------------------------------- distributivity laws


@lru_cache(maxsize=1 << 17)
def _su(n: int, cells: int) -> int:
    return star_ultra(Rel(n, cells)).bits


@lru_cache(maxsize=1 << 17)
def _tu(n: int, cells: int) -> int:
    return tilde_ultra(Rel(n, cells)).bits


def _comp(r: Rel, s: Rel) -> int:
    return compose_cells(r.bits, s.bits, r.n)


def _cmp(r: Rel) -> int:
    return bits.full(r.n * r.n) & ~r.bits


@register("star-inverse-filter", VIOLATED, r="rel")
def star_inverse_filter(r: Rel) -> bool:
    """Star does not commute with inversion on filters."""
    return _star_bits(r.n, transpose(r.bits, r.n)) != transpose(_star(r), _m(r.n))


@register("star-union-filter", VIOLATED, r="rel", s="rel")
def star_union_filter(r: Rel, s: Rel) -> bool:
    """Star of a union differs from the union of stars on filters."""
    return _star_bits(r.n, r.bits | s.bits) != _star(r) | _star(s)


@register("star-meet-inclusion", VIOLATED, r="rel", s="rel")
def star_meet_inclusion(r: Rel, s: Rel) -> bool:
    """Star of an intersection is not inside the intersection of stars."""
    return _star_bits(r.n, r.bits & s.bits) & ~(_star(r) & _star(s)) != 0


@register("star-complement-inclusion", VIOLATED, r="rel")
def star_complement_inclusion(r: Rel) -> bool:
    """The complement of star r is not inside star of the complement."""
    return _ffull(r.n) & ~_star(r) & ~_star_bits(r.n, _cmp(r)) != 0


@register("tilde-meet-filter", VIOLATED, r="rel", s="rel")
def tilde_meet_filter(r: Rel, s: Rel) -> bool:
    """Tilde of an intersection differs from the intersection of tildes on filters."""
    return _tilde_bits(r.n, r.bits & s.bits) != _tilde(r) & _tilde(s)


@register("tilde-compose-inclusion", VIOLATED, r="rel", s="rel")
def tilde_compose_inclusion(r: Rel, s: Rel) -> bool:
    """The composite of tildes is not inside tilde of the composite on filters."""
    return _fcompose(_tilde(r), _tilde(s), r.n) & ~_tilde_bits(r.n, _comp(r, s)) != 0


@register("star-compose-principal", VIOLATED, r="rel", s="rel")
def star_compose_principal(r: Rel, s: Rel) -> bool:
    """Star of a composite differs from the composite of stars at principal pairs."""
    n = r.n
    return _su(n, _comp(r, s)) != compose_cells(_su(n, r.bits), _su(n, s.bits), n)


@register("tilde-complement-principal", VIOLATED, r="rel")
def tilde_complement_principal(r: Rel) -> bool:
    """Tilde does not commute with complement at principal pairs."""
    return _tu(r.n, _cmp(r)) != bits.full(r.n * r.n) & ~_tu(r.n, r.bits)


@register("tilde-union-principal", VIOLATED, r="rel", s="rel")
def tilde_union_principal(r: Rel, s: Rel) -> bool:
    """Tilde of a union differs from the union of tildes at principal pairs."""
    n = r.n
    return _tu(n, r.bits | s.bits) != _tu(n, r.bits) | _tu(n, s.bits)


@register("star-arbitrary-union", VIOLATED, r="rel")
def star_arbitrary_union(r: Rel) -> bool:
    """Star of r differs from the union of the stars of its single pairs."""
    singles = [Rel.from_pairs(r.n, [p]) for p in r.pairs()]
    principal_union = Rel.empty(r.n)
    filter_union = 0
    for q in singles:
        principal_union = principal_union.union(star_ultra(q))
        filter_union |= _star(q)
    return star_ultra(r) != principal_union or _star(r) != filter_union


@register("star-closures-principal", VIOLATED, r="rel")
def star_closures_principal(r: Rel) -> bool:
    """Star fails to commute with transitive or reflexive closure at principal pairs."""
    return (star_ultra(r.transitive_closure()) != star_ultra(r).transitive_closure()
            or star_ultra(r.reflexive_closure()) != star_ultra(r).reflexive_closure())


# strict inclusions and filter-level findings, one filter pair at a time


def _in(cells: int, n: int, c, d) -> bool:
    return cells & _fcell(n, c, d) != 0


@register("star-complement-strict", STRICT, r="rel", c="filter", d="filter")
def star_complement_strict(r: Rel, c, d) -> bool:
    """(c, d) lies in star of the complement and also in star r."""
    return _in(_star_bits(r.n, _cmp(r)) & _star(r), r.n, c, d)


@register("star-meet-strict", STRICT, r="rel", s="rel", c="filter", d="filter")
def star_meet_strict(r: Rel, s: Rel, c, d) -> bool:
    """(c, d) lies in star r and star s but not in star of the intersection."""
    return _in(_star(r) & _star(s) & ~_star_bits(r.n, r.bits & s.bits), r.n, c, d)


@register("tilde-compose-strict", STRICT, r="rel", s="rel", c="filter", d="filter")
def tilde_compose_strict(r: Rel, s: Rel, c, d) -> bool:
    """(c, d) lies in tilde of the composite but not in the composite of tildes."""
    n = r.n
    return _in(_tilde_bits(n, _comp(r, s)) & ~_fcompose(_tilde(r), _tilde(s), n), n, c, d)


@register("star-compose-filter-strict", FINDING, r="rel", s="rel", c="filter", d="filter")
def star_compose_filter_strict(r: Rel, s: Rel, c, d) -> bool:
    """(c, d) lies in the composite of stars but not in star of the composite."""
    n = r.n
    return _in(_fcompose(_star(r), _star(s), n) & ~_star_bits(n, _comp(r, s)), n, c, d)


@register("tilde-complement-filter", FINDING, r="rel", c="filter", d="filter")
def tilde_complement_filter(r: Rel, c, d) -> bool:
    """(c, d) is in both or neither of tilde r and tilde of the complement."""
    return _in(_ffull(r.n) & ~(_tilde_bits(r.n, _cmp(r)) ^ _tilde(r)), r.n, c, d)


@register("tilde-union-filter", FINDING, r="rel", s="rel", c="filter", d="filter")
def tilde_union_filter(r: Rel, s: Rel, c, d) -> bool:
    """(c, d) lies in tilde of the union but in neither tilde r nor tilde s."""
    return _in(_tilde_bits(r.n, r.bits | s.bits) & ~(_tilde(r) | _tilde(s)), r.n, c, d)


@register("tilde-inverse-filter", FINDING, r="rel", c="filter", d="filter")
def tilde_inverse_filter(r: Rel, c, d) -> bool:
    """Tilde of the inverse and the inverse of tilde disagree at (c, d)."""
    n = r.n
    return _in(_tilde_bits(n, transpose(r.bits, n)) ^ transpose(_tilde(r), _m(n)), n, c, d)


# ----------------------------------------------- evaluators and projections


@register("star-evaluators", VIOLATED, r="rel")
def star_evaluators(r: Rel) -> bool:
    """The closed form, the literal quantifier form, the rectangle test and the ultrafilter reduction disagree."""
    closed = star_filter(r)
    if closed != star_filter_literal(r):
        return True
    n = r.n
    for c in _filters(n):
        for d in _filters(n):
            entry = (c, d) in closed
            if rectangle_check(r, c, d) != entry or filter_reduction_check(r, c, d) != entry:
                return True
    return any(rectangle_check(r, principal(n, x), principal(n, y)) != ((x, y) in r)
               for x in range(n) for y in range(n))


@register("filter-reduction", VIOLATED, r="rel")
def filter_reduction(r: Rel) -> bool:
    """Star on filters differs from star between some ultrafilters above them."""
    closed = star_filter(r)
    return any(filter_reduction_check(r, c, d) != ((c, d) in closed)
               for c in _filters(r.n) for d in _filters(r.n))


@register("projection-principal", VIOLATED, r="rel")
def projection_principal_check(r: Rel) -> bool:
    """Star at principal pairs is not matched by pairs of r with those projections."""
    from .extensions import projection_principal
    return not projection_principal(r)


@register("projection-filter-divergence", FINDING, r="rel", c="filter", d="filter")
def projection_divergence(r: Rel, c, d) -> bool:
    """Star holds at (c, d) but no subset of r projects onto both generators, or conversely."""
    return ((c, d) in star_filter(r)) != (projection_witness(r, c, d) is not None)


@register("ext-map", VIOLATED, r="rel")
def ext_map(r: Rel) -> bool:
    """For a function, the principal blocks of the two filter extensions are not its graph."""
    if not r.is_functional():
        raise ValidationError("this check takes a functional relation")
    return (star_filter(r).principal_block() != r
            or _principal_block(r.n, _tilde(r)) != r)


def _principal_block(n: int, cells: int) -> Rel:
    m = _m(n)
    rows = [(cells >> (x * m)) & bits.full(n) for x in range(n)]
    return Rel.from_rows(n, rows)


@register("star-map-slice", VIOLATED, r="rel")
def star_map_slice(r: Rel) -> bool:
    """The intersection-of-closures map differs from the principal slice of star or from the image."""
    n = r.n
    sf = star_filter(r)
    for c in _filters(n):
        value = star_as_map(r, c)
        slice_ = sum(1 << y for y in range(n) if (c, principal(n, y)) in sf)
        if value != slice_ or value != r.image(c.gen):
            return True
    return False


# ----------------------------------------------------- filters and closures


@register("anti-isomorphism", VIOLATED, n="int")
def anti_isomorphism(n: int) -> bool:
    """Meets of principal ultrafilters fail to be an order-reversing bijection inverted by ultra_set."""
    fs = all_filters(n)
    subsets = list(range(1, 1 << n))
    images = [meet_of_principals(n, s) for s in subsets]
    if sorted(f.gen for f in images) != sorted(f.gen for f in fs):
        return True
    for s, f in zip(subsets, images):
        if ultra_set(f) != s:
            return True
    for s, fs_ in zip(subsets, images):
        for t, ft in zip(subsets, images):
            # s inside t iff the filter for t is contained in the filter for s
            if (s & ~t == 0) != fs_.extends(ft):
                return True
    return False


def _filter_clause_mismatch(n: int, s, which: str) -> bool:
    literal = filter_closure_literal(n, s, which)
    h = hyperspace(discrete(n))
    idx = filter_index(n)
    mask = sum(1 << idx[f.gen] for f in s)
    got = sum(1 << idx[f.gen] for f in literal)
    topo = "full" if which == "joint" else which
    return got != h.topology(topo).closure(mask)


@register("filter-closure-clause", VIOLATED, n="int", s="filters", which="str")
def filter_closure_clause(n: int, s, which: str) -> bool:
    """The filter-level closure description disagrees with the closure in the hyperspace of the discrete space."""
    return _filter_clause_mismatch(n, s, which)


def _points_mask(t: Topology, closed_sets) -> int:
    h = hyperspace(t)
    try:
        return sum(1 << h.index[c] for c in closed_sets)
    except KeyError:
        raise ValidationError("every entry must be a nonempty closed set of the base") from None


@register("hatted-duality", VIOLATED, t="topology")
def hatted_duality(t: Topology) -> bool:
    """For some subset A, A- and A+ are not complements of (X - A)+ and (X - A)-."""
    h = hyperspace(t)
    top = h.all_points
    for a in range(1 << t.n):
        rest = t.full & ~a
        if h.minus(a) != top & ~h.plus(rest) or h.plus(a) != top & ~h.minus(rest):
            return True
    return False


@register("plus-closed-base", VIOLATED, t="topology")
def plus_closed_base(t: Topology) -> bool:
    """The family of sets C+ with C closed is not closed under finite unions."""
    h = hyperspace(t)
    family = {h.plus(c) for c in t.closed_sets}
    return any(a | b not in family for a in family for b in family)


def _closure_mismatch(t: Topology, s, which: str) -> bool:
    h = hyperspace(t)
    mask = _points_mask(t, s)
    target = h.topology("full" if which == "joint" else which).closure(mask)
    return closure_formula(h, mask, which) != target


@register("lower-closure-formula", VIOLATED, t="topology", s="sets")
def lower_closure_formula(t: Topology, s) -> bool:
    """The finite-union formula for the lower Vietoris closure is wrong on s."""
    return _closure_mismatch(t, s, "lower")


@register("upper-closure-formula", VIOLATED, t="topology", s="sets")
def upper_closure_formula(t: Topology, s) -> bool:
    """The intersection formula for the upper Vietoris closure is wrong on s."""
    return _closure_mismatch(t, s, "upper")


@register("full-closure-formula", VIOLATED, t="topology", s="sets")
def full_closure_formula(t: Topology, s) -> bool:
    """The full Vietoris closure of s is not the intersection of its lower and upper closures."""
    return _closure_mismatch(t, s, "full")


@register("joint-closure-formula", VIOLATED, t="topology", s="sets")
def joint_closure_formula(t: Topology, s) -> bool:
    """The combined formula for the full Vietoris closure is wrong on s."""
    return _closure_mismatch(t, s, "joint")


@register("upper-formula-nonempty-only", FINDING, t="topology")
def upper_formula_nonempty_only(t: Topology) -> bool:
    """With C restricted to nonempty closed sets the upper formula gives a nonempty closure of the empty set."""
    h = hyperspace(t)
    acc = h.all_points
    for c in h.points:
        acc &= h.plus(c)
    return acc != 0


@register("basic-open", VIOLATED, t="topology", family="sets")
def basic_open(t: Topology, family) -> bool:
    """The basic Vietoris open set computed from minus and plus sets differs from its definition."""
    h = hyperspace(t)
    return vietoris_basic(h, family) != vietoris_basic_direct(h, family)


@register("basic-open-meet-form", FINDING, t="topology", family="sets")
def basic_open_meet_form(t: Topology, family) -> bool:
    """Intersecting every O- (instead of taking the union's minus set) changes the basic open set."""
    h = hyperspace(t)
    return vietoris_basic(h, family) != vietoris_basic_meet_form(h, family)


@register("finite-density", VIOLATED, t="topology")
def finite_density(t: Topology) -> bool:
    """For a T1 base, the finite closed sets are not dense in the full Vietoris topology."""
    if not t.is_t1():
        raise ValidationError("this check takes a T1 base")
    h = hyperspace(t)
    return h.full.closure(h.all_points) != h.all_points


# ------------------------------------------------------ product-space closures


def _space(t1: Topology, t2: Topology) -> ProductSpace:
    return ProductSpace(t1, t2)


def _prel(sp: ProductSpace, pairs) -> ProductRel:
    return ProductRel.from_pairs(sp, pairs)


@register("lcl-laws", VIOLATED, t1="topology", t2="topology", r="pairs", s="pairs")
def lcl_laws(t1: Topology, t2: Topology, r, s) -> bool:
    """A closure-operator law or an inverse-conjugation identity fails for lcl or rcl."""
    sp = _space(t1, t2)
    return lcl_rcl_laws(_prel(sp, r), _prel(sp, s)) is not None


def double_closure_failure(pr: ProductRel) -> str | None:
    rl = rcl(lcl(pr))
    lr = lcl(rcl(pr))
    if rl != lcl(lcl(pr).inverse()).inverse():
        return "rcl lcl R vs inverse of lcl of (lcl R) inverse"
    if rl != rcl(rcl(pr.inverse()).inverse()):
        return "rcl lcl R vs rcl of (rcl R inverse) inverse"
    if lr != lcl(lcl(pr.inverse()).inverse()):
        return "lcl rcl R vs lcl of (lcl R inverse) inverse"
    if lr != rcl(rcl(pr).inverse()).inverse():
        return "lcl rcl R vs inverse of rcl of (rcl R) inverse"
    return None


@register("double-closure-identities", VIOLATED, t1="topology", t2="topology", r="pairs")
def double_closure_identities(t1: Topology, t2: Topology, r) -> bool:
    """One of the four expressions of rcl lcl R and lcl rcl R through a single closure disagrees."""
    return double_closure_failure(_prel(_space(t1, t2), r)) is not None


@register("derived-topology", VIOLATED, t1="topology", t2="topology")
def derived_topology_check(t1: Topology, t2: Topology) -> bool:
    """The fixed points of lcl or rcl do not form a topology refining the product topology."""
    sp = _space(t1, t2)
    try:
        return not all(refines(derived_topology(sp, w), sp.topology) for w in ("lcl", "rcl"))
    except ValidationError:
        return True


@register("discrete-collapse", VIOLATED, r="rel")
def discrete_collapse(r: Rel) -> bool:
    """On a product of discrete spaces lcl or rcl moves r, or rcl lcl r differs from tilde r."""
    sp = ProductSpace(discrete(r.n), discrete(r.n))
    pr = ProductRel.from_rel(sp, r)
    return lcl(pr) != pr or rcl(pr) != pr or rcl(lcl(pr)).to_rel() != tilde_ultra(r)


@register("lcl-equals-closure", FINDING, t1="topology", t2="topology", r="pairs")
def lcl_equals_closure(t1: Topology, t2: Topology, r) -> bool:
    """lcl R or rcl R differs from the plain closure of R."""
    pr = _prel(_space(t1, t2), r)
    return lcl(pr) != pr.closure() or rcl(pr) != pr.closure()


@register("lcl-rcl-meet-vs-product", FINDING, t1="topology", t2="topology")
def lcl_rcl_meet_vs_product(t1: Topology, t2: Topology) -> bool:
    """The opens common to both derived topologies differ from the product opens."""
    sp = _space(t1, t2)
    common = derived_topology(sp, "lcl").open_set & derived_topology(sp, "rcl").open_set
    return common != sp.topology.open_set


@register("lclrcl-nonidempotent", FINDING, t="topology", r="pairs")
def lclrcl_nonidempotent(t: Topology, r) -> bool:
    """rcl after lcl, or lcl after rcl, is not idempotent on R in t x t."""
    return nonidempotence_witness(_prel(_space(t, t), r)) is not None


@register("cl-inverse", VIOLATED, t1="topology", t2="topology", r="pairs")
def cl_inverse(t1: Topology, t2: Topology, r) -> bool:
    """The closure of the inverse (in the swapped product) is not the inverse of the closure."""
    pr = _prel(_space(t1, t2), r)
    return pr.inverse().closure() != pr.closure().inverse()


@register("cl-union", VIOLATED, t1="topology", t2="topology", r="pairs", s="pairs")
def cl_union(t1: Topology, t2: Topology, r, s) -> bool:
    """Closure does not distribute over a union."""
    sp = _space(t1, t2)
    a, b = _prel(sp, r), _prel(sp, s)
    return a.union(b).closure() != a.closure().union(b.closure())


@register("cl-meet-inclusion", VIOLATED, t1="topology", t2="topology", r="pairs", s="pairs")
def cl_meet_inclusion(t1: Topology, t2: Topology, r, s) -> bool:
    """The closure of an intersection is not inside the intersection of closures."""
    sp = _space(t1, t2)
    a, b = _prel(sp, r), _prel(sp, s)
    return a.intersection(b).closure().cells & ~(a.closure().cells & b.closure().cells) != 0


@register("cl-complement-inclusion", VIOLATED, t1="topology", t2="topology", r="pairs")
def cl_complement_inclusion(t1: Topology, t2: Topology, r) -> bool:
    """The complement of the closure is not inside the closure of the complement."""
    pr = _prel(_space(t1, t2), r)
    return pr.closure().complement().cells & ~pr.complement().closure().cells != 0


@register("rcl-lcl-union", VIOLATED, t1="topology", t2="topology", r="pairs", s="pairs")
def rcl_lcl_union(t1: Topology, t2: Topology, r, s) -> bool:
    """rcl lcl does not distribute over a union."""
    sp = _space(t1, t2)
    a, b = _prel(sp, r), _prel(sp, s)
    return rcl(lcl(a.union(b))) != rcl(lcl(a)).union(rcl(lcl(b)))


@register("rcl-lcl-meet-inclusion", VIOLATED, t1="topology", t2="topology", r="pairs", s="pairs")
def rcl_lcl_meet_inclusion(t1: Topology, t2: Topology, r, s) -> bool:
    """rcl lcl of an intersection is not inside the intersection of the rcl lcl values."""
    sp = _space(t1, t2)
    a, b = _prel(sp, r), _prel(sp, s)
    return rcl(lcl(a.intersection(b))).cells & ~(rcl(lcl(a)).cells & rcl(lcl(b)).cells) != 0


@register("rcl-lcl-complement-inclusion", VIOLATED, t1="topology", t2="topology", r="pairs")
def rcl_lcl_complement_inclusion(t1: Topology, t2: Topology, r) -> bool:
    """The complement of rcl lcl R is not inside rcl lcl of the complement."""
    pr = _prel(_space(t1, t2), r)
    return rcl(lcl(pr)).complement().cells & ~rcl(lcl(pr.complement())).cells != 0


@register("rcl-lcl-inverse", FINDING, t1="topology", t2="topology", r="pairs")
def rcl_lcl_inverse(t1: Topology, t2: Topology, r) -> bool:
    """rcl lcl of the inverse differs from the inverse of rcl lcl R."""
    pr = _prel(_space(t1, t2), r)
    return rcl(lcl(pr.inverse())) != rcl(lcl(pr)).inverse()


def _square(t: Topology, r: Rel) -> ProductRel:
    return ProductRel.from_rel(ProductSpace(t, t), r)


@register("cl-compose-inclusion", VIOLATED, t="topology", r="rel", s="rel")
def cl_compose_inclusion(t: Topology, r: Rel, s: Rel) -> bool:
    """The closure of a composite is not inside the composite of closures in t x t."""
    lhs = _square(t, r.compose(s)).closure().to_rel()
    rhs = _square(t, r).closure().to_rel().compose(_square(t, s).closure().to_rel())
    return not lhs.issubset(rhs)


@register("cl-compose-discrete", VIOLATED, r="rel", s="rel")
def cl_compose_discrete(r: Rel, s: Rel) -> bool:
    """On a discrete space the closure of a composite differs from the composite of closures."""
    t = discrete(r.n)
    lhs = _square(t, r.compose(s)).closure().to_rel()
    rhs = _square(t, r).closure().to_rel().compose(_square(t, s).closure().to_rel())
    return lhs != rhs


@register("cl-compose-strict", STRICT, t="topology", r="rel", s="rel")
def cl_compose_strict(t: Topology, r: Rel, s: Rel) -> bool:
    """The closure of a composite is strictly smaller than the composite of closures in t x t."""
    lhs = _square(t, r.compose(s)).closure().to_rel()
    rhs = _square(t, r).closure().to_rel().compose(_square(t, s).closure().to_rel())
    return lhs.issubset(rhs) and lhs != rhs


@register("cl-meet-strict", STRICT, t="topology", r="rel", s="rel")
def cl_meet_strict(t: Topology, r: Rel, s: Rel) -> bool:
    """The closure of an intersection is strictly smaller than the intersection of closures in t x t."""
    lhs = _square(t, r.intersection(s)).closure().cells
    rhs = _square(t, r).closure().cells & _square(t, s).closure().cells
    return lhs & ~rhs == 0 and lhs != rhs


@register("cl-complement-strict", STRICT, t="topology", r="rel")
def cl_complement_strict(t: Topology, r: Rel) -> bool:
    """The complement of the closure is strictly smaller than the closure of the complement in t x t."""
    pr = _square(t, r)
    lhs = pr.closure().complement().cells
    rhs = pr.complement().closure().cells
    return lhs & ~rhs == 0 and lhs != rhs


# ------------------------------------------------------------- continuity


@register("semicontinuity-equivalence", VIOLATED, dom="topology", cod="topology", values="sets")
def semicontinuity_equivalence(dom: Topology, cod: Topology, values) -> bool:
    """The open-set, closed-set and hyperspace formulations of semicontinuity disagree."""
    try:
        semicontinuity(MultiMap(dom, cod, tuple(values)), "vietoris")
    except InvariantViolation:
        return True
    return False


@register("star-map-continuity", VIOLATED, r="rel")
def star_map_continuity(r: Rel) -> bool:
    """The map sending a filter to the intersection of closures of its images is not Vietoris-continuous."""
    return not star_map_continuous(r)


@register("r-bullet-lcl", VIOLATED, r="rel", t="topology")
def r_bullet_lcl(r: Rel, t: Topology) -> bool:
    """The graph of the row-closure map differs from lcl r in discrete x t."""
    graph = multimap_cells(r_bullet(r, t))
    sp = ProductSpace(discrete(r.n), t)
    return graph != lcl(ProductRel(sp, r.bits)).cells


@register("hom-preservation", VIOLATED, h="map", r="rel", s="rel")
def hom_preservation(h, r: Rel, s: Rel) -> bool:
    """The filter pushforward of a homomorphism fails to preserve star or tilde."""
    return not hom_preservation_check(h, r, s)


def safe_fire(name: str, **args) -> bool:
    """Run a check, turning kernel errors into a firing witness."""
    try:
        return CHECKS[name].fn(**args)
    except UltrarelError:
        return True
