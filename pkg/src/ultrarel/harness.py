"""Law suites, counterexample search and reports.

A suite runs a fixed list of laws over instances enumerated in canonical
order.  Each law is backed by a registered check from :mod:`ultrarel.checks`;
the first witness of every law is kept in file format so that it can be
replayed.  Reports contain no timing data, so identical runs give identical
JSON.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Callable, Iterable, Iterator

from . import bits
from .checks import (
    CHECKS,
    FILTER_INCLUSIONS,
    FINDING,
    STRICT,
    VERIFIED,
    VIOLATED,
    _fcompose,
    _ffull,
    _m,
    _star,
    _tilde,
    first_cell,
    make_witness,
)
from .errors import InvariantViolation, SizeError, UltrarelError
from .extensions import CONDITIONS, _star_bits, _tilde_bits, projection_witness, star_filter
from .filters_hyper import _filters, hyperspace
from .rel_core import Rel, all_rels, compose_cells, is_homomorphism, max_n, transpose
from .topo import Topology, enumerate_topologies

RELATION_SUITES = ("lemma21", "thm22", "thm23-table", "lemma24", "thm25", "filter-extension")
TOPOLOGY_SUITES = ("lemma32", "corollary-lcl", "generalized-thm23", "vietoris", "continuity")
SUITES = (
    "lemma21", "thm22", "thm23-table", "lemma24", "thm25", "lemma32",
    "corollary-lcl", "generalized-thm23", "vietoris", "filter-extension", "continuity",
)
DEFAULT_N = {s: (2 if s in TOPOLOGY_SUITES else 3) for s in SUITES}

# pairs of relations, filter-level evaluation and sampled spaces stop here
PAIR_CAP = 3
FILTER_CAP = 3
SAMPLES = 10_000
SEED = 20_240_601

EXIT_OK, EXIT_STRICT, EXIT_VIOLATED = 0, 1, 2


@dataclass
class LawResult:
    law: str
    check: str
    verdict: str
    instances: int
    witness_count: int = 0
    witnesses: list[dict] = field(default_factory=list)
    note: str = ""

    def to_obj(self) -> dict:
        return {
            "law": self.law,
            "check": self.check,
            "verdict": self.verdict,
            "instances": self.instances,
            "witness_count": self.witness_count,
            "witnesses": self.witnesses,
            "note": self.note,
        }


@dataclass
class SuiteReport:
    suite: str
    n_max: int
    laws: list[LawResult]
    table: dict | None = None

    def law(self, name: str) -> LawResult:
        for r in self.laws:
            if r.law == name:
                return r
        raise KeyError(name)

    @property
    def exit_code(self) -> int:
        verdicts = {r.verdict for r in self.laws}
        if VIOLATED in verdicts:
            return EXIT_VIOLATED
        if STRICT in verdicts:
            return EXIT_STRICT
        return EXIT_OK

    def to_obj(self) -> dict:
        if self.suite.startswith("search:"):
            (r,) = self.laws
            return {
                "property": r.law,
                "n_max": self.n_max,
                "searched": {"instances": r.instances},
                "verdict": r.verdict,
                "witness_count": r.witness_count,
                "witnesses": r.witnesses,
                "note": r.note,
            }
        obj = {"suite": self.suite, "n_max": self.n_max, "laws": [r.to_obj() for r in self.laws]}
        if self.table is not None:
            obj["table"] = self.table
        return obj

    def summary(self) -> str:
        lines = [f"{self.suite} (n <= {self.n_max})"]
        for r in self.laws:
            lines.append(f"  {r.verdict:<16} {r.law}: {r.instances} instances, {r.witness_count} witnesses")
        return "\n".join(lines)


def scan(law: str, check: str, instances: Iterable[dict], *, locate: Callable | None = None,
         note: str = "", keep: int | None = 1, stop_at_first: bool = False) -> LawResult:
    """Run ``check`` over ``instances``, recording witnesses.

    ``locate`` maps an instance to the list of extra arguments pinning each
    hit (for checks evaluated at one filter pair); the instance check must
    confirm every hit that is recorded.  ``keep=None`` records all witnesses,
    and then every hit of a located instance becomes its own witness.
    """
    chk = CHECKS[check]
    count = hits = 0
    witnesses: list[dict] = []
    for kw in instances:
        count += 1
        if locate is not None:
            extras = locate(**kw)
            if not extras:
                continue
            found = [{**kw, **e} for e in (extras if keep is None else extras[:1])]
            for inst in found:
                if not chk.fn(**inst):
                    raise InvariantViolation(f"{check}: bulk evaluation and instance check disagree")
        elif chk.fn(**kw):
            found = [kw]
        else:
            continue
        hits += 1
        for inst in found:
            if keep is None or len(witnesses) < keep:
                witnesses.append(make_witness(check, **inst))
        if stop_at_first:
            break
    if hits:
        verdict = chk.verdict
    else:
        verdict = VERIFIED if chk.verdict == VIOLATED else FINDING
    return LawResult(law, check, verdict, count, hits, witnesses, note)


# ------------------------------------------------------------ enumerations


def _rels(n_lo: int, n_hi: int) -> Iterator[Rel]:
    for n in range(n_lo, n_hi + 1):
        yield from all_rels(n)


def rel_instances(n_max: int, n_min: int = 1) -> Iterator[dict]:
    for r in _rels(n_min, n_max):
        yield {"r": r}


def rel_pair_instances(n_max: int, n_min: int = 1) -> Iterator[dict]:
    for n in range(n_min, n_max + 1):
        rels = list(all_rels(n))
        for r in rels:
            for s in rels:
                yield {"r": r, "s": s}


def _tops(n: int) -> list[Topology]:
    return list(enumerate_topologies(n))


def small_space_pairs() -> Iterator[tuple[Topology, Topology]]:
    for n1 in (1, 2):
        for n2 in (1, 2):
            for t1 in _tops(n1):
                for t2 in _tops(n2):
                    yield t1, t2


def _cell_pairs(n1: int, n2: int, cells: int) -> list[tuple[int, int]]:
    return [divmod(p, n2) for p in bits.members(cells)]


def product_instances(n_max: int, binary: bool, samples: int = SAMPLES) -> Iterator[dict]:
    """Exhaustive over spaces on at most two points, then seeded draws on three."""
    for t1, t2 in small_space_pairs():
        size = t1.n * t2.n
        for a in range(1 << size):
            r = _cell_pairs(t1.n, t2.n, a)
            if binary:
                for b in range(1 << size):
                    yield {"t1": t1, "t2": t2, "r": r, "s": _cell_pairs(t1.n, t2.n, b)}
            else:
                yield {"t1": t1, "t2": t2, "r": r}
    if n_max >= 3:
        yield from sampled_product_instances(binary, samples)


def sampled_product_instances(binary: bool, samples: int = SAMPLES, seed: int = SEED) -> Iterator[dict]:
    rng = random.Random(seed)
    tops = _tops(3)
    for _ in range(samples):
        t1, t2 = rng.choice(tops), rng.choice(tops)
        kw = {"t1": t1, "t2": t2, "r": _cell_pairs(3, 3, rng.getrandbits(9))}
        if binary:
            kw["s"] = _cell_pairs(3, 3, rng.getrandbits(9))
        yield kw


def square_instances(n_max: int, binary: bool, samples: int = SAMPLES) -> Iterator[dict]:
    """``(t, r[, s])`` with relations on the carrier of ``t``: exhaustive to two points, sampled on three."""
    for n in range(1, min(n_max, 2) + 1):
        rels = list(all_rels(n))
        for t in _tops(n):
            for r in rels:
                if binary:
                    for s in rels:
                        yield {"t": t, "r": r, "s": s}
                else:
                    yield {"t": t, "r": r}
    if n_max >= 3:
        rng = random.Random(SEED + 1)
        tops = _tops(3)
        for _ in range(samples):
            kw = {"t": rng.choice(tops), "r": Rel(3, rng.getrandbits(9))}
            if binary:
                kw["s"] = Rel(3, rng.getrandbits(9))
            yield kw


def base_instances(n_max: int) -> Iterator[dict]:
    for n in range(1, n_max + 1):
        for t in _tops(n):
            yield {"t": t}


def point_set_instances(n_max: int) -> Iterator[dict]:
    """Every base topology with every set of hyperspace points, as closed sets."""
    for n in range(1, n_max + 1):
        for t in _tops(n):
            pts = hyperspace(t).points
            for s in range(1 << len(pts)):
                yield {"t": t, "s": tuple(pts[i] for i in bits.members(s))}


def open_family_instances(n_max: int) -> Iterator[dict]:
    for n in range(1, n_max + 1):
        for t in _tops(n):
            opens = [o for o in t.opens if o]
            for f in range(1, 1 << len(opens)):
                yield {"t": t, "family": tuple(opens[i] for i in bits.members(f))}


# --------------------------------------------------------------- locators


def _cell_locator(diff: Callable[..., int]) -> Callable[..., dict | None]:
    def locate(r: Rel, s: Rel | None = None) -> list[dict]:
        d = diff(r) if s is None else diff(r, s)
        out = []
        while d:
            low = d & -d
            out.append(first_cell(r.n, low))
            d ^= low
        return out
    return locate


def _cmp(r: Rel) -> int:
    return bits.full(r.n * r.n) & ~r.bits


def _comp(r: Rel, s: Rel) -> int:
    return compose_cells(r.bits, s.bits, r.n)


loc_star_complement = _cell_locator(lambda r: _star_bits(r.n, _cmp(r)) & _star(r))
loc_star_meet = _cell_locator(lambda r, s: _star(r) & _star(s) & ~_star_bits(r.n, r.bits & s.bits))
loc_tilde_compose = _cell_locator(
    lambda r, s: _tilde_bits(r.n, _comp(r, s)) & ~_fcompose(_tilde(r), _tilde(s), r.n))
loc_star_compose = _cell_locator(
    lambda r, s: _fcompose(_star(r), _star(s), r.n) & ~_star_bits(r.n, _comp(r, s)))
loc_tilde_complement = _cell_locator(
    lambda r: _ffull(r.n) & ~(_tilde_bits(r.n, _cmp(r)) ^ _tilde(r)))
loc_tilde_union = _cell_locator(lambda r, s: _tilde_bits(r.n, r.bits | s.bits) & ~(_tilde(r) | _tilde(s)))
loc_tilde_inverse = _cell_locator(
    lambda r: _tilde_bits(r.n, transpose(r.bits, r.n)) ^ transpose(_tilde(r), _m(r.n)))


def loc_projection(r: Rel) -> list[dict]:
    sf = star_filter(r)
    return [{"c": c, "d": d} for c in _filters(r.n) for d in _filters(r.n)
            if ((c, d) in sf) != (projection_witness(r, c, d) is not None)]


# ------------------------------------------------------------------ suites


def _filter_n(n_max: int) -> int:
    return min(n_max, FILTER_CAP)


def _pair_n(n_max: int) -> int:
    return min(n_max, PAIR_CAP)


def suite_lemma21(n_max: int) -> SuiteReport:
    fn = _filter_n(n_max)
    laws = [
        scan("principal-collapse", "principal-collapse", rel_instances(n_max),
             note="all seven conditions and both extensions equal r at principal pairs"),
        scan("principal-diagram", "principal-diagram", rel_instances(n_max)),
    ]
    matrix = {}
    for a in CONDITIONS:
        for b in CONDITIONS:
            if a == b:
                continue
            res = scan(f"filter-implication {a}->{b}", "filter-implication",
                       _implication_instances(fn, a, b),
                       note=f"filter pairs, n <= {fn}")
            matrix[f"{a}->{b}"] = 0 if res.witness_count else 1
            laws.append(res)
    return SuiteReport("lemma21", n_max, laws, {"filter_implications": matrix})


def _implication_instances(n_max: int, premise: str, conclusion: str) -> Iterator[dict]:
    for r in _rels(1, n_max):
        fs = _filters(r.n)
        for u in fs:
            for v in fs:
                yield {"r": r, "u": u, "v": v, "premise": premise, "conclusion": conclusion}


def suite_thm22(n_max: int) -> SuiteReport:
    fn = _filter_n(n_max)
    laws = [
        scan("empty-row", "empty-extension", ({"r": Rel.empty(n)} for n in range(1, n_max + 1))),
        scan("universal-row", "universal-extension", ({"r": Rel.universal(n)} for n in range(1, n_max + 1))),
        scan("equality-row", "equality-extension", ({"r": Rel.identity(n)} for n in range(1, n_max + 1))),
        scan("principal-inclusions", "principal-inclusions", rel_instances(n_max)),
    ]
    for which in FILTER_INCLUSIONS:
        laws.append(scan(f"filter-inclusion {which}", "filter-inclusion",
                         ({"r": r, "which": which} for r in _rels(1, fn)),
                         note=f"filter level, n <= {fn}"))
    return SuiteReport("thm22", n_max, laws)


INFINITE_ONLY = "infinite-only (paper example uses non-principal ultrafilters)"


def suite_thm23_table(n_max: int) -> SuiteReport:
    fn = _filter_n(n_max)
    pn = _pair_n(n_max)
    fpn = min(fn, pn)
    R = lambda: rel_instances(fn)  # noqa: E731
    RS = lambda: rel_pair_instances(fpn)  # noqa: E731
    laws = {
        # tilde row
        "tilde-complement": scan("tilde-complement", "tilde-complement-principal", rel_instances(n_max),
                                 note="principal level"),
        "tilde-complement-filter": scan("tilde-complement-filter", "tilde-complement-filter", R(),
                                        locate=loc_tilde_complement, note=f"filter level, n <= {fn}"),
        "tilde-union": scan("tilde-union", "tilde-union-principal", rel_pair_instances(pn),
                            note="principal level"),
        "tilde-union-filter": scan("tilde-union-filter", "tilde-union-filter", RS(),
                                   locate=loc_tilde_union, note=f"filter level, n <= {fpn}"),
        "tilde-meet": scan("tilde-meet", "tilde-meet-filter", RS(), note=f"filter level, n <= {fpn}"),
        "tilde-compose-inclusion": scan("tilde-compose-inclusion", "tilde-compose-inclusion",
                                        rel_pair_instances(min(fpn, 2)),
                                        note=f"filter level, n <= {min(fpn, 2)}"),
        "tilde-compose-strict": scan("tilde-compose-strict", "tilde-compose-strict",
                                     rel_pair_instances(min(fpn, 2)), locate=loc_tilde_compose,
                                     note=f"filter level, n <= {min(fpn, 2)}"),
        "tilde-inverse-filter": scan("tilde-inverse-filter", "tilde-inverse-filter", R(),
                                     locate=loc_tilde_inverse,
                                     note=f"filter level, n <= {fn}; " + INFINITE_ONLY),
        # star row
        "star-complement-inclusion": scan("star-complement-inclusion", "star-complement-inclusion", R(),
                                          note=f"filter level, n <= {fn}"),
        "star-complement-strict": scan("star-complement-strict", "star-complement-strict", R(),
                                       locate=loc_star_complement, note=f"filter level, n <= {fn}"),
        "star-union": scan("star-union", "star-union-filter", RS(), note=f"filter level, n <= {fpn}"),
        "star-meet-inclusion": scan("star-meet-inclusion", "star-meet-inclusion", RS(),
                                    note=f"filter level, n <= {fpn}"),
        "star-meet-strict": scan("star-meet-strict", "star-meet-strict", RS(), locate=loc_star_meet,
                                 note=f"filter level, n <= {fpn}"),
        "star-compose": scan("star-compose", "star-compose-principal", rel_pair_instances(pn),
                             note="principal level"),
        "star-compose-filter": scan("star-compose-filter", "star-compose-filter-strict", RS(),
                                    locate=loc_star_compose, note=f"filter level, n <= {fpn}"),
        "star-inverse": scan("star-inverse", "star-inverse-filter", R(), note=f"filter level, n <= {fn}"),
        # also over unions of arbitrary families
        "star-arbitrary-union": scan("star-arbitrary-union", "star-arbitrary-union", R(),
                                     note=f"principal and filter level, n <= {fn}"),
        "star-closures": scan("star-closures", "star-closures-principal", rel_instances(n_max),
                              note="principal level"),
    }

    def cell(expected: int, law: str, level: str, extra: str | None = None) -> dict:
        res = laws[law]
        out = {"expected": expected, "level": level, "law": law, "verdict": res.verdict}
        if res.witnesses:
            out["witness"] = res.witnesses[0]
        if extra:
            out["annotation"] = extra
        return out

    table = {
        "columns": ["-", "cap", "cup", "comp", "inv"],
        "tilde": {
            "-": cell(1, "tilde-complement", "principal"),
            "cap": cell(1, "tilde-meet", "filter"),
            "cup": cell(1, "tilde-union", "principal"),
            "comp": cell(0, "tilde-compose-strict", "filter"),
            "inv": cell(0, "tilde-inverse-filter", "filter", INFINITE_ONLY),
        },
        "star": {
            "-": cell(0, "star-complement-strict", "filter"),
            "cap": cell(0, "star-meet-strict", "filter"),
            "cup": cell(1, "star-union", "filter"),
            "comp": cell(1, "star-compose", "principal"),
            "inv": cell(1, "star-inverse", "filter"),
        },
    }
    return SuiteReport("thm23-table", n_max, list(laws.values()), table)


def suite_lemma24(n_max: int) -> SuiteReport:
    fn = _filter_n(n_max)
    return SuiteReport("lemma24", n_max, [
        scan("star-evaluators", "star-evaluators", rel_instances(fn),
             note=f"closed form, literal form, rectangle test and ultrafilter reduction, n <= {fn}"),
    ])


def suite_thm25(n_max: int) -> SuiteReport:
    fn = _filter_n(n_max)
    return SuiteReport("thm25", n_max, [
        scan("projection-principal", "projection-principal", rel_instances(n_max), note="principal level"),
        scan("projection-filter", "projection-filter-divergence", rel_instances(fn),
             locate=loc_projection, note=f"filter level, n <= {fn}"),
    ])


def suite_lemma32(n_max: int) -> SuiteReport:
    return SuiteReport("lemma32", n_max, [
        scan("lcl-rcl-laws", "lcl-laws", product_instances(n_max, binary=True),
             note=_product_note(n_max)),
    ])


def _product_note(n_max: int) -> str:
    note = "every pair of topologies on at most 2 points, every relation"
    if n_max >= 3:
        note += f"; {SAMPLES} seeded draws on 3 x 3"
    return note


def _space_pairs(n_max: int) -> Iterator[dict]:
    for t1, t2 in small_space_pairs():
        yield {"t1": t1, "t2": t2}
    if n_max >= 3:
        for t in _tops(3):
            yield {"t1": t, "t2": t}


def _idempotence_instances(n_max: int) -> Iterator[dict]:
    for n in range(1, n_max + 1):
        for t in _tops(n):
            for cells in range(1 << (n * n)):
                yield {"t": t, "r": _cell_pairs(n, n, cells)}


def suite_corollary_lcl(n_max: int) -> SuiteReport:
    return SuiteReport("corollary-lcl", n_max, [
        scan("double-closure-identities", "double-closure-identities", product_instances(n_max, binary=False),
             note=_product_note(n_max)),
        scan("derived-topology", "derived-topology", _space_pairs(n_max)),
        scan("discrete-collapse", "discrete-collapse", rel_instances(n_max)),
        scan("lcl-equals-closure", "lcl-equals-closure", product_instances(n_max, binary=False),
             note="no witness means lcl and rcl equal the plain closure"),
        scan("derived-meet-vs-product", "lcl-rcl-meet-vs-product", _space_pairs(n_max),
             note="no witness means the common opens of both derived topologies are the product opens"),
        scan("lclrcl-nonidempotent", "lclrcl-nonidempotent", _idempotence_instances(n_max),
             note="exhaustive over t x t; no witness means both composites are idempotent"),
    ])


def suite_generalized_thm23(n_max: int) -> SuiteReport:
    note = _product_note(n_max)
    sq_note = "t x t, exhaustive to 2 points" + (f", {SAMPLES} draws on 3" if n_max >= 3 else "")
    dn = min(n_max, 2)
    return SuiteReport("generalized-thm23", n_max, [
        scan("cl-inverse", "cl-inverse", product_instances(n_max, False), note=note),
        scan("cl-union", "cl-union", product_instances(n_max, True), note=note),
        scan("cl-meet-inclusion", "cl-meet-inclusion", product_instances(n_max, True), note=note),
        scan("cl-complement-inclusion", "cl-complement-inclusion", product_instances(n_max, False), note=note),
        scan("cl-compose-inclusion", "cl-compose-inclusion", square_instances(n_max, True), note=sq_note),
        scan("cl-compose-discrete", "cl-compose-discrete", rel_pair_instances(dn),
             note=f"discrete spaces, n <= {dn}"),
        scan("cl-compose-strict", "cl-compose-strict", square_instances(min(n_max, 2), True)),
        scan("cl-meet-strict", "cl-meet-strict", square_instances(min(n_max, 2), True)),
        scan("cl-complement-strict", "cl-complement-strict", square_instances(min(n_max, 2), False)),
        scan("rcl-lcl-union", "rcl-lcl-union", product_instances(n_max, True), note=note),
        scan("rcl-lcl-meet-inclusion", "rcl-lcl-meet-inclusion", product_instances(n_max, True), note=note),
        scan("rcl-lcl-complement-inclusion", "rcl-lcl-complement-inclusion",
             product_instances(n_max, False), note=note),
        scan("rcl-lcl-inverse", "rcl-lcl-inverse", product_instances(n_max, False), note=note),
    ])


def suite_vietoris(n_max: int) -> SuiteReport:
    return SuiteReport("vietoris", n_max, [
        scan("hatted-duality", "hatted-duality", base_instances(n_max)),
        scan("plus-closed-base", "plus-closed-base", base_instances(n_max)),
        scan("lower-closure", "lower-closure-formula", point_set_instances(n_max)),
        scan("upper-closure", "upper-closure-formula", point_set_instances(n_max)),
        scan("full-closure", "full-closure-formula", point_set_instances(n_max),
             note="closure in the full topology against the intersection of lower and upper closures"),
        scan("joint-closure", "joint-closure-formula", point_set_instances(n_max)),
        scan("upper-without-empty", "upper-formula-nonempty-only", base_instances(n_max),
             note="the upper closed sets must include the one built from the empty set"),
        scan("basic-open", "basic-open", open_family_instances(n_max)),
        scan("basic-open-meet-form", "basic-open-meet-form", open_family_instances(n_max)),
        scan("finite-density", "finite-density",
             ({"t": t} for n in range(1, n_max + 1) for t in _tops(n) if t.is_t1())),
    ])


def _filter_set_instances(n_max: int, which: str) -> Iterator[dict]:
    for n in range(1, n_max + 1):
        fs = _filters(n)
        for s in range(1 << len(fs)):
            yield {"n": n, "s": [fs[i] for i in bits.members(s)], "which": which}


def _hom_instances(n_max: int) -> Iterator[dict]:
    for n in range(1, n_max + 1):
        for m in range(1, n_max + 1):
            rels_n = list(all_rels(n))
            rels_m = list(all_rels(m))
            for h in iproduct(range(m), repeat=n):
                for r in rels_n:
                    for s in rels_m:
                        if is_homomorphism(h, r, s):
                            yield {"h": h, "r": r, "s": s}


def suite_filter_extension(n_max: int) -> SuiteReport:
    fn = _filter_n(n_max)
    laws = [scan(f"closure-{w}", "filter-closure-clause", _filter_set_instances(fn, w),
                 note=f"every set of filters, n <= {fn}")
            for w in ("lower", "upper", "full", "joint")]
    laws += [
        scan("anti-isomorphism", "anti-isomorphism", ({"n": n} for n in range(1, 5)), note="n <= 4"),
        scan("filter-reduction", "filter-reduction", rel_instances(fn)),
        scan("ext-map", "ext-map", ({"r": r} for r in _rels(1, fn) if r.is_functional())),
        scan("star-map-slice", "star-map-slice", rel_instances(fn)),
        scan("hom-preservation", "hom-preservation", _hom_instances(min(n_max, 2)),
             note=f"every homomorphism, carriers n <= {min(n_max, 2)}"),
    ]
    return SuiteReport("filter-extension", n_max, laws)


MULTIMAP_EXHAUSTIVE_POINTS = 7


def multimap_instances(n_max: int, samples: int = 200, seed: int = SEED + 2) -> Iterator[dict]:
    """Every assignment when the codomain hyperspace is small, seeded draws otherwise."""
    rng = random.Random(seed)
    for n in range(1, n_max + 1):
        for dom in _tops(n):
            for m in range(1, n_max + 1):
                for cod in _tops(m):
                    pts = hyperspace(cod).points
                    if len(pts) <= MULTIMAP_EXHAUSTIVE_POINTS:
                        for values in iproduct(pts, repeat=n):
                            yield {"dom": dom, "cod": cod, "values": values}
                    else:
                        for _ in range(samples):
                            yield {"dom": dom, "cod": cod, "values": tuple(rng.choice(pts) for _ in range(n))}


def suite_continuity(n_max: int) -> SuiteReport:
    return SuiteReport("continuity", n_max, [
        scan("semicontinuity-equivalence", "semicontinuity-equivalence", multimap_instances(n_max),
             note="open-set, closed-set and hyperspace forms; continuity iff lower and upper"),
        scan("star-map-continuity", "star-map-continuity",
             ({"r": r} for r in _rels(1, n_max) if r.is_total()), note="total relations"),
        scan("r-bullet-lcl", "r-bullet-lcl",
             ({"r": r, "t": t} for n in range(1, n_max + 1) for t in _tops(n)
              for r in all_rels(n) if r.is_total()), note="total relations"),
    ])


_RUNNERS = {
    "lemma21": suite_lemma21,
    "thm22": suite_thm22,
    "thm23-table": suite_thm23_table,
    "lemma24": suite_lemma24,
    "thm25": suite_thm25,
    "lemma32": suite_lemma32,
    "corollary-lcl": suite_corollary_lcl,
    "generalized-thm23": suite_generalized_thm23,
    "vietoris": suite_vietoris,
    "filter-extension": suite_filter_extension,
    "continuity": suite_continuity,
}


def suite_cap(name: str) -> int:
    return min(3 if name in TOPOLOGY_SUITES else 4, max_n())


def run_suite(name: str, n_max: int | None = None) -> SuiteReport:
    if name not in _RUNNERS:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if n_max is None:
        n_max = min(DEFAULT_N[name], max_n())
    cap = suite_cap(name)
    if not 1 <= n_max <= cap:
        raise SizeError(f"suite {name} takes 1 <= n_max <= {cap}, got {n_max}")
    return _RUNNERS[name](n_max)


# ------------------------------------------------------------------ search


@dataclass(frozen=True)
class Property:
    check: str
    instances: Callable[[int, int | None], Iterable[dict]]
    locate: Callable | None = None
    cap: int = 3


def _by_size(gen: Callable[[int], Iterable[dict]]) -> Callable[[int, int | None], Iterable[dict]]:
    def run(n_max: int, topo_limit: int | None) -> Iterable[dict]:
        return gen(n_max)
    return run


def _squares_limited(n_max: int, topo_limit: int | None) -> Iterator[dict]:
    for n in range(1, n_max + 1):
        for i, t in enumerate(_tops(n)):
            if topo_limit is not None and i >= topo_limit:
                break
            for cells in range(1 << (n * n)):
                yield {"t": t, "r": _cell_pairs(n, n, cells)}


def _square_rel_pairs(n_max: int, topo_limit: int | None, binary: bool) -> Iterator[dict]:
    for n in range(1, n_max + 1):
        rels = list(all_rels(n))
        for i, t in enumerate(_tops(n)):
            if topo_limit is not None and i >= topo_limit:
                break
            for r in rels:
                if binary:
                    for s in rels:
                        yield {"t": t, "r": r, "s": s}
                else:
                    yield {"t": t, "r": r}


PROPERTIES: dict[str, Property] = {
    "star-complement-strict": Property("star-complement-strict", _by_size(rel_instances), loc_star_complement),
    "star-meet-strict": Property("star-meet-strict", _by_size(rel_pair_instances), loc_star_meet),
    "tilde-compose-strict": Property("tilde-compose-strict", _by_size(rel_pair_instances), loc_tilde_compose),
    "star-compose-filter-strict": Property("star-compose-filter-strict", _by_size(rel_pair_instances),
                                           loc_star_compose),
    "tilde-complement-filter": Property("tilde-complement-filter", _by_size(rel_instances), loc_tilde_complement),
    "tilde-union-filter": Property("tilde-union-filter", _by_size(rel_pair_instances), loc_tilde_union),
    "tilde-inverse-filter": Property("tilde-inverse-filter", _by_size(rel_instances), loc_tilde_inverse),
    "projection-filter-divergence": Property("projection-filter-divergence", _by_size(rel_instances),
                                             loc_projection),
    "lclrcl-nonidempotent": Property("lclrcl-nonidempotent", _squares_limited),
    "cl-compose-strict": Property("cl-compose-strict", lambda n, k: _square_rel_pairs(n, k, True), cap=2),
    "cl-meet-strict": Property("cl-meet-strict", lambda n, k: _square_rel_pairs(n, k, True), cap=2),
    "cl-complement-strict": Property("cl-complement-strict", lambda n, k: _square_rel_pairs(n, k, False)),
    "full-closure-formula": Property("full-closure-formula", _by_size(point_set_instances)),
}


def search(prop: str, n_max: int, topo_limit: int | None = None, all_witnesses: bool = False) -> SuiteReport:
    """Enumerate instances of ``prop`` in canonical order looking for witnesses."""
    if prop not in PROPERTIES:
        raise KeyError(f"unknown property {prop!r}; choose from {', '.join(PROPERTIES)}")
    p = PROPERTIES[prop]
    cap = min(p.cap, max_n())
    if not 1 <= n_max <= cap:
        raise SizeError(f"property {prop} takes 1 <= n_max <= {cap}, got {n_max}")
    res = scan(prop, p.check, p.instances(n_max, topo_limit), locate=p.locate,
               keep=None if all_witnesses else 1, stop_at_first=not all_witnesses)
    res.witness_count = len(res.witnesses) if all_witnesses else res.witness_count
    if not res.witness_count:
        res.note = "search exhausted without a witness"
    return SuiteReport(f"search:{prop}", n_max, [res])


