"""Filters over a finite carrier and Vietoris hyperspaces of finite spaces.

Over a finite set every filter is principal in the wide sense: it is
``{S : gen <= S}`` for the intersection ``gen`` of its members.  A proper
filter therefore is just a nonempty subset, and the ultrafilters are the
singletons.  Filters are listed in canonical subset order (by size, then
members), so the ``n`` principal ultrafilters come first and ``{x}`` has
index ``x``.

The hyperspace of a finite space has the nonempty closed sets as points,
listed in the same canonical order.  For ``A`` a subset of the base,
``A-`` is the set of points contained in ``A`` and ``A+`` the set of
points meeting ``A``.  The lower Vietoris topology is generated by the
``O+`` and the upper one by the ``O-`` (``O`` open); the full topology is
their join.  Subsets of points are bitmasks over point indices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable

from . import bits
from .errors import FormatError, InvariantViolation, SizeError, ValidationError
from .rel_core import check_carrier
from .topo import Topology, discrete

MAX_HYPER_BASE = 4


@dataclass(frozen=True, order=False)
class FilterGen:
    """The filter of all supersets of ``gen`` over ``range(n)``."""

    n: int
    gen: int

    def __post_init__(self):
        check_carrier(self.n)
        if not isinstance(self.gen, int) or self.gen <= 0 or self.gen >> self.n:
            raise ValidationError(f"generator must be a nonempty subset of range({self.n}), got {self.gen!r}")

    def __contains__(self, s: int) -> bool:
        return self.gen & ~s == 0

    def __str__(self) -> str:
        return "gen" + bits.fmt(self.gen)

    def __repr__(self) -> str:
        return f"FilterGen(n={self.n}, {self})"

    @property
    def is_ultra(self) -> bool:
        return bits.popcount(self.gen) == 1

    def extends(self, other: "FilterGen") -> bool:
        """``self`` contains every member of ``other``."""
        return self.gen & ~other.gen == 0

    def compatible(self, other: "FilterGen") -> bool:
        """The union of the two filters has the finite intersection property."""
        return self.gen & other.gen != 0

    def members(self) -> list[int]:
        return list(bits.supersets(self.gen, self.n))

    @property
    def index(self) -> int:
        return filter_index(self.n)[self.gen]


_LITERAL = re.compile(r"gen\{(\d+(?:,\d+)*)\}")


def parse_filter(n: int, text: str) -> FilterGen:
    m = _LITERAL.fullmatch(text.replace(" ", ""))
    if not m:
        raise FormatError(f"bad filter literal {text!r}, expected e.g. 'gen{{0,2}}'")
    elems = [int(e) for e in m.group(1).split(",")]
    if len(set(elems)) != len(elems) or any(e >= n for e in elems):
        raise FormatError(f"filter literal {text!r} has repeated or out-of-range elements for n={n}")
    return FilterGen(n, bits.mask_of(elems))


def principal(n: int, x: int) -> FilterGen:
    if not 0 <= x < n:
        raise ValidationError(f"point {x} outside range({n})")
    return _filters(n)[x]


@lru_cache(maxsize=None)
def _filters(n: int) -> tuple[FilterGen, ...]:
    return tuple(FilterGen(n, g) for g in bits.canonical_subsets(n, nonempty=True))


@lru_cache(maxsize=None)
def filter_index(n: int) -> dict[int, int]:
    return {f.gen: i for i, f in enumerate(_filters(n))}


def all_filters(n: int) -> list[FilterGen]:
    check_carrier(n)
    return list(_filters(n))


def ultra_set(c: FilterGen) -> int:
    """Points whose principal ultrafilter extends ``c``."""
    return sum(1 << x for x in range(c.n) if principal(c.n, x).extends(c))


def meet_of_principals(n: int, points: int) -> FilterGen:
    """The intersection of the principal ultrafilters at ``points``."""
    if points == 0:
        raise ValidationError("the intersection of no ultrafilters is not a proper filter")
    gen = 0
    for x in bits.members(points):
        gen |= principal(n, x).gen
    return FilterGen(n, gen)


def pushforward(h, c: FilterGen, m: int) -> FilterGen:
    """Filter on ``range(m)`` generated by the image of ``c`` under ``h``."""
    gen = 0
    for x in bits.members(c.gen):
        gen |= 1 << h[x]
    return FilterGen(m, gen)


# hyperspaces


def _generated(k: int, generators: Iterable[int]) -> Topology:
    nb = [bits.full(k)] * k
    for g in generators:
        for p in bits.members(g):
            nb[p] &= g
    return Topology.from_neighbourhoods(k, nb)


@dataclass(frozen=True)
class HyperSpace:
    base: Topology

    def __post_init__(self):
        if self.base.n > MAX_HYPER_BASE:
            raise SizeError(f"hyperspaces are limited to bases with at most {MAX_HYPER_BASE} points")

    @cached_property
    def points(self) -> tuple[int, ...]:
        return tuple(c for c in self.base.closed_sets if c)

    @property
    def size(self) -> int:
        return len(self.points)

    @cached_property
    def index(self) -> dict[int, int]:
        return {c: i for i, c in enumerate(self.points)}

    @property
    def all_points(self) -> int:
        return bits.full(self.size)

    def minus(self, a: int) -> int:
        return sum(1 << i for i, b in enumerate(self.points) if b & ~a == 0)

    def plus(self, a: int) -> int:
        return sum(1 << i for i, b in enumerate(self.points) if b & a)

    @cached_property
    def lower(self) -> Topology:
        return _generated(self.size, (self.plus(o) for o in self.base.opens))

    @cached_property
    def upper(self) -> Topology:
        return _generated(self.size, (self.minus(o) for o in self.base.opens))

    @cached_property
    def full(self) -> Topology:
        gens = [self.plus(o) for o in self.base.opens] + [self.minus(o) for o in self.base.opens]
        return _generated(self.size, gens)

    def topology(self, which: str) -> Topology:
        if which == "lower":
            return self.lower
        if which == "upper":
            return self.upper
        if which == "full":
            return self.full
        raise ValueError(f"which must be lower, upper or full, got {which!r}")

    @cached_property
    def _minus_unions(self) -> tuple[int, ...]:
        # entry F (a set of point indices) is the union of C- over C in F
        cm = [self.minus(c) for c in self.points]
        table = [0] * (1 << self.size)
        for f in range(1, 1 << self.size):
            low = f & -f
            table[f] = table[f ^ low] | cm[low.bit_length() - 1]
        return tuple(table)

    @cached_property
    def _plus_closed(self) -> tuple[int, ...]:
        # the empty union is a closed basic set too; without it cl(empty) = {X}
        return tuple(self.plus(c) for c in (0,) + self.points)


@lru_cache(maxsize=None)
def hyperspace(t: Topology) -> HyperSpace:
    return HyperSpace(t)


def hatted_sets(h: HyperSpace, a: int, which: str) -> int:
    if a < 0 or a & ~h.base.full:
        raise ValidationError(f"{a!r} is not a subset of the base carrier")
    if which == "minus":
        return h.minus(a)
    if which == "plus":
        return h.plus(a)
    raise ValueError(f"which must be 'minus' or 'plus', got {which!r}")


def vietoris_basic(h: HyperSpace, family: Iterable[int]) -> int:
    """Points inside the union of ``family`` and meeting each of its members."""
    family = list(family)
    for o in family:
        if not h.base.is_open(o):
            raise ValidationError(f"{bits.fmt(o)} is not open in the base")
    union = 0
    for o in family:
        union |= o
    acc = h.minus(union)
    for o in family:
        acc &= h.plus(o)
    return acc


def vietoris_basic_direct(h: HyperSpace, family: Iterable[int]) -> int:
    family = list(family)
    union = 0
    for o in family:
        union |= o
    return sum(
        1 << i for i, b in enumerate(h.points)
        if b & ~union == 0 and all(b & o for o in family)
    )


def vietoris_basic_meet_form(h: HyperSpace, family: Iterable[int]) -> int:
    """Intersection of every ``O-`` and every ``O+``; differs from the basic set."""
    acc = h.all_points
    for o in family:
        acc &= h.minus(o) & h.plus(o)
    return acc


def closure_formula(h: HyperSpace, s: int, which: str) -> int:
    """Closure in a Vietoris topology by explicit closed-set formulas.

    ``lower`` intersects the finite unions of ``C-`` covering ``s``;
    ``upper`` intersects the ``C+`` covering ``s``; ``full`` is the
    intersection of those two.  That last identity is not sound in general:
    the closure in a join of topologies can be strictly smaller than the
    intersection of the closures.  ``joint`` is the exact formula for the
    full topology, quantifying over ``C'+`` united with finitely many ``C-``.
    """
    if which == "lower":
        acc = h.all_points
        for u in h._minus_unions:
            if s & ~u == 0:
                acc &= u
        return acc
    if which == "upper":
        acc = h.all_points
        for c in h._plus_closed:
            if s & ~c == 0:
                acc &= c
        return acc
    if which == "full":
        return closure_formula(h, s, "lower") & closure_formula(h, s, "upper")
    if which == "joint":
        acc = h.all_points
        for c in h._plus_closed:
            for u in h._minus_unions:
                cover = c | u
                if s & ~cover == 0:
                    acc &= cover
        return acc
    raise ValueError(f"which must be lower, upper, full or joint, got {which!r}")


def vietoris_closure(h: HyperSpace, s: int, which: str, check: bool = True) -> int:
    """Closure of the point set ``s`` in the chosen Vietoris topology.

    With ``check`` the formula value is compared with the closure computed
    in the materialised topology and a mismatch raises
    :class:`InvariantViolation`.  The returned value is always the latter.
    """
    if s < 0 or s & ~h.all_points:
        raise ValidationError(f"{s!r} is not a set of hyperspace points")
    generic = h.topology(which).closure(s)
    if check:
        by_formula = closure_formula(h, s, which)
        if by_formula != generic:
            raise InvariantViolation(
                f"{which} closure of {bits.fmt(s)}: formula gives {bits.fmt(by_formula)}, "
                f"topology gives {bits.fmt(generic)}"
            )
    return generic


# closures on the filter space, straight from the filter-level description


@lru_cache(maxsize=None)
def _extension_masks(n: int) -> tuple[int, ...]:
    # entry F (a set of filter indices): the filters extending some member of F
    fs = _filters(n)
    out = []
    for fam in range(1 << len(fs)):
        chosen = [fs[i] for i in bits.members(fam)]
        out.append(sum(1 << j for j, b in enumerate(fs) if any(b.extends(c) for c in chosen)))
    return tuple(out)


def _as_mask(n: int, s: Iterable[FilterGen]) -> int:
    idx = filter_index(n)
    m = 0
    for f in s:
        if f.n != n:
            raise ValidationError(f"filter {f} is not over range({n})")
        m |= 1 << idx[f.gen]
    return m


def _lower_clause(n: int, s: int) -> int:
    ext = _extension_masks(n)
    out = bits.full(len(_filters(n)))
    for e in ext:
        if s & ~e == 0:
            out &= e
    return out


def _upper_clause(n: int, s: int) -> int:
    fs = _filters(n)
    members = [fs[i] for i in bits.members(s)]
    out = 0
    for j, d in enumerate(fs):
        # C ranges over the proper filters and the improper one (generator {})
        ok = all(
            c & d.gen
            for c in range(1 << n)
            if all(c & b.gen for b in members)
        )
        if ok:
            out |= 1 << j
    return out


def _joint_clause(n: int, s: int) -> int:
    # for every finite F and every filter C (improper included): if each
    # member of S extends some member of F or is compatible with C, so is D
    fs = _filters(n)
    ext = _extension_masks(n)
    compat = [sum(1 << j for j, b in enumerate(fs) if c & b.gen) for c in range(1 << n)]
    out = bits.full(len(fs))
    for c in compat:
        for e in ext:
            cover = c | e
            if s & ~cover == 0:
                out &= cover
    return out


_CLAUSES = {
    "lower": _lower_clause,
    "upper": _upper_clause,
    "full": lambda n, m: _lower_clause(n, m) & _upper_clause(n, m),
    "joint": _joint_clause,
}


def filter_closure_literal(n: int, s: Iterable[FilterGen], which: str) -> frozenset[FilterGen]:
    """Closure of a set of filters from the filter-level descriptions.

    ``full`` is the conjunction of the ``lower`` and ``upper`` conditions;
    ``joint`` is the single combined condition that matches the full
    Vietoris topology exactly.
    """
    if which not in _CLAUSES:
        raise ValueError(f"which must be lower, upper, full or joint, got {which!r}")
    if n > 3:
        raise SizeError("filter-space closures quantify over all families of filters; n <= 3")
    out = _CLAUSES[which](n, _as_mask(n, s))
    fs = _filters(n)
    return frozenset(fs[i] for i in bits.members(out))


def filter_vietoris_closure(n: int, s: Iterable[FilterGen], which: str,
                            check: bool = True) -> frozenset[FilterGen]:
    """Vietoris closure of a set of filters from the filter-level description.

    Filters correspond to the points of the hyperspace of the discrete space
    on ``range(n)`` through their generators.  With ``check`` the result is
    compared with the closure in the hyperspace topology (``joint`` against
    the full one) and a mismatch raises :class:`InvariantViolation`.
    """
    s = list(s)
    literal = filter_closure_literal(n, s, which)
    if check:
        h = hyperspace(discrete(n))
        topo = "full" if which == "joint" else which
        transported = h.topology(topo).closure(_as_mask(n, s))
        if _as_mask(n, literal) != transported:
            raise InvariantViolation(
                f"{which} closure of {sorted(map(str, s))} disagrees with the hyperspace"
            )
    return literal
