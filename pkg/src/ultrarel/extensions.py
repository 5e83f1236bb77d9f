"""The star and tilde extensions of a relation, at ultrafilter and filter level.

On a finite carrier the ultrafilters are the principal ones, so both
extensions restricted to ultrafilters give back the relation itself.  The
interesting finite objects live one level up, on the filter space: for
filters ``C`` and ``D`` (see :class:`ultrarel.filters_hyper.FilterGen`)

* ``star``: for every ``A`` in ``C`` the family ``D`` plus ``r[A]`` is
  centered, which over a finite set reduces to ``gen D`` meeting
  ``r[gen C]``;
* ``tilde``: ``{x : r[x] in D}`` belongs to ``C``, i.e. the rectangle
  ``gen C x gen D`` lies inside ``r``.

A :class:`FilterRel` is a relation on the ``2**n - 1`` filters, indexed in
canonical filter order.  Composition follows :mod:`ultrarel.rel_core`:
the right operand is applied first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

from . import bits
from .errors import DimensionError, InvariantViolation, PreconditionError, ValidationError
from .filters_hyper import (
    FilterGen,
    _filters,
    filter_index,
    hyperspace,
    principal,
    pushforward,
    ultra_set,
)
from .rel_core import Rel, check_carrier, compose_cells, from_rows, is_homomorphism, rows_of, transpose
from .topo import Topology, discrete, is_continuous

CONDITIONS = ("c0", "ci", "cii", "ciii", "civ", "cv", "cvi")

# Implications between the conditions for ultrafilters, as (premise, conclusion).
DIAGRAM = (
    ("c0", "ciii"),
    ("ciii", "civ"),
    ("civ", "ciii"),
    ("civ", "cv"),
    ("civ", "cvi"),
    ("cv", "ci"),
    ("cvi", "ci"),
    ("ci", "cii"),
    ("cii", "ci"),
)


# ---------------------------------------------------------------- FilterRel


@dataclass(frozen=True)
class FilterRel:
    """A relation on the filters over ``range(n)``; ``bits`` is the packed matrix."""

    n: int
    bits: int = 0

    def __post_init__(self):
        check_carrier(self.n)
        if not isinstance(self.bits, int) or self.bits < 0 or self.bits >> (self.size * self.size):
            raise ValidationError("matrix bits do not fit the filter space")

    @property
    def size(self) -> int:
        return (1 << self.n) - 1

    @property
    def index(self) -> tuple[FilterGen, ...]:
        return _filters(self.n)

    @cached_property
    def rows(self) -> tuple[int, ...]:
        return rows_of(self.bits, self.size)

    def __contains__(self, pair) -> bool:
        c, d = pair
        idx = filter_index(self.n)
        return bool(self.rows[idx[c.gen]] >> idx[d.gen] & 1)

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.rows) for j in bits.members(row)]

    def __repr__(self) -> str:
        fs = self.index
        shown = [f"({fs[i]}, {fs[j]})" for i, j in self.pairs()]
        return f"FilterRel(n={self.n}, pairs=[{', '.join(shown)}])"

    def principal_block(self) -> Rel:
        # the singletons {x} sit at indices 0..n-1 in canonical order
        rowmask = bits.full(self.n)
        return Rel.from_rows(self.n, [self.rows[x] & rowmask for x in range(self.n)])

    def _same(self, other: "FilterRel") -> None:
        if not isinstance(other, FilterRel):
            raise TypeError(f"expected FilterRel, got {type(other).__name__}")
        if other.n != self.n:
            raise DimensionError(f"carrier mismatch: {self.n} vs {other.n}")

    def complement(self) -> "FilterRel":
        return FilterRel(self.n, bits.full(self.size * self.size) & ~self.bits)

    def union(self, other: "FilterRel") -> "FilterRel":
        self._same(other)
        return FilterRel(self.n, self.bits | other.bits)

    def intersection(self, other: "FilterRel") -> "FilterRel":
        self._same(other)
        return FilterRel(self.n, self.bits & other.bits)

    def issubset(self, other: "FilterRel") -> bool:
        self._same(other)
        return self.bits & ~other.bits == 0

    def inverse(self) -> "FilterRel":
        return FilterRel(self.n, transpose(self.bits, self.size))

    def compose(self, other: "FilterRel") -> "FilterRel":
        """``self o other``: ``other`` first."""
        self._same(other)
        return FilterRel(self.n, compose_cells(self.bits, other.bits, self.size))

    def first_difference(self, other: "FilterRel") -> tuple[FilterGen, FilterGen] | None:
        diff = self.bits ^ other.bits
        if not diff:
            return None
        i, j = divmod((diff & -diff).bit_length() - 1, self.size)
        return self.index[i], self.index[j]

    @classmethod
    def universal(cls, n: int) -> "FilterRel":
        m = (1 << n) - 1
        return cls(n, bits.full(m * m))


def filter_rel_from_pairs(n: int, pairs) -> FilterRel:
    m = (1 << n) - 1
    cells = 0
    for i, j in pairs:
        if not (0 <= i < m and 0 <= j < m):
            raise ValidationError(f"filter index pair ({i}, {j}) outside range({m})")
        cells |= 1 << (i * m + j)
    return FilterRel(n, cells)


# ------------------------------------------------------------ pair conditions


def _same_carrier(r: Rel, *fs: FilterGen) -> None:
    for f in fs:
        if f.n != r.n:
            raise DimensionError(f"filter {f} is over {f.n} points, relation over {r.n}")


@lru_cache(maxsize=None)
def _supersets(n: int, gen: int) -> tuple[int, ...]:
    return tuple(bits.supersets(gen, n))


@lru_cache(maxsize=4096)
def _tables(n: int, cells: int) -> tuple[tuple[int, ...], ...]:
    """Image, preimage, and the two 'related to all of S' tables of a relation."""
    rows = rows_of(cells, n)
    cols = rows_of(transpose(cells, n), n)
    size = 1 << n
    img = [0] * size
    pre = [0] * size
    for a in range(1, size):
        low = a & -a
        x = low.bit_length() - 1
        img[a] = img[a ^ low] | rows[x]
        pre[a] = pre[a ^ low] | cols[x]
    to_all = tuple(sum(1 << x for x in range(n) if s & ~rows[x] == 0) for s in range(size))
    from_all = tuple(sum(1 << y for y in range(n) if s & ~cols[y] == 0) for s in range(size))
    return tuple(img), tuple(pre), to_all, from_all


def condition(r: Rel, u: FilterGen, v: FilterGen, which: str) -> bool:
    """Evaluate one of the seven conditions with ``S in u`` read as ``gen u <= S``."""
    _same_carrier(r, u, v)
    n = r.n
    gu, gv = u.gen, v.gen
    if which == "c0":
        # {x} in u forces gen u = {x}
        return any(
            (1 << x) & ~gu == 0 and (1 << y) & ~gv == 0 and r.bits >> (x * n + y) & 1
            for x in range(n) for y in range(n)
        )
    img, pre, to_all, from_all = _tables(n, r.bits)
    if which == "ci":
        return all(gu & ~pre[s] == 0 for s in _supersets(n, gv))
    if which == "cii":
        return all(gv & ~img[s] == 0 for s in _supersets(n, gu))
    if which == "ciii":
        return any(gu & ~to_all[s] == 0 for s in _supersets(n, gv))
    if which == "civ":
        return any(gv & ~from_all[s] == 0 for s in _supersets(n, gu))
    rows, cols = r.rows, r.cols
    if which == "cv":
        return gu & ~sum(1 << x for x in range(n) if gv & ~rows[x] == 0) == 0
    if which == "cvi":
        return gv & ~sum(1 << y for y in range(n) if gu & ~cols[y] == 0) == 0
    raise ValueError(f"unknown condition {which!r}; expected one of {CONDITIONS}")


@lru_cache(maxsize=None)
def _superset_families(n: int) -> tuple[int, ...]:
    # entry g: the family of all supersets of g, as a bitmask indexed by subsets
    return tuple(sum(1 << s for s in bits.supersets(g, n)) for g in range(1 << n))


def principal_conditions(r: Rel) -> dict[str, Rel]:
    """All seven conditions at every pair of principal ultrafilters at once.

    ``S`` ranging over the members of a principal ultrafilter at ``y`` is the
    family of supersets of ``{y}``; families of subsets are bitmasks indexed
    by the subsets themselves.
    """
    n = r.n
    return {name: Rel(n, cells) for name, cells in zip(CONDITIONS, _principal_cells(n, r.bits))}


@lru_cache(maxsize=64)
def _principal_cells(n: int, cells: int) -> tuple[int, ...]:
    size = 1 << n
    img, pre, to_all, from_all = _tables(n, cells)
    fam = _superset_families(n)
    rows = rows_of(cells, n)
    cols = rows_of(transpose(cells, n), n)

    pre_has = [0] * n       # pre_has[x]: the S whose preimage contains x
    img_has = [0] * n
    to_all_has = [0] * n
    from_all_has = [0] * n
    for s in range(size):
        bit = 1 << s
        for x in bits.members(pre[s]):
            pre_has[x] |= bit
        for y in bits.members(img[s]):
            img_has[y] |= bit
        for x in bits.members(to_all[s]):
            to_all_has[x] |= bit
        for y in bits.members(from_all[s]):
            from_all_has[y] |= bit
    row_in = [sum(1 << x for x in range(n) if rows[x] >> y & 1) for y in range(n)]
    col_in = [sum(1 << y for y in range(n) if cols[y] >> x & 1) for x in range(n)]

    out = dict.fromkeys(CONDITIONS, 0)
    for x in range(n):
        ux = fam[1 << x]
        for y in range(n):
            vy = fam[1 << y]
            bit = 1 << (x * n + y)
            if cells & bit:
                out["c0"] |= bit
            if vy & ~pre_has[x] == 0:
                out["ci"] |= bit
            if ux & ~img_has[y] == 0:
                out["cii"] |= bit
            if vy & to_all_has[x]:
                out["ciii"] |= bit
            if ux & from_all_has[y]:
                out["civ"] |= bit
            if row_in[y] >> x & 1:
                out["cv"] |= bit
            if col_in[x] >> y & 1:
                out["cvi"] |= bit
    return tuple(out[name] for name in CONDITIONS)


def _principal_eval(r: Rel, which: str) -> Rel:
    return Rel(r.n, _principal_cells(r.n, r.bits)[CONDITIONS.index(which)])


def star_ultra(r: Rel) -> Rel:
    return _principal_eval(r, "ci")


def tilde_ultra(r: Rel) -> Rel:
    return _principal_eval(r, "cv")


# ------------------------------------------------------------- filter level


@lru_cache(maxsize=None)
def _meeting(n: int) -> tuple[int, ...]:
    # entry a: filter indices whose generator meets a
    fs = _filters(n)
    return tuple(sum(1 << j for j, f in enumerate(fs) if f.gen & a) for a in range(1 << n))


@lru_cache(maxsize=None)
def _inside(n: int) -> tuple[int, ...]:
    # entry a: filter indices whose generator lies inside a
    fs = _filters(n)
    return tuple(sum(1 << j for j, f in enumerate(fs) if f.gen & ~a == 0) for a in range(1 << n))


@lru_cache(maxsize=1 << 17)
def _star_bits(n: int, cells: int) -> int:
    meeting = _meeting(n)
    rows = rows_of(cells, n)
    out = []
    for f in _filters(n):
        img = 0
        for x in bits.members(f.gen):
            img |= rows[x]
        out.append(meeting[img])
    return from_rows(out, (1 << n) - 1)


@lru_cache(maxsize=1 << 17)
def _tilde_bits(n: int, cells: int) -> int:
    inside = _inside(n)
    rows = rows_of(cells, n)
    out = []
    for f in _filters(n):
        common = bits.full(n)
        for x in bits.members(f.gen):
            common &= rows[x]
        out.append(inside[common])
    return from_rows(out, (1 << n) - 1)


def star_filter(r: Rel) -> FilterRel:
    """``(C, D)`` iff ``gen D`` meets the image of ``gen C``."""
    return FilterRel(r.n, _star_bits(r.n, r.bits))


def tilde_filter(r: Rel) -> FilterRel:
    """``(C, D)`` iff ``gen C x gen D`` is contained in ``r``."""
    return FilterRel(r.n, _tilde_bits(r.n, r.bits))


def is_centered(family: Sequence[int]) -> bool:
    """Every nonempty subfamily has nonempty intersection."""
    k = len(family)
    meets = [0] * (1 << k)
    meets[0] = -1
    for sub in range(1, 1 << k):
        low = sub & -sub
        meets[sub] = meets[sub ^ low] & family[low.bit_length() - 1]
        if meets[sub] == 0:
            return False
    return True


def star_entry_literal(r: Rel, c: FilterGen, d: FilterGen) -> bool:
    """For every ``A`` in ``c``, the members of ``d`` together with ``r[A]`` are centered."""
    _same_carrier(r, c, d)
    d_members = d.members()
    return all(is_centered(d_members + [r.image(a)]) for a in bits.supersets(c.gen, r.n))


def star_filter_literal(r: Rel) -> FilterRel:
    fs = _filters(r.n)
    return filter_rel_from_pairs(
        r.n,
        [(i, j) for i, c in enumerate(fs) for j, d in enumerate(fs) if star_entry_literal(r, c, d)],
    )


def tilde_entry_literal(r: Rel, c: FilterGen, d: FilterGen) -> bool:
    _same_carrier(r, c, d)
    good = sum(1 << x for x in range(r.n) if d.gen & ~r.image(1 << x) == 0)
    return c.gen & ~good == 0


def rectangle_check(r: Rel, c: FilterGen, d: FilterGen) -> bool:
    """``r`` meets ``A x B`` for every ``A`` in ``c`` and ``B`` in ``d``."""
    _same_carrier(r, c, d)
    n = r.n
    for a in bits.supersets(c.gen, n):
        for b in bits.supersets(d.gen, n):
            if not any(r.rows[x] & b for x in bits.members(a)):
                return False
    return True


def filter_reduction_check(r: Rel, c: FilterGen, d: FilterGen) -> bool:
    """Some ultrafilter above ``c`` and some above ``d`` are star-related."""
    _same_carrier(r, c, d)
    n = r.n
    return any(
        condition(r, principal(n, x), principal(n, y), "ci")
        for x in bits.members(ultra_set(c))
        for y in bits.members(ultra_set(d))
    )


# ------------------------------------------------------------- projections


def filter_projections(w_gen: int, n: int) -> tuple[FilterGen, FilterGen]:
    """Filters generated by the two projections of a set of pairs (``x * n + y``)."""
    check_carrier(n)
    if not isinstance(w_gen, int) or w_gen <= 0 or w_gen >> (n * n):
        raise ValidationError(f"pair set must be a nonempty subset of the {n}x{n} carrier")
    rows = rows_of(w_gen, n)
    first = sum(1 << x for x, row in enumerate(rows) if row)
    second = 0
    for row in rows:
        second |= row
    return FilterGen(n, first), FilterGen(n, second)


def projection_witness(r: Rel, c: FilterGen, d: FilterGen) -> int | None:
    """A nonempty ``W`` inside ``r`` whose projections generate ``c`` and ``d``.

    The largest candidate is ``r`` cut down to ``gen c x gen d``; any smaller
    one has smaller projections, so it is enough to test that one.
    """
    _same_carrier(r, c, d)
    box = 0
    for x in bits.members(c.gen):
        box |= d.gen << (x * r.n)
    w = r.bits & box
    if w and filter_projections(w, r.n) == (c, d):
        return w
    return None


def projection_principal(r: Rel) -> bool:
    """Star at principal pairs is witnessed by pairs of ``r`` with matching projections."""
    n = r.n
    star = star_ultra(r)
    for x in range(n):
        for y in range(n):
            witnessed = any(
                filter_projections(1 << p, n) == (principal(n, x), principal(n, y))
                for p in bits.members(r.bits)
            )
            if witnessed != ((x, y) in star):
                return False
    return True


# ------------------------------------------------------- multi-valued maps


@dataclass(frozen=True)
class MultiMap:
    """Assigns to each domain point a nonempty closed subset of the codomain."""

    domain: Topology
    codomain: Topology
    assignment: tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != self.domain.n:
            raise DimensionError(f"assignment has {len(self.assignment)} values for {self.domain.n} points")
        for x, v in enumerate(self.assignment):
            if v == 0 or not self.codomain.is_closed(v):
                raise ValidationError(f"value at {x} must be a nonempty closed set, got {bits.fmt(v)}")


def r_bullet(r: Rel, t: Topology) -> MultiMap:
    """``x`` goes to the closure of its row; the domain is discrete."""
    if t.n != r.n:
        raise DimensionError(f"topology on {t.n} points, relation on {r.n}")
    if not r.is_total():
        empty = [x for x in range(r.n) if not r.rows[x]]
        raise PreconditionError(f"relation is not total: empty rows at {empty}")
    return MultiMap(discrete(r.n), t, tuple(t.closure(row) for row in r.rows))


def multimap_cells(f: MultiMap) -> int:
    """The graph ``{(x, v) : v in F(x)}`` packed as ``x * m + v``."""
    m = f.codomain.n
    cells = 0
    for x, v in enumerate(f.assignment):
        cells |= v << (x * m)
    return cells


def star_as_map(r: Rel, c: FilterGen) -> int:
    """Intersection of the closures of ``r[A]`` over all ``A`` in ``c``."""
    _same_carrier(r, c)
    space = discrete(r.n)
    acc = bits.full(r.n)
    for a in bits.supersets(c.gen, r.n):
        acc &= space.closure(r.image(a))
    return acc


@lru_cache(maxsize=1 << 16)
def _traces(t: Topology, support: int) -> frozenset[int]:
    return frozenset(o & support for o in t.opens)


def _map_continuous(points: Sequence[int], dom: Topology, cod: Topology) -> bool:
    # preimages only depend on the trace of an open set on the image
    image = 0
    for p in points:
        image |= 1 << p
    for o in _traces(cod, image):
        pre = 0
        for x, p in enumerate(points):
            if o >> p & 1:
                pre |= 1 << x
        if pre not in dom.open_set:
            return False
    return True


def _preimage(f: MultiMap, test) -> int:
    return sum(1 << x for x, v in enumerate(f.assignment) if test(v))


def semicontinuity_report(f: MultiMap) -> dict[str, bool]:
    dom, cod = f.domain, f.codomain
    lower = all(_preimage(f, lambda v, o=o: v & o) in dom.open_set for o in cod.opens)
    upper = all(_preimage(f, lambda v, o=o: v & ~o == 0) in dom.open_set for o in cod.opens)
    lower_closed = all(_preimage(f, lambda v, c=c: v & ~c == 0) in dom.closed_set for c in cod.closed_sets)
    upper_closed = all(_preimage(f, lambda v, c=c: v & c) in dom.closed_set for c in cod.closed_sets)
    h = hyperspace(cod)
    points = [h.index[v] for v in f.assignment]
    return {
        "lower": lower,
        "upper": upper,
        "lower_closed": lower_closed,
        "upper_closed": upper_closed,
        "lower_vietoris": _map_continuous(points, dom, h.lower),
        "upper_vietoris": _map_continuous(points, dom, h.upper),
        "vietoris": _map_continuous(points, dom, h.full),
    }


def semicontinuity(f: MultiMap, which: str) -> bool:
    """Lower, upper or Vietoris continuity, cross-checked between formulations."""
    rep = semicontinuity_report(f)
    if not (rep["lower"] == rep["lower_closed"] == rep["lower_vietoris"]
            and rep["upper"] == rep["upper_closed"] == rep["upper_vietoris"]
            and rep["vietoris"] == (rep["lower"] and rep["upper"])):
        raise InvariantViolation(f"semicontinuity formulations disagree on {f}: {rep}")
    if which not in ("lower", "upper", "vietoris"):
        raise ValueError(f"which must be lower, upper or vietoris, got {which!r}")
    return rep[which]


def star_map_continuous(r: Rel) -> bool:
    """Whether ``c -> star_as_map(r, c)`` is continuous between Vietoris spaces.

    Both sides are the hyperspace of the discrete space on ``range(n)``, the
    domain read as the filter space.  ``r`` must be total so that every value
    is a point of the hyperspace.
    """
    if not r.is_total():
        raise PreconditionError("the star map only lands in nonempty sets for total relations")
    h = hyperspace(discrete(r.n))
    points = [h.index[star_as_map(r, c)] for c in _filters(r.n)]
    return is_continuous(points, h.full, h.full)


# ------------------------------------------------------------ homomorphisms


def hom_preservation_check(h: Sequence[int], r: Rel, s: Rel) -> bool:
    """The filter pushforward of ``h`` preserves both filter-level extensions."""
    if not is_homomorphism(h, r, s):
        raise PreconditionError("map is not a homomorphism of the given structures")
    idx_s = filter_index(s.n)
    push = [idx_s[pushforward(h, c, s.n).gen] for c in _filters(r.n)]
    for ext in (star_filter, tilde_filter):
        target = ext(s).rows
        for i, j in ext(r).pairs():
            if not target[push[i]] >> push[j] & 1:
                return False
    return True
