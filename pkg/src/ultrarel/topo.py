"""Finite topological spaces.

A topology on ``range(n)`` is stored as its full family of open sets
(bitmasks) in canonical order.  On a finite carrier every point ``x`` has a
least open neighbourhood ``U_x``; the opens are exactly the unions of these,
and ``x in cl{y}`` iff ``y in U_x``.  Closure and interior are computed from
the neighbourhoods, while :func:`closure_by_scan` intersects closed supersets
directly and serves as the reference evaluator.

Product spaces encode the pair ``(x, y)`` as point ``x * n2 + y``, the same
row-major layout that :class:`ultrarel.rel_core.Rel` uses for its matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from . import bits
from .errors import SizeError, ValidationError
from .rel_core import Rel, check_carrier

# Largest point count of any materialised space (products, hyperspaces).
MAX_SPACE_POINTS = 16
MAX_ENUM_N = 4


def _unions(n: int, nbhds: Sequence[int]) -> frozenset[int]:
    opens = {0}
    for u in nbhds:
        opens |= {o | u for o in opens}
    return frozenset(opens)


def _least_neighbourhoods(n: int, family: Iterable[int]) -> tuple[int, ...]:
    nb = [bits.full(n)] * n
    for o in family:
        for x in bits.members(o):
            nb[x] &= o
    return tuple(nb)


@dataclass(frozen=True)
class Topology:
    """A topology on ``range(n)``.

    ``opens`` is canonicalised on construction (deduplicated, sorted by
    :func:`ultrarel.bits.subset_key`) and validated: it must contain the
    empty set and the carrier and be closed under unions and intersections.
    """

    n: int
    opens: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValidationError(f"carrier size must be a positive integer, got {self.n!r}")
        if self.n > MAX_SPACE_POINTS:
            raise SizeError(f"space with {self.n} points exceeds the limit {MAX_SPACE_POINTS}")
        family = frozenset(self.opens)
        top = bits.full(self.n)
        for o in family:
            if not isinstance(o, int) or o < 0 or o & ~top:
                raise ValidationError(f"open set {o!r} is not a subset of range({self.n})")
        if 0 not in family or top not in family:
            raise ValidationError("a topology must contain the empty set and the whole carrier")
        nb = _least_neighbourhoods(self.n, family)
        if any(u not in family for u in nb) or _unions(self.n, nb) != family:
            raise ValidationError("family is not closed under unions and intersections")
        object.__setattr__(self, "opens", tuple(sorted(family, key=bits.subset_key)))
        object.__setattr__(self, "_nbhds", nb)

    @classmethod
    def from_neighbourhoods(cls, n: int, nbhds: Sequence[int]) -> "Topology":
        return cls(n, tuple(_unions(n, nbhds)))

    def __repr__(self) -> str:
        return f"Topology(n={self.n}, opens={[bits.fmt(o) for o in self.opens]})"

    @property
    def full(self) -> int:
        return bits.full(self.n)

    @property
    def neighbourhoods(self) -> tuple[int, ...]:
        """Least open neighbourhood of every point."""
        return self._nbhds

    @cached_property
    def open_set(self) -> frozenset[int]:
        return frozenset(self.opens)

    @cached_property
    def closed_sets(self) -> tuple[int, ...]:
        top = self.full
        return tuple(sorted((top & ~o for o in self.opens), key=bits.subset_key))

    @cached_property
    def closed_set(self) -> frozenset[int]:
        return frozenset(self.closed_sets)

    @cached_property
    def point_closures(self) -> tuple[int, ...]:
        """``point_closures[y]`` is ``cl{y}``."""
        return tuple(
            sum(1 << x for x in range(self.n) if self._nbhds[x] >> y & 1) for y in range(self.n)
        )

    def is_open(self, a: int) -> bool:
        return a in self.open_set

    def is_closed(self, a: int) -> bool:
        return a in self.closed_set

    def closure(self, a: int) -> int:
        pc = self.point_closures
        acc = 0
        for y in bits.members(a):
            acc |= pc[y]
        return acc

    def interior(self, a: int) -> int:
        return sum(1 << x for x in range(self.n) if self._nbhds[x] & ~a == 0)

    def is_discrete(self) -> bool:
        return all(u == 1 << x for x, u in enumerate(self._nbhds))

    def is_t0(self) -> bool:
        pc = self.point_closures
        return len(set(pc)) == self.n

    def is_t1(self) -> bool:
        return all(self.is_closed(1 << x) for x in range(self.n))


def closure_by_scan(t: Topology, a: int) -> int:
    """Smallest closed superset of ``a``, found by scanning all closed sets."""
    acc = t.full
    for c in t.closed_sets:
        if a & ~c == 0:
            acc &= c
    return acc


def interior_by_scan(t: Topology, a: int) -> int:
    acc = 0
    for o in t.opens:
        if o & ~a == 0:
            acc |= o
    return acc


def make_topology(n: int, generators: Iterable[Iterable[int] | int]) -> Topology:
    """Smallest topology on ``range(n)`` containing every generator.

    Generators are subsets given either as bitmasks or as element lists.
    """
    check_carrier(n)
    family = []
    for g in generators:
        m = g if isinstance(g, int) else _checked_mask(n, g)
        if m < 0 or m & ~bits.full(n):
            raise ValidationError(f"generator {bits.fmt(m) if m >= 0 else m} is not a subset of range({n})")
        family.append(m)
    return Topology.from_neighbourhoods(n, _least_neighbourhoods(n, family))


def _checked_mask(n: int, elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        if not isinstance(e, int) or not 0 <= e < n:
            raise ValidationError(f"element {e!r} outside range({n})")
        m |= 1 << e
    return m


def discrete(n: int) -> Topology:
    return make_topology(n, [1 << x for x in range(n)])


def indiscrete(n: int) -> Topology:
    return make_topology(n, [])


def sierpinski() -> Topology:
    """Two points; ``{0}`` is open and ``{1}`` is closed."""
    return make_topology(2, [0b01])


def space_predicates(t: Topology, which: str) -> bool:
    if which == "T0":
        return t.is_t0()
    if which == "T1":
        return t.is_t1()
    if which == "discrete":
        return t.is_discrete()
    raise ValueError(f"unknown predicate {which!r}")


def specialization_preorder(t: Topology) -> Rel:
    """``(x, y)`` is in the result iff ``x in cl{y}``."""
    return Rel.from_pairs(
        t.n, [(x, y) for y, c in enumerate(t.point_closures) for x in bits.members(c)]
    )


def topology_from_preorder(p: Rel) -> Topology:
    """Inverse of :func:`specialization_preorder` on reflexive transitive relations."""
    if not p.reflexive_closure().issubset(p) or p.transitive_closure() != p:
        raise ValidationError("relation is not a preorder")
    return Topology.from_neighbourhoods(p.n, p.rows)


def family_key(t: Topology) -> tuple:
    return tuple(bits.subset_key(o) for o in t.opens)


@lru_cache(maxsize=None)
def _topologies(n: int) -> tuple[Topology, ...]:
    off = [(x, y) for x in range(n) for y in range(n) if x != y]
    diag = sum(1 << (x * n + x) for x in range(n))
    found = []
    for choice in range(1 << len(off)):
        cells = diag
        for i, (x, y) in enumerate(off):
            if choice >> i & 1:
                cells |= 1 << (x * n + y)
        p = Rel(n, cells)
        if p.transitive_closure() == p:
            found.append(Topology.from_neighbourhoods(n, p.rows))
    return tuple(sorted(found, key=family_key))


def enumerate_topologies(n: int) -> Iterator[Topology]:
    """Every topology on ``range(n)`` once, in canonical family order.

    Finite topologies correspond one-to-one with preorders, so the
    enumeration runs over reflexive transitive relations.
    """
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"carrier size must be a positive integer, got {n!r}")
    if n > MAX_ENUM_N:
        raise SizeError(f"topology enumeration is limited to n <= {MAX_ENUM_N}, got {n}")
    yield from _topologies(n)


def is_continuous(f: Sequence[int], dom: Topology, cod: Topology) -> bool:
    """Preimage of every open set of ``cod`` is open in ``dom``."""
    for o in cod.opens:
        pre = 0
        for x, fx in enumerate(f):
            if o >> fx & 1:
                pre |= 1 << x
        if pre not in dom.open_set:
            return False
    return True


@dataclass(frozen=True)
class ProductSpace:
    """``left x right`` with the product topology generated by open boxes."""

    left: Topology
    right: Topology

    def __post_init__(self):
        size = self.left.n * self.right.n
        if size > MAX_SPACE_POINTS:
            raise SizeError(
                f"product of {self.left.n} and {self.right.n} points has {size} points, "
                f"limit is {MAX_SPACE_POINTS}"
            )

    @property
    def n1(self) -> int:
        return self.left.n

    @property
    def n2(self) -> int:
        return self.right.n

    @property
    def size(self) -> int:
        return self.left.n * self.right.n

    def pair(self, x: int, y: int) -> int:
        return x * self.n2 + y

    def unpair(self, p: int) -> tuple[int, int]:
        return divmod(p, self.n2)

    def box(self, a: int, b: int) -> int:
        out = 0
        for x in bits.members(a):
            out |= b << (x * self.n2)
        return out

    @cached_property
    def topology(self) -> Topology:
        l_nb, r_nb = self.left.neighbourhoods, self.right.neighbourhoods
        nbhds = [self.box(l_nb[x], r_nb[y]) for x in range(self.n1) for y in range(self.n2)]
        return Topology.from_neighbourhoods(self.size, nbhds)

    @cached_property
    def opens(self) -> tuple[int, ...]:
        return self.topology.opens

    def swap(self) -> "ProductSpace":
        return ProductSpace(self.right, self.left)

    def transpose(self, cells: int) -> int:
        """Map a subset of ``X x Y`` to its inverse in ``Y x X``."""
        out = 0
        n2 = self.n2
        for p in bits.members(cells):
            x, y = divmod(p, n2)
            out |= 1 << (y * self.n1 + x)
        return out

    def row_mask(self, x: int) -> int:
        return bits.full(self.n2) << (x * self.n2)

    def col_mask(self, y: int) -> int:
        return sum(1 << (x * self.n2 + y) for x in range(self.n1))

    def closure(self, cells: int) -> int:
        return self.topology.closure(cells)


def product(t1: Topology, t2: Topology) -> ProductSpace:
    return ProductSpace(t1, t2)
