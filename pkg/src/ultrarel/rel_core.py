"""Binary relations on a finite carrier ``range(n)``.

A relation is an ``n x n`` boolean matrix packed row-major into one int:
the pair ``(x, y)`` is bit ``x * n + y``.  Product spaces in
:mod:`ultrarel.topo` use the same encoding for their pair carrier, so a
relation on ``n`` points and a subset of the product of two ``n``-point
spaces are literally the same integer.

Composition follows the convention ``(x, z) in r.compose(s)`` iff there is
``y`` with ``(x, y) in s`` and ``(y, z) in r``: ``s`` is applied first, so
``image(compose(r, s), a) == image(r, image(s, a))``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from . import bits
from .errors import DimensionError, PreconditionError, SizeError, ValidationError

HARD_CEILING = 6


def max_n() -> int:
    """Carrier cap; ``ULTRAREL_MAX_N`` may lower it, never above 6."""
    raw = os.environ.get("ULTRAREL_MAX_N")
    if raw is None or raw == "":
        return HARD_CEILING
    try:
        value = int(raw)
    except ValueError:
        raise SizeError(f"ULTRAREL_MAX_N must be an integer, got {raw!r}") from None
    if value < 1:
        raise SizeError(f"ULTRAREL_MAX_N must be at least 1, got {value}")
    return min(value, HARD_CEILING)


def check_carrier(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"carrier size must be a positive integer, got {n!r}")
    cap = max_n()
    if n > cap:
        raise SizeError(f"carrier size {n} exceeds the cap {cap} (ULTRAREL_MAX_N, ceiling {HARD_CEILING})")


# Square boolean matrices of any size.  Rel and the filter-level relations in
# ultrarel.extensions share these helpers.

def row_of(cells: int, size: int, x: int) -> int:
    return (cells >> (x * size)) & ((1 << size) - 1)


def rows_of(cells: int, size: int) -> tuple[int, ...]:
    rowmask = (1 << size) - 1
    return tuple((cells >> (x * size)) & rowmask for x in range(size))


def from_rows(rows: Sequence[int], size: int) -> int:
    cells = 0
    for x, row in enumerate(rows):
        cells |= row << (x * size)
    return cells


def transpose(cells: int, size: int) -> int:
    out = 0
    for x, row in enumerate(rows_of(cells, size)):
        for y in bits.members(row):
            out |= 1 << (y * size + x)
    return out


def compose_cells(r: int, s: int, size: int) -> int:
    """Cells of ``r o s`` (``s`` first)."""
    r_rows = rows_of(r, size)
    out = []
    for s_row in rows_of(s, size):
        acc = 0
        for y in bits.members(s_row):
            acc |= r_rows[y]
        out.append(acc)
    return from_rows(out, size)


def image_of(cells: int, size: int, a: int) -> int:
    acc = 0
    rows = rows_of(cells, size)
    for x in bits.members(a):
        acc |= rows[x]
    return acc


@dataclass(frozen=True)
class Rel:
    """A binary relation on ``range(n)``; ``bits`` is the packed matrix."""

    n: int
    bits: int = 0

    def __post_init__(self):
        check_carrier(self.n)
        if not isinstance(self.bits, int) or self.bits < 0 or self.bits >> (self.n * self.n):
            raise ValidationError(f"matrix bits {self.bits!r} do not fit a {self.n}x{self.n} matrix")

    # constructors

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Rel":
        check_carrier(n)
        cells = 0
        for x, y in pairs:
            if not (0 <= x < n and 0 <= y < n):
                raise ValidationError(f"pair ({x}, {y}) outside carrier range({n})")
            cells |= 1 << (x * n + y)
        return cls(n, cells)

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[bool]]) -> "Rel":
        n = len(matrix)
        if any(len(row) != n for row in matrix):
            raise DimensionError("matrix is not square")
        return cls.from_pairs(n, [(x, y) for x in range(n) for y in range(n) if matrix[x][y]])

    @classmethod
    def from_rows(cls, n: int, rows: Sequence[int]) -> "Rel":
        if len(rows) != n:
            raise DimensionError(f"expected {n} rows, got {len(rows)}")
        return cls(n, from_rows(rows, n))

    @classmethod
    def empty(cls, n: int) -> "Rel":
        return cls(n, 0)

    @classmethod
    def universal(cls, n: int) -> "Rel":
        return cls(n, (1 << (n * n)) - 1)

    @classmethod
    def identity(cls, n: int) -> "Rel":
        return cls.from_pairs(n, [(x, x) for x in range(n)])

    # views

    @cached_property
    def rows(self) -> tuple[int, ...]:
        """Row ``x`` is the image of ``{x}`` as a subset mask."""
        return rows_of(self.bits, self.n)

    @cached_property
    def cols(self) -> tuple[int, ...]:
        """Column ``y`` is the preimage of ``{y}`` as a subset mask."""
        return rows_of(transpose(self.bits, self.n), self.n)

    @property
    def matrix(self) -> list[list[bool]]:
        return [[bool(row >> y & 1) for y in range(self.n)] for row in self.rows]

    def pairs(self) -> list[tuple[int, int]]:
        return [(x, y) for x, row in enumerate(self.rows) for y in bits.members(row)]

    def __contains__(self, pair) -> bool:
        x, y = pair
        return bool(self.bits >> (x * self.n + y) & 1)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs())

    def __repr__(self) -> str:
        return f"Rel(n={self.n}, pairs={self.pairs()})"

    def _same(self, other: "Rel") -> None:
        if not isinstance(other, Rel):
            raise TypeError(f"expected Rel, got {type(other).__name__}")
        if other.n != self.n:
            raise DimensionError(f"carrier mismatch: {self.n} vs {other.n}")

    # algebra

    def complement(self) -> "Rel":
        return Rel(self.n, ((1 << (self.n * self.n)) - 1) & ~self.bits)

    def union(self, other: "Rel") -> "Rel":
        self._same(other)
        return Rel(self.n, self.bits | other.bits)

    def intersection(self, other: "Rel") -> "Rel":
        self._same(other)
        return Rel(self.n, self.bits & other.bits)

    def issubset(self, other: "Rel") -> bool:
        self._same(other)
        return self.bits & ~other.bits == 0

    def inverse(self) -> "Rel":
        return Rel(self.n, transpose(self.bits, self.n))

    def compose(self, other: "Rel") -> "Rel":
        """``self o other``: apply ``other`` first, then ``self``."""
        self._same(other)
        return Rel(self.n, compose_cells(self.bits, other.bits, self.n))

    def image(self, a: int) -> int:
        return image_of(self.bits, self.n, a)

    def preimage(self, a: int) -> int:
        acc = 0
        for y in bits.members(a):
            acc |= self.cols[y]
        return acc

    def section(self, index: int, side: str) -> "Rel":
        if not 0 <= index < self.n:
            raise ValidationError(f"section index {index} outside range({self.n})")
        if side == "left":
            return Rel(self.n, self.bits & (bits.full(self.n) << (index * self.n)))
        if side == "right":
            column = sum(1 << (x * self.n + index) for x in range(self.n))
            return Rel(self.n, self.bits & column)
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    def transitive_closure(self) -> "Rel":
        # Warshall on packed rows.
        rows = list(self.rows)
        for k in range(self.n):
            kbit = 1 << k
            for x in range(self.n):
                if rows[x] & kbit:
                    rows[x] |= rows[k]
        return Rel.from_rows(self.n, rows)

    def reflexive_closure(self) -> "Rel":
        return self.union(Rel.identity(self.n))

    def is_total(self) -> bool:
        return all(self.rows)

    def is_functional(self) -> bool:
        return all(bits.popcount(row) == 1 for row in self.rows)


def all_rels(n: int) -> Iterator[Rel]:
    """Every relation on ``range(n)``, ordered by packed matrix value."""
    check_carrier(n)
    for cells in range(1 << (n * n)):
        yield Rel(n, cells)


# Operation surface with the names used throughout the documentation.

def boolean_ops(a: Rel, b: Rel | None, which: str) -> Rel:
    if which == "complement":
        return a.complement()
    if b is None:
        raise PreconditionError(f"{which} needs two operands")
    if which == "union":
        return a.union(b)
    if which == "intersection":
        return a.intersection(b)
    raise ValueError(f"unknown boolean operation {which!r}")


def inverse(r: Rel) -> Rel:
    return r.inverse()


def compose(r: Rel, s: Rel) -> Rel:
    return r.compose(s)


def image(r: Rel, a: int) -> int:
    return r.image(a)


def sections(r: Rel, index: int, side: str) -> Rel:
    return r.section(index, side)


def closures(r: Rel, which: str) -> Rel:
    if which == "transitive":
        return r.transitive_closure()
    if which == "reflexive":
        return r.reflexive_closure()
    raise ValueError(f"unknown closure {which!r}")


def is_homomorphism(h: Sequence[int], r: Rel, s: Rel) -> bool:
    """True iff ``(x, y) in r`` implies ``(h[x], h[y]) in s``."""
    if len(h) != r.n:
        raise PreconditionError(f"map has {len(h)} entries, carrier has {r.n}")
    if any(not 0 <= hx < s.n for hx in h):
        raise PreconditionError(f"map values must lie in range({s.n})")
    return all((h[x], h[y]) in s for x, y in r.pairs())
