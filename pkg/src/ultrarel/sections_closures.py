"""Left and right closures of relations in a product space.

For ``R`` a subset of ``X x Y`` the left section at ``x`` is ``R`` cut down to
the row ``{x} x Y`` and the right section at ``y`` is the column ``X x {y}``.
``lcl R`` is the union of the product-space closures of all left sections,
``rcl R`` the same for right sections.  Sections of points outside the
domain (range) are empty and contribute nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from . import bits
from .errors import DimensionError, SizeError, ValidationError
from .rel_core import Rel
from .topo import ProductSpace, Topology, enumerate_topologies


@dataclass(frozen=True)
class ProductRel:
    """A subset of the pair carrier of ``space``, packed as ``x * n2 + y``."""

    space: ProductSpace
    cells: int = 0

    def __post_init__(self):
        if not isinstance(self.cells, int) or self.cells < 0 or self.cells >> self.space.size:
            raise ValidationError(f"cells {self.cells!r} do not fit {self.space.n1}x{self.space.n2}")

    @classmethod
    def from_rel(cls, space: ProductSpace, r: Rel) -> "ProductRel":
        if space.n1 != r.n or space.n2 != r.n:
            raise DimensionError(f"relation on {r.n} points does not fit {space.n1}x{space.n2}")
        return cls(space, r.bits)

    @classmethod
    def from_pairs(cls, space: ProductSpace, pairs) -> "ProductRel":
        cells = 0
        for x, y in pairs:
            if not (0 <= x < space.n1 and 0 <= y < space.n2):
                raise ValidationError(f"pair ({x}, {y}) outside {space.n1}x{space.n2}")
            cells |= 1 << space.pair(x, y)
        return cls(space, cells)

    def to_rel(self) -> Rel:
        if self.space.n1 != self.space.n2:
            raise DimensionError("only square product relations convert to Rel")
        return Rel(self.space.n1, self.cells)

    def pairs(self) -> list[tuple[int, int]]:
        return [self.space.unpair(p) for p in bits.members(self.cells)]

    def __repr__(self) -> str:
        return f"ProductRel({self.space.n1}x{self.space.n2}, pairs={self.pairs()})"

    def _same(self, other: "ProductRel") -> None:
        if other.space != self.space:
            raise DimensionError("product relations live in different spaces")

    def union(self, other: "ProductRel") -> "ProductRel":
        self._same(other)
        return ProductRel(self.space, self.cells | other.cells)

    def intersection(self, other: "ProductRel") -> "ProductRel":
        self._same(other)
        return ProductRel(self.space, self.cells & other.cells)

    def complement(self) -> "ProductRel":
        return ProductRel(self.space, bits.full(self.space.size) & ~self.cells)

    def inverse(self) -> "ProductRel":
        """The transposed relation, living in the swapped product."""
        return ProductRel(self.space.swap(), self.space.transpose(self.cells))

    def closure(self) -> "ProductRel":
        return ProductRel(self.space, self.space.closure(self.cells))

    def interior(self) -> "ProductRel":
        return ProductRel(self.space, self.space.topology.interior(self.cells))

    def left_section(self, x: int) -> int:
        return self.cells & self.space.row_mask(x)

    def right_section(self, y: int) -> int:
        return self.cells & self.space.col_mask(y)


def lcl(pr: ProductRel) -> ProductRel:
    sp = pr.space
    acc = 0
    for x in range(sp.n1):
        acc |= sp.closure(pr.left_section(x))
    return ProductRel(sp, acc)


def rcl(pr: ProductRel) -> ProductRel:
    sp = pr.space
    acc = 0
    for y in range(sp.n2):
        acc |= sp.closure(pr.right_section(y))
    return ProductRel(sp, acc)


def rcl_lcl(pr: ProductRel) -> ProductRel:
    return rcl(lcl(pr))


def lcl_rcl(pr: ProductRel) -> ProductRel:
    return lcl(rcl(pr))


def _check(ok: bool, law: str, *rels: ProductRel) -> dict | None:
    if ok:
        return None
    return {"law": law, "cells": [r.cells for r in rels]}


def lcl_rcl_laws(r: ProductRel, s: ProductRel) -> dict | None:
    """First failing law on the pair ``(r, s)``, or ``None``."""
    for op, name in ((lcl, "lcl"), (rcl, "rcl")):
        fr = op(r)
        empty = ProductRel(r.space, 0)
        bad = (
            _check(op(empty).cells == 0, f"{name} of empty is empty")
            or _check(r.cells & ~fr.cells == 0, f"{name} is extensive", r)
            or _check(op(fr) == fr, f"{name} is idempotent", r)
            or _check(fr.union(op(s)) == op(r.union(s)), f"{name} is additive", r, s)
        )
        if bad:
            return bad
    inv = r.inverse()
    return (
        _check(lcl(inv).inverse() == rcl(r), "inverse of lcl of inverse is rcl", r)
        or _check(rcl(inv).inverse() == lcl(r), "inverse of rcl of inverse is lcl", r)
    )


def lcl_rcl_laws_check(space: ProductSpace, max_exhaustive: int = 9, samples: int = 10000,
                       seed: int = 0) -> dict:
    """Run the closure-operator laws over relations on ``space``.

    With at most ``max_exhaustive`` cells every relation ``R`` is checked; the
    second operand ``S`` of the union law then ranges over all relations too
    when the space has at most 6 cells, and over one seeded random partner per
    ``R`` otherwise.  Larger spaces get ``samples`` random ``(R, S)`` draws.
    """
    import random

    size = space.size
    rng = random.Random(seed)
    if size <= 6:
        pool = ((a, b) for a in range(1 << size) for b in range(1 << size))
        mode = "exhaustive"
    elif size <= max_exhaustive:
        pool = ((a, rng.getrandbits(size)) for a in range(1 << size))
        mode = "exhaustive-in-R"
    else:
        pool = ((rng.getrandbits(size), rng.getrandbits(size)) for _ in range(samples))
        mode = "sampled"
    checked = 0
    for a, b in pool:
        checked += 1
        bad = lcl_rcl_laws(ProductRel(space, a), ProductRel(space, b))
        if bad:
            return {"passed": False, "mode": mode, "checked": checked, "witness": bad}
    return {"passed": True, "mode": mode, "checked": checked, "witness": None}


def fixed_points(space: ProductSpace, which: str) -> list[int]:
    op = _op(which)
    return [c for c in range(1 << space.size) if op(ProductRel(space, c)).cells == c]


def _op(which: str):
    if which == "lcl":
        return lcl
    if which == "rcl":
        return rcl
    raise ValueError(f"which must be 'lcl' or 'rcl', got {which!r}")


def derived_topology(space: ProductSpace, which: str) -> Topology:
    """Topology whose closed sets are the fixed points of ``lcl`` (or ``rcl``)."""
    if space.size > 16:
        raise SizeError("derived topologies are limited to 16-cell product spaces")
    top = bits.full(space.size)
    return Topology(space.size, tuple(top & ~c for c in fixed_points(space, which)))


def refines(fine: Topology, coarse: Topology) -> bool:
    return coarse.open_set <= fine.open_set


def sidedness(pr: ProductRel, side: str, on: int, mode: str) -> bool:
    """Whether every section indexed by ``on`` is closed, open or clopen."""
    sp = pr.space
    if side == "left":
        limit, section = sp.n1, pr.left_section
    elif side == "right":
        limit, section = sp.n2, pr.right_section
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if on < 0 or on >> limit:
        raise ValidationError(f"index set {on!r} outside range({limit})")
    t = sp.topology
    for i in bits.members(on):
        sec = section(i)
        closed = t.is_closed(sec)
        opened = t.is_open(sec)
        ok = {"closed": closed, "open": opened, "clopen": closed and opened}.get(mode)
        if ok is None:
            raise ValueError(f"mode must be closed, open or clopen, got {mode!r}")
        if not ok:
            return False
    return True


def iterate_to_fixpoint(pr: ProductRel, max_steps: int = 64) -> tuple[ProductRel, int, bool]:
    """Apply ``rcl o lcl`` until nothing changes or ``max_steps`` runs out."""
    cur = pr
    for step in range(1, max_steps + 1):
        nxt = rcl_lcl(cur)
        if nxt == cur:
            return cur, step - 1, True
        cur = nxt
    return cur, max_steps, False


def nonidempotence_witness(pr: ProductRel) -> str | None:
    once = rcl_lcl(pr)
    if rcl_lcl(once) != once:
        return "rcl o lcl"
    once = lcl_rcl(pr)
    if lcl_rcl(once) != once:
        return "lcl o rcl"
    return None


def square_spaces(n_max: int, topo_limit: int | None = None) -> Iterator[ProductSpace]:
    """``t x t`` for every topology ``t`` on up to ``n_max`` points."""
    for n in range(1, n_max + 1):
        for i, t in enumerate(enumerate_topologies(n)):
            if topo_limit is not None and i >= topo_limit:
                break
            yield ProductSpace(t, t)


def idempotence_search(n_max: int, topo_limit: int | None = None, stop_at_first: bool = False) -> dict:
    """Look for relations on which ``rcl o lcl`` or ``lcl o rcl`` is not idempotent."""
    if n_max > 3:
        raise SizeError(f"idempotence search is limited to n_max <= 3, got {n_max}")
    spaces = relations = 0
    witnesses = []
    for sp in square_spaces(n_max, topo_limit):
        spaces += 1
        for cells in range(1 << sp.size):
            relations += 1
            which = nonidempotence_witness(ProductRel(sp, cells))
            if which:
                witnesses.append({"space": sp, "cells": cells, "operator": which})
                if stop_at_first:
                    return {"spaces": spaces, "relations": relations, "witnesses": witnesses}
    return {"spaces": spaces, "relations": relations, "witnesses": witnesses}
