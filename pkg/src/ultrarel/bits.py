"""Subsets of a finite carrier packed into Python ints.

Element ``i`` of the carrier ``range(n)`` is bit ``1 << i``.  Every module
of the package passes subsets around in this form.
"""

from __future__ import annotations

from typing import Iterable, Iterator


def full(n: int) -> int:
    return (1 << n) - 1


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


_BYTE_MEMBERS = tuple(tuple(i for i in range(8) if m >> i & 1) for m in range(256))


def members(mask: int) -> tuple[int, ...]:
    """Elements of ``mask`` in increasing order."""
    if mask < 256:
        return _BYTE_MEMBERS[mask]
    out: list[int] = []
    base = 0
    while mask:
        chunk = mask & 255
        if chunk:
            out.extend(base + i for i in _BYTE_MEMBERS[chunk])
        mask >>= 8
        base += 8
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def submasks(mask: int) -> Iterator[int]:
    """All subsets of ``mask``, ascending as integers, empty set first."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def supersets(base: int, n: int) -> Iterator[int]:
    """All subsets of ``range(n)`` containing ``base``."""
    rest = full(n) & ~base
    for extra in submasks(rest):
        yield base | extra


def subset_key(mask: int) -> tuple:
    """Canonical order on subsets: by size, then lexicographically."""
    return (popcount(mask), members(mask))


def canonical_subsets(n: int, *, nonempty: bool = False) -> list[int]:
    start = 1 if nonempty else 0
    return sorted(range(start, 1 << n), key=subset_key)


def fmt(mask: int) -> str:
    return "{" + ",".join(map(str, members(mask))) + "}"
