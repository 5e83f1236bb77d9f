"""Brute-force reference implementations on plain Python sets.

Nothing here imports the package: relations are sets of pairs, subsets are
frozensets, topologies are sets of frozensets.  Everything is slow and only
meant for tiny carriers.
"""

from __future__ import annotations

from itertools import chain, combinations, product


def powerset(xs):
    xs = list(xs)
    return [frozenset(c) for c in chain.from_iterable(combinations(xs, k) for k in range(len(xs) + 1))]


def all_relations(n):
    cells = [(x, y) for x in range(n) for y in range(n)]
    return [frozenset(c) for c in powerset(cells)]


def compose(r, s):
    """s first, then r."""
    return frozenset((x, z) for (x, y) in s for (y2, z) in r if y == y2)


def inverse(r):
    return frozenset((y, x) for x, y in r)


def image(r, a):
    return frozenset(y for x, y in r if x in a)


# topologies


def generate(points, subbase):
    """Smallest family containing subbase, the empty set and everything, closed under union and meet."""
    top = frozenset(points)
    fam = {frozenset(), top} | set(subbase)
    changed = True
    while changed:
        changed = False
        for a in list(fam):
            for b in list(fam):
                for c in (a | b, a & b):
                    if c not in fam:
                        fam.add(c)
                        changed = True
    return frozenset(fam)


def topologies(n):
    """Every topology on range(n), as the family generated by up to n subsets."""
    subsets = powerset(range(n))
    found = set()
    for gens in product(subsets, repeat=n):
        found.add(generate(range(n), gens))
    return found


def closed_sets(points, opens):
    top = frozenset(points)
    return {top - o for o in opens}


def closure(points, opens, a):
    out = frozenset(points)
    for c in closed_sets(points, opens):
        if a <= c:
            out &= c
    return out


def product_opens(t1, n1, t2, n2):
    boxes = [frozenset((x, y) for x in u for y in v) for u in t1 for v in t2]
    return generate([(x, y) for x in range(n1) for y in range(n2)], boxes)


def lcl(points, opens, n1, n2, r):
    out = frozenset()
    for x in range(n1):
        out |= closure(points, opens, frozenset(p for p in r if p[0] == x))
    return out


def rcl(points, opens, n1, n2, r):
    out = frozenset()
    for y in range(n2):
        out |= closure(points, opens, frozenset(p for p in r if p[1] == y))
    return out


# filters over a finite set, as families of subsets


def filt(n, gen):
    gen = frozenset(gen)
    return frozenset(a for a in powerset(range(n)) if gen <= a)


def filters(n):
    return [filt(n, g) for g in powerset(range(n)) if g]


def centered(family):
    fam = list(family)
    for k in range(1, len(fam) + 1):
        for sub in combinations(fam, k):
            acc = frozenset.intersection(*sub)
            if not acc:
                return False
    return True


def star(r, c, d):
    """For every member A of c, d together with r[A] has the finite intersection property."""
    return all(centered(list(d) + [image(r, a)]) for a in c)


def tilde(n, r, c, d):
    """{x : {y : r(x, y)} in d} is a member of c."""
    xs = frozenset(x for x in range(n) if frozenset(y for (x2, y) in r if x2 == x) in d)
    return xs in c


# hyperspaces


def hyper_points(n, opens):
    return sorted((c for c in closed_sets(range(n), opens) if c), key=lambda c: (len(c), sorted(c)))


def hyper_topology(n, opens, which):
    pts = hyper_points(n, opens)
    minus = [frozenset(b for b in pts if b <= o) for o in opens]
    plus = [frozenset(b for b in pts if b & o) for o in opens]
    sub = {"lower": plus, "upper": minus, "full": plus + minus}[which]
    return pts, generate(pts, sub)
