import pytest
from hypothesis import given, strategies as st

import oracles
from ultrarel import bits
from ultrarel.errors import SizeError, ValidationError
from ultrarel.rel_core import Rel
from ultrarel.topo import (
    ProductSpace,
    Topology,
    closure_by_scan,
    discrete,
    enumerate_topologies,
    family_key,
    indiscrete,
    interior_by_scan,
    is_continuous,
    make_topology,
    product,
    sierpinski,
    space_predicates,
    specialization_preorder,
    topology_from_preorder,
)


def fam(t):
    return {frozenset(bits.members(o)) for o in t.opens}


def test_generated_examples():
    assert sierpinski().opens == (0, 0b01, 0b11)
    assert make_topology(2, [[0]]) == sierpinski()
    assert make_topology(3, [[0], [1], [2]]) == discrete(3)
    assert len(discrete(3).opens) == 8
    assert make_topology(2, []).opens == (0, 0b11)


def test_out_of_range_generator():
    with pytest.raises(ValidationError):
        make_topology(2, [[0, 2]])


def test_invalid_family_rejected():
    with pytest.raises(ValidationError):
        Topology(2, (0, 0b01, 0b10))  # missing the union {0, 1}
    with pytest.raises(ValidationError):
        Topology(2, (0b01, 0b11))  # missing the empty set


def test_closure_examples():
    s = sierpinski()
    assert s.closure(0b01) == 0b11
    assert s.closure(0b10) == 0b10
    for a in range(8):
        assert discrete(3).closure(a) == a


def test_product_examples():
    assert product(discrete(2), discrete(2)).topology == discrete(4)
    assert product(indiscrete(2), indiscrete(2)).topology == indiscrete(4)
    sp = product(sierpinski(), sierpinski())
    assert sp.closure(1 << sp.pair(1, 0)) == (1 << sp.pair(1, 0)) | (1 << sp.pair(1, 1))


def test_product_size_cap():
    with pytest.raises(SizeError):
        ProductSpace(discrete(5), discrete(4))


def test_predicates():
    s = sierpinski()
    assert space_predicates(s, "T0") and not space_predicates(s, "T1")
    assert space_predicates(discrete(3), "T1")
    assert not space_predicates(indiscrete(2), "T0")
    with pytest.raises(ValueError):
        space_predicates(s, "T2")


def test_specialization_examples():
    assert specialization_preorder(discrete(2)) == Rel.identity(2)
    assert specialization_preorder(sierpinski()) == Rel.from_pairs(2, [(0, 0), (1, 1), (1, 0)])
    assert specialization_preorder(indiscrete(2)) == Rel.universal(2)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 4), (3, 29), (4, 355)])
def test_enumeration_counts(n, count):
    tops = list(enumerate_topologies(n))
    assert len(tops) == count
    assert len(set(tops)) == count
    assert [family_key(t) for t in tops] == sorted(family_key(t) for t in tops)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumeration_matches_brute_force(n):
    assert {frozenset(fam(t)) for t in enumerate_topologies(n)} == oracles.topologies(n)


def test_enumeration_cap():
    with pytest.raises(SizeError):
        list(enumerate_topologies(5))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_closure_is_kuratowski(n):
    for t in enumerate_topologies(n):
        assert t.closure(0) == 0
        for a in range(1 << n):
            ca = t.closure(a)
            assert a & ~ca == 0
            assert t.closure(ca) == ca
            assert ca == closure_by_scan(t, a)
            assert t.interior(a) == interior_by_scan(t, a)
            assert t.interior(a) == t.full & ~t.closure(t.full & ~a)
            for b in range(1 << n):
                assert t.closure(a | b) == ca | t.closure(b)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_preorder_closure_matches_oracle(n):
    for t in enumerate_topologies(n):
        p = specialization_preorder(t)
        assert topology_from_preorder(p) == t
        for a in range(1 << n):
            via_preorder = sum(1 << x for x in range(n) if any((x, y) in p for y in bits.members(a)))
            assert via_preorder == t.closure(a)
            expected = oracles.closure(range(n), fam(t), frozenset(bits.members(a)))
            assert set(bits.members(t.closure(a))) == expected


def test_t1_iff_discrete():
    for n in (1, 2, 3):
        for t in enumerate_topologies(n):
            assert t.is_t1() == t.is_discrete()


def test_product_matches_oracle():
    tops = [t for n in (1, 2) for t in enumerate_topologies(n)]
    for t1 in tops:
        for t2 in tops:
            sp = ProductSpace(t1, t2)
            got = {frozenset(sp.unpair(p) for p in bits.members(o)) for o in sp.opens}
            assert got == oracles.product_opens(fam(t1), t1.n, fam(t2), t2.n)


def test_boxes_are_open():
    for t1 in enumerate_topologies(2):
        for t2 in enumerate_topologies(2):
            sp = ProductSpace(t1, t2)
            for u in t1.opens:
                for v in t2.opens:
                    assert sp.topology.is_open(sp.box(u, v))


def test_continuity():
    assert is_continuous((0, 1), discrete(2), sierpinski())
    assert not is_continuous((0, 1), sierpinski(), discrete(2))
    assert is_continuous((1, 1), sierpinski(), discrete(2))


topologies_3 = st.sampled_from(list(enumerate_topologies(3)))


@given(topologies_3, st.integers(0, 7), st.integers(0, 7))
def test_closure_monotone(t, a, b):
    assert t.closure(a & b) & ~(t.closure(a) & t.closure(b)) == 0


@given(topologies_3)
def test_canonical_form_is_stable(t):
    assert Topology(t.n, tuple(reversed(t.opens))) == t
    assert make_topology(t.n, t.opens) == t
