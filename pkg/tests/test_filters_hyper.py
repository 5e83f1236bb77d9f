from itertools import combinations

import pytest
from hypothesis import given, strategies as st

import oracles
from ultrarel import bits
from ultrarel.errors import FormatError, InvariantViolation, SizeError, ValidationError
from ultrarel.filters_hyper import (
    FilterGen,
    all_filters,
    closure_formula,
    filter_closure_literal,
    filter_vietoris_closure,
    hatted_sets,
    hyperspace,
    meet_of_principals,
    parse_filter,
    principal,
    pushforward,
    ultra_set,
    vietoris_basic,
    vietoris_basic_direct,
    vietoris_basic_meet_form,
    vietoris_closure,
)
from ultrarel.topo import discrete, enumerate_topologies, indiscrete, sierpinski

BASES = {n: list(enumerate_topologies(n)) for n in (1, 2, 3)}


def fs(mask):
    return frozenset(bits.members(mask))


def fam(t):
    return {fs(o) for o in t.opens}


# --------------------------------------------------------------- filters


@pytest.mark.parametrize("n, count", [(1, 1), (2, 3), (3, 7), (4, 15)])
def test_filter_counts(n, count):
    assert len(all_filters(n)) == count


def test_filters_on_two_points():
    assert [str(f) for f in all_filters(2)] == ["gen{0}", "gen{1}", "gen{0,1}"]
    assert [f.is_ultra for f in all_filters(2)] == [True, True, False]


def test_principal_filters_are_singletons():
    for n in (1, 2, 3):
        assert [principal(n, x).gen for x in range(n)] == [1 << x for x in range(n)]
        assert [f for f in all_filters(n) if f.is_ultra] == [principal(n, x) for x in range(n)]


def test_membership():
    f = FilterGen(3, 0b011)
    assert 0b011 in f and 0b111 in f
    assert 0b001 not in f


def test_ultra_set_examples():
    assert ultra_set(parse_filter(2, "gen{0,1}")) == 0b11
    assert ultra_set(parse_filter(3, "gen{2}")) == 0b100


def test_literal_ignores_spaces():
    assert parse_filter(3, "gen{0, 2}") == FilterGen(3, 0b101)


def test_literal_round_trip():
    for n in (1, 2, 3):
        for f in all_filters(n):
            assert parse_filter(n, str(f)) == f


@pytest.mark.parametrize("text", ["gen{}", "gen{0,,1}", "{0}", "gen{3}", "gen{1,1}", "gen{a}"])
def test_bad_literals(text):
    with pytest.raises((FormatError, ValidationError)):
        parse_filter(3, text)


def test_empty_generator_rejected():
    with pytest.raises(ValidationError):
        FilterGen(2, 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_anti_isomorphism(n):
    subsets = range(1, 1 << n)
    images = {s: meet_of_principals(n, s) for s in subsets}
    assert sorted(f.gen for f in images.values()) == sorted(f.gen for f in all_filters(n))
    for s in subsets:
        assert ultra_set(images[s]) == s
        for t in subsets:
            # larger point sets give smaller filters
            assert (s & ~t == 0) == images[s].extends(images[t])


def test_extends_and_compatible_match_families():
    n = 3
    for c in all_filters(n):
        for d in all_filters(n):
            fc, fd = oracles.filt(n, fs(c.gen)), oracles.filt(n, fs(d.gen))
            assert c.extends(d) == (fd <= fc)
            assert c.compatible(d) == oracles.centered(list(fc | fd))


def test_pushforward():
    # the image filter of gen{0,1} under the constant map is principal
    assert pushforward((1, 1), FilterGen(2, 0b11), 2) == principal(2, 1)
    assert pushforward((0, 2), FilterGen(2, 0b11), 3) == FilterGen(3, 0b101)


# ------------------------------------------------------------ hyperspace


def test_hyperspace_points():
    h = hyperspace(sierpinski())
    assert h.points == (0b10, 0b11)
    h3 = hyperspace(discrete(3))
    assert h3.points == tuple(f.gen for f in all_filters(3))
    assert hyperspace(indiscrete(3)).points == (0b111,)


def test_hatted_examples():
    h = hyperspace(sierpinski())
    assert hatted_sets(h, 0b10, "minus") == 0b01
    assert hatted_sets(h, 0b10, "plus") == 0b11
    for t in BASES[3]:
        h = hyperspace(t)
        assert hatted_sets(h, t.full, "plus") == h.all_points
    with pytest.raises(ValidationError):
        hatted_sets(h, 0b1000, "minus")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hyperspace_topologies_match_oracle(n):
    for t in BASES[n]:
        h = hyperspace(t)
        for which in ("lower", "upper", "full"):
            pts, opens = oracles.hyper_topology(n, fam(t), which)
            assert [fs(p) for p in h.points] == pts
            got = {frozenset(pts[i] for i in bits.members(o)) for o in h.topology(which).opens}
            assert got == opens


@pytest.mark.parametrize("n", [1, 2, 3])
def test_duality(n):
    for t in BASES[n]:
        h = hyperspace(t)
        for a in range(1 << n):
            rest = t.full & ~a
            assert h.minus(a) == h.all_points & ~h.plus(rest)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_plus_sets_form_closed_base(n):
    for t in BASES[n]:
        h = hyperspace(t)
        family = {h.plus(c) for c in t.closed_sets}
        assert all(a | b in family for a in family for b in family)


def test_basic_open_examples():
    h = hyperspace(sierpinski())
    assert vietoris_basic(h, [0b11]) == h.all_points
    assert vietoris_basic(h, []) == 0
    assert vietoris_basic(h, [0b01]) == 0
    with pytest.raises(ValidationError):
        vietoris_basic(h, [0b10])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_basic_open_matches_definition(n):
    for t in BASES[n]:
        h = hyperspace(t)
        opens = list(t.opens)
        for k in range(len(opens) + 1):
            for family in combinations(opens, k):
                assert vietoris_basic(h, family) == vietoris_basic_direct(h, family)


def test_meet_of_minus_sets_is_smaller():
    # intersecting every O- instead of taking the union's minus set loses points
    h = hyperspace(discrete(2))
    family = [0b01, 0b10]
    assert vietoris_basic(h, family) == 1 << h.index[0b11]
    assert vietoris_basic_meet_form(h, family) == 0


def point_subsets(h):
    return range(1 << h.size)


def oracle_closure(n, t, which, s_mask):
    pts, opens = oracles.hyper_topology(n, fam(t), which)
    h = hyperspace(t)
    s = frozenset(fs(h.points[i]) for i in bits.members(s_mask))
    c = oracles.closure(pts, opens, s)
    return sum(1 << i for i, p in enumerate(pts) if p in c)


def test_closure_examples():
    h = hyperspace(discrete(2))
    s = 1 << h.index[0b01]
    # every closed C meeting {0} meets {0} and {0, 1}
    assert vietoris_closure(h, s, "upper") == s | 1 << h.index[0b11]
    for which in ("lower", "upper", "full"):
        assert vietoris_closure(h, h.all_points, which) == h.all_points
        assert vietoris_closure(h, 0, which) == 0


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("which", ["lower", "upper", "joint"])
def test_closure_formulas_match_oracle(n, which):
    for t in BASES[n]:
        h = hyperspace(t)
        topo = "full" if which == "joint" else which
        for s in point_subsets(h):
            expected = oracle_closure(n, t, topo, s)
            assert h.topology(topo).closure(s) == expected
            assert closure_formula(h, s, which) == expected


@pytest.mark.parametrize("n", [1, 2])
def test_full_closure_is_meet_of_closures_on_small_bases(n):
    for t in BASES[n]:
        h = hyperspace(t)
        for s in point_subsets(h):
            assert closure_formula(h, s, "full") == h.full.closure(s)
            assert vietoris_closure(h, s, "full") == h.full.closure(s)


def test_full_closure_counterexample_on_three_points():
    h = hyperspace(discrete(3))
    s = (1 << h.index[0b001]) | (1 << h.index[0b111])
    # the full Vietoris topology of a finite discrete base is discrete
    assert len(h.full.opens) == 1 << h.size
    assert oracle_closure(3, discrete(3), "full", s) == s
    meet = closure_formula(h, s, "full")
    extra = {h.points[i] for i in bits.members(meet & ~s)}
    assert extra == {0b011, 0b101}
    assert vietoris_closure(h, s, "full", check=False) == s
    with pytest.raises(InvariantViolation):
        vietoris_closure(h, s, "full")


def count_full_mismatches(n):
    bad = 0
    for t in BASES[n]:
        h = hyperspace(t)
        bad += sum(closure_formula(h, s, "full") != h.full.closure(s) for s in point_subsets(h))
    return bad


def test_full_closure_mismatch_count_on_three_points():
    assert count_full_mismatches(3) == 70


@pytest.mark.xfail(strict=True, reason="closure in a join of topologies can be smaller than the meet of closures")
def test_full_closure_is_meet_of_closures_on_three_points():
    assert count_full_mismatches(3) == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_finite_sets_dense_for_t1_bases(n):
    for t in BASES[n]:
        if t.is_t1():
            h = hyperspace(t)
            assert h.full.closure(h.all_points) == h.all_points


# --------------------------------------------------- filter-level closures


def filter_sets(n):
    flist = all_filters(n)
    for k in range(len(flist) + 1):
        yield from combinations(flist, k)


class FilterClauses:
    """The closure descriptions written out over explicit families of sets."""

    def __init__(self, n):
        self.n = n
        self.filters = [oracles.filt(n, fs(f.gen)) for f in all_filters(n)]
        improper = frozenset(oracles.powerset(range(n)))
        self.with_improper = self.filters + [improper]
        self.families = [list(c) for k in range(len(self.filters) + 1)
                         for c in combinations(self.filters, k)]

    @staticmethod
    def compatible(a, b):
        return oracles.centered(list(a | b))

    def lower(self, s, d):
        for family in self.families:
            if all(any(c <= e for c in family) for e in s):
                if not any(c <= d for c in family):
                    return False
        return True

    def upper(self, s, d):
        for c in self.with_improper:
            if all(self.compatible(c, e) for e in s) and not self.compatible(c, d):
                return False
        return True

    def closure(self, s, which):
        test = {"lower": self.lower, "upper": self.upper,
                "full": lambda s, d: self.lower(s, d) and self.upper(s, d)}[which]
        return {i for i, d in enumerate(self.filters) if test(s, d)}


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("which", ["lower", "upper", "full"])
def test_filter_clauses_match_set_oracle(n, which):
    oracle = FilterClauses(n)
    idx = {f: i for i, f in enumerate(all_filters(n))}
    for s in filter_sets(n):
        fam_s = [oracle.filters[idx[f]] for f in s]
        got = {idx[f] for f in filter_closure_literal(n, s, which)}
        assert got == oracle.closure(fam_s, which)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("which", ["lower", "upper", "joint"])
def test_filter_clauses_match_hyperspace(n, which):
    for s in filter_sets(n):
        filter_vietoris_closure(n, s, which)


def test_filter_full_clause_matches_hyperspace_on_two_points():
    for s in filter_sets(2):
        filter_vietoris_closure(2, s, "full")


def test_filter_full_clause_counterexample():
    s = [principal(3, 0), FilterGen(3, 0b111)]
    got = filter_vietoris_closure(3, s, "full", check=False)
    assert {str(f) for f in got} == {"gen{0}", "gen{0,1}", "gen{0,2}", "gen{0,1,2}"}
    assert {str(f) for f in filter_vietoris_closure(3, s, "joint")} == {"gen{0}", "gen{0,1,2}"}
    with pytest.raises(InvariantViolation):
        filter_vietoris_closure(3, s, "full")


def test_filter_full_clause_mismatch_count():
    bad = 0
    for s in filter_sets(3):
        try:
            filter_vietoris_closure(3, s, "full")
        except InvariantViolation:
            bad += 1
    assert bad == 46


def test_filter_closure_cap():
    with pytest.raises(SizeError):
        filter_closure_literal(4, [], "lower")


@given(st.sampled_from(BASES[3]), st.integers(0, 127), st.integers(0, 127))
def test_closures_are_monotone(t, a, b):
    h = hyperspace(t)
    a &= h.all_points
    b &= h.all_points
    for which in ("lower", "upper", "full"):
        topo = h.topology(which)
        assert topo.closure(a | b) == topo.closure(a) | topo.closure(b)
