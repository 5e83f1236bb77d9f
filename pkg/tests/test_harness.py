import pytest

from ultrarel.checks import CHECKS, FINDING, STRICT, VERIFIED, VIOLATED, make_witness, replay
from ultrarel.errors import FormatError, SizeError
from ultrarel.formats import dumps
from ultrarel.harness import (
    DEFAULT_N,
    PROPERTIES,
    SUITES,
    run_suite,
    search,
    suite_cap,
)
from ultrarel.rel_core import Rel


@pytest.fixture(scope="module")
def small_reports():
    return {s: run_suite(s, 2) for s in SUITES}


def test_suite_names_and_defaults():
    assert len(SUITES) == 11
    assert DEFAULT_N["lemma24"] == 3 and DEFAULT_N["vietoris"] == 2
    assert suite_cap("lemma21") == 4 and suite_cap("continuity") == 3


def test_unknown_suite_and_bounds():
    with pytest.raises(KeyError):
        run_suite("lemma99", 2)
    with pytest.raises(SizeError):
        run_suite("vietoris", 4)
    with pytest.raises(SizeError):
        run_suite("lemma24", 0)
    with pytest.raises(KeyError):
        search("no-such-property", 2)


def test_small_exit_codes(small_reports):
    codes = {s: r.exit_code for s, r in small_reports.items()}
    assert codes["thm23-table"] == 1 and codes["generalized-thm23"] == 1
    assert all(c == 0 for s, c in codes.items() if s not in ("thm23-table", "generalized-thm23"))


def test_verdicts_are_known(small_reports):
    for rep in small_reports.values():
        for law in rep.laws:
            assert law.verdict in (VERIFIED, STRICT, FINDING, VIOLATED)
            if law.verdict == STRICT:
                assert law.witnesses
            if law.verdict == VERIFIED:
                assert law.witness_count == 0


def test_every_witness_replays(small_reports):
    for rep in small_reports.values():
        for law in rep.laws:
            for w in law.witnesses:
                assert replay(w) == w["verdict"] == law.verdict
        if rep.suite == "thm23-table":
            for row in ("tilde", "star"):
                for cell in rep.table[row].values():
                    if "witness" in cell:
                        assert replay(cell["witness"]) == cell["verdict"]


def test_reports_are_deterministic(small_reports):
    for s in ("lemma21", "thm23-table", "corollary-lcl", "vietoris"):
        assert dumps(run_suite(s, 2).to_obj()) == dumps(small_reports[s].to_obj())


def test_lemma21_outcome(small_reports):
    rep = small_reports["lemma21"]
    assert rep.law("principal-collapse").verdict == VERIFIED
    assert rep.law("principal-diagram").verdict == VERIFIED
    implications = [r for r in rep.laws if r.law.startswith("filter-implication")]
    assert len(implications) == 42
    assert all(r.verdict == FINDING for r in implications)
    # frozen from the exhaustive n <= 2 run
    failing = {r.law.split()[1] for r in implications if r.witness_count}
    assert failing == {f"{a}->{b}" for a in ("c0", "ci", "cii")
                       for b in ("c0", "ci", "cii", "ciii", "civ", "cv", "cvi")
                       if a != b and b != "c0"}
    matrix = rep.table["filter_implications"]
    assert {k for k, v in matrix.items() if v == 0} == failing


def test_thm22_outcome(small_reports):
    rep = small_reports["thm22"]
    for law in ("empty-row", "universal-row", "equality-row", "principal-inclusions"):
        assert rep.law(law).verdict == VERIFIED
    assert rep.law("filter-inclusion T=T'").witness_count == 14
    assert rep.law("filter-inclusion S=S'").witness_count == 0


def test_thm23_table(small_reports):
    table = small_reports["thm23-table"].table
    assert table["columns"] == ["-", "cap", "cup", "comp", "inv"]
    marks = {row: [table[row][c]["expected"] for c in table["columns"]] for row in ("tilde", "star")}
    assert marks == {"tilde": [1, 1, 1, 0, 0], "star": [0, 0, 1, 1, 1]}
    for row in ("tilde", "star"):
        for c in table["columns"]:
            cell = table[row][c]
            if cell["expected"] == 1:
                assert cell["verdict"] == VERIFIED
            else:
                assert "witness" in cell or cell.get("annotation", "").startswith("infinite-only")
    assert table["tilde"]["inv"]["annotation"] == "infinite-only (paper example uses non-principal ultrafilters)"
    assert table["star"]["comp"]["level"] == "principal"


def test_topology_suites_small(small_reports):
    assert small_reports["lemma32"].law("lcl-rcl-laws").verdict == VERIFIED
    cor = small_reports["corollary-lcl"]
    assert cor.law("lclrcl-nonidempotent").witness_count == 0
    assert cor.law("lcl-equals-closure").witness_count == 0
    gen = small_reports["generalized-thm23"]
    for law in ("cl-inverse", "cl-union", "cl-compose-inclusion", "cl-compose-discrete"):
        assert gen.law(law).verdict == VERIFIED
    vi = small_reports["vietoris"]
    assert vi.law("full-closure").verdict == VERIFIED
    assert vi.law("upper-without-empty").verdict == FINDING


def test_vietoris_full_closure_fails_on_three_points():
    rep = run_suite("vietoris", 3)
    assert rep.law("full-closure").verdict == VIOLATED
    assert rep.law("joint-closure").verdict == VERIFIED
    assert rep.exit_code == 2
    w = rep.law("full-closure").witnesses[0]
    assert replay(w) == VIOLATED


def test_search_examples():
    rep = search("star-complement-strict", 2, all_witnesses=True)
    args = [w["args"] for w in rep.laws[0].witnesses]
    eq = {"n": 2, "pairs": [[0, 0], [1, 1]]}
    assert {"r": eq, "c": "gen{0,1}", "d": "gen{0,1}"} in args
    rep = search("tilde-compose-strict", 2, all_witnesses=True)
    uni = {"n": 2, "pairs": [[0, 0], [0, 1], [1, 0], [1, 1]]}
    hits = [a for a in (w["args"] for w in rep.laws[0].witnesses) if a["r"] == eq and a["s"] == uni]
    assert hits and all(a["d"] == "gen{0,1}" for a in hits)


def test_search_stops_at_first():
    first = search("star-complement-strict", 2)
    full = search("star-complement-strict", 2, all_witnesses=True)
    assert first.laws[0].witnesses == full.laws[0].witnesses[:1]
    assert first.laws[0].instances <= full.laws[0].instances


def test_search_report_shape():
    obj = search("lclrcl-nonidempotent", 2, all_witnesses=True).to_obj()
    assert obj["property"] == "lclrcl-nonidempotent"
    assert obj["searched"] == {"instances": 66}
    assert obj["witnesses"] == []
    assert obj["note"] == "search exhausted without a witness"


def test_every_property_runs():
    for prop in PROPERTIES:
        rep = search(prop, 1)
        assert rep.laws[0].instances > 0


def test_witness_round_trip():
    w = make_witness("star-complement-strict", r=Rel.identity(2), c="gen{0,1}", d="gen{0,1}")
    assert replay(w) == STRICT
    assert replay(dict(w, args=dict(w["args"], c="gen{0}", d="gen{0}"))) != STRICT


@pytest.mark.parametrize("bad", [
    [],
    {"property": "nope", "n": 2, "args": {}},
    {"property": "star-complement-strict", "n": 2, "args": {}},
    {"property": "star-complement-strict", "n": 2, "args": {"r": {"n": 2, "pairs": []}, "c": "gen{5}", "d": "gen{0}"}},
])
def test_bad_witnesses(bad):
    with pytest.raises(FormatError):
        replay(bad)


def test_checks_registry():
    assert all(c.verdict in (VIOLATED, STRICT, FINDING) for c in CHECKS.values())
    assert {p.check for p in PROPERTIES.values()} <= set(CHECKS)
