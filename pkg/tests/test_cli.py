import json
import subprocess
import sys

import pytest

import oracles
from ultrarel.cli import main


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


EQ2 = {"n": 2, "pairs": [[0, 0], [1, 1]]}
SIERP = {"n": 2, "opens": [[0]]}


def test_extend_star_filter(tmp_path, capsys):
    code, out, _ = run(capsys, "extend", "--kind", "star-filter", "--rel", write(tmp_path, "eq2.json", EQ2))
    assert code == 0
    obj = json.loads(out)
    assert obj["index"] == ["gen{0}", "gen{1}", "gen{0,1}"]
    assert obj["pairs"] == [[0, 0], [0, 2], [1, 1], [1, 2], [2, 0], [2, 1], [2, 2]]


def test_extend_star_ultra_of_empty(tmp_path, capsys):
    code, out, _ = run(capsys, "extend", "--kind", "star-ultra", "--rel", write(tmp_path, "e.json", {"n": 2, "pairs": []}))
    assert code == 0 and json.loads(out) == {"n": 2, "pairs": []}


@pytest.mark.parametrize("kind", ["star-ultra", "tilde-ultra"])
def test_extend_ultra_is_identity(tmp_path, capsys, kind):
    rel = {"n": 3, "pairs": [[0, 1], [2, 2]]}
    code, out, _ = run(capsys, "extend", "--kind", kind, "--rel", write(tmp_path, "r.json", rel))
    assert code == 0 and json.loads(out) == rel


def test_closure(tmp_path, capsys):
    t = write(tmp_path, "s.json", SIERP)
    r = write(tmp_path, "r.json", {"n": 2, "pairs": [[1, 0]]})
    for op in ("lcl", "rcl", "cl"):
        code, out, _ = run(capsys, "closure", "--topology", t, "--op", op, "--rel", r)
        assert code == 0 and json.loads(out)["pairs"] == [[1, 0], [1, 1]]
    code, out, _ = run(capsys, "closure", "--topology", t, "--op", "int", "--rel", r)
    assert json.loads(out)["pairs"] == []


def test_closure_dimension_mismatch(tmp_path, capsys):
    t = write(tmp_path, "s.json", SIERP)
    r = write(tmp_path, "r.json", {"n": 3, "pairs": []})
    code, _, err = run(capsys, "closure", "--topology", t, "--op", "lcl", "--rel", r)
    assert code == 65 and "3 points" in err


def test_hyper(tmp_path, capsys):
    code, out, _ = run(capsys, "hyper", "--topology", write(tmp_path, "s.json", SIERP), "--which", "full")
    obj = json.loads(out)
    assert code == 0 and obj["points"] == [[1], [0, 1]]
    assert obj["n"] == 2 and len(obj["opens"]) == 3


def test_check_exit_codes(capsys):
    code, out, err = run(capsys, "check", "--suite", "lemma24", "--max-n", "3")
    assert code == 0
    assert json.loads(out)["suite"] == "lemma24"
    assert "exit 0; wall time" in err
    code, _, _ = run(capsys, "check", "--suite", "thm23-table", "--max-n", "2")
    assert code == 1
    code, _, _ = run(capsys, "check", "--suite", "vietoris", "--max-n", "3")
    assert code == 2


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--property", "star-complement-strict", "--max-n", "2", "--all")
    obj = json.loads(out)
    assert code == 1 and obj["property"] == "star-complement-strict"
    # filter pairs related by the extension of both r and its complement, counted by the set oracle
    expected = 0
    for n in (1, 2):
        pts = [(x, y) for x in range(n) for y in range(n)]
        fams = oracles.filters(n)
        for r in oracles.powerset(pts):
            co = frozenset(pts) - r
            expected += sum(oracles.star(r, c, d) and oracles.star(co, c, d) for c in fams for d in fams)
    assert obj["witness_count"] == expected == 46
    code, out, _ = run(capsys, "search", "--property", "lclrcl-nonidempotent", "--max-n", "2", "--all")
    assert code == 0 and json.loads(out)["witnesses"] == []


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["check", "--suite", "lemma99"],
    ["check", "--suite", "vietoris", "--max-n", "4"],
    ["search", "--property", "nope"],
    ["search", "--property", "star-complement-strict", "--max-n", "9"],
    ["search", "--property", "star-complement-strict", "--topo-limit", "0"],
    ["extend", "--kind", "star-ultra"],
    ["closure", "--topology", "t.json", "--op", "mid", "--rel", "r.json"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 64 and "usage error" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "extend", "--kind", "star-ultra", "--rel", str(tmp_path / "absent.json"))
    assert code == 66 and "absent.json" in err


@pytest.mark.parametrize("text, where", [
    ('{"n": 2, "pairs": [[0, 1],', ":1:"),
    ('{"n": 2, "pairs": [[0, 1], [0, 1]]}', "pairs[1]"),
    ('{"n": 2, "pairs": [[0, 7]]}', "pairs[0]"),
    ('{"n": "2", "pairs": []}', "'n'"),
])
def test_malformed_files(capsys, tmp_path, text, where):
    code, _, err = run(capsys, "extend", "--kind", "star-ultra", "--rel", write(tmp_path, "bad.json", text))
    assert code == 65 and where in err


def test_binary_file(capsys, tmp_path):
    p = tmp_path / "bin.json"
    p.write_bytes(b"\xff\xfe\x00")
    code, _, _ = run(capsys, "extend", "--kind", "star-ultra", "--rel", str(p))
    assert code == 65


def test_replay(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "--property", "star-meet-strict", "--max-n", "2")
    w = json.loads(out)["witnesses"][0]
    code, out, _ = run(capsys, "replay", write(tmp_path, "w.json", w))
    assert code == 1
    assert json.loads(out) == {"property": "star-meet-strict", "verdict": "witnessed-strict", "claimed": "witnessed-strict"}
    w["args"]["r"] = {"n": 2, "pairs": []}
    code, out, _ = run(capsys, "replay", write(tmp_path, "w2.json", w))
    assert code == 2 and json.loads(out)["verdict"] == "not-reproduced"
    code, _, _ = run(capsys, "replay", write(tmp_path, "w3.json", {"property": "star-meet-strict"}))
    assert code == 65


def test_reports_are_byte_stable(capsys):
    outs = [run(capsys, "check", "--suite", "thm25", "--max-n", "3")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_module_entry_point(tmp_path):
    rel = write(tmp_path, "eq2.json", EQ2)
    proc = subprocess.run([sys.executable, "-m", "ultrarel", "extend", "--kind", "tilde-filter", "--rel", rel],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["pairs"] == [[0, 0], [1, 1]]


def test_max_n_environment(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("ULTRAREL_MAX_N", "2")
    code, _, err = run(capsys, "extend", "--kind", "star-ultra", "--rel", write(tmp_path, "r.json", {"n": 3, "pairs": []}))
    assert code == 65 and "'n'" in err
    code, _, _ = run(capsys, "check", "--suite", "lemma24", "--max-n", "3")
    assert code == 64
