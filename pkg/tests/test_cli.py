import json

import pytest

from dtilde import angulation as an
from dtilde import cli
from dtilde import colored_quiver as cq
from dtilde.surface import SurfaceSpec


@pytest.fixture
def init72(tmp_path):
    path = tmp_path / "init.json"
    assert cli.run(["init", "--n", "7", "--m", "2", "-o", str(path)]) == 0
    return path


def test_init_writes_valid_json(init72):
    ang = an.from_json(init72.read_text())
    assert an.validate(ang) == [] and len(ang.labels) == 8


def test_flip_round_trip(init72, tmp_path):
    once, back = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.run(["flip", str(init72), "--at", "3", "-o", str(once)]) == 0
    assert cli.run(["flip", str(once), "--at", "3", "--inverse", "-o", str(back)]) == 0
    assert back.read_text() == init72.read_text()
    flipped = an.from_json(once.read_text())
    assert flipped.diagonals()["3"].kind == "boundary"


def test_quiver_outputs(init72, capsys):
    assert cli.run(["quiver", str(init72), "--colored"]) == 0
    Q = cq.from_json(capsys.readouterr().out)
    assert Q.size == 14
    assert cli.run(["quiver", str(init72)]) == 0
    plain = json.loads(capsys.readouterr().out)
    assert len(plain["arrows"]) == 7
    assert cli.run(["quiver", str(init72), "--dot"]) == 0
    assert capsys.readouterr().out.count(" -> ") == 7


def test_mutate(tmp_path, capsys):
    Q = an.colored_quiver(an.initial_angulation(SurfaceSpec(7, 2)))
    path = tmp_path / "q.json"
    path.write_text(cq.to_json(Q))
    for flag in ([], ["--formula"], ["--procedure"]):
        assert cli.run(["mutate", str(path), "--at", "3", *flag]) == 0
        assert cq.from_json(capsys.readouterr().out) == cq.mutate(Q, "3")


def test_mutate_disagreement_exits_one(tmp_path, capsys):
    Q = cq.from_arrows(2, "ikj", [("i", "k", 1), ("k", "i", 1), ("k", "j", 0), ("j", "k", 2),
                                  ("i", "j", 0), ("j", "i", 2)])
    path = tmp_path / "q.json"
    path.write_text(cq.to_json(Q))
    assert cli.run(["mutate", str(path), "--at", "k"]) == 1
    dump = json.loads(capsys.readouterr().out)
    assert set(dump) == {"input", "at", "procedure", "formula"}


def test_mutate_bad_input(tmp_path):
    path = tmp_path / "q.json"
    path.write_text(cq.to_json(cq.from_arrows(2, "ab", [("a", "b", 0)])))
    assert cli.run(["mutate", str(path), "--at", "a"]) == 2
    good = tmp_path / "g.json"
    good.write_text(cq.to_json(cq.from_arrows(2, "ab", [])))
    assert cli.run(["mutate", str(good), "--at", "z"]) == 2
    assert cli.run(["mutate", str(tmp_path / "missing.json"), "--at", "a"]) == 2


def test_check_compat(capsys):
    assert cli.run(["check-compat", "--n", "6", "--m", "2", "--seq", "1,2,3,1"]) == 0
    assert cli.run(["check-compat", "--n", "5", "--m", "3", "--fuzz", "10", "--seed", "4"]) == 0
    assert "ok: 10 sequence(s)" in capsys.readouterr().out
    assert cli.run(["check-compat", "--n", "5", "--m", "3"]) == 2
    assert cli.run(["check-compat", "--n", "5", "--m", "3", "--seq", "99"]) == 2


def test_fuzz_cases_depend_on_seed_and_index():
    spec = SurfaceSpec(6, 2)
    a = cli.fuzz_cases(spec, 5, 8, "s")
    assert a == cli.fuzz_cases(spec, 5, 8, "s")
    assert cli.fuzz_cases(spec, 7, 8, "s")[:5] == a
    assert a != cli.fuzz_cases(spec, 5, 8, "t")


def test_check_sequence_reports_counterexample(monkeypatch):
    spec = SurfaceSpec(5, 2)
    monkeypatch.setattr(cli.cq, "mutate", lambda Q, k: Q)
    bad = cli.check_sequence(spec, ["1"])
    assert bad["step"] == 0 and bad["label"] == "1"


def test_ar_and_tube(capsys):
    assert cli.run(["ar", "--n", "6", "--m", "2", "--d", "2", "--t", "0..3", "--oracle"]) == 0
    assert "ok" in capsys.readouterr().out
    assert cli.run(["ar", "--n", "6", "--m", "2", "--t", "0..1"]) == 0
    assert len(json.loads(capsys.readouterr().out)["vertices"]) == 14
    assert cli.run(["tube", "--n", "6", "--m", "2", "--family", "small0", "--levels", "3",
                    "--dot"]) == 0
    assert capsys.readouterr().out.startswith("digraph")
    assert cli.run(["ar", "--n", "6", "--m", "2", "--t", "zero"]) == 2
    assert cli.run(["ar", "--n", "6", "--m", "2", "--d", "5"]) == 2
    assert cli.run(["tube", "--n", "6", "--m", "2", "--family", "big", "--levels", "0"]) == 2


def test_render_and_validate(init72, tmp_path, capsys):
    svg = tmp_path / "a.svg"
    assert cli.run(["render", str(init72), "-o", str(svg)]) == 0
    assert svg.read_text().startswith("<?xml")
    assert cli.run(["validate", str(init72)]) == 0
    data = json.loads(init72.read_text())
    data["rotations"]["faces"].pop()
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps(data))
    capsys.readouterr()
    assert cli.run(["validate", str(broken)]) == 1
    assert json.loads(capsys.readouterr().out)["problems"]
    assert cli.run(["flip", str(broken), "--at", "1"]) == 2


def test_usage_errors(init72, tmp_path):
    assert cli.run([]) == 2
    assert cli.run(["bogus"]) == 2
    assert cli.run(["init", "--n", "3", "--m", "1"]) == 2
    assert cli.run(["flip", str(init72), "--at", "42"]) == 2
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    assert cli.run(["validate", str(junk)]) == 2
