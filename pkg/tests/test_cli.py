"""Exit codes and JSON reports for every subcommand."""

import json

import pytest

from gamepowers.cli import main
from gamepowers.equivalence import strongly_equivalent
from gamepowers.games import game_to_json
from helpers import one_then_two_or_three, two_or_three_after_one


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


@pytest.fixture
def game_files(tmp_path):
    p1 = tmp_path / "g1.json"
    p2 = tmp_path / "g2.json"
    p1.write_text(json.dumps(game_to_json(one_then_two_or_three())))
    p2.write_text(json.dumps(game_to_json(two_or_three_after_one())))
    return str(p1), str(p2)


def model_file(tmp_path, name, worlds, ra, rb, val):
    p = tmp_path / name
    p.write_text(json.dumps({"worlds": worlds, "RA": ra, "RB": rb, "val": val}))
    return str(p)


def test_powers_reports_the_family(capsys, game_files):
    code, out = run(capsys, "powers", game_files[0], "--player", "A", "--kind", "basic")
    assert code == 0
    report = json.loads(out)
    assert report["members"] == [["1"], ["2", "3"]]
    assert report["player"] == "A" and report["kind"] == "basic"


def test_equiv_exit_codes_and_witness(capsys, game_files):
    code, out = run(capsys, "equiv", *game_files, "--relation", "power")
    assert code == 0 and json.loads(out)["verdict"] is True
    code, out = run(capsys, "equiv", *game_files, "--relation", "strong")
    assert code == 1
    report = json.loads(out)
    # the report's witness is the library's own
    verdict = strongly_equivalent(one_then_two_or_three(), two_or_three_after_one())
    assert report["witness"] == verdict.witness
    assert report["witness"]["member"] == ["1", "2"]


def test_equiv_missing_file(capsys, game_files):
    code, out = run(capsys, "equiv", game_files[0], "/no/such.json", "--relation", "semi")
    assert code == 2
    assert "error" in json.loads(out)


def test_bisim_accepts_and_distinguishes(capsys, tmp_path):
    m1 = model_file(tmp_path, "m1.json", ["u"], [["u", ["u"]]], [["u", ["u"]]], {"p": ["u"]})
    m2 = model_file(tmp_path, "m2.json", ["v"], [["v", ["v"]]], [["v", ["v"]]], {"p": ["v"]})
    m3 = model_file(tmp_path, "m3.json", ["v"], [["v", ["v"]]], [["v", ["v"]]], {"p": []})
    for kind in ("power", "instantial"):
        code, out = run(capsys, "bisim", m1, "u", m2, "v", "--kind", kind)
        assert code == 0 and json.loads(out)["verdict"] is True
    code, out = run(capsys, "bisim", m1, "u", m3, "v", "--kind", "power")
    assert code == 1 and json.loads(out)["verdict"] is False


def test_bisim_input_errors(capsys, tmp_path):
    m1 = model_file(tmp_path, "m1.json", ["u"], [["u", ["u"]]], [["u", ["u"]]], {})
    # two-world model whose A-neighborhoods are not upward closed
    m2 = model_file(
        tmp_path,
        "m2.json",
        ["u", "v"],
        [["u", ["u"]], ["v", ["v"]]],
        [["u", ["u"]], ["v", ["v"]]],
        {},
    )
    code, _ = run(capsys, "bisim", m1, "zz", m1, "u", "--kind", "power")
    assert code == 2
    code, out = run(capsys, "bisim", m2, "u", m1, "u", "--kind", "power")
    assert code == 2
    assert "error" in json.loads(out)


def test_frame_validation_codes(capsys, tmp_path):
    good = model_file(tmp_path, "good.json", ["u"], [["u", ["u"]]], [["u", ["u"]]], {})
    bad = model_file(tmp_path, "bad.json", ["u"], [["u", []]], [["u", ["u"]]], {})
    code, out = run(capsys, "frame", good, "--kind", "instantial")
    assert code == 0 and json.loads(out)["valid"] is True
    code, out = run(capsys, "frame", bad, "--kind", "game")
    assert code == 1
    report = json.loads(out)
    assert report["valid"] is False
    assert report["conditions"]["Consistency"]["holds"] is False


def test_mc_extension_and_codes(capsys, tmp_path):
    m = model_file(tmp_path, "m.json", ["u"], [["u", ["u"]]], [["u", ["u"]]], {"p": ["u"]})
    code, out = run(capsys, "mc", m, "[A]true")
    assert code == 0
    assert json.loads(out)["extension"] == ["u"]
    code, out = run(capsys, "mc", m, "[A](false;true)")
    assert code == 1
    assert json.loads(out)["extension"] == []
    code, out = run(capsys, "mc", m, "[A](p;")
    assert code == 2
    assert "position" in json.loads(out)["error"]


def test_mc_warns_on_invalid_frames(capsys, tmp_path):
    m = model_file(
        tmp_path,
        "m.json",
        ["u", "v"],
        [["u", []], ["v", ["v"]]],
        [["u", ["u"]], ["v", ["v"]]],
        {},
    )
    code, out = run(capsys, "mc", m, "true")
    assert code == 0
    assert json.loads(out)["warnings"]


def test_represent_builds_and_verifies(capsys, tmp_path):
    p = tmp_path / "fam.json"
    p.write_text(
        json.dumps(
            {"outcomes": ["0", "1"], "FA": [["0"], ["1"]], "FB": [["0", "1"]], "mode": "basic"}
        )
    )
    code, out = run(capsys, "represent", str(p), "--verify")
    assert code == 0
    report = json.loads(out)
    assert report["legal"] is True
    assert report["cost"] == 2
    assert report["roundtrip"]["ok"] is True
    assert report["game"]["rows"] == ["c0", "c1"]


def test_represent_flags_illegal_families(capsys, tmp_path):
    p = tmp_path / "fam.json"
    p.write_text(
        json.dumps({"outcomes": ["0"], "FA": [[]], "FB": [["0"]], "mode": "basic"})
    )
    code, out = run(capsys, "represent", str(p))
    assert code == 1
    report = json.loads(out)
    assert report["legal"] is False
    assert report["conditions"]["A"]["Consistency"]["holds"] is False


def test_represent_malformed_file(capsys, tmp_path):
    p = tmp_path / "fam.json"
    p.write_text("{not json")
    code, out = run(capsys, "represent", str(p))
    assert code == 2


def test_algebra_codes_and_determinism(capsys):
    code, first = run(capsys, "algebra", "x + y = y + x", "--equiv", "strong",
                      "--samples", "5", "--seed", "1")
    assert code == 0
    assert json.loads(first)["verdict"] == "holds-on-sample"
    code, again = run(capsys, "algebra", "x + y = y + x", "--equiv", "strong",
                      "--samples", "5", "--seed", "1")
    assert first == again
    code, out = run(capsys, "algebra", "x * x = x", "--equiv", "strong",
                    "--samples", "0", "--seed", "1")
    assert code == 1
    assert json.loads(out)["counterexample"]["binding"]["x"]


def test_algebra_rejects_non_equations(capsys):
    code, out = run(capsys, "algebra", "x + y", "--equiv", "strong", "--seed", "1")
    assert code == 2
    code, out = run(capsys, "algebra", "x + = y", "--equiv", "strong", "--seed", "1")
    assert code == 2


def test_congruence_codes(capsys):
    code, out = run(capsys, "congruence", "o", "--equiv", "strong",
                    "--samples", "1", "--seed", "0")
    assert code == 1
    assert json.loads(out)["counterexample"]["context"] == "left-of-branching"
    code, _ = run(capsys, "congruence", "+", "--equiv", "strong",
                  "--samples", "2", "--seed", "0")
    assert code == 0


def test_axioms_sweep(capsys):
    code, out = run(capsys, "axioms", "--samples", "22", "--seed", "3")
    assert code == 0
    report = json.loads(out)
    assert sum(report["counts"].values()) == 22
    assert report["violations"] == []


def test_refute_codes(capsys):
    code, out = run(capsys, "refute", "[A](p;p|q) -> [A](p;p)", "--seed", "1")
    assert code == 1
    assert json.loads(out)["model"]["worlds"]
    code, out = run(capsys, "refute", "p | !p", "--seed", "1", "--budget", "20")
    assert code == 0
    assert json.loads(out)["found"] is False


def test_stochastic_commands_require_a_seed(capsys):
    assert run(capsys, "axioms")[0] == 2
    assert run(capsys, "refute", "p")[0] == 2
    assert run(capsys, "algebra", "x = x", "--equiv", "semi")[0] == 2
    assert run(capsys, "congruence", "+", "--equiv", "semi")[0] == 2


def test_usage_errors(capsys):
    assert main(["nonsense"]) == 2
    assert main([]) == 2
    capsys.readouterr()


def test_pretty_reindents_without_changing_content(capsys, game_files):
    _, plain = run(capsys, "equiv", *game_files, "--relation", "power")
    _, pretty = run(capsys, "equiv", *game_files, "--relation", "power", "--pretty")
    assert plain != pretty
    assert json.loads(plain) == json.loads(pretty)
