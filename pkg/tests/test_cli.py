import json
import re

import pytest

from surfbundle import (CLOSED, ONE_BOUNDARY, HolonomyProblem,
                        build_problem, kunneth_betti, parse_problem,
                        serialize_problem)
from surfbundle.cli import main
from surfbundle.serialize import ParseError

GOLDEN = {
    "schema_version": 1,
    "fiber_genus": 2,
    "base": {"type": "closed", "genus": 1},
    "holonomy": [{"word": "Ta1"}, {"word": "Ta1"}],
}

NO_EV1_MATRIX = [[2, 1, 0, 0], [1, 1, 0, 0], [0, 0, 2, 1], [0, 0, 1, 1]]


def write(tmp_path, payload, name="problem.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def assert_no_floats(obj):
    if isinstance(obj, float):
        raise AssertionError(f"float leaked into output: {obj}")
    if isinstance(obj, dict):
        for v in obj.values():
            assert_no_floats(v)
    elif isinstance(obj, list):
        for v in obj:
            assert_no_floats(v)


def test_parse_problem_roundtrip_words():
    p = parse_problem(json.dumps(GOLDEN))
    assert p.h == 2 and p.base_type == CLOSED and p.g == 1
    assert parse_problem(json.dumps(serialize_problem(p))) == p
    # echo keeps the original word entries
    assert serialize_problem(p)["holonomy"] == GOLDEN["holonomy"]


def test_parse_problem_roundtrip_matrices():
    p = build_problem(2, ONE_BOUNDARY, 2, ["Ta1", "Tb1 Tc1", "Ta2^-1", "Tb2"])
    bare = HolonomyProblem(p.h, p.base_type, p.g, p.holonomy)
    again = parse_problem(json.dumps(serialize_problem(bare)))
    assert again == bare


def test_parse_errors_are_parse_errors():
    for text in ("{not json", "[]", json.dumps({"schema_version": 1})):
        with pytest.raises(ParseError):
            parse_problem(text)
    bad_version = dict(GOLDEN, schema_version=2)
    with pytest.raises(ParseError, match="schema_version"):
        parse_problem(json.dumps(bad_version))
    unknown = dict(GOLDEN, extra=1)
    with pytest.raises(ParseError, match="unknown"):
        parse_problem(json.dumps(unknown))
    float_entry = dict(GOLDEN, fiber_genus=2.0)
    with pytest.raises(ParseError, match="integer"):
        parse_problem(json.dumps(float_entry))
    two_keys = dict(GOLDEN, holonomy=[{"word": "Ta1", "matrix": []}, {"word": "Ta1"}])
    with pytest.raises(ParseError, match="exactly one"):
        parse_problem(json.dumps(two_keys))


def test_validation_errors_name_the_invariant(tmp_path, capsys):
    wrong_count = dict(GOLDEN, holonomy=[{"word": "Ta1"}] * 3)
    rc = main(["check", write(tmp_path, wrong_count)])
    assert rc == 1
    assert "2g" in capsys.readouterr().err

    non_symplectic = dict(GOLDEN, holonomy=[
        {"word": "Ta1"},
        {"matrix": [[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]}])
    rc = main(["check", write(tmp_path, non_symplectic)])
    assert rc == 1
    assert "entry 2" in capsys.readouterr().err

    relator = dict(GOLDEN, holonomy=[{"word": "Ta1"}, {"word": "Tb1"}])
    rc = main(["check", write(tmp_path, relator)])
    assert rc == 1
    assert "relator" in capsys.readouterr().err

    wrong_size = dict(GOLDEN, holonomy=[{"word": "Ta1"},
                                        {"matrix": [[1, 0], [0, 1]]}])
    rc = main(["check", write(tmp_path, wrong_size)])
    assert rc == 1
    assert "size 4" in capsys.readouterr().err

    bad_letter = dict(GOLDEN, holonomy=[{"word": "Ta1"}, {"word": "Tq9"}])
    rc = main(["check", write(tmp_path, bad_letter)])
    assert rc == 1
    assert "letter" in capsys.readouterr().err


def test_exit_codes(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{broken")
    assert main(["check", str(path)]) == 2
    assert "malformed" in capsys.readouterr().err
    assert main(["check", str(tmp_path / "missing.json")]) == 2
    capsys.readouterr()
    ok = write(tmp_path, GOLDEN)
    assert main(["check", ok]) == 0
    out = capsys.readouterr().out
    assert out.startswith("ok:")


def test_homology_command_json(tmp_path, capsys):
    rc = main(["homology", write(tmp_path, GOLDEN)])
    assert rc == 0
    out = capsys.readouterr().out
    assert not re.search(r"\d\.\d", out), "decimal point in numeric output"
    payload = json.loads(out)
    assert payload["betti"] == [1, 5, 8, 5, 1]
    assert payload["dims"] == {"W": 1, "Fix": 3, "K": 7, "rank_beta": 1}
    assert payload["problem"] == GOLDEN
    assert all(v["verdict"] == "pass" for v in payload["validations"])
    assert_no_floats(payload)


def test_homology_trivial_and_bounded(tmp_path, capsys):
    trivial = {
        "schema_version": 1,
        "fiber_genus": 2,
        "base": {"type": "closed", "genus": 2},
        "holonomy": [{"word": ""}] * 4,
    }
    assert main(["homology", write(tmp_path, trivial)]) == 0
    assert json.loads(capsys.readouterr().out)["betti"] == [1, 8, 18, 8, 1]

    bounded = {
        "schema_version": 1,
        "fiber_genus": 2,
        "base": {"type": "one_boundary", "genus": 1},
        "holonomy": [{"word": ""}] * 2,
    }
    assert main(["homology", write(tmp_path, bounded)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["betti"] == [1, 6, 9, 2, 0]
    assert payload["dims"]["rank_beta"] is None


def test_homology_exit_one_on_failing_verdict(tmp_path, capsys):
    # relator-satisfying tuple whose transport does not close up (g >= 2)
    from test_homology import exotic_problem
    p = exotic_problem()
    payload = serialize_problem(p)
    rc = main(["homology", write(tmp_path, payload)])
    assert rc == 1
    report = json.loads(capsys.readouterr().out)
    verdicts = {v["name"]: v["verdict"] for v in report["validations"]}
    assert verdicts["beta_image_in_K"] == "fail"


def test_homology_table_format(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    rc = main(["homology", write(tmp_path, GOLDEN), "--format", "table"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "betti" in out and "PASS" in out
    assert "\x1b[" not in out


def test_search_command(tmp_path, capsys):
    problem = {
        "schema_version": 1,
        "fiber_genus": 2,
        "base": {"type": "closed", "genus": 1},
        "holonomy": [{"matrix": NO_EV1_MATRIX}, {"matrix": NO_EV1_MATRIX}],
    }
    path = write(tmp_path, problem)
    assert main(["search", path, "--max-len", "1"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["hit_count"] == 0 and payload["hits"] == []

    assert main(["search", path, "--max-len", "2"]) == 0
    out = capsys.readouterr().out
    assert not re.search(r"\d\.\d", out), "decimal point in numeric output"
    payload = json.loads(out)
    assert payload["hit_count"] == 1
    hit = payload["hits"][0]
    assert hit["word"] == "g1 g2^-1"
    assert hit["letters"] == [[1, 1], [2, -1]]
    assert hit["product_is_identity"] is True
    assert hit["fiber_genus_two_note"] is True
    assert hit["fixed_space"]["dim"] == 4
    assert len(hit["cycle"]) == 2
    assert_no_floats(payload)


def test_search_transvection_first_hit(tmp_path, capsys):
    problem = dict(GOLDEN)
    assert main(["search", write(tmp_path, problem), "--max-len", "1"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["hits"][0]["word"] == "g1"
    assert payload["hits"][0]["fixed_space"]["dim"] == 3


def test_search_state_limit(tmp_path, capsys):
    problem = {
        "schema_version": 1,
        "fiber_genus": 2,
        "base": {"type": "one_boundary", "genus": 1},
        "holonomy": [{"word": "Ta1"}, {"word": "Tb1"}],
    }
    rc = main(["search", write(tmp_path, problem), "--max-len", "3",
               "--max-states", "5"])
    assert rc == 1
    err = capsys.readouterr().err
    assert "state limit" in err and "max-states" in err


def test_search_table(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    rc = main(["search", write(tmp_path, GOLDEN), "--max-len", "1",
               "--format", "table"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "word 'g1'" in out and "fixed dim 3" in out


def test_oracle_command(capsys):
    assert main(["oracle", "--fiber-genus", "2", "--base-genus", "1",
                 "--base", "closed"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["engine_betti"] == [1, 6, 10, 6, 1]
    assert payload["kunneth_betti"] == [1, 6, 10, 6, 1]
    assert payload["agree"] is True

    assert main(["oracle", "--fiber-genus", "3", "--base-genus", "2",
                 "--base", "closed"]) == 0
    assert json.loads(capsys.readouterr().out)["engine_betti"] == [1, 10, 26, 10, 1]

    assert main(["oracle", "--fiber-genus", "2", "--base-genus", "1",
                 "--base", "one_boundary"]) == 0
    assert json.loads(capsys.readouterr().out)["engine_betti"] == [1, 6, 9, 2, 0]


def test_kunneth_formula():
    assert kunneth_betti(2, 1, CLOSED) == (1, 6, 10, 6, 1)
    assert kunneth_betti(2, 1, ONE_BOUNDARY) == (1, 6, 9, 2, 0)
    assert kunneth_betti(4, 3, CLOSED) == (1, 14, 50, 14, 1)


def test_repeated_runs_identical(tmp_path, capsys):
    path = write(tmp_path, GOLDEN)
    outputs = []
    for _ in range(2):
        assert main(["homology", path]) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]
    searches = []
    for _ in range(2):
        assert main(["search", path, "--max-len", "3"]) == 0
        searches.append(capsys.readouterr().out)
    assert searches[0] == searches[1]
