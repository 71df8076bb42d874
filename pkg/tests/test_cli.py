import json

import pytest

from lpproj.cli import main
from lpproj.lp import SignedLpFunction
from lpproj.operators import Op, apply
from lpproj.polytope import Polytope, shifted_simplex, standard_simplex


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def t3(tmp_path, capsys):
    path = tmp_path / "t3.json"
    assert main(["gen", "--shape", "simplex", "--n", "3", "--out", str(path)]) == 0
    return path


def test_gen_simplex_round_trips(t3):
    assert Polytope.from_json(t3.read_text()) == standard_simplex(3)


def test_gen_shifted_simplex(tmp_path):
    path = tmp_path / "e.json"
    assert main(["gen", "--shape", "shifted-simplex", "--n", "3", "--out", str(path)]) == 0
    assert Polytope.from_json(path.read_text()) == shifted_simplex(3)


@pytest.mark.parametrize("shape", ["random", "random-o", "cube", "probe-simplex"])
def test_gen_is_byte_stable(shape, capsys):
    a = run(["gen", "--shape", shape, "--n", "4", "--seed", "9"], capsys)[1]
    b = run(["gen", "--shape", shape, "--n", "4", "--seed", "9"], capsys)[1]
    assert a == b and Polytope.from_json(a).n == 4


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("LPPROJ_SEED", "9")
    a = run(["gen", "--shape", "random", "--n", "3"], capsys)[1]
    b = run(["gen", "--shape", "random", "--n", "3", "--seed", "9"], capsys)[1]
    c = run(["gen", "--shape", "random", "--n", "3", "--seed", "10"], capsys)[1]
    assert a == b != c


def test_body_and_eval(t3, tmp_path, capsys):
    body = tmp_path / "b.json"
    assert main(["body", "--op", "pi-plus", "--p", "2", "--in", str(t3), "--out", str(body)]) == 0
    f = SignedLpFunction.from_json(body.read_text())
    assert len(f.pos.terms) == 1 and f.neg.is_zero
    for d, expect in (("1,0,0", "0.5"), ("0,0,0", "0"), ("-1,0,0", "0")):
        code, out, _ = run(["eval", "--body", str(body), "--dir", d], capsys)
        assert code == 0 and out.strip() == expect


def test_body_neg_on_simplex_is_empty(t3, capsys):
    code, out, _ = run(["body", "--op", "pi-plus-neg", "--p", "2", "--in", str(t3)], capsys)
    data = json.loads(out)
    assert code == 0 and data["pos"]["terms"] == [] and data["neg"]["terms"] == []


@pytest.mark.parametrize("op", [o.value for o in Op if not o.needs_origin])
def test_body_then_eval_matches_in_process(op, tmp_path, capsys):
    src = tmp_path / "e.json"
    src.write_text(shifted_simplex(3).to_json())
    body = tmp_path / "b.json"
    assert main(["body", "--op", op, "--p", "2.5", "--in", str(src), "--out", str(body)]) == 0
    _, out, _ = run(["eval", "--body", str(body), "--dir", "-0.3,1.1,0.7"], capsys)
    expect = apply(Op(op), shifted_simplex(3), 2.5)((-0.3, 1.1, 0.7))
    assert out.strip() == f"{expect:.15g}"


def test_body_precondition_exit_code(tmp_path, capsys):
    src = tmp_path / "e.json"
    src.write_text(shifted_simplex(3).to_json())
    code, _, err = run(["body", "--op", "pi-plus", "--p", "2", "--in", str(src)], capsys)
    assert code == 3 and "origin" in err


@pytest.mark.parametrize("text", ["{bad", '{"n": 3, "vertices": [[0.5, 0, 0]]}', "[]"])
def test_body_parse_error(text, tmp_path, capsys):
    src = tmp_path / "bad.json"
    src.write_text(text)
    assert run(["body", "--op", "pi-plus", "--p", "2", "--in", str(src)], capsys)[0] == 2


@pytest.mark.parametrize("argv", [
    ["body", "--op", "pi-plus", "--p", "1", "--in", "x.json"],
    ["body", "--op", "nope", "--p", "2", "--in", "x.json"],
    ["eval", "--body", "missing.json", "--dir", "1,0,0"],
    ["verify", "--suite", "nope"],
    ["verify", "--suite", "valuation", "--cases", "0"],
    ["gen", "--shape", "simplex", "--n", "1"],
    [],
])
def test_usage_errors(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_eval_direction_length(t3, tmp_path, capsys):
    body = tmp_path / "b.json"
    main(["body", "--op", "pi-plus", "--p", "2", "--in", str(t3), "--out", str(body)])
    assert run(["eval", "--body", str(body), "--dir", "1,0"], capsys)[0] == 2


def test_verify_classification_needs_three_dimensions(capsys):
    code, _, err = run(["verify", "--suite", "classification", "--n", "2"], capsys)
    assert code == 2 and "n >= 3" in err


def test_verify_all_passes_and_is_stable(capsys):
    argv = ["verify", "--suite", "all", "--n", "3", "--p", "2", "--cases", "50", "--seed", "7"]
    code, out, _ = run(argv, capsys)
    assert code == 0
    reports = [json.loads(line) for line in out.splitlines()]
    assert all(r["passed"] for r in reports)
    assert {r["name"].split("[")[0] for r in reports} >= {"valuation", "classification"}
    assert run(argv, capsys)[1] == out


def test_verify_all_in_the_plane_skips_classification(capsys):
    code, out, _ = run(["verify", "--suite", "all", "--n", "2", "--cases", "3"], capsys)
    assert code == 0 and "classification" not in out


def test_verify_corrupted_operator_fails(capsys):
    code, out, _ = run(["verify", "--suite", "valuation", "--cases", "5", "--corrupt"], capsys)
    assert code == 1
    assert not any(json.loads(line)["passed"] for line in out.splitlines())
