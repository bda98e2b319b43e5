import json

import pytest

from reflexop.cli import main
from reflexop.fixtures import NAMES, load_fixture
from reflexop.formats import ProblemError, dumps, load_problem, parse_problem, parse_subspace
from reflexop.subspace import Subspace


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_fixture_list(capsys):
    code, out, _ = run(capsys, "fixtures", "--list")
    assert code == 0 and len(json.loads(out)) == 8
    code, out, _ = run(capsys, "fixtures", "--list", "--format", "text")
    assert out.split() == list(NAMES)


def test_analyze_fixtures(capsys):
    code, out, _ = run(capsys, "analyze", "unit-e12")
    rep = json.loads(out)
    assert code == 0
    assert rep["verdict"]["status"] == "ReflexiveExact"
    assert rep["m"]["dim"] == 1 and rep["a_algebra"]["dim"] == 3
    assert rep["theorem_check"]["ii"] is True

    code, out, _ = run(capsys, "analyze", "jordan")
    rep = json.loads(out)
    assert code == 0
    assert rep["verdict"]["status"] == "NonReflexiveExact"
    assert rep["verdict"]["witnesses"] == [[["1", "0"], ["0", "0"]]]
    assert rep["verdict"]["provenance"] == "supplied-lattice"

    code, out, _ = run(capsys, "analyze", "zero")
    rep = json.loads(out)
    assert rep["verdict"]["status"] == "ReflexiveExact" and rep["a_algebra"]["dim"] == 4


def test_fixtures_run(capsys):
    code, out, _ = run(capsys, "fixtures", "--run", "diag2")
    assert code == 0 and json.loads(out)["verdict"]["status"] == "ReflexiveExact"
    code, out, _ = run(capsys, "fixtures", "--run", "scalars")
    assert code == 0 and json.loads(out)["verdict"]["status"] == "ReflexiveCertifiedByDim"


def test_inconclusive_exit_code(tmp_path, capsys):
    prob = load_fixture("jordan")
    data = prob.to_json()
    del data["supplied_lat_a"], data["supplied_lat_b_perp"]
    f = tmp_path / "j.json"
    f.write_text(json.dumps(data))
    code, out, _ = run(capsys, "analyze", str(f))
    assert code == 2
    assert json.loads(out)["verdict"]["status"] == "InconclusiveUpperBound"


def test_analyze_deterministic(capsys):
    _, a, _ = run(capsys, "analyze", "uppertri3", "--seed", "5")
    _, b, _ = run(capsys, "analyze", "uppertri3", "--seed", "5")
    assert a == b


def test_galois_examples(capsys):
    code, out, _ = run(capsys, "galois", "unit-e12", "--p", "full")
    assert code == 0 and json.loads(out)["phi"]["fixpoint"] == [["0", "1"]]
    for name in NAMES:
        h2 = load_fixture(name).h2
        code, out, _ = run(capsys, "galois", name, "--p", "zero")
        got = parse_subspace(json.loads(out)["phi"]["fixpoint"], h2)
        assert code == 0 and got == Subspace.full(h2)
    code, out, _ = run(capsys, "galois", "unit-e12", "--q", "e2")
    assert json.loads(out)["theta"]["fixpoint"] == [["1", "0"], ["0", "1"]]


def test_galois_domain_error(capsys):
    code, _, err = run(capsys, "galois", "unit-e12", "--p", "e2")
    assert code == 1 and "not invariant" in err
    code, _, err = run(capsys, "galois", "unit-e12", "--p", "e7")
    assert code == 1 and "out of range" in err


@pytest.mark.parametrize("name, suite", [("unit-e12", "all"), ("jordan", "prop33"), ("zero", "theo35"),
                                         ("scalars", "all")])
def test_check_suites(capsys, name, suite):
    code, out, _ = run(capsys, "check", name, "--suite", suite, "--pairs", "40")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] is True


def test_check_unknown_suite(capsys):
    code, _, err = run(capsys, "check", "zero", "--suite", "nope")
    assert code == 1 and "unknown suite" in err


def test_missing_input(capsys):
    code, _, err = run(capsys, "analyze", "no-such-thing")
    assert code == 1 and "no such file" in err


def test_parse_error_location(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text('{\n  "h1": 2,\n  "h2": 2\n  "basis": []\n}\n')
    code, _, err = run(capsys, "analyze", str(f))
    assert code == 1 and f"{f}:4:3" in err


@pytest.mark.parametrize("data, where", [
    ({"h1": 0, "h2": 2}, "h1"),
    ({"h1": 2, "h2": 2, "basis": [[["1", "x"], ["0", "0"]]]}, "basis[0][0][1]"),
    ({"h1": 2, "h2": 2, "basis": [[["1", "0"]]]}, "basis[0]"),
    ({"h1": 2, "h2": 2, "basis": [], "supplied_lat_a": ["zero"]}, "supply both"),
    ({"h1": 2, "h2": 2, "basis": [[["0", "1"], ["0", "0"]]],
      "supplied_lat_a": ["e2"], "supplied_lat_b_perp": ["zero"]}, "supplied lattices"),
])
def test_problem_errors(data, where):
    with pytest.raises(ProblemError) as exc:
        parse_problem(data)
    assert where in str(exc.value)


@pytest.mark.parametrize("name", NAMES)
def test_problem_round_trip(tmp_path, name):
    prob = load_fixture(name)
    f = tmp_path / f"{name}.json"
    f.write_text(dumps(prob.to_json()))
    again = load_problem(f)
    assert again.space == prob.space and again.name == prob.name
    assert again.supplied_lat_a == prob.supplied_lat_a


def test_text_format(capsys):
    code, out, _ = run(capsys, "analyze", "jordan", "--format", "text")
    assert code == 0 and "NonReflexiveExact" in out and "witness" in out
