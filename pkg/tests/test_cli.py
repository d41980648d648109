import json

import pytest

from uqgalois.cli import main, parse_context, UsageError
from uqgalois.suites import default_grid, parse_grid, GridError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_eval_examples(capsys):
    assert run(capsys, "eval", "Uq(+,-)", "E*F - F*E")[1] == "(q/(q^2 - 1))*K^2 + (q/(q^2 - 1))*K^-2"
    assert run(capsys, "eval", "B(+,+;1)", "xs*x")[1] == "-z^2 + z - q^2"
    for ctx in ("Uq(0)", "A(1,-1;2)", "B(-,0;0)", "D(+,+;1)", "Pol(sl2c)", "Pol(0)"):
        assert run(capsys, "eval", ctx, "1") == (0, "1", "")


def test_eval_at_q(capsys):
    code, out, _ = run(capsys, "eval", "Uq(+)", "K*K^-1 + q/2", "--q", "1/4")
    assert code == 0 and out == "(9/8)"


def test_round_trip_through_cli(capsys):
    _, out, _ = run(capsys, "eval", "A(1,1;1)", "(E + F*K)^2")
    _, again, _ = run(capsys, "eval", "A(1,1;1)", out)
    assert again == out


def test_nf_json(capsys):
    code, out, _ = run(capsys, "nf", "Uq(+)", "E*K", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["terms"] == [{"monomial": "K*E", "coeff": "1/q"}]


def test_delta_antipode_act_pair_gamma(capsys):
    assert run(capsys, "delta", "Uq(+)", "E")[1] == "[E (x) K] + [K^-1 (x) E]"
    assert run(capsys, "delta", "Pol(+)", "a")[1] == "[a (x) a] + [c (x) b]"
    assert run(capsys, "antipode", "Uq(+,-)", "E")[1] == "-q*E"
    assert run(capsys, "act", "B(+,+;1)", "E", "z")[1] == "(1/s)*xs"
    assert run(capsys, "act", "A(+,-;2)", "K", "F*K")[1] == "(1/q)*F*K"
    assert run(capsys, "pair", "--mu", "+", "E", "b*a")[1] == "1/s"
    assert run(capsys, "gamma", "--params", "0,1,3", "x")[1] == "[x (x) a0^2] + 3*[1 (x) a0*b0]"


def test_delta_with_middle_label(capsys):
    code, out, _ = run(capsys, "delta", "Uq(+,-)", "K", "--ups", "0")
    assert code == 0 and out == "[K (x) K]"


@pytest.mark.parametrize("argv", [
    ("eval", "Uq(2)", "E"),
    ("eval", "Uq(+)", "E^-1"),
    ("eval", "Uq(+)", "E*"),
    ("eval", "Uq(+)", "x"),
    ("eval", "Foo(+)", "1"),
    ("eval", "A(+,+)", "1"),
    ("eval", "D(+,+;1)", "K"),
    ("delta", "B(+,+;1)", "x"),
    ("act", "Uq(+)", "E", "F"),
    ("gamma", "--params", "1,1", "x"),
    ("verify", "--suite", "casimir", "--grid", "1,2,0"),
    ("verify", "--suite", "casimir", "--grid", "junk"),
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("uqgalois: error:")


def test_unknown_suite_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nosuch"])
    assert exc.value.code == 2


def test_contexts_validated_before_parsing():
    with pytest.raises(Exception) as exc:
        parse_context("Uq(5)")
    assert "5" in str(exc.value)
    with pytest.raises(UsageError):
        parse_context("B(1,1;x)")


def test_grid_parsing():
    assert len(default_grid()) == 45
    assert parse_grid("1,-1,2; 0,0,0") == [(1, -1, 2), (0, 0, 0)]
    assert parse_grid("+,-,1/2")[0][2] == 0.5
    with pytest.raises(GridError):
        parse_grid("1,1")


def test_verify_casimir_json(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, text, _ = run(capsys, "verify", "--suite", "casimir", "--format", "json", "--output", str(out))
    doc = json.loads(out.read_text())
    assert code == 0 and "0 fail" in text
    assert doc["schema_version"] and doc["tool_version"] and doc["seed"] == 0
    assert {(e["params"]["mu"], e["params"]["nu"]) for e in doc["entries"]} == {
        (m, n) for m in ("-1", "0", "1") for n in ("-1", "0", "1")}
    assert doc["summary"]["fail"] == 0 and doc["summary"]["total"] == len(doc["entries"])
    keys = [(e["id"], json.dumps(e["params"], sort_keys=True)) for e in doc["entries"]]
    assert keys == sorted(keys)
    for e in doc["entries"]:
        assert set(e) >= {"id", "params", "status", "witness", "elapsed", "suite"}


def test_verify_text_and_grid(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "coideal", "--grid", "1,-1,1;1,1,1")
    assert code == 0 and out.splitlines()[-1].startswith("total:")


def test_verify_ergodic_degree_flag(capsys, tmp_path):
    out = tmp_path / "e.json"
    run(capsys, "verify", "--suite", "ergodic", "--degree", "3", "--grid", "0,0,0", "--format", "json",
        "--output", str(out))
    doc = json.loads(out.read_text())
    assert {e["params"]["degree"] for e in doc["entries"]} == {3}


def test_list(capsys):
    code, out, _ = run(capsys, "list", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and "all" in doc["suites"] and "Pol(0)" in doc["contexts"]


def test_report_matches_schema(capsys, tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    from pathlib import Path
    schema = json.loads((Path(__file__).parents[1] / "docs" / "report_schema.json").read_text())
    out = tmp_path / "r.json"
    run(capsys, "verify", "--suite", "coideal", "--grid", "1,-1,1;0,0,0", "--format", "json", "--output", str(out))
    jsonschema.validate(json.loads(out.read_text()), schema)
