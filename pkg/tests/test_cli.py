import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from pdring.cli import CHECK_FAILED, INPUT_ERROR, NEGATIVE, OK, main
from pdring.classify import family_instances, load_table
from pdring.divisor import nd, normalize
from pdring.errors import ParseError
from pdring.parsing import parse_divisor, parse_rational
from pdring.render import render_graph
from pdring.report import analyze
from pdring.resolution import DualGraph, dual_graph, fundamental_cycle, multiplicity


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_examples():
    q = parse_divisor("2 - 1/2 - 2/3 - 4/5")
    assert q.terms == {"P0": 2, "P1": F(-1, 2), "P2": F(-2, 3), "P3": F(-4, 5)}
    assert normalize(parse_divisor("2 - 3/5 - 4/5 - 1/2")) == nd(2, "3/5", "4/5", "1/2")
    assert parse_divisor("1/2@A + 2/3@A").terms == {"A": F(7, 6)}
    assert parse_divisor("  3 -1/2@P1 - 1/3 ").terms == {"P0": 3, "P1": F(-1, 2), "P2": F(-1, 3)}
    assert parse_divisor('{"P0": 2, "Q": "-1/2"}').terms == {"P0": 2, "Q": F(-1, 2)}
    assert parse_rational("7/5") == F(7, 5)


@pytest.mark.parametrize("text,pos", [
    ("", 0), ("2 - 1/0", 6), ("2 - /3", 4), ("2 3", 2), ("2 - 1/2@", 8), ("2 - x", 4),
])
def test_parse_errors(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_divisor(text)
    assert exc.value.position == pos


@pytest.mark.parametrize("text", ['{"A": "1/2", "A": "1/3"}', '{"A": 0.5}', '[1, 2]',
                                  '{"A": "1/0"}', '{"A": '])
def test_parse_json_errors(text):
    with pytest.raises(ParseError):
        parse_divisor(text)


def test_hj(capsys):
    code, out, _ = run(capsys, "hj", "7/5", "--json")
    assert code == OK
    assert json.loads(out) == {"value": "7/5", "expansion": [2, 2, 3],
                               "tails": ["7/5", "5/3", "3/1"], "t_signature": [3]}
    code, _, err = run(capsys, "hj", "1/2")
    assert code == INPUT_ERROR and "domain_error" in err


def test_analyze_ex1(capsys):
    code, out, _ = run(capsys, "analyze", "2 - 3/5 - 4/5 - 1/2", "--p", "2", "--p", "5",
                       "--json", "--verify")
    assert code == OK
    data = json.loads(out)
    assert data["multiplicity"] == 3
    assert data["f_rationality"]["5"]["outcome"] == "not_f_rational"
    assert data["f_rationality"]["5"]["witness"]["n"] == 1
    assert data["fundamental_cycle"] == {"n0": 5, "branch_coeffs": [[3, 1], [4, 3, 2, 1], [3]]}
    assert all(c["ok"] for c in data["checks"])
    assert data["family_matches"][0]["family"] == "e3.9"
    code, _, _ = run(capsys, "analyze", "2 - 3/5 - 4/5 - 1/2", "--p", "5", "--expect", "f-rational")
    assert code == NEGATIVE


def test_analyze_other_examples(capsys):
    code, out, _ = run(capsys, "analyze", "2 - 1/3 - 1/3 - 1/3", "--json",
                       "--expect", "f-rational")
    assert code == OK
    data = json.loads(out)
    assert set(data["f_rationality"]) == {"2", "3", "5", "7"}
    code, out, _ = run(capsys, "analyze", "4", "--json", "--verify")
    data = json.loads(out)
    assert code == OK and data["multiplicity"] == 4 and data["failing_primes"] == []
    code, out, _ = run(capsys, "analyze", "2 - 1/2 - 1/2 - 1/2 - 1/3", "--expect", "rational")
    assert code == NEGATIVE and "not_rational" in out
    code, _, err = run(capsys, "analyze", "1 - 1/2 - 1/2")
    assert code == INPUT_ERROR and "not ample" in err
    code, out, _ = run(capsys, "analyze", "1 - 1/2 - 1/3", "--json")
    assert code == OK and "dual_graph_error" in json.loads(out)


def test_analyze_input_errors(capsys):
    assert run(capsys, "analyze", "2 - 1/0")[0] == INPUT_ERROR
    assert run(capsys, "analyze", "2 - 1/2", "--p", "4")[0] == INPUT_ERROR
    assert run(capsys, "nonsense")[0] == INPUT_ERROR
    assert run(capsys, "classify")[0] == INPUT_ERROR


def test_json_deterministic(capsys):
    outs = {run(capsys, "analyze", "2 - 1/2 - 2/3 - 7/9", "--json", "--verify")[1]
            for _ in range(3)}
    assert len(outs) == 1
    data = json.loads(outs.pop())
    assert data["schema"] == "pdring.analysis/1"
    assert data["degree"] == "1/18" and data["period"] == 18


def test_failing_primes_cmd(capsys):
    code, out, _ = run(capsys, "failing-primes", "2 - 3/5 - 4/5 - 1/2", "--json")
    assert code == OK
    assert json.loads(out)["failing_primes"] == [2, 5]
    assert run(capsys, "failing-primes", "2 - 3/5 - 4/5 - 1/2", "--expect-none")[0] == NEGATIVE
    code, out, _ = run(capsys, "failing-primes", "2 - 1/3 - 1/3 - 1/3")
    assert code == OK and out == "none\n"


def test_classify_cmd(capsys):
    code, out, _ = run(capsys, "classify", "--multiplicity", "3", "--max-denominator", "3",
                       "--max-points", "3", "--max-param", "3", "--json")
    assert code == OK
    rep = json.loads(out)
    assert rep["ok"] and rep["unmatched"] == []


def test_threshold_cmd(capsys):
    code, out, _ = run(capsys, "threshold", "--multiplicity", "3", "--primes", "7", "11",
                       "--max-param", "3", "--expect-none")
    assert code == OK and "p=7: 0 failures" in out
    code, out, _ = run(capsys, "threshold", "--multiplicity", "3", "--primes", "5",
                       "--max-param", "3", "--expect-none")
    assert code == NEGATIVE and "not F-rational" in out


def test_render(capsys):
    code, out, _ = run(capsys, "render", "2 - 3/5 - 4/5 - 1/2")
    assert code == OK
    assert out.splitlines()[0] == "E0 [-2 (5)]"
    assert "[-2 (4)] --- [-2 (3)] --- [-2 (2)] --- [-2 (1)]" in out
    code, out, _ = run(capsys, "render", "2 - 7/9 - 1/2 - 2/3", "--format", "dot")
    assert out.startswith("graph dual {") and out.rstrip().endswith("}")
    assert out.count(" -- ") == 7
    assert render_graph(DualGraph(3, ()), None, "dot").count("[label=") == 1
    assert render_graph(DualGraph(3, ()), None, "ascii").strip() == "E0 [-3]"


def test_render_chain_lengths():
    g = dual_graph(nd(2, "7/9", "1/2", "2/3"))
    lines = render_graph(g, None, "ascii").splitlines()[1:]
    assert [line.count("[") for line in lines] == [4, 1, 2]


def test_cycle_check_exit_code(capsys, monkeypatch):
    import pdring.report as report
    monkeypatch.setattr(report, "cycle_square", lambda g, z: 0)
    code, _, err = run(capsys, "analyze", "2 - 3/5 - 4/5 - 1/2", "--verify")
    assert code == CHECK_FAILED and "multiplicity_is_minus_Z_squared" in err


def test_parse_analyze_agrees_with_library():
    for table in ("e3", "e4"):
        for f in load_table(table):
            for _, d in list(family_instances(f, 2))[:3]:
                text = f"{d.s}" + "".join(f" - {a}" for a in d.fractions)
                rep = analyze(text, primes=[2, 3], verify=True)
                assert rep.normalized == d
                assert rep.failed_checks == []
                m = multiplicity(d)
                assert rep.to_dict()["multiplicity"] == m.value
                json.loads(rep.to_json())


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "pdring", "hj", "9/7"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.startswith("9/7 = [[2, 2, 2, 3]]")
