import json

import pytest

from lisbon.cli import main
from lisbon.exactpoly import SigmaPoly


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dn_table(capsys):
    code, out, _ = run(capsys, "dn-table", "--k", "2", "--max-m", "2")
    assert code == 0
    assert out.splitlines() == ["DN_-1 = 0", "DN_0 = 1", "DN_1 = s1", "DN_2 = s1^2 - s2"]


def test_newton_table(capsys):
    code, out, _ = run(capsys, "newton-table", "--k", "1", "--max-m", "2")
    assert out.splitlines() == ["N_0 = 1", "N_1 = s1", "N_2 = s1^2"]


def test_table_json_round_trip(capsys):
    code, out, _ = run(capsys, "dn-table", "--k", "3", "--max-m", "5", "--json")
    doc = json.loads(out)
    assert doc["schema"] == 1 and doc["kind"] == "dn" and doc["k"] == 3
    for row in doc["rows"]:
        p = SigmaPoly.parse(row["poly"], 3)
        assert str(p) == row["poly"]


def test_eval_examples(capsys):
    _, out, _ = run(capsys, "eval", "F", "--f", "exp:1", "--sigma", "3,2")
    assert abs(complex(out.strip().replace("i", "j")) - 10.107337927389695) < 1e-9
    _, out, _ = run(capsys, "eval", "Phi", "--f", "poly:1", "--k", "3", "--sigma", "1,1,1")
    assert out.strip() == "(0, 0, 1)"
    _, out, _ = run(capsys, "eval", "T", "--f", "poly:0,1", "--sigma", "3,2")
    assert out.strip() == "3"


def test_eval_cross_check(capsys):
    code, out, _ = run(capsys, "eval", "Ftilde", "--f", "exp:1", "--sigma", "1+1i,2", "--cross-check", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["deviation"] < 1e-9


def test_degenerate_roots_exit(capsys):
    code, _, err = run(capsys, "eval", "Ttilde", "--f", "poly:1", "--sigma", "2,1")
    assert code != 0 and "DegenerateRoots" in err


def test_arity_mismatch(capsys):
    code, _, err = run(capsys, "eval", "F", "--f", "poly:1", "--sigma", "1,2", "--k", "3")
    assert code != 0


def test_bad_flags():
    with pytest.raises(SystemExit):
        main(["eval", "F"])
    with pytest.raises(SystemExit):
        main(["verify", "kernels", "--k", "9"])


def test_verify_kernels(capsys):
    code, out, _ = run(capsys, "verify", "kernels", "--k", "2", "--max-w", "4", "--json")
    doc = json.loads(out)
    assert code == 0
    assert len(doc["reports"]) == 5
    assert all(r["pass"] and r["params"]["dim"] == 1 for r in doc["reports"])
    assert [r["params"]["w"] for r in doc["reports"]] == [0, 1, 2, 3, 4]


def test_verify_lemma_and_equivalence(capsys):
    assert run(capsys, "verify", "lemmas", "--lemma", "derive", "--k", "3", "--max-m", "6")[0] == 0
    code, out, _ = run(capsys, "verify", "equivalence", "--k", "2", "--f", "exp:1", "--samples", "5", "--json")
    doc = json.loads(out)
    assert code == 0
    assert all(r["params"]["seed"] == 0 for r in doc["reports"])


def test_failing_suite_exits_nonzero(capsys):
    code, out, _ = run(capsys, "verify", "lemmas", "--lemma", "poids", "--k", "2", "--max-m", "3", "--json")
    doc = json.loads(out)
    assert code == 1
    assert [r["pass"] for r in doc["reports"]] == [True, False, False]


def test_byte_identical(capsys):
    argv = ["verify", "equivalence", "--k", "3", "--f", "exp:1", "--samples", "3", "--seed", "7", "--json"]
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first
    other = run(capsys, *argv[:-3], "--seed", "8", "--json")[1]
    assert other != first


def test_timing_flag(capsys):
    _, out, _ = run(capsys, "verify", "kernels", "--k", "3", "--max-w", "6", "--json", "--timing")
    assert "runtime_ms" in json.loads(out)["reports"][0]
