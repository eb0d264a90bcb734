import json

import pytest

from semiprime_lab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    payload = json.loads(out)
    assert payload["schema_version"] == 1
    return payload


def test_semigroup_json(capsys):
    payload = run_json(capsys, "semigroup", "--gens", "2,5")
    assert payload["generators"] == [2, 5]
    assert payload["gaps"] == [1, 3]
    assert payload["frobenius"] == 3
    assert payload["conductor"] == 4


def test_semigroup_not_coprime_exit_code(capsys):
    code, out, err = run(capsys, "semigroup", "--gens", "2,4")
    assert code == 1
    assert "NotCoprime" in err


def test_canon_text_output(capsys):
    code, out, _ = run(capsys, "canon", "--gens", "2,5", "--p", "2",
                       "--elem", "t^4+t^5+t^6+t^7")
    assert code == 0
    assert "(t^4+t^5)" in out
    assert "PRINCIPAL(4; 1, 0)" in out


def test_canon_unit_input_is_domain_error(capsys):
    code, out, err = run(capsys, "canon", "--gens", "2,5", "--p", "2", "--elem", "1+t^2")
    assert code == 1
    assert "UnitInput" in err


def test_ideals_enumerate_json(capsys):
    payload = run_json(capsys, "ideals", "enumerate", "--gens", "2,5", "--p", "2",
                       "--max-order", "2", "--json")
    assert payload["count"] == 4
    labels = [rec["label"] for rec in payload["ideals"]]
    assert labels == ["R", "(t^2)", "(t^2, t^5)", "(t^2+t^5)"]


def test_ideals_classify_json(capsys):
    payload = run_json(capsys, "ideals", "classify", "--gens", "2,5", "--p", "2",
                       "--ideal", "t^4+t^5, t^7", "--json")
    assert payload["shape"] == "TWO_GEN_A(4; 1)"
    assert payload["min_generators"] == 2


def test_lattice_deterministic_and_file_output(tmp_path, capsys):
    code, first, _ = run(capsys, "lattice", "--gens", "2,5", "--p", "2", "--max-order", "5")
    assert code == 0 and first.startswith("digraph")
    out_file = tmp_path / "lat.dot"
    code, _, _ = run(capsys, "lattice", "--gens", "2,5", "--p", "2", "--max-order", "5",
                     "--out", str(out_file))
    assert code == 0
    assert out_file.read_text() == first


def test_verify_fc_345(capsys):
    payload = run_json(capsys, "verify", "--op", "fc_345", "--gens", "3,4,5", "--p", "2",
                       "--max-order", "5", "--axioms", "1-5", "--expect-pass")
    assert payload["passed"] is True
    assert payload["axioms"]["4"]["skipped"] == 0


def test_verify_expect_pass_failure(capsys):
    code, out, _ = run(capsys, "verify", "--op", "integral_closure", "--gens", "2,5",
                       "--p", "2", "--max-order", "6", "--axioms", "5", "--expect-pass")
    assert code == 1
    payload = json.loads(out)
    assert payload["passed"] is False
    assert payload["axioms"]["5"]["witnesses"]


def test_search_expect_identity_only(capsys):
    code, out, _ = run(capsys, "search", "--gens", "2,5", "--p", "2", "--max-order", "8",
                       "--margin", "2", "--json", "--expect-identity-only")
    assert code == 0
    assert json.loads(out)["operation_count"] == 1


def test_search_345_not_identity_only(capsys):
    code, out, _ = run(capsys, "search", "--gens", "3,4,5", "--p", "2", "--max-order", "7",
                       "--margin", "2", "--json", "--expect-identity-only")
    assert code == 1
    assert json.loads(out)["operation_count"] >= 2


def test_demo_fractional_dvr(capsys):
    payload = run_json(capsys, "demo-fractional", "--dvr", "--D", "6",
                       "--candidate", "bounded:m=2")
    assert payload["outcome"] == "witness"
    assert payload["verified"] is True
    assert payload["witness"]["j"] == -1


def test_demo_fractional_element_chain(capsys):
    payload = run_json(capsys, "demo-fractional", "--gens", "2,5", "--p", "2",
                       "--s", "t^2", "--D", "5", "--candidate", "bounded:m=1")
    assert payload["outcome"] == "witness"
    assert payload["chain"]["kind"] == "element"


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_budget_env_override(capsys, monkeypatch):
    monkeypatch.setenv("SEMIPRIME_LAB_BUDGET", "10")
    code, out, err = run(capsys, "search", "--gens", "2,5", "--p", "2",
                         "--max-order", "6", "--json")
    assert code == 1
    assert "BudgetExceeded" in err
