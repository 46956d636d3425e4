"""End-to-end tests of the command line interface.

Exit code convention: 0 for the affirmative outcome, 1 for the negative
outcome, 2 for malformed input.
"""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from mmv.cli import main

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
MODEL = str(CORPUS / "models" / "two-worlds.json")


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, *args, **kwargs):
    return runner.invoke(main, list(args), catch_exceptions=False, **kwargs)


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------


def test_eval_human_output(runner):
    result = invoke(runner, "eval", "--model", MODEL, "--formula", "[]p")
    assert result.exit_code == 0
    assert result.output.strip() == "[1/2, 1/2]"


def test_eval_json_output(runner):
    result = invoke(runner, "eval", "--model", MODEL, "--formula", "[]p", "--json")
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data == {
        "formula": "[]p",
        "values": ["1/2", "1/2"],
        "holds": False,
    }


def test_eval_holds_flag_true_for_designated_value(runner):
    result = invoke(
        runner, "eval", "--model", MODEL, "--formula", "p \\/ ~p \\/ q", "--json"
    )
    data = json.loads(result.output)
    assert data["holds"] is True
    assert data["values"] == ["1", "1"]


def test_eval_rejects_unparsable_formula(runner):
    result = invoke(runner, "eval", "--model", MODEL, "--formula", "p -> (q")
    assert result.exit_code == 2
    assert "cannot parse formula" in result.output


def test_eval_rejects_unknown_variable(runner):
    result = invoke(runner, "eval", "--model", MODEL, "--formula", "r")
    assert result.exit_code == 2
    assert "assigns no value to 'r'" in result.output


def test_eval_rejects_malformed_model(runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    result = invoke(runner, "eval", "--model", str(bad), "--formula", "p")
    assert result.exit_code == 2


# ---------------------------------------------------------------------------
# model-check
# ---------------------------------------------------------------------------


def test_model_check_consistent(runner):
    result = invoke(
        runner, "model-check", "--model", MODEL, "--formula", "<>p"
    )
    assert result.exit_code == 0


def test_model_check_countermodel(runner):
    result = invoke(
        runner, "model-check", "--model", MODEL, "--formula", "[]p"
    )
    assert result.exit_code == 1


def test_model_check_with_premises(runner, tmp_path):
    gamma = tmp_path / "gamma.txt"
    gamma.write_text("<>p\n")
    consistent = invoke(
        runner, "model-check", "--model", MODEL, "--gamma", str(gamma),
        "--formula", "<>q",
    )
    assert consistent.exit_code == 0
    # a premise that is not designated makes the structure irrelevant
    gamma.write_text("[]p\n")
    inapplicable = invoke(
        runner, "model-check", "--model", MODEL, "--gamma", str(gamma),
        "--formula", "q",
    )
    assert inapplicable.exit_code == 1
    assert "not-applicable" in inapplicable.output


def test_gamma_parse_error_reports_line(runner, tmp_path):
    gamma = tmp_path / "gamma.txt"
    gamma.write_text("# fine\np ->\n")
    result = invoke(
        runner, "model-check", "--model", MODEL, "--gamma", str(gamma),
        "--formula", "p",
    )
    assert result.exit_code == 2
    assert "gamma.txt:2:" in result.output


# ---------------------------------------------------------------------------
# refute
# ---------------------------------------------------------------------------


def test_refute_finds_collapse_countermodel(runner):
    result = invoke(runner, "refute", "--formula", "<>p -> []p", "--json")
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["verdict"] == "countermodel"
    assert (data["m"], data["n"]) == (1, 2)
    assert data["valuation"] == {"p": ["1", "0"]}


def test_refute_human_output(runner):
    result = invoke(runner, "refute", "--formula", "<>p -> []p")
    assert result.exit_code == 0
    assert "countermodel (m=1, n=2" in result.output
    assert "p = [1, 0]" in result.output


def test_refute_width_restriction_exhausts(runner):
    result = invoke(
        runner,
        "refute",
        "--formula",
        "<>p -> []p",
        "--width",
        "1",
        "--m-max",
        "2",
    )
    assert result.exit_code == 1
    assert "exhausted" in result.output


def test_refute_jobs_matches_serial(runner):
    serial = invoke(runner, "refute", "--formula", "<>p -> []p", "--json")
    parallel = invoke(
        runner, "refute", "--formula", "<>p -> []p", "--jobs", "2", "--json"
    )
    assert json.loads(serial.output) == json.loads(parallel.output)


def test_refute_honors_seed_env(runner):
    result = invoke(
        runner,
        "refute",
        "--formula",
        "<>p -> []p",
        "--json",
        env={"MMV_SEED": "42"},
    )
    assert json.loads(result.output)["seed"] == 42


def test_refute_with_gamma_file(runner):
    result = invoke(
        runner,
        "refute",
        "--formula",
        "[]p \\/ []q",
        "--gamma",
        str(CORPUS / "premises" / "box-join.txt"),
        "--json",
    )
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["valuation"] == {"p": ["1", "0"], "q": ["0", "1"]}


# ---------------------------------------------------------------------------
# prove
# ---------------------------------------------------------------------------


def test_prove_accepts_corpus_proof(runner):
    result = invoke(runner, "prove", str(CORPUS / "proofs" / "dia-from-p.json"))
    assert result.exit_code == 0
    assert result.output.strip() == "Accept"


def test_prove_accept_bounded(runner):
    result = invoke(
        runner, "prove", str(CORPUS / "proofs" / "boxinf-bounded.json")
    )
    assert result.exit_code == 0
    assert result.output.strip() == "Accept-Bounded (audited up to bound 1)"


def test_prove_rejects_with_step_diagnostic(runner, tmp_path):
    data = json.loads((CORPUS / "proofs" / "dia-from-p.json").read_text())
    data["steps"][1]["by"] = "axiom:T-Box"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    result = invoke(runner, "prove", str(bad))
    assert result.exit_code == 1
    assert result.output.startswith("Reject at step 1:")


def test_prove_boxinf_bound_cap(runner):
    path = str(CORPUS / "proofs" / "boxinf-bounded.json")
    ok = invoke(runner, "prove", path, "--boxinf-bound", "3")
    assert ok.exit_code == 0
    capped = invoke(runner, "prove", path, "--boxinf-bound", "0")
    assert capped.exit_code == 1
    assert "exceeds --boxinf-bound 0" in capped.output


def test_prove_width_axiom(runner, tmp_path):
    proof = tmp_path / "w1.json"
    proof.write_text(
        json.dumps(
            {
                "premises": [],
                "steps": [
                    {
                        "formula": "[](p \\/ q) -> []p \\/ []q",
                        "by": "axiom:W1",
                    }
                ],
            }
        )
    )
    assert invoke(runner, "prove", str(proof), "--width", "1").exit_code == 0
    rejected = invoke(runner, "prove", str(proof))
    assert rejected.exit_code == 1
    assert "unknown axiom 'W1'" in rejected.output


def test_prove_malformed_file(runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"premises": [], "steps": []}))
    result = invoke(runner, "prove", str(bad))
    assert result.exit_code == 2


# ---------------------------------------------------------------------------
# audit
# ---------------------------------------------------------------------------


def test_audit_axioms_clean(runner):
    result = invoke(
        runner,
        "audit",
        "axioms",
        "--trials",
        "2",
        "--m-max",
        "2",
        "--n-max",
        "2",
        "--json",
    )
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["violations"] == []


def test_audit_rules_clean(runner):
    result = invoke(
        runner, "audit", "rules", "--rule", "prelinearity", "--trials", "20"
    )
    assert result.exit_code == 0


def test_audit_rules_unknown_rule(runner):
    result = invoke(runner, "audit", "rules", "--rule", "nope", "--trials", "1")
    assert result.exit_code == 2


def test_audit_boxinf_clean(runner):
    result = invoke(
        runner, "audit", "boxinf", "--trials", "40", "--json"
    )
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["violations"] == []


# ---------------------------------------------------------------------------
# algebra
# ---------------------------------------------------------------------------


def test_algebra_validate_accepts_corpus(runner):
    result = invoke(
        runner,
        "algebra",
        "validate",
        str(CORPUS / "algebras" / "boolean-square.json"),
    )
    assert result.exit_code == 0


def test_algebra_validate_reports_violations(runner):
    result = invoke(
        runner,
        "algebra",
        "validate",
        str(CORPUS / "algebras" / "broken-exists.json"),
    )
    assert result.exit_code == 1
    assert "M2" in result.output


def test_algebra_classify_json(runner):
    result = invoke(
        runner,
        "algebra",
        "classify",
        str(CORPUS / "algebras" / "boolean-square.json"),
        "--json",
    )
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["fsi"] is True
    assert data["simple"] is True
    assert data["width"] == 2


def test_algebra_filters_json(runner):
    result = invoke(
        runner,
        "algebra",
        "filters",
        str(CORPUS / "algebras" / "boolean-square.json"),
        "--json",
    )
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert len(data["all"]) == 4
    assert len(data["prime"]) == 2
    assert len(data["maximal"]) == 2


def test_algebra_radical_json(runner):
    result = invoke(
        runner,
        "algebra",
        "radical",
        str(CORPUS / "algebras" / "chain-l2.json"),
        "--json",
    )
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["radical"] == ["(1)"]


def test_algebra_represent_simple(runner):
    result = invoke(
        runner,
        "algebra",
        "represent",
        str(CORPUS / "algebras" / "boolean-square.json"),
        "--json",
    )
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["denominators"] == [1, 1]


def test_algebra_represent_refuses_non_simple(runner):
    result = invoke(
        runner,
        "algebra",
        "represent",
        str(CORPUS / "algebras" / "identity-quantifier-product.json"),
    )
    assert result.exit_code == 1
    assert "not simple" in result.output


def test_algebra_fep_whole_carrier(runner):
    result = invoke(
        runner,
        "algebra",
        "fep",
        str(CORPUS / "algebras" / "boolean-square.json"),
        "--json",
    )
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert len(data["embedding"]) == 4


def test_algebra_fep_selected_elements(runner):
    result = invoke(
        runner,
        "algebra",
        "fep",
        str(CORPUS / "algebras" / "boolean-square.json"),
        "--element",
        "1,0",
        "--element",
        "0,0",
        "--json",
    )
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert len(data["embedding"]) == 2


def test_algebra_fep_witness_violation(runner, tmp_path):
    data = json.loads((CORPUS / "algebras" / "chain-l2.json").read_text())
    data["witnesses"] = [[["1/2"], 0]]
    bad = tmp_path / "alg.json"
    bad.write_text(json.dumps(data))
    result = invoke(
        runner, "algebra", "fep", str(bad), "--element", "1/2"
    )
    assert result.exit_code == 0  # (1/2,) on one point: point 0 is its minimum
    data["witnesses"] = [[["1/2"], 5]]
    bad.write_text(json.dumps(data))
    result = invoke(
        runner, "algebra", "fep", str(bad), "--element", "1/2"
    )
    assert result.exit_code == 1
    assert "witness point" in result.output


def test_algebra_fep_requires_functional_form(runner, tmp_path):
    data = json.loads(
        (CORPUS / "algebras" / "identity-quantifier-product.json").read_text()
    )
    result = invoke(
        runner,
        "algebra",
        "fep",
        str(CORPUS / "algebras" / "identity-quantifier-product.json"),
    )
    assert result.exit_code == 2
    assert data["form"] == "tabular"


def test_algebra_validate_malformed_file(runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"form": "nope"}))
    result = invoke(runner, "algebra", "validate", str(bad))
    assert result.exit_code == 2
