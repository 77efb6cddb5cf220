import json

import pytest

from virasoro_engine.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_simplicity_of_degenerate_n_zero_induced_module(capsys):
    code, out = run(capsys, "simplicity", "--family", "induced", "--n", "0", "--s0", "1", "--theta", "0")
    assert code == 0
    assert out["simple"] is False
    assert out["witness"] == {"p": 2, "q": 3}


def test_simplicity_reports_bounded_verdicts(capsys):
    code, out = run(capsys, "simplicity", "--family", "verma", "--theta", "2", "--h", "1/2", "--bound", "24")
    assert code == 0
    assert out["status"] == "simple-up-to-bound" and out["simple"] is None and out["bound"] == 24
    _, exact = run(capsys, "simplicity", "--family", "verma", "--theta", "2", "--h", "1/2", "--exact")
    assert exact["status"] == "simple" and exact["method"] == "exact"


def test_kac_table(capsys):
    code, out = run(capsys, "kac", "--theta", "0", "--h", "0", "--max-kl", "4")
    assert code == 0
    assert [1, 2] in out["zeros"]
    assert {"k": 1, "l": 2, "value": "0"} in out["table"]
    assert len(out["table"]) == 8


def test_bracket_check_on_omega(capsys):
    code, out = run(capsys, "bracket-check", "--family", "omega", "--lambda", "1", "--b", "2", "--range", "6", "--deg", "6")
    assert code == 0
    assert out["ok"] is True and out["basis_vectors"] == 7


def test_bracket_check_on_verma_includes_weight_check(capsys):
    code, out = run(capsys, "bracket-check", "--family", "verma", "--theta", "1/2", "--h", "-3", "--range", "2", "--deg", "2")
    assert code == 0 and out["failures"] == []


def test_singular_vectors(capsys):
    code, out = run(capsys, "singular", "--theta", "0", "--h", "0", "--level", "2")
    assert code == 0
    assert out["vectors"] == [
        [{"partition": [[-1, 2]], "coeff": "3"}, {"partition": [[-2, 1]], "coeff": "2"}],
    ]


def test_act_with_generator_and_element(capsys):
    code, out = run(capsys, "act", "--family", "verma", "--theta", "0", "--h", "1", "--k", "-1")
    assert code == 0
    assert out["result"] == [{"partition": [[-1, 1]], "coeff": "1"}]
    element = json.dumps([{"word": [1, -1], "coeff": "1/2"}])
    _, out = run(capsys, "act", "--family", "verma", "--theta", "0", "--h", "1", "--element", element)
    assert out["result"] == [{"partition": [], "coeff": "-1"}]


def test_act_needs_exactly_one_operator(capsys):
    code, out = run(capsys, "act", "--family", "omega", "--lambda", "1", "--b", "2")
    assert code == 2 and out["type"] == "invalid-input"


def test_act_on_an_omega_vector(capsys):
    vector = json.dumps([{"degree": 1, "coefficient": "1"}])
    code, out = run(capsys, "act", "--family", "omega", "--lambda", "1", "--b", "2", "--k", "1", "--vector", vector)
    assert code == 0
    assert out["result"] == [{"degree": 0, "coefficient": "-1"}, {"degree": 2, "coefficient": "1"}]


def test_invalid_lambda_exits_with_two(capsys):
    code, out = run(capsys, "simplicity", "--family", "omega", "--lambda", "0", "--b", "1")
    assert code == 2
    assert "lambda" in out["error"]


def test_unparseable_rational_is_a_usage_error():
    with pytest.raises(SystemExit) as excinfo:
        main(["kac", "--theta", "0.5", "--h", "0"])
    assert excinfo.value.code == 2


def test_iso_verify(capsys):
    code, out = run(capsys, "iso-verify", "--n", "1", "--lambda", "1", "--theta", "0", "--s", "0,1", "--window", "3,3,3")
    assert code == 0
    assert out["passed"] is True
    assert out["b"] == "2" and out["factor"] == {"family": "verma", "theta": "0", "h": "1"}


def test_closure_fills_a_small_window(capsys):
    code, out = run(
        capsys, "closure", "--lambda", "1", "--b", "2", "--factor", "verma", "--theta", "2", "--h", "1/2",
        "--window", "3,2,3",
    )
    assert code == 0
    assert out["dimension"] == out["window_dimension"] == 16
    assert out["shape"]["status"] == "pure"
    assert "basis" not in out


def test_closure_generator_outside_window(capsys):
    generators = json.dumps([[{"partial_degree": 9, "factor_key": [], "coeff": "1"}]])
    code, out = run(
        capsys, "closure", "--lambda", "1", "--b", "2", "--factor", "verma", "--theta", "2", "--h", "1/2",
        "--window", "3,2,3", "--generators", generators,
    )
    assert code == 2 and out["type"] == "WindowError"


def test_omega_operator_evaluation(capsys):
    code, out = run(capsys, "omega-op", "--family", "omega", "--lambda", "2", "--b", "3", "--order", "3", "--l", "2", "--m", "1")
    assert code == 0 and out["zero"] is True


def test_classify(capsys):
    first = json.dumps({"family": "tensor", "lam": "1", "b": "2", "factor": "verma", "theta": "2", "h": "1/2"})
    second = json.dumps({"family": "tensor", "lam": "2", "b": "2", "factor": "verma", "theta": "2", "h": "1/2"})
    code, out = run(capsys, "classify", "--first", first, "--second", second, "--bound", "24")
    assert code == 0
    assert out["isomorphic"] is False and out["both_simple"] is True


def test_text_output(capsys):
    code = main(["kac", "--theta", "0", "--h", "0", "--max-kl", "1", "--format", "text"])
    text = capsys.readouterr().out
    assert code == 0
    assert "zeros:" in text and "max_kl: 1" in text


def test_closure_without_cyclic_vector_needs_generators(capsys):
    code, out = run(
        capsys, "closure", "--lambda", "1", "--b", "2", "--factor", "verma", "--theta", "2", "--h", "1/2",
        "--window", "3,2,3", "--no-cyclic",
    )
    assert code == 2 and out["type"] == "invalid-input"
