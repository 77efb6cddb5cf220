import asyncio

import pytest

from mcp_server.tools import MCPTools
from virasoro_engine.errors import InvalidInputError

TENSOR = {"family": "tensor", "lam": "2", "b": "3", "factor": "verma", "theta": "2", "h": "1/2"}


def test_server_module_registers_the_tools():
    from mcp_server.main import mcp

    assert mcp.name == "Virasoro Engine MCP Server"


def test_check_simplicity():
    result = MCPTools.check_simplicity({"family": "mtheta0", "theta": "0"})
    assert result["status"] == "not-simple"
    assert result["witness"] == {"p": 2, "q": 3}


def test_kac_table():
    result = MCPTools.kac_table("0", "0", max_kl=1)
    assert result["table"] == [{"k": 1, "l": 1, "value": "0"}]


def test_singular_vectors_none_for_generic_weight():
    assert MCPTools.singular_vectors("2", "1/2", 2)["vectors"] == []


def test_act_on_tensor_cyclic_vector():
    result = MCPTools.act(TENSOR, k=1)
    assert result["family"] == "tensor"
    assert result["result"]


def test_verify_isomorphism():
    module = {"family": "induced", "n": 1, "lam": "1", "theta": "0", "s": ["0", "1"]}
    assert MCPTools.verify_isomorphism(module, window="3,3,3")["passed"] is True


def test_submodule_closure_with_basis():
    result = MCPTools.submodule_closure(TENSOR, window="2,1,2", include_basis=True)
    assert len(result["basis"]) == result["dimension"]


def test_classify():
    other = dict(TENSOR, b="2")
    assert MCPTools.classify(TENSOR, other)["isomorphic"] is False


def test_bracket_check():
    assert MCPTools.bracket_check({"family": "mtheta0", "theta": "1"}, index_range=3, degree=3)["ok"] is True


def test_invalid_module_raises():
    with pytest.raises(InvalidInputError):
        MCPTools.check_simplicity({"family": "omega", "lam": "1"})


def test_every_engine_operation_has_a_tool():
    from mcp_server.main import mcp

    tools = asyncio.run(mcp.get_tools())
    assert set(tools) == {
        "check_simplicity",
        "kac_table",
        "singular_vectors",
        "act",
        "omega_op",
        "verify_isomorphism",
        "submodule_closure",
        "classify",
        "bracket_check",
    }


def test_omega_op():
    module = {"family": "omega", "lam": "2", "b": "3"}
    assert MCPTools.omega_op(module, s=3, l=4, m=-1)["zero"] is True
    assert MCPTools.omega_op(module, s=1, l=0, m=0)["zero"] is False


def test_omega_op_on_tensor_vectors():
    result = MCPTools.omega_op(TENSOR, s=0, l=0, m=1)
    assert result["family"] == "tensor" and result["zero"] is False


def test_classify_reports_no_verdict_for_reducible_modules():
    reducible = dict(TENSOR, b="1")
    result = MCPTools.classify(reducible, reducible)
    assert result["isomorphic"] is None and result["both_simple"] is False
