import logging
import os
from typing import Optional

from dotenv import load_dotenv
from fastmcp import FastMCP

from virasoro_engine.config import configure_logging

from .tools import MCPTools

# Load environment variables
load_dotenv()

configure_logging()
logger = logging.getLogger(__name__)

# Create FastMCP server instance
mcp = FastMCP("Virasoro Engine MCP Server")


@mcp.tool()
def check_simplicity(module: dict, bound: Optional[int] = None, exact: bool = False) -> dict:
    """
    Decide whether a Virasoro module is simple

    Args:
        module: Module description, e.g. {"family": "tensor", "lam": "1", "b": "2", "factor": "verma", "theta": "2", "h": "1/2"}
        bound: Search bound for the Kac factor scan (defaults to VIRASORO_KAC_BOUND)
        exact: Use the exact Kac zero-locus decision instead of the bounded scan

    Returns:
        Dictionary containing status, witness, bound, method and reason
    """
    logger.info(f"check_simplicity called with module: {module}")
    return MCPTools.check_simplicity(module, bound=bound, exact=exact)


@mcp.tool()
def kac_table(theta: str, h: str, max_kl: int = 6) -> dict:
    """
    Tabulate the Kac factors of a Verma module

    Args:
        theta: Central charge as a rational string, e.g. "1/2"
        h: Highest weight as a rational string
        max_kl: Largest product k*l to tabulate

    Returns:
        Dictionary containing the factor table and the vanishing (k, l) pairs
    """
    return MCPTools.kac_table(theta, h, max_kl)


@mcp.tool()
def singular_vectors(theta: str, h: str, level: int) -> dict:
    """
    Find the singular vectors of a Verma module at one level

    Args:
        theta: Central charge as a rational string
        h: Highest weight as a rational string
        level: PBW level to search

    Returns:
        Dictionary containing a primitive integer basis of the singular vectors
    """
    return MCPTools.singular_vectors(theta, h, level)


@mcp.tool()
def act(module: dict, k: Optional[int] = None, element: Optional[list] = None, vector: Optional[list] = None) -> dict:
    """
    Apply a generator d_k or an enveloping-algebra element to a vector

    Args:
        module: Module description
        k: Generator index (give this or element)
        element: List of {"word": [...], "central": 0, "coeff": "1"} terms
        vector: Vector in the family's JSON form; the cyclic vector when omitted

    Returns:
        Dictionary containing the input and the resulting vector
    """
    return MCPTools.act(module, k=k, element=element, vector=vector)


@mcp.tool()
def omega_op(module: dict, s: int, l: int, m: int, vector: Optional[list] = None) -> dict:
    """
    Evaluate the operator omega^(s)_(l,m) = sum_i C(s,i)(-1)^(s-i) d_(l-m-i) d_(m+i) on a vector

    Args:
        module: Module description
        s: Order of the operator (non-negative)
        l: Total index l
        m: Starting index m
        vector: Vector in the family's JSON form; the cyclic vector when omitted

    Returns:
        Dictionary containing the resulting vector and whether it is zero
    """
    return MCPTools.omega_op(module, s=s, l=l, m=m, vector=vector)


@mcp.tool()
def verify_isomorphism(module: dict, window: Optional[str] = None) -> dict:
    """
    Verify the isomorphism between an induced module and its tensor-product image

    Args:
        module: Induced module description with family "induced", n, lam, theta and s
        window: Truncation "D,L,K" (defaults to VIRASORO_ISO_WINDOW)

    Returns:
        Dictionary containing the per-check results and graded ranks
    """
    return MCPTools.verify_isomorphism(module, window=window)


@mcp.tool()
def submodule_closure(
    module: dict,
    generators: Optional[list] = None,
    window: Optional[str] = None,
    margin: int = 1,
    random_count: int = 0,
    seed: Optional[int] = None,
    include_basis: bool = False,
    include_cyclic: bool = True,
) -> dict:
    """
    Compute a truncated cyclic closure in a tensor module and check its shape

    Args:
        module: Tensor module description
        generators: Tensor vectors in JSON form; the cyclic vector when omitted
        window: Truncation "D,L,K" (defaults to VIRASORO_WINDOW)
        margin: How far inside the window the shape is checked
        random_count: Number of seeded random generators to add
        seed: Random seed (defaults to VIRASORO_SEED)
        include_basis: Also return a basis of the closure
        include_cyclic: Start from the cyclic vector when no generators are given

    Returns:
        Dictionary containing the closure dimension and the shape report
    """
    return MCPTools.submodule_closure(
        module,
        generators=generators,
        window=window,
        margin=margin,
        random_count=random_count,
        seed=seed,
        include_basis=include_basis,
        include_cyclic=include_cyclic,
    )


@mcp.tool()
def classify(first: dict, second: dict, bound: Optional[int] = None) -> dict:
    """
    Decide whether two tensor modules are isomorphic

    Args:
        first: Tensor module description
        second: Tensor module description
        bound: Kac search bound used for the simplicity verdicts

    Returns:
        Dictionary containing the isomorphism verdict and both simplicity verdicts
    """
    return MCPTools.classify(first, second, bound=bound)


@mcp.tool()
def bracket_check(module: dict, index_range: int = 6, degree: int = 5) -> dict:
    """
    Check [d_i, d_j] = (j - i) d_{i+j} + central term on low-degree basis vectors

    Args:
        module: Module description
        index_range: Check all |i|, |j| up to this value
        degree: Largest basis degree or level to test

    Returns:
        Dictionary containing ok and the first failures
    """
    return MCPTools.bracket_check(module, index_range=index_range, degree=degree)


def main():
    """Run the FastMCP server"""
    host = os.getenv("MCP_SERVER_HOST", "localhost")
    port = int(os.getenv("MCP_SERVER_PORT", "8001"))
    logger.info(f"Starting Virasoro Engine MCP Server on {host}:{port}...")
    mcp.run(transport="http", host=host, port=port)


if __name__ == "__main__":
    main()
