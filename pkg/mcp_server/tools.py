import logging
from typing import Any, Dict, Optional

from virasoro_engine.service import EngineTools

logger = logging.getLogger(__name__)


class MCPTools:
    """MCP tool implementations backed by the exact engine"""

    @staticmethod
    def check_simplicity(module: Dict[str, Any], bound: Optional[int] = None, exact: bool = False) -> Dict[str, Any]:
        """
        Decide whether the described module is simple.
        Returns the verdict with its status, witness and method.
        """
        logger.info(f"check_simplicity called for family: {module.get('family')}")
        result = EngineTools.simplicity(module, bound=bound, exact=exact)
        logger.info(f"Returning status: {result['status']}")
        return result

    @staticmethod
    def kac_table(theta: str, h: str, max_kl: int = 6) -> Dict[str, Any]:
        """
        Kac factors of the Verma module with central charge theta and highest weight h
        """
        logger.info(f"kac_table called with theta={theta}, h={h}, max_kl={max_kl}")
        return EngineTools.kac(theta, h, max_kl)

    @staticmethod
    def singular_vectors(theta: str, h: str, level: int) -> Dict[str, Any]:
        logger.info(f"singular_vectors called with theta={theta}, h={h}, level={level}")
        result = EngineTools.singular(theta, h, level)
        logger.info(f"Found {len(result['vectors'])} singular vectors")
        return result

    @staticmethod
    def act(
        module: Dict[str, Any], k: Optional[int] = None, element: Optional[list] = None, vector: Optional[list] = None
    ) -> Dict[str, Any]:
        logger.info(f"act called on family {module.get('family')} with k={k}")
        return EngineTools.act(module, k=k, element=element, vector=vector)

    @staticmethod
    def verify_isomorphism(module: Dict[str, Any], window: Optional[str] = None) -> Dict[str, Any]:
        """
        Run the induced-module isomorphism checks on a truncation window.
        """
        logger.info(f"verify_isomorphism called with window={window}")
        report = EngineTools.iso_verify(module, window=window)
        logger.info(f"Isomorphism checks passed: {report['passed']}")
        return report

    @staticmethod
    def submodule_closure(
        module: Dict[str, Any],
        generators: Optional[list] = None,
        window: Optional[str] = None,
        margin: int = 1,
        random_count: int = 0,
        seed: Optional[int] = None,
        include_basis: bool = False,
        include_cyclic: bool = True,
    ) -> Dict[str, Any]:
        logger.info(f"submodule_closure called with window={window}, random_count={random_count}")
        result = EngineTools.closure(
            module,
            generators=generators,
            window=window,
            margin=margin,
            random_count=random_count,
            seed=seed,
            include_basis=include_basis,
            include_cyclic=include_cyclic,
        )
        logger.info(f"Closure dimension {result['dimension']}, shape {result['shape']['status']}")
        return result

    @staticmethod
    def classify(first: Dict[str, Any], second: Dict[str, Any], bound: Optional[int] = None) -> Dict[str, Any]:
        logger.info("classify called")
        return EngineTools.classify(first, second, bound=bound)

    @staticmethod
    def bracket_check(module: Dict[str, Any], index_range: int = 6, degree: int = 5) -> Dict[str, Any]:
        logger.info(f"bracket_check called for family {module.get('family')}")
        return EngineTools.bracket_check(module, index_range=index_range, degree=degree)

    @staticmethod
    def omega_op(module: Dict[str, Any], s: int, l: int, m: int, vector: Optional[list] = None) -> Dict[str, Any]:
        """
        Evaluate omega^(s)_(l,m) on a vector of the described module.
        """
        logger.info(f"omega_op called with s={s}, l={l}, m={m} on family {module.get('family')}")
        result = EngineTools.omega_op(module, s=s, l=l, m=m, vector=vector)
        logger.info(f"omega_op result is {'zero' if result['zero'] else 'nonzero'}")
        return result
