"""
Command-line entry points: one subcommand per engine operation, JSON on stdout.

Exit codes: 0 success, 1 a checked property failed, 2 invalid input.
"""
import argparse
import json
import logging
from typing import Any, Optional

from pydantic import ValidationError

from .config import configure_logging
from .errors import EngineError, InvalidInputError
from .scalars import parse_scalar, parse_scalar_list
from .service import EngineTools

logger = logging.getLogger(__name__)

FAMILIES = ["omega", "verma", "mtheta0", "simple", "whittaker", "induced", "tensor"]


def _json_arg(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"invalid JSON: {exc}") from exc


def _spec_from_args(args: argparse.Namespace, family: Optional[str] = None) -> dict:
    s = list(args.s) if args.s is not None else None
    if getattr(args, "s0", None) is not None:
        if s is not None:
            raise InvalidInputError("give either --s or --s0")
        s = [args.s0]
    spec = {
        "family": family or args.family,
        "lam": args.lam,
        "b": args.b,
        "theta": args.theta,
        "h": args.h,
        "n": args.n,
        "lambdas": list(args.lambdas) if args.lambdas is not None else None,
        "s": s,
        "factor": args.factor,
    }
    return {key: value for key, value in spec.items() if value is not None}


def _render_text(payload: Any, indent: str = "") -> str:
    if isinstance(payload, dict):
        lines = []
        for key in sorted(payload):
            value = payload[key]
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{indent}{key}:")
                lines.append(_render_text(value, indent + "  "))
            else:
                lines.append(f"{indent}{key}: {json.dumps(value, sort_keys=True)}")
        return "\n".join(lines)
    if isinstance(payload, list):
        return "\n".join(f"{indent}- {json.dumps(item, sort_keys=True)}" for item in payload)
    return f"{indent}{payload}"


def _emit(payload: Any, fmt: str) -> None:
    if fmt == "text":
        print(_render_text(payload))
    else:
        print(json.dumps(payload, indent=2, sort_keys=True))


def _cmd_act(args: argparse.Namespace) -> int:
    out = EngineTools.act(_spec_from_args(args), k=args.k, element=args.element, vector=args.vector)
    _emit(out, args.format)
    return 0


def _cmd_bracket_check(args: argparse.Namespace) -> int:
    out = EngineTools.bracket_check(_spec_from_args(args), index_range=args.range, degree=args.deg)
    _emit(out, args.format)
    return 0 if out["ok"] else 1


def _cmd_singular(args: argparse.Namespace) -> int:
    _emit(EngineTools.singular(args.theta, args.h, args.level), args.format)
    return 0


def _cmd_kac(args: argparse.Namespace) -> int:
    _emit(EngineTools.kac(args.theta, args.h, args.max_kl), args.format)
    return 0


def _cmd_simplicity(args: argparse.Namespace) -> int:
    _emit(EngineTools.simplicity(_spec_from_args(args), bound=args.bound, exact=args.exact), args.format)
    return 0


def _cmd_iso_verify(args: argparse.Namespace) -> int:
    out = EngineTools.iso_verify(_spec_from_args(args, "induced"), window=args.window)
    _emit(out, args.format)
    return 0 if out["passed"] else 1


def _cmd_closure(args: argparse.Namespace) -> int:
    out = EngineTools.closure(
        _spec_from_args(args, "tensor"),
        generators=args.generators,
        window=args.window,
        margin=args.margin,
        random_count=args.random,
        seed=args.seed,
        include_basis=args.include_basis,
        include_cyclic=not args.no_cyclic,
    )
    _emit(out, args.format)
    return 1 if out["shape"]["status"] == "not-pure" else 0


def _cmd_omega_op(args: argparse.Namespace) -> int:
    out = EngineTools.omega_op(_spec_from_args(args), s=args.order, l=args.l, m=args.m, vector=args.vector)
    _emit(out, args.format)
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    _emit(EngineTools.classify(args.first, args.second, bound=args.bound), args.format)
    return 0


def _add_module_args(p: argparse.ArgumentParser, family: bool = True) -> None:
    if family:
        p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--lambda", dest="lam", type=parse_scalar, help="lambda (nonzero rational)")
    p.add_argument("--b", type=parse_scalar)
    p.add_argument("--theta", type=parse_scalar, help="central charge")
    p.add_argument("--h", type=parse_scalar, help="highest weight")
    p.add_argument("--n", type=int)
    p.add_argument("--lambdas", type=parse_scalar_list, help="lambda_n,...,lambda_2n")
    p.add_argument("--s", type=parse_scalar_list, help="s_n,...,s_2n")
    p.add_argument("--s0", type=parse_scalar, help="s_0 for n = 0")
    p.add_argument("--factor", choices=["verma", "simple", "mtheta0", "whittaker"])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--log-level", default=None, help="overrides LOG_LEVEL")

    parser = argparse.ArgumentParser(prog="virasoro", description="Exact computations with Virasoro modules")
    sub = parser.add_subparsers(dest="command", required=True)

    p_act = sub.add_parser("act", parents=[common], help="Apply d_k or an element to a vector")
    _add_module_args(p_act)
    p_act.add_argument("--k", type=int)
    p_act.add_argument("--element", type=_json_arg, help='[{"word": [2, -1], "central": 0, "coeff": "1/2"}]')
    p_act.add_argument("--vector", type=_json_arg, help="vector in the family's JSON schema")
    p_act.set_defaults(func=_cmd_act)

    p_br = sub.add_parser("bracket-check", parents=[common], help="Commutator-defect sweep")
    _add_module_args(p_br)
    p_br.add_argument("--range", type=int, default=6)
    p_br.add_argument("--deg", type=int, default=5)
    p_br.set_defaults(func=_cmd_bracket_check)

    p_sing = sub.add_parser("singular", parents=[common], help="Singular vectors of a Verma module at one level")
    p_sing.add_argument("--theta", type=parse_scalar, required=True)
    p_sing.add_argument("--h", type=parse_scalar, required=True)
    p_sing.add_argument("--level", type=int, required=True)
    p_sing.set_defaults(func=_cmd_singular)

    p_kac = sub.add_parser("kac", parents=[common], help="Kac factor table over kl <= max-kl")
    p_kac.add_argument("--theta", type=parse_scalar, required=True)
    p_kac.add_argument("--h", type=parse_scalar, required=True)
    p_kac.add_argument("--max-kl", type=int, default=6)
    p_kac.set_defaults(func=_cmd_kac)

    p_simple = sub.add_parser("simplicity", parents=[common], help="Simplicity criterion of any family")
    _add_module_args(p_simple)
    p_simple.add_argument("--bound", type=int, default=None)
    p_simple.add_argument("--exact", action="store_true", help="exact Kac zero-locus decision for Verma factors")
    p_simple.set_defaults(func=_cmd_simplicity)

    p_iso = sub.add_parser("iso-verify", parents=[common], help="Induced-module isomorphism report")
    _add_module_args(p_iso, family=False)
    p_iso.add_argument("--window", type=str, default=None, help="D,L,K")
    p_iso.set_defaults(func=_cmd_iso_verify)

    p_clo = sub.add_parser("closure", parents=[common], help="Cyclic closure and submodule shape")
    _add_module_args(p_clo, family=False)
    p_clo.add_argument("--window", type=str, default=None, help="D,L,K")
    p_clo.add_argument("--margin", type=int, default=1)
    p_clo.add_argument("--generators", type=_json_arg, default=None, help="JSON list of tensor vectors")
    p_clo.add_argument("--random", type=int, default=0, help="number of seeded random generators to add")
    p_clo.add_argument("--seed", type=int, default=None)
    p_clo.add_argument("--include-basis", action="store_true", help="include the closure basis")
    p_clo.add_argument("--no-cyclic", action="store_true", help="leave the cyclic vector out of the default generators")
    p_clo.set_defaults(func=_cmd_closure)

    p_om = sub.add_parser("omega-op", parents=[common], help="Evaluate omega^(s)_(l,m) on a vector")
    _add_module_args(p_om)
    p_om.add_argument("--order", type=int, required=True, help="s")
    p_om.add_argument("--l", type=int, required=True)
    p_om.add_argument("--m", type=int, required=True)
    p_om.add_argument("--vector", type=_json_arg)
    p_om.set_defaults(func=_cmd_omega_op)

    p_cls = sub.add_parser("classify", parents=[common], help="Compare two tensor modules")
    p_cls.add_argument("--first", type=_json_arg, required=True, help="tensor module spec as JSON")
    p_cls.add_argument("--second", type=_json_arg, required=True)
    p_cls.add_argument("--bound", type=int, default=None)
    p_cls.set_defaults(func=_cmd_classify)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    try:
        return int(args.func(args))
    except (InvalidInputError, ValidationError) as exc:
        logger.error(f"invalid input: {exc}")
        _emit({"error": str(exc), "type": "invalid-input"}, args.format)
        return 2
    except EngineError as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        _emit({"error": str(exc), "type": type(exc).__name__}, args.format)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
