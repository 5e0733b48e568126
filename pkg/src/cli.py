"""
Command-line front end.

    python -m src.cli certify --pd datasets/8_8_2.pd
    python -m src.cli solve --pd datasets/figure_eight.pd --starts 50 --out results/
    python -m src.cli braid --k 1 --n 2

Exit status: 0 certified or success, 1 FAIL verdict, 2 INCONCLUSIVE, 3 input or library error.
Flags override the HYPERLINK_* environment settings.
"""

import argparse
import json
import logging
import os
import sys
from typing import Any, Dict, Optional

from pydantic import BaseModel

from . import models, pipeline
from .cache import open_cache
from .config import env
from .equations import to_text
from .errors import HyperlinkError
from .families import BraidSpec
from .solver import SolverConfig
from .triangulate import GEODESIC_ARCS, INCONCLUSIVE

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT = 3


def _solver_config(args: argparse.Namespace) -> SolverConfig:
    return SolverConfig(starts=args.starts, seed=args.seed, tolerance=args.tol, max_iter=args.max_iter,
                        workers=args.workers, progress=args.progress)


def _cache(args: argparse.Namespace):
    return open_cache(args.cache, env.HYPERLINK_REDIS_HOST, env.HYPERLINK_REDIS_PORT)


def _emit(args: argparse.Namespace, name: str, model: Optional[BaseModel], text: str) -> None:
    """Print the artifact and, with --out, write it as <out>/<name>.json."""
    if model is not None and args.out:
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, f"{name}.json")
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(model.model_dump_json(indent=2))
        logger.info("Wrote %s", path)
    if args.format == "text" or model is None:
        print(text)
    else:
        print(model.model_dump_json(indent=2))


def _fail(result: Dict[str, Any]) -> int:
    print(json.dumps({"error": result["error"]}), file=sys.stderr)
    return EXIT_INPUT


def _verdict_lines(verdicts) -> str:
    return "\n".join(f"{item.name:>18}: {item.verdict} {item.message}".rstrip() for item in verdicts)


def cmd_solve(args: argparse.Namespace) -> int:
    diagram = pipeline.load_diagram(args.pd)
    result = pipeline.solve_diagram(diagram, _solver_config(args), _cache(args))
    if result["error"]:
        return _fail(result)
    export = pipeline.solve_export(result)
    lines = [f"{len(result['solutions'])} distinct solutions, geometric: {result['geometric']}"]
    if result["geometric"] is not None:
        for name, value in result["solutions"][result["geometric"]].as_dict().items():
            lines.append(f"  {name} = {value.real:+.10f} {value.imag:+.10f}i")
    _emit(args, "solutions", models.SolveResultModel(**export), "\n".join(lines))
    return EXIT_OK if result["success"] else EXIT_INCONCLUSIVE


def cmd_check(args: argparse.Namespace) -> int:
    diagram = pipeline.load_diagram(args.pd)
    result = pipeline.check_diagram(diagram, args.solution, _solver_config(args), _cache(args))
    if result["error"]:
        return _fail(result)
    report = result["report"]
    _emit(args, "conditions", models.ConditionsReportModel(**report.to_dict()),
          _verdict_lines((report.a, report.b, report.c, report.convexity)))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_certify(args: argparse.Namespace) -> int:
    diagram = pipeline.load_diagram(args.pd)
    result = pipeline.certify_diagram(diagram, args.solution, _solver_config(args), _cache(args),
                                      args.base_region, args.alternate)
    if result["error"]:
        return _fail(result)
    certificate = result["certificate"]
    if certificate is None:
        print(json.dumps({"conclusion": INCONCLUSIVE, "diagnostic": result.get("diagnostic", "")}))
        return EXIT_INCONCLUSIVE
    text = _verdict_lines(certificate.verdicts.values()) + f"\nconclusion: {certificate.conclusion}"
    if certificate.volume is not None:
        text += f"\nvolume: {certificate.volume:.10f}"
    _emit(args, "certificate", models.CertificateModel(**certificate.to_json()), text)
    if certificate.conclusion == GEODESIC_ARCS:
        return EXIT_OK
    return EXIT_INCONCLUSIVE if certificate.conclusion == INCONCLUSIVE else EXIT_FAIL


def cmd_develop(args: argparse.Namespace) -> int:
    diagram = pipeline.load_diagram(args.pd)
    result = pipeline.develop_diagram(diagram, args.solution, _solver_config(args), _cache(args), args.base_region)
    if result["error"]:
        return _fail(result)
    placed = result["config"]
    lines = [f"{ball.vertex}: center {ball.center} diameter {ball.diameter:.6g}" for ball in placed.horoballs.values()]
    _emit(args, "horoballs", models.HoroballConfigModel(**placed.to_json()), "\n".join(lines))
    return EXIT_OK


def cmd_volume(args: argparse.Namespace) -> int:
    diagram = pipeline.load_diagram(args.pd)
    result = pipeline.volume_diagram(diagram, args.solution, _solver_config(args), _cache(args), args.base_region)
    if result["error"]:
        return _fail(result)
    export = result["triangulation"].to_json()
    export["volume"] = result["volume"]
    _emit(args, "triangulation", models.TriangulationModel(**export), f"volume: {result['volume']:.10f}")
    return EXIT_OK


def cmd_braid(args: argparse.Namespace) -> int:
    spec = BraidSpec(args.k, args.n, "suffixed" if args.suffixed else "base")
    result = pipeline.braid_family(spec, _solver_config(args), _cache(args), args.strict)
    if result["error"]:
        return _fail(result)
    export = result["export"]
    text = f"{export['pd']}\nsource: {export['source']}\n" + "\n".join(export["closed_form_notes"])
    if export["fallback_reason"]:
        text += f"\nfallback: {export['fallback_reason']}"
    _emit(args, "braid", models.BraidModel(**export), text)
    return EXIT_OK


def cmd_equations(args: argparse.Namespace) -> int:
    diagram = pipeline.load_diagram(args.pd)
    result = pipeline.equations_diagram(diagram)
    if result["error"]:
        return _fail(result)
    _emit(args, "equations", models.EquationSystemModel(**result["export"]), to_text(result["system"]))
    return EXIT_OK


def cmd_schema(args: argparse.Namespace) -> int:
    print(json.dumps(models.schemas(), indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hyperlink", description="Geodesic crossing arcs of alternating links")
    ap.add_argument("--log-level", default=env.HYPERLINK_LOG_LEVEL)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(parser: argparse.ArgumentParser, pd: bool = True) -> None:
        if pd:
            parser.add_argument("--pd", required=True, help="PD code file, or the PD code itself")
            parser.add_argument("--solution", help="solution JSON written by solve")
            parser.add_argument("--base-region", type=int, default=None)
        parser.add_argument("--starts", type=int, default=env.HYPERLINK_STARTS)
        parser.add_argument("--seed", type=int, default=env.HYPERLINK_SEED)
        parser.add_argument("--tol", type=float, default=env.HYPERLINK_TOL)
        parser.add_argument("--max-iter", type=int, default=env.HYPERLINK_MAX_ITER)
        parser.add_argument("--workers", type=int, default=1)
        parser.add_argument("--progress", action="store_true")
        parser.add_argument("--format", choices=("json", "text"), default=env.HYPERLINK_FORMAT)
        parser.add_argument("--out", default=env.HYPERLINK_OUT or None, help="directory for JSON artifacts")
        parser.add_argument("--cache", choices=("fake", "redis", "off"), default=env.HYPERLINK_CACHE)

    for name, handler in (("solve", cmd_solve), ("check", cmd_check), ("develop", cmd_develop),
                          ("volume", cmd_volume), ("equations", cmd_equations)):
        p = sub.add_parser(name)
        common(p)
        p.set_defaults(func=handler)

    p = sub.add_parser("certify")
    common(p)
    p.add_argument("--alternate", action="store_true", help="also try every other fan and cone choice")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("braid")
    common(p, pd=False)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--suffixed", action="store_true")
    p.add_argument("--strict", action="store_true", help="fail instead of solving when the closed form does not fit")
    p.set_defaults(func=cmd_braid)

    p = sub.add_parser("schema")
    p.set_defaults(func=cmd_schema)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (HyperlinkError, OSError, ValueError) as e:
        print(json.dumps({"error": str(e), "type": type(e).__name__}), file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
