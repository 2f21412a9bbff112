import argparse
import sys
from typing import Any, Callable, Dict, List, Optional

from app.cli import commands
from app.cli.config import load_config
from app.cli.report import to_json, to_text
from app.cli.types import CommandResponse
from app.utils.logger import logger

log = logger("app.cli")

# these enumerate the whole universe and never sample
EXTENSIONAL = ("apply", "refines", "eval")


def _universe_flags() -> argparse.ArgumentParser:
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument("--config", help="JSON suite configuration; flags override it")
    flags.add_argument("--model", choices=["seq", "rat", "timed"], help="trace model")
    flags.add_argument("--events", type=lambda s: [e for e in s.split(",") if e], help="comma-separated event names")
    flags.add_argument("--bound", type=int, help="trace bound K")
    flags.add_argument("--grid-step", dest="grid_step", help="rational grid step, e.g. 1/2")
    flags.add_argument("--samples", type=int, help="sampled cases per theorem")
    flags.add_argument("--cases", type=int, help="randomized cases per trace-algebra law")
    flags.add_argument("--seed", type=int, help="seed for randomized mode")
    flags.add_argument("--exhaustive", action="store_const", const=True, help="enumerate instead of sampling")
    flags.add_argument("--json", action="store_true", help="print the JSON report")
    flags.add_argument("--verbose", action="store_true", help="log suite progress to stderr")
    return flags


def build_parser() -> argparse.ArgumentParser:
    flags = _universe_flags()
    parser = argparse.ArgumentParser(prog="traces", description="Check trace-algebra laws and reactive-process theorems.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("lawsuite", parents=[flags], help="trace-algebra laws for one model")
    sub.add_parser("theory", parents=[flags], help="healthiness, contribution, closure and lattice theorems")
    sub.add_parser("quantale", parents=[flags], help="quantale laws of the reactive theory")
    sub.add_parser("parallel", parents=[flags], help="parallel-by-merge example, merge laws and closure")
    sub.add_parser("run", parents=[flags], help="every suite the configuration lists")
    apply = sub.add_parser("apply", parents=[flags], help="healthify a formula")
    apply.add_argument("condition", help="R1, R2c, R3, R, R2m or Rm")
    apply.add_argument("formula")
    apply.add_argument("--rows", type=int, default=0, help="dump up to this many rows")
    refines = sub.add_parser("refines", parents=[flags], help="check that the first formula is refined by the second")
    refines.add_argument("weaker")
    refines.add_argument("stronger")
    evaluate = sub.add_parser("eval", parents=[flags], help="count the rows a formula denotes")
    evaluate.add_argument("formula")
    evaluate.add_argument("--rows", type=int, default=0, help="dump up to this many rows")
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    names = ("model", "events", "bound", "grid_step", "samples", "cases", "seed", "exhaustive")
    return {name: getattr(args, name) for name in names}


def _dispatch(args: argparse.Namespace) -> Callable[[], commands.Outcome]:
    overrides = _overrides(args)
    if args.command in EXTENSIONAL:
        overrides["exhaustive"] = True
    config = load_config(args.config, overrides)
    table: Dict[str, Callable[[], commands.Outcome]] = {
        "lawsuite": lambda: commands.lawsuite(config),
        "theory": lambda: commands.theory(config),
        "quantale": lambda: commands.quantale(config),
        "parallel": lambda: commands.parallel(config),
        "run": lambda: commands.run_suites(config),
        "apply": lambda: commands.apply(config, args.condition, args.formula, args.rows),
        "refines": lambda: commands.refines(config, args.weaker, args.stronger),
        "eval": lambda: commands.evaluate(config, args.formula, args.rows),
    }
    return table[args.command]


def run_command(args: argparse.Namespace) -> CommandResponse:
    with logger.command(args.command):
        try:
            payload, verified = _dispatch(args)()
            return CommandResponse(success=True, verified=verified, payload=payload)
        except Exception as e:
            log.error("{} failed: {}", args.command, e)
            return CommandResponse(success=False, error_type=type(e).__name__, error_message=str(e))


def main(argv: Optional[List[str]] = None) -> int:
    """Exit status 0 exactly when the command succeeded and every check it ran was verified."""
    args = build_parser().parse_args(argv)
    if args.verbose:
        logger.set_level("INFO")
    response = run_command(args)
    if args.json or not response.success:
        print(to_json(response))
    else:
        print(to_text(response))
    return 0 if response.success and response.verified else 1


if __name__ == "__main__":
    sys.exit(main())
