"""Command bodies: each returns a JSON-ready payload and whether every check it ran was verified."""
from typing import Any, Dict, List, Tuple

from app.cli.config import build_alphabet, build_model
from app.cli.exceptions import UnsupportedMode
from app.cli.types import SuiteConfig
from app.core.algebra.laws import check_descriptor, check_laws
from app.core.algebra.types import ExhaustiveMode, LawReport, RandomizedMode
from app.core.dsl import Evaluator, parse, to_text
from app.core.dsl.ast import HEALTH_KEYWORDS, Healthy
from app.core.dsl.exceptions import ScopeError
from app.core.models import encode_binding
from app.core.models.timed_laws import check_timed_laws
from app.core.parallel import run_parallel_suite
from app.core.reactive.reports import compare, compare_refines
from app.core.reactive.suites import run_micro_tier, run_quantale_suite, run_theory_suite
from app.core.reactive.types import TheoryReport
from app.core.relations import Predicate
from app.utils.logger import logger

log = logger("app.cli.commands")

Outcome = Tuple[Dict[str, Any], bool]


def _law_payload(reports: List[LawReport]) -> List[Dict[str, Any]]:
    return [r.model_dump(mode="json") for r in reports]


def _theory_payload(command: str, config: SuiteConfig, reports: List[TheoryReport]) -> Outcome:
    verified = sum(r.verified for r in reports)
    payload = {
        "command": command,
        "config": config.model_dump(mode="json"),
        "reports": [r.model_dump(mode="json") for r in reports],
        "summary": {"total": len(reports), "verified": verified},
    }
    return payload, verified == len(reports)


def lawsuite(config: SuiteConfig) -> Outcome:
    """The seventeen trace-algebra laws, the subtraction descriptor, and the timed-trace laws for timed models."""
    model = build_model(config)
    if config.exhaustive:
        if config.model == "timed":
            raise UnsupportedMode("lawsuite --model timed", "exhaustive")
        mode = ExhaustiveMode(bound=config.bound)
    else:
        mode = RandomizedMode(count=config.cases, seed=config.seed)
    laws = check_laws(model, mode)
    auxiliary = [check_descriptor(model, mode)]
    if config.model == "timed":
        auxiliary += check_timed_laws(model, config.cases, config.seed)
    passed = sum(r.passed for r in laws)
    payload = {
        "command": "lawsuite",
        "config": config.model_dump(mode="json"),
        "laws": _law_payload(laws),
        "auxiliary": _law_payload(auxiliary),
        "summary": {"total": len(laws), "passed": passed},
    }
    return payload, passed == len(laws) and all(r.passed for r in auxiliary)


def theory(config: SuiteConfig) -> Outcome:
    alphabet = build_alphabet(config)
    if config.exhaustive:
        reports = run_micro_tier(alphabet)
    else:
        reports = run_theory_suite(alphabet, config.samples, config.seed)
    return _theory_payload("theory", config, reports)


def quantale(config: SuiteConfig) -> Outcome:
    if config.exhaustive:
        raise UnsupportedMode("quantale", "exhaustive")
    return _theory_payload("quantale", config, run_quantale_suite(build_alphabet(config), config.samples, config.seed))


def parallel(config: SuiteConfig) -> Outcome:
    if config.exhaustive:
        raise UnsupportedMode("parallel", "exhaustive")
    return _theory_payload("parallel", config, run_parallel_suite(build_alphabet(config), config.samples, config.seed))


SUITES = {"algebra": lawsuite, "reactive": theory, "quantale": quantale, "parallel": parallel}


def run_suites(config: SuiteConfig) -> Outcome:
    """Every suite the configuration lists, in its order."""
    results = {}
    verified = True
    for suite in config.suites:
        log.info("running {} suite", suite)
        payload, ok = SUITES[suite](config)
        results[suite] = payload
        verified = verified and ok
    return {"command": "run", "suites": results, "summary": {"verified": verified}}, verified


def _rows(p: Predicate, limit: int) -> List[Dict[str, Any]]:
    rows = []
    model = p.alphabet.trace_model
    for binding in p.rows():
        if len(rows) >= limit:
            break
        rows.append(encode_binding(binding, model))
    return rows


def _extension(p: Predicate, rows: int) -> Dict[str, Any]:
    extension: Dict[str, Any] = {"rows": p.count, "universe": p.alphabet.size}
    if rows:
        extension["bindings"] = _rows(p, rows)
        extension["summary"] = p.summarise().model_dump(mode="json")
    return extension


def evaluate(config: SuiteConfig, formula: str, rows: int = 0) -> Outcome:
    """The extension of a formula over the configured universe."""
    node = parse(formula)
    p = Evaluator(build_alphabet(config)).evaluate(node)
    return {"command": "eval", "formula": to_text(node), **_extension(p, rows)}, True


def apply(config: SuiteConfig, condition: str, formula: str, rows: int = 0) -> Outcome:
    """Healthify a formula, reporting its extension and whether it was already a fixed point."""
    if condition not in HEALTH_KEYWORDS:
        raise ScopeError(condition, HEALTH_KEYWORDS)
    node = parse(formula)
    evaluator = Evaluator(build_alphabet(config))
    healthy_node = Healthy(condition, node)
    target = evaluator.target_alphabet(healthy_node)
    original = evaluator.evaluate(node, target)
    healthy = evaluator.evaluate(healthy_node, target)
    report = compare(f"{condition}-healthy", healthy, original, f"{condition}(P)", "P")
    payload = {
        "command": "apply",
        "condition": condition,
        "formula": to_text(node),
        "fixed_point": report.model_dump(mode="json"),
        **_extension(healthy, rows),
    }
    return payload, True


def refines(config: SuiteConfig, weaker: str, stronger: str) -> Outcome:
    """Whether every row of `stronger` is a row of `weaker`."""
    evaluator = Evaluator(build_alphabet(config))
    p, q = evaluator.evaluate(weaker), evaluator.evaluate(stronger)
    report = compare_refines("refinement", p, q, "P", "Q")
    payload = {
        "command": "refines",
        "weaker": to_text(parse(weaker)),
        "stronger": to_text(parse(stronger)),
        "refines": report.verified,
        "report": report.model_dump(mode="json"),
    }
    return payload, report.verified
