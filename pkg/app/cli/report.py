import json
from typing import Any, Dict, List

import pandas as pd

from app.cli.types import CommandResponse
from app.config.settings import settings


def to_json(response: CommandResponse) -> str:
    """Stable JSON: sorted keys and no run-dependent fields."""
    if not response.success:
        document: Dict[str, Any] = {
            "schema": settings.REPORT_SCHEMA,
            "error": {"type": response.error_type, "message": response.error_message},
        }
    else:
        document = {"schema": settings.REPORT_SCHEMA, "verified": response.verified, **(response.payload or {})}
    return json.dumps(document, sort_keys=True, ensure_ascii=False, indent=2)


def _counterexample_text(report: Dict[str, Any]) -> str:
    counterexample = report.get("counterexample")
    if counterexample is None:
        return ""
    if isinstance(counterexample, list):
        return json.dumps(counterexample)
    binding = ", ".join(f"{k}={json.dumps(v)}" for k, v in counterexample["binding"].items())
    return f"{counterexample['predicate']}: {binding}"


def _status(report: Dict[str, Any]) -> str:
    if report.get("precondition_failed"):
        return "precondition failed"
    if report.get("passed", report.get("verified")):
        return "verified"
    return "REFUTED"


def _frame(reports: List[Dict[str, Any]], key: str) -> pd.DataFrame:
    return pd.DataFrame(
        {
            key: [r.get(key, r.get("law")) for r in reports],
            "status": [_status(r) for r in reports],
            "cases": [r["cases"] for r in reports],
            "counterexample": [_counterexample_text(r) for r in reports],
        }
    )


def _render_payload(payload: Dict[str, Any]) -> List[str]:
    command = payload["command"]
    lines: List[str] = []
    if command == "lawsuite":
        summary = payload["summary"]
        lines.append(f"{payload['config']['model']} laws: {summary['passed']}/{summary['total']} passed")
        lines.append(_frame(payload["laws"] + payload["auxiliary"], "law").to_string(index=False))
    elif command in ("theory", "quantale", "parallel"):
        summary = payload["summary"]
        lines.append(f"{command}: {summary['verified']}/{summary['total']} verified")
        lines.append(_frame(payload["reports"], "theorem").to_string(index=False))
    elif command == "run":
        for suite in payload["suites"].values():
            lines += _render_payload(suite)
            lines.append("")
    elif command == "refines":
        lines.append(f"{payload['weaker']}  refined by  {payload['stronger']}: {str(payload['refines']).lower()}")
        if not payload["refines"]:
            lines.append(_counterexample_text(payload["report"]))
    else:
        header = f"{payload['formula']}: {payload['rows']} of {payload['universe']} bindings"
        if command == "apply":
            fixed = payload["fixed_point"]["verified"]
            header = f"{payload['condition']} ({header}); input was {'already' if fixed else 'not'} healthy"
        lines.append(header)
        if "bindings" in payload:
            lines.append(pd.DataFrame(payload["bindings"]).to_string(index=False) if payload["bindings"] else "(no rows)")
    return lines


def to_text(response: CommandResponse) -> str:
    """Human-readable rendering with pandas tables."""
    if not response.success:
        return f"error ({response.error_type}): {response.error_message}"
    return "\n".join(_render_payload(response.payload or {}))
