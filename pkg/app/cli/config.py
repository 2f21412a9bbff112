import json
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from pydantic import ValidationError

from app.cli.exceptions import ConfigError
from app.cli.types import SuiteConfig
from app.config.settings import settings
from app.core.algebra.base import TraceModel
from app.core.models import get_model
from app.core.reactive import reactive_alphabet, trace_domain_for
from app.core.relations import Alphabet, domain_from_json
from app.utils.logger import logger

log = logger("app.cli.config")


def load_config(path: Optional[str] = None, overrides: Optional[Mapping[str, Any]] = None) -> SuiteConfig:
    """
    Read a suite configuration from a JSON file, then apply flag overrides.

    Flags left unset do not override the file. Samples, law cases and the seed
    fall back to the environment settings when neither source names them.
    """
    data: Dict[str, Any] = {}
    source = path or "flags"
    if path:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as e:
            raise ConfigError(path, f"cannot read file: {e}") from e
        except json.JSONDecodeError as e:
            raise ConfigError(path, f"malformed JSON at line {e.lineno}, column {e.colno}") from e
        if not isinstance(data, dict):
            raise ConfigError(path, "expected a JSON object")
        if "trace_bound" in data:
            if "bound" in data:
                raise ConfigError(path, "give the trace bound as either trace_bound or bound, not both")
            data["bound"] = data.pop("trace_bound")
    data.update({k: v for k, v in (overrides or {}).items() if v is not None})
    data.setdefault("samples", settings.DEFAULT_SAMPLES)
    data.setdefault("cases", settings.LAW_CASES)
    if data.get("seed") is None and settings.DEFAULT_SEED is not None:
        data["seed"] = settings.DEFAULT_SEED
    try:
        config = SuiteConfig.model_validate(data)
    except ValidationError as e:
        details = "; ".join(f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}" for err in e.errors())
        raise ConfigError(source, details) from e
    log.debug("loaded configuration {}", config.model_dump())
    return config


def build_model(config: SuiteConfig) -> TraceModel:
    return get_model(
        config.model,
        events=config.events,
        grid_step=config.step,
        variables=config.timed_variables,
        max_length=max(config.bound, 4),
    )


def build_alphabet(config: SuiteConfig) -> Alphabet:
    """The reactive alphabet wait, tr and the configured program variables over the bounded trace universe."""
    traces = trace_domain_for(build_model(config), config.bound, config.step, seed=config.seed or 0)
    program_vars = {name: domain_from_json(declaration) for name, declaration in config.vars.items()}
    alphabet = reactive_alphabet(traces, program_vars)
    log.info("universe of {} traces, {} bindings", traces.size, alphabet.size)
    return alphabet
