import sys
from contextlib import contextmanager
from pathlib import Path
from typing import TYPE_CHECKING, Any, Iterator, List, Optional

from loguru import logger as _loguru_logger

from app.config.settings import settings

if TYPE_CHECKING:
    from loguru import Logger as LoguruLogger

LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

CONSOLE_FORMAT = (
    "<green>{time:HH:mm:ss.SSS}</green> | <level>{level: <8}</level> | "
    "<cyan>{extra[name]}</cyan>{extra[scope]} - <level>{message}</level>"
)
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | {extra[name]}{extra[scope]}:{line} - {message}"


def _scope(record: Any) -> None:
    command = record["extra"].get("command")
    record["extra"]["scope"] = f" [{command}]" if command else ""


class Logger:
    """
    Process-wide loguru setup for the checker.

    Everything goes to stderr (plus an optional rotating file) because stdout
    carries reports that must stay byte-identical between runs.
    """

    _instance: Optional["Logger"] = None

    def __new__(cls, *args: Any, **kwargs: Any) -> "Logger":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._handlers = []
        return cls._instance

    def __init__(self, log_level: str = "WARNING", log_file: Optional[str] = None) -> None:
        if self._handlers:
            return
        self._log_file = log_file
        self._logger = _loguru_logger
        _loguru_logger.remove()
        self._install(self._validate(log_level))

    @staticmethod
    def _validate(log_level: str) -> str:
        level = log_level.upper()
        if level not in LEVELS:
            raise ValueError(f"Invalid log level: {level}. Must be one of {', '.join(LEVELS)}")
        return level

    def _install(self, level: str) -> None:
        self._level = level
        self._handlers: List[int] = [
            _loguru_logger.add(sys.stderr, format=CONSOLE_FORMAT, level=level, colorize=True)
        ]
        if self._log_file:
            path = Path(self._log_file)
            path.parent.mkdir(parents=True, exist_ok=True)
            self._handlers.append(
                _loguru_logger.add(
                    str(path),
                    format=FILE_FORMAT,
                    level=level,
                    rotation="10 MB",
                    retention="30 days",
                    encoding="utf-8",
                )
            )

    def set_level(self, log_level: str) -> None:
        """Reinstall the sinks at another level (the CLI's --verbose)."""
        level = self._validate(log_level)
        if level == self._level:
            return
        for handler in self._handlers:
            _loguru_logger.remove(handler)
        self._install(level)

    @contextmanager
    def command(self, name: str) -> Iterator[None]:
        """Tag every record emitted while a CLI command runs."""
        with _loguru_logger.contextualize(command=name):
            yield

    def bind(self, **kwargs: Any) -> "LoguruLogger":
        return self._logger.bind(**kwargs)

    def __call__(self, name: str = "app") -> "LoguruLogger":
        """Child logger carrying the module name, e.g. logger("app.core.reactive")."""
        return self.bind(name=name)


_loguru_logger.configure(extra={"name": "app", "scope": ""}, patcher=_scope)

logger = Logger(log_level=settings.LOG_LEVEL, log_file=settings.LOG_FILE or None)
