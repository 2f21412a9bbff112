class CommandError(Exception):
    """Base exception for command-line failures that are not checking verdicts."""
    pass


class ConfigError(CommandError):
    """Raised when a suite configuration cannot be read or validated."""
    def __init__(self, source: str, details: str):
        super().__init__(f"Invalid configuration from {source}: {details}")


class UnsupportedMode(CommandError):
    """Raised when a command is asked for a mode it does not run in."""
    def __init__(self, command: str, mode: str):
        super().__init__(f"'{command}' does not run in {mode} mode")
