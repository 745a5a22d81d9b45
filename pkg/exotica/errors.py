from __future__ import annotations


class ExoticaError(Exception):
    """Base error. `kind` is the machine-readable signal name shown in JSON output."""

    kind = "error"

    def __init__(self, message: str, kind: str | None = None) -> None:
        super().__init__(message)
        if kind is not None:
            self.kind = kind


class InvalidInput(ExoticaError):
    kind = "invalid-input"


class InvalidForm(ExoticaError):
    kind = "invalid-form"


class DegenerateForm(ExoticaError):
    kind = "degenerate-form"


class NotTabulated(ExoticaError):
    kind = "not-tabulated"


class NearDegenerateMetric(ExoticaError):
    kind = "near-degenerate-metric"


class FlowDegeneration(ExoticaError):
    kind = "flow-degeneration"


class ConfigError(ExoticaError):
    kind = "config"


class ParseError(ExoticaError):
    kind = "parse"


# Errors the CLI reports as usage problems (exit code 2 plus a usage line).
USAGE_ERRORS = (InvalidInput, ConfigError, ParseError)
