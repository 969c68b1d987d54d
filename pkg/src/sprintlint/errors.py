"""Exception hierarchy shared across the package."""

from __future__ import annotations


class SprintLintError(Exception):
    """Base class for all errors raised by this package."""


class RecordError(SprintLintError, ValueError):
    """A single record violates a field-level invariant."""


class HistoryError(SprintLintError):
    """A record set cannot be assembled into a consistent history."""


class UnknownSprintError(HistoryError):
    """A sprint lookup failed (missing id or wrong team)."""


class ParseError(SprintLintError):
    """An export file cannot be parsed at all (unreadable or not the expected document shape)."""


class ConfigError(SprintLintError):
    """A configuration document is invalid."""


class InfeasibleFixtureError(SprintLintError):
    """A fixture spec or injection directive cannot satisfy its guarantees."""
