"""Canonical JSON and timestamp formatting helpers.

All serialized output in this package goes through `canonical_json` so that
identical runs produce byte-identical files.
"""

from __future__ import annotations

import json
from datetime import datetime, timezone

from .errors import ParseError


def canonical_json(value: object) -> str:
    """Serialize with sorted keys and no incidental whitespace."""
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def parse_iso_utc(text: str, what: str = "timestamp") -> float:
    """Parse an ISO-8601 timestamp with explicit offset into UTC epoch seconds."""
    if not isinstance(text, str) or not text:
        raise ParseError(f"{what} must be an ISO-8601 string, got {text!r}")
    raw = text[:-1] + "+00:00" if text.endswith("Z") else text
    try:
        parsed = datetime.fromisoformat(raw)
    except ValueError as exc:
        raise ParseError(f"{what} is not valid ISO-8601: {text!r} ({exc})") from None
    if parsed.tzinfo is None:
        raise ParseError(f"{what} lacks a timezone offset: {text!r}")
    return parsed.astimezone(timezone.utc).timestamp()


def format_iso_utc(ts: float) -> str:
    """Render UTC epoch seconds as ISO-8601 with a Z suffix."""
    moment = datetime.fromtimestamp(ts, tz=timezone.utc)
    spec = "microseconds" if moment.microsecond else "seconds"
    return moment.isoformat(timespec=spec).replace("+00:00", "Z")
