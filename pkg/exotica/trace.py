from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Any

from .config import Config


def _default(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    # numpy scalars and 0-d arrays
    if hasattr(value, "item"):
        return value.item()
    return str(value)


@dataclass(frozen=True)
class TraceLogger:
    """Append-only JSONL event log; one JSON object per line."""

    path: Path
    schema_version: int = 1
    run_id: str = field(default_factory=lambda: uuid.uuid4().hex[:12])
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.touch(exist_ok=True)

    def encode(self, event: str, data: dict[str, Any], context: dict[str, Any] | None = None) -> str:
        record: dict[str, Any] = {
            "ts": datetime.now(timezone.utc).isoformat(),
            "schema_version": self.schema_version,
            "event": event,
            "run_id": self.run_id,
        }
        record.update(context or {})
        record.update(data)
        return json.dumps(record, ensure_ascii=True, default=_default)

    def log(self, event: str, data: dict[str, Any], context: dict[str, Any] | None = None) -> None:
        line = self.encode(event, data, context)
        with self._lock:
            with self.path.open("a", encoding="utf-8") as handle:
                handle.write(line + "\n")


def open_tracer(config: Config) -> TraceLogger | None:
    if not config.trace_path:
        return None
    return TraceLogger(Path(config.trace_path))
