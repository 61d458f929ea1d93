"""Append-only JSONL journal of solver runs.

One record per completed solver call, flushed line by line so that a
crash can lose at most the line being written; a truncated final line
is detected and skipped on reload.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

DEFAULT_JOURNAL = "starbook-journal.jsonl"


@dataclass(frozen=True)
class JournalRecord:
    timestamp: str
    family: str
    params: dict
    order_policy: str  # "identity" | "optimize" | "given" | "none"
    profile: str
    budget: int
    outcome: str  # "sat" | "unsat" | "aborted"
    k_star: int | None = None
    nodes: int = 0
    wall_time: float = 0.0
    certificate_digest: str | None = None
    extra: dict = field(default_factory=dict)

    @staticmethod
    def now_timestamp() -> str:
        return datetime.now(timezone.utc).isoformat(timespec="seconds")


def append_record(path, record: JournalRecord) -> None:
    line = json.dumps(asdict(record), sort_keys=True)
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(line + "\n")
        fh.flush()
        os.fsync(fh.fileno())


def load_records(path) -> list[JournalRecord]:
    """Read all records; a truncated final line is skipped, anything
    else malformed is an error."""
    p = Path(path)
    if not p.exists():
        return []
    lines = p.read_text(encoding="utf-8").split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    records = []
    for i, line in enumerate(lines):
        try:
            doc = json.loads(line)
        except json.JSONDecodeError:
            if i == len(lines) - 1:
                continue  # torn final write
            raise ValueError(f"{path}: corrupt journal line {i + 1}")
        records.append(JournalRecord(**doc))
    return records
