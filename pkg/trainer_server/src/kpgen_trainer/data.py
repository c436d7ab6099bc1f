"""Loader for prepared source/target pair files (JSONL, one pair per line)."""

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import PairsFormatError


@dataclass
class TrainingPair:
    source: str
    target: str


def load_pairs(path) -> list[TrainingPair]:
    """Read every pair or refuse with the offending line number.

    Each line must be a JSON object with string "source" and "target"
    fields; extra fields are allowed and ignored. Any malformed line
    (bad JSON, blank, wrong shape) aborts the load.
    """
    path = Path(path)
    pairs: list[TrainingPair] = []
    with path.open("r", encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            stripped = line.strip()
            if not stripped:
                raise PairsFormatError(path, line_number, "blank line")
            try:
                record = json.loads(stripped)
            except json.JSONDecodeError as exc:
                raise PairsFormatError(path, line_number, f"invalid JSON: {exc.msg}") from exc
            if not isinstance(record, dict):
                raise PairsFormatError(
                    path, line_number, f"expected a JSON object, got {type(record).__name__}"
                )
            for key in ("source", "target"):
                if key not in record:
                    raise PairsFormatError(path, line_number, f"missing field {key!r}")
                if not isinstance(record[key], str):
                    raise PairsFormatError(
                        path, line_number,
                        f"field {key!r} must be a string, got {type(record[key]).__name__}",
                    )
            pairs.append(TrainingPair(source=record["source"], target=record["target"]))
    return pairs
