"""
JSON-lines genealogy log of a single run.

Three kinds of record are written, one JSON object per line:

    {"kind": "event", "generation": g, "event_id": e, "operator": o,
     "parents": [...], "dominant": d}
    {"kind": "survivors", "generation": g, "event_ids": [...]}
    {"kind": "adapt", "generation": g}

"adapt" marks the archive purge that follows an adaptation update. The log
is enough to replay every lineage window of the run independently.
"""

from __future__ import annotations

import json
import logging
from typing import Any, Dict, Iterator, List, Optional, Sequence

log: logging.Logger = logging.getLogger(__name__)

KIND_EVENT = "event"
KIND_SURVIVORS = "survivors"
KIND_ADAPT = "adapt"


class EventLog(object):
    """
    Collects genealogy records in memory, or streams them to ``path``.
    """

    def __init__(self, path: Optional[str] = None) -> None:
        self.path: Optional[str] = path
        self.records: List[Dict[str, Any]] = []
        self._handle = None
        if path is not None:
            self._handle = open(path, "w", encoding="utf-8")

    def __repr__(self) -> str:
        return "<%s.%s %s>" % (
            self.__class__.__module__,
            self.__class__.__name__,
            self.path or "in memory",
        )

    def __enter__(self) -> "EventLog":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()

    def _write(self, record: Dict[str, Any]) -> None:
        if self._handle is None:
            self.records.append(record)
        else:
            self._handle.write(json.dumps(record) + "\n")

    def event(
        self,
        generation: int,
        event_id: int,
        operator_id: int,
        parents: Sequence[int],
        dominant: int,
    ) -> None:
        self._write(
            {
                "kind": KIND_EVENT,
                "generation": generation,
                "event_id": event_id,
                "operator": operator_id,
                "parents": list(parents),
                "dominant": dominant,
            }
        )

    def survivors(self, generation: int, event_ids: Sequence[int]) -> None:
        self._write(
            {
                "kind": KIND_SURVIVORS,
                "generation": generation,
                "event_ids": list(event_ids),
            }
        )

    def adapt(self, generation: int) -> None:
        self._write({"kind": KIND_ADAPT, "generation": generation})

    def close(self) -> None:
        if self._handle is not None:
            self._handle.close()
            self._handle = None
            log.debug("Closed event log %s", self.path)


def read_event_log(path: str) -> Iterator[Dict[str, Any]]:
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if line:
                yield json.loads(line)
