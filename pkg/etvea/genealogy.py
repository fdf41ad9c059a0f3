"""
Event identity and lineage bookkeeping.

An event is one application of one search operator producing one offspring.
Each individual carries a LineageWindow: its own event at distance 0
followed by the events of its dominant-parent chain, truncated to
``depth`` ancestors. Only the dominant parent's window is copied, so the
information held per individual stays constant in size.
"""

from __future__ import annotations

import logging
from typing import Dict, Iterable, Iterator, Optional, Sequence, Tuple

import numpy as np

from etvea import config
from etvea.custom_exceptions import ContractViolation
from etvea.problem import Bounds

log: logging.Logger = logging.getLogger(__name__)

INITIAL_EVENT_ID = 0


class LineageWindow(object):
    """
    Ordered event ids along the dominant-parent chain, index = distance.

    The child link of the entry at distance x >= 1 is the event at distance
    x - 1; the entry at distance 0 links to the surviving solution itself,
    which is identified by its own event id.
    """

    __slots__ = ("event_ids",)

    def __init__(self, event_ids: Sequence[int] = ()) -> None:
        self.event_ids: Tuple[int, ...] = tuple(event_ids)

    def __len__(self) -> int:
        return len(self.event_ids)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LineageWindow):
            return False
        return self.event_ids == other.event_ids

    def __hash__(self) -> int:
        return hash(self.event_ids)

    def __repr__(self) -> str:
        return "<%s.%s %s>" % (
            self.__class__.__module__,
            self.__class__.__name__,
            str(self),
        )

    def __str__(self) -> str:
        return " <- ".join(str(e) for e in self.event_ids) or "(empty)"

    @property
    def depth(self) -> int:
        """Number of ancestors held, self excluded."""
        return max(0, len(self.event_ids) - 1)

    def entries(self) -> Iterator[Tuple[int, int, int]]:
        """
        Yield (distance, event_id, child_link_id) for every entry.
        """
        for distance, event_id in enumerate(self.event_ids):
            if distance == 0:
                link = event_id
            else:
                link = self.event_ids[distance - 1]
            yield distance, event_id, link

    def extend(
        self, event_id: int, depth: int = config.LINEAGE_DEPTH
    ) -> "LineageWindow":
        """
        The window of a child created by event_id whose dominant parent
        holds this window.
        """
        return LineageWindow((event_id,) + self.event_ids[:depth])


EMPTY_WINDOW = LineageWindow()


def normalized_distance(a: np.ndarray, b: np.ndarray, bounds: Bounds) -> float:
    """
    Euclidean distance between two genomes after scaling every
    coordinate by its range.
    """
    if len(a) != len(b):
        raise ContractViolation(
            "Genomes of unequal length: %d vs %d" % (len(a), len(b))
        )
    scaled = (np.asarray(a) - np.asarray(b)) / bounds.span
    return float(np.sqrt(np.dot(scaled, scaled)))


def dominant_parent(
    parents: Sequence["Individual"], child_genome: np.ndarray, bounds: Bounds
) -> int:
    """
    Index of the parent genetically closest to the child; ties go to the
    earliest drawn parent.
    """
    if not parents:
        raise ContractViolation("dominant_parent needs at least one parent")
    best_index = 0
    best_distance = None
    for index, parent in enumerate(parents):
        distance = normalized_distance(parent.genome, child_genome, bounds)
        if best_distance is None or distance < best_distance:
            best_index, best_distance = index, distance
    return best_index


class EventRecorder(object):
    """
    Hands out strictly increasing event ids within a run and builds the
    lineage window of every new offspring.
    """

    def __init__(
        self,
        depth: int = config.LINEAGE_DEPTH,
        event_log: Optional["EventLog"] = None,
        first_id: int = INITIAL_EVENT_ID + 1,
    ) -> None:
        self.depth: int = depth
        self.event_log = event_log
        self.next_id: int = first_id
        # event id -> creating operator, read by credit assignment
        self.operators: Dict[int, int] = {}

    def record_event(
        self,
        operator_id: int,
        dominant: "Individual",
        parents: Sequence["Individual"] = (),
        generation: int = 0,
    ) -> Tuple[int, LineageWindow]:
        if self.next_id > config.MAX_EVENT_ID:
            raise ContractViolation("Event id counter exhausted")
        event_id = self.next_id
        self.next_id += 1
        self.operators[event_id] = operator_id
        window = dominant.lineage.extend(event_id, self.depth)
        if self.event_log is not None:
            self.event_log.event(
                generation,
                event_id,
                operator_id,
                [p.event_id for p in parents] or [dominant.event_id],
                dominant.event_id,
            )
        return event_id, window

    def prune(self, population: Iterable["Individual"]) -> int:
        """
        Forget the operators of events no lineage window in ``population``
        references; returns how many were dropped.
        """
        live = {
            event_id
            for individual in population
            for event_id in individual.lineage.event_ids
        }
        stale = [
            event_id for event_id in self.operators if event_id not in live
        ]
        for event_id in stale:
            del self.operators[event_id]
        return len(stale)


def record_event(
    recorder: EventRecorder, operator_id: int, dominant: "Individual"
) -> Tuple[int, LineageWindow]:
    return recorder.record_event(operator_id, dominant)
