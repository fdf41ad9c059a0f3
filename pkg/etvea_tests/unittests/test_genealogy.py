import math

import numpy as np
import pytest

from etvea.custom_exceptions import ContractViolation
from etvea.genealogy import (
    EMPTY_WINDOW,
    EventRecorder,
    LineageWindow,
    dominant_parent,
    normalized_distance,
    record_event,
)
from etvea.individual import Individual
from etvea.problem import Bounds
from etvea.utils.event_log import EventLog


def ind(genome, event_id=0, lineage=EMPTY_WINDOW):
    return Individual(np.asarray(genome, dtype=float), 0.0, event_id, lineage)


UNIT_SQUARE = Bounds([0.0, 0.0], [1.0, 1.0])


def test_normalized_distance_examples():
    a = np.array([0.0, 0.0])
    assert normalized_distance(a, a, UNIT_SQUARE) == 0.0
    assert normalized_distance(
        a, np.array([1.0, 1.0]), UNIT_SQUARE
    ) == pytest.approx(math.sqrt(2))
    assert normalized_distance(
        np.array([0.5]), np.array([1.0]), Bounds([0.0], [2.0])
    ) == pytest.approx(0.25)


def test_normalized_distance_needs_equal_lengths():
    with pytest.raises(ContractViolation):
        normalized_distance(np.zeros(2), np.zeros(3), UNIT_SQUARE)


def test_dominant_parent_is_the_closest():
    parents = [ind([0.0, 0.0]), ind([1.0, 1.0])]
    assert dominant_parent(parents, np.array([0.1, 0.1]), UNIT_SQUARE) == 0
    assert dominant_parent(parents, np.array([0.9, 0.8]), UNIT_SQUARE) == 1


def test_dominant_parent_ties_go_to_the_first_parent():
    parents = [ind([0.0, 0.0]), ind([1.0, 1.0])]
    assert dominant_parent(parents, np.array([0.5, 0.5]), UNIT_SQUARE) == 0


def test_dominant_parent_single_parent():
    assert dominant_parent([ind([0.3, 0.3])], np.zeros(2), UNIT_SQUARE) == 0


def test_dominant_parent_needs_parents():
    with pytest.raises(ContractViolation):
        dominant_parent([], np.zeros(2), UNIT_SQUARE)


def test_initial_parent_gives_a_self_only_window():
    recorder = EventRecorder()
    event_id, window = record_event(recorder, 4, ind([0.2, 0.2]))
    assert event_id == 1
    assert window.event_ids == (1,)
    assert window.depth == 0


def test_event_ids_strictly_increase():
    recorder = EventRecorder()
    parent = ind([0.2, 0.2])
    ids = [recorder.record_event(1, parent)[0] for _ in range(5)]
    assert ids == [1, 2, 3, 4, 5]
    assert recorder.operators == {i: 1 for i in ids}


def test_prune_keeps_only_events_in_live_windows():
    recorder = EventRecorder()
    parent = ind([0.2, 0.2])
    for _ in range(5):
        recorder.record_event(2, parent)
    survivor = ind([0.1, 0.1], 5, LineageWindow((5, 3)))
    assert recorder.prune([survivor]) == 3
    assert recorder.operators == {3: 2, 5: 2}
    assert recorder.prune([survivor]) == 0


def test_chain_links():
    recorder = EventRecorder()
    e1, w1 = recorder.record_event(1, ind([0.1, 0.1]))
    e2, w2 = recorder.record_event(2, ind([0.1, 0.1], e1, w1))
    e3, w3 = recorder.record_event(3, ind([0.1, 0.1], e2, w2))
    assert list(w3.entries()) == [(0, e3, e3), (1, e2, e3), (2, e1, e2)]


def test_window_is_truncated_to_six_ancestors():
    recorder = EventRecorder(depth=6)
    parent = ind([0.1, 0.1])
    for _ in range(10):
        event_id, window = recorder.record_event(1, parent)
        parent = ind([0.1, 0.1], event_id, window)
    assert len(parent.lineage) == 7
    assert parent.lineage.depth == 6
    assert parent.lineage.event_ids == (10, 9, 8, 7, 6, 5, 4)
    assert len(set(parent.lineage.event_ids)) == 7


def test_extend_keeps_the_dominant_window_only():
    window = LineageWindow((5, 3, 1))
    assert window.extend(9, depth=2) == LineageWindow((9, 5, 3))
    assert EMPTY_WINDOW.extend(2) == LineageWindow((2,))


def test_counter_exhaustion(monkeypatch):
    from etvea import config

    monkeypatch.setattr(config, "MAX_EVENT_ID", 2)
    recorder = EventRecorder()
    parent = ind([0.1, 0.1])
    recorder.record_event(1, parent)
    recorder.record_event(1, parent)
    with pytest.raises(ContractViolation):
        recorder.record_event(1, parent)


def test_events_are_logged():
    log = EventLog()
    recorder = EventRecorder(event_log=log)
    a, b = ind([0.1, 0.1]), ind([0.9, 0.9])
    recorder.record_event(5, a, parents=[a, b], generation=3)
    assert log.records == [
        {
            "kind": "event",
            "generation": 3,
            "event_id": 1,
            "operator": 5,
            "parents": [0, 0],
            "dominant": 0,
        }
    ]


def test_window_repr():
    assert "3 <- 1" in repr(LineageWindow((3, 1)))
    assert str(EMPTY_WINDOW) == "(empty)"
