"""
Module for etvea Individual
"""

from __future__ import annotations

import numpy as np

from etvea.genealogy import EMPTY_WINDOW, INITIAL_EVENT_ID, LineageWindow


class Individual(object):
    """
    One population member: a real genome with its fitness, the event that
    created it and the lineage window inherited from its dominant parent.
    """

    __slots__ = ("genome", "fitness", "event_id", "lineage", "operator_id")

    def __init__(
        self,
        genome: np.ndarray,
        fitness: float,
        event_id: int = INITIAL_EVENT_ID,
        lineage: LineageWindow = EMPTY_WINDOW,
        operator_id: int = 0,
    ) -> None:
        self.genome: np.ndarray = genome
        self.fitness: float = fitness
        self.event_id: int = event_id
        self.lineage: LineageWindow = lineage
        self.operator_id: int = operator_id

    def __repr__(self) -> str:
        return "<%s.%s %s>" % (
            self.__class__.__module__,
            self.__class__.__name__,
            str(self),
        )

    def __str__(self) -> str:
        return "event %d f=%.6g" % (self.event_id, self.fitness)

    @property
    def key(self) -> bytes:
        """Hashable identity of the genome, used for uniqueness checks."""
        return self.genome.tobytes()
