"""
Credit assignment.

Two ways of measuring how useful an operator has been are provided:

* direct credit: every offspring reports 1 to its creating operator if it
  survived culling, else 0;
* ETV (event takeover value): every survivor passes decayed credit back
  along its lineage window to the events that led to it. Events linked to
  the population through a single future event get nothing that
  generation (hitchhiking) and each event keeps the best credit it was
  ever observed with until the next purge.

Both modes store Measurement objects which the adaptation step reads every
adaptation interval, after which the store is purged.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Set

from etvea import config
from etvea.constants import CREDIT_DIRECT, CREDIT_ETV, CREDIT_NONE
from etvea.custom_exceptions import BadConfig, ContractViolation

log: logging.Logger = logging.getLogger(__name__)


def decay_weight(x: int, beta: float = config.BETA) -> float:
    """
    Share of a survivor's credit reaching an event x search steps back.
    """
    if x < 0:
        raise ContractViolation("Negative lineage distance: %d" % x)
    return beta**x


@dataclass
class ArchiveEntry:
    operator_id: int
    best_etv: float = 0.0
    scratch_credit: float = 0.0
    link_set: Set[int] = field(default_factory=set)


@dataclass(frozen=True)
class Measurement:
    operator_id: int
    value: float


class EventArchive(object):
    """
    Archive of ETV observations keyed by event id.

    :param beta: decay applied per search step of separation
    :param depth: ancestors inspected per survivor
    :param suppress_hitchhiking: zero events with a single distinct link
    """

    def __init__(
        self,
        beta: float = config.BETA,
        depth: int = config.LINEAGE_DEPTH,
        suppress_hitchhiking: bool = True,
    ) -> None:
        self.beta: float = beta
        self.depth: int = depth
        self.suppress_hitchhiking: bool = suppress_hitchhiking
        self._entries: Dict[int, ArchiveEntry] = {}

    def __str__(self) -> str:
        return "%d archived events" % len(self)

    def __repr__(self) -> str:
        return "<%s.%s %s>" % (
            self.__class__.__module__,
            self.__class__.__name__,
            str(self),
        )

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, event_id: int) -> bool:
        return event_id in self._entries

    def __getitem__(self, event_id: int) -> ArchiveEntry:
        return self._entries[event_id]

    def __iter__(self) -> Iterator[int]:
        return iter(self._entries)

    def keys(self) -> List[int]:
        return list(self._entries.keys())

    def iteritems(self) -> Iterator[tuple]:
        for event_id, entry in self._entries.items():
            yield event_id, entry

    def best_etv(self, event_id: int) -> float:
        return self._entries[event_id].best_etv

    def pass_back_credit(
        self, survivors: Sequence["Individual"], operator_of: Mapping[int, int]
    ) -> "EventArchive":
        """
        Distribute one unit of credit from every survivor over its lineage
        window, weighted by beta ** distance.
        """
        for survivor in survivors:
            for distance, event_id, link in survivor.lineage.entries():
                if distance > self.depth:
                    break
                entry = self._entries.get(event_id)
                if entry is None:
                    entry = ArchiveEntry(operator_of[event_id])
                    self._entries[event_id] = entry
                entry.scratch_credit += decay_weight(distance, self.beta)
                entry.link_set.add(link)
        return self

    def hitchhiking_filter(self) -> "EventArchive":
        if not self.suppress_hitchhiking:
            return self
        zeroed = 0
        for entry in self._entries.values():
            if entry.scratch_credit and len(entry.link_set) <= 1:
                entry.scratch_credit = 0.0
                zeroed += 1
        log.debug("Hitchhiking filter zeroed %d events", zeroed)
        return self

    def retain_max(self) -> "EventArchive":
        for entry in self._entries.values():
            if entry.scratch_credit > entry.best_etv:
                entry.best_etv = entry.scratch_credit
            entry.scratch_credit = 0.0
            entry.link_set.clear()
        return self

    def observe(
        self, survivors: Sequence["Individual"], operator_of: Mapping[int, int]
    ) -> "EventArchive":
        """
        One generation's credit pass: pass back, filter, retain the max.
        """
        self.pass_back_credit(survivors, operator_of)
        self.hitchhiking_filter()
        return self.retain_max()

    def measurements(self) -> List[Measurement]:
        return [
            Measurement(entry.operator_id, entry.best_etv)
            for entry in self._entries.values()
        ]

    def purge(self) -> None:
        log.debug("Purging %s", self)
        self._entries.clear()


class CreditStrategy(object):
    """
    Common interface of the credit assignment modes.
    """

    mode = CREDIT_NONE

    def __repr__(self) -> str:
        return "<%s.%s %s>" % (
            self.__class__.__module__,
            self.__class__.__name__,
            self.mode,
        )

    def after_selection(
        self,
        offspring: Sequence["Individual"],
        survivors: Sequence["Individual"],
        operator_of: Mapping[int, int],
    ) -> None:
        pass

    def measurements(self) -> List[Measurement]:
        return []

    def purge(self) -> None:
        pass


class NoCredit(CreditStrategy):
    mode = CREDIT_NONE


class DirectCredit(CreditStrategy):
    """
    Binary survival credit for the operator that created each offspring.
    """

    mode = CREDIT_DIRECT

    def __init__(self) -> None:
        self._store: List[Measurement] = []

    def after_selection(self, offspring, survivors, operator_of):
        self._store.extend(assign_direct_credit(offspring, survivors))

    def measurements(self) -> List[Measurement]:
        return list(self._store)

    def purge(self) -> None:
        self._store.clear()


class EtvCredit(CreditStrategy):
    mode = CREDIT_ETV

    def __init__(self, archive: Optional[EventArchive] = None) -> None:
        if archive is None:
            archive = EventArchive()
        self.archive: EventArchive = archive

    def after_selection(self, offspring, survivors, operator_of):
        self.archive.observe(survivors, operator_of)

    def measurements(self) -> List[Measurement]:
        return self.archive.measurements()

    def purge(self) -> None:
        self.archive.purge()


def make_credit(
    mode: str,
    beta: float = config.BETA,
    depth: int = config.LINEAGE_DEPTH,
) -> CreditStrategy:
    if mode == CREDIT_ETV:
        return EtvCredit(EventArchive(beta, depth))
    if mode == CREDIT_DIRECT:
        return DirectCredit()
    if mode == CREDIT_NONE:
        return NoCredit()
    raise BadConfig("Unknown credit mode %r" % mode)


def pass_back_credit(current_population, archive, operator_of):
    return archive.pass_back_credit(current_population, operator_of)


def hitchhiking_filter(archive: EventArchive) -> EventArchive:
    return archive.hitchhiking_filter()


def retain_max(archive: EventArchive) -> EventArchive:
    return archive.retain_max()


def assign_direct_credit(
    offspring: Sequence["Individual"], survivors: Sequence["Individual"]
) -> List[Measurement]:
    """
    One measurement per offspring: 1 if it is among the survivors.
    """
    alive = {survivor.event_id for survivor in survivors}
    return [
        Measurement(child.operator_id, 1.0 if child.event_id in alive else 0.0)
        for child in offspring
    ]


def purge(credit) -> None:
    """
    Empty an archive or a credit strategy's measurement store.
    """
    credit.purge()
