"""
Operator probability adaptation.

Every adaptation interval the stored measurements are turned into one score
per operator, either by their average (I:1) or by how strongly they stand
out from the pooled measurements (I:3). Scores then pull the operator
probabilities halfway towards their normalised values.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

import numpy as np

from etvea import config
from etvea.constants import INTERPRETATION_AVERAGE, INTERPRETATION_OUTLIER
from etvea.custom_exceptions import BadConfig, UnknownOperator

log: logging.Logger = logging.getLogger(__name__)

Scores = Dict[int, float]


def _group(measurements: Iterable["Measurement"]) -> Dict[int, List[float]]:
    grouped: Dict[int, List[float]] = defaultdict(list)
    for measurement in measurements:
        grouped[measurement.operator_id].append(measurement.value)
    return grouped


def interpret_average(
    measurements: Iterable["Measurement"],
    operator_ids: Optional[Sequence[int]] = None,
) -> Scores:
    """
    I:1, the mean measurement of every operator; 0 without measurements.
    """
    grouped = _group(measurements)
    if operator_ids is None:
        operator_ids = sorted(grouped)
    return {
        op: float(np.mean(grouped[op])) if grouped.get(op) else 0.0
        for op in operator_ids
    }


def _robust_location_scale(values: np.ndarray):
    median = float(np.median(values))
    scale = config.MAD_SCALE * float(np.median(np.abs(values - median)))
    return median, scale


def interpret_outliers(
    measurements: Iterable["Measurement"],
    operator_ids: Optional[Sequence[int]] = None,
    z_threshold: float = config.OUTLIER_Z,
) -> Scores:
    """
    I:3, outlier strength per operator.

    All values are pooled; a value scores by how far its robust z-score
    (median, scaled MAD) exceeds ``z_threshold``. An operator's score is the
    sum of those excesses divided by its number of measurements.

    When more than half of the pool is one value the MAD is 0; location and
    scale are then taken from the non-zero values only. If those agree as
    well (binary survival measurements) nothing is an outlier and every
    score is 0.
    Scores are shift invariant except in this fallback, where the zero
    values are treated as special.
    """
    grouped = _group(measurements)
    if operator_ids is None:
        operator_ids = sorted(grouped)
    scores: Scores = {op: 0.0 for op in operator_ids}
    pool = np.array(
        [v for op in operator_ids for v in grouped.get(op, ())], dtype=float
    )
    if len(pool) == 0:
        return scores

    median, scale = _robust_location_scale(pool)
    if scale == 0.0:
        nonzero = pool[pool != 0.0]
        if len(nonzero) == 0:
            return scores
        median, scale = _robust_location_scale(nonzero)
        if scale == 0.0:
            log.debug("No spread in %d measurements, no outliers", len(pool))
            return scores

    for op in operator_ids:
        values = np.asarray(grouped.get(op, ()), dtype=float)
        if len(values) == 0:
            continue
        excess = np.maximum(0.0, (values - median) / scale - z_threshold)
        scores[op] = float(excess.sum() / len(values))
    return scores


INTERPRETERS = {
    INTERPRETATION_AVERAGE: interpret_average,
    INTERPRETATION_OUTLIER: interpret_outliers,
}


def get_interpreter(name: str):
    try:
        return INTERPRETERS[name]
    except KeyError:
        raise BadConfig(
            "Unknown interpretation %r, valid: %s"
            % (name, ", ".join(INTERPRETERS))
        )


class OperatorPortfolio(object):
    """
    Selection weights of the adaptable operators.

    Stored weights may stop summing to 1 once the floor is applied; they are
    renormalised whenever an operator is drawn.
    """

    def __init__(
        self,
        operator_ids: Sequence[int],
        weights: Optional[Mapping[int, float]] = None,
        fixed: bool = False,
        floor: float = config.PROBABILITY_FLOOR,
    ) -> None:
        if not operator_ids:
            raise BadConfig("A portfolio needs at least one operator")
        self.operator_ids: List[int] = list(operator_ids)
        if weights is None:
            share = 1.0 / len(self.operator_ids)
            weights = {op: share for op in self.operator_ids}
        self.weights: Dict[int, float] = {
            op: float(weights[op]) for op in self.operator_ids
        }
        self.fixed: bool = fixed
        self.floor: float = floor

    def __str__(self) -> str:
        return " ".join(
            "%d:%.4f" % (op, w) for op, w in sorted(self.weights.items())
        )

    def __repr__(self) -> str:
        return "<%s.%s %s>" % (
            self.__class__.__module__,
            self.__class__.__name__,
            str(self),
        )

    def __contains__(self, operator_id: int) -> bool:
        return operator_id in self.weights

    def __getitem__(self, operator_id: int) -> float:
        try:
            return self.weights[operator_id]
        except KeyError:
            raise UnknownOperator(operator_id)

    def probabilities(self) -> Dict[int, float]:
        total = sum(self.weights.values())
        return {op: w / total for op, w in self.weights.items()}

    def draw(self, rng: np.random.Generator) -> int:
        p = np.array([self.weights[op] for op in self.operator_ids])
        index = rng.choice(len(self.operator_ids), p=p / p.sum())
        return self.operator_ids[int(index)]

    def update(self, scores: Mapping[int, float]) -> bool:
        """
        Move every weight halfway to its normalised score, then apply the
        floor. Returns False if the portfolio was held.
        """
        if self.fixed:
            return False
        relevant = {op: float(scores.get(op, 0.0)) for op in self.operator_ids}
        total = sum(relevant.values())
        if total <= 0.0:
            log.debug("All operator scores are 0, holding %s", self)
            return False
        for op in self.operator_ids:
            new = 0.5 * self.weights[op] + 0.5 * relevant[op] / total
            self.weights[op] = max(new, self.floor)
        log.debug("Adapted portfolio: %s", self)
        return True


def update_probabilities(
    portfolio: OperatorPortfolio, scores: Mapping[int, float]
) -> OperatorPortfolio:
    portfolio.update(scores)
    return portfolio
