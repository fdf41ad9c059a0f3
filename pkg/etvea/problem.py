"""
Module for etvea ProblemSpec

A ProblemSpec is one benchmark problem expressed as a maximisation with its
optimum at 0: ``evaluate`` returns ``-(f_raw(x) - optimum_shift)``.
"""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from etvea.custom_exceptions import ContractViolation
from etvea.functions import RawFunction

log: logging.Logger = logging.getLogger(__name__)


class Bounds(object):
    """
    Per-dimension box constraints of a search space.
    """

    def __init__(self, lower, upper) -> None:
        self.lower: np.ndarray = np.asarray(lower, dtype=float)
        self.upper: np.ndarray = np.asarray(upper, dtype=float)
        if self.lower.shape != self.upper.shape:
            raise ContractViolation(
                "Bounds of unequal length: %d vs %d"
                % (len(self.lower), len(self.upper))
            )
        if not np.all(self.lower < self.upper):
            raise ContractViolation("Every lower bound must be < upper")
        self.span: np.ndarray = self.upper - self.lower

    def __len__(self) -> int:
        return len(self.lower)

    def __repr__(self) -> str:
        return "<%s.%s %s>" % (
            self.__class__.__module__,
            self.__class__.__name__,
            str(self),
        )

    def __str__(self) -> str:
        return "%d-D box [%s, %s]" % (
            len(self),
            self.lower.min(),
            self.upper.max(),
        )

    def clamp(self, x: np.ndarray) -> np.ndarray:
        return np.clip(x, self.lower, self.upper)

    def contains(self, x: np.ndarray) -> bool:
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))

    def uniform(self, rng: np.random.Generator) -> np.ndarray:
        """
        Draw one point uniformly from the box.
        """
        return self.lower + rng.random(len(self)) * self.span


class ProblemSpec(object):
    """
    Represents a single benchmark problem of the suite.
    """

    def __init__(
        self,
        problem_id: str,
        name: str,
        bounds: Bounds,
        raw: RawFunction,
        optimizer: np.ndarray,
        optimum_shift: float,
        success_threshold: float,
    ) -> None:
        self.problem_id: str = problem_id
        self.name: str = name
        self.bounds: Bounds = bounds
        self.raw: RawFunction = raw
        self.optimizer: np.ndarray = np.asarray(optimizer, dtype=float)
        self.optimum_shift: float = float(optimum_shift)
        self.success_threshold: float = float(success_threshold)

    def __repr__(self) -> str:
        return "<%s.%s %s>" % (
            self.__class__.__module__,
            self.__class__.__name__,
            str(self),
        )

    def __str__(self) -> str:
        return "%s %s (%d-D)" % (self.problem_id, self.name, self.dims)

    @property
    def dims(self) -> int:
        return len(self.bounds)

    @property
    def lower(self) -> np.ndarray:
        return self.bounds.lower

    @property
    def upper(self) -> np.ndarray:
        return self.bounds.upper

    def evaluate(self, x: np.ndarray) -> float:
        """
        Fitness of x, to be maximised; 0 at the optimum.

        :param x: point inside the bounds, callers clamp first
        :return: -(f_raw(x) - optimum_shift)
        """
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dims,):
            raise ContractViolation(
                "%s expects %d variables, got shape %s"
                % (self.problem_id, self.dims, x.shape)
            )
        if not self.bounds.contains(x):
            raise ContractViolation(
                "%s evaluated outside its bounds" % self.problem_id
            )
        return -(self.raw(x) - self.optimum_shift)

    def is_solved(self, fitness: float) -> bool:
        return fitness > -self.success_threshold

    def known_optimizer(self) -> np.ndarray:
        return self.optimizer.copy()


def evaluate(spec: ProblemSpec, x: np.ndarray) -> float:
    return spec.evaluate(x)


def known_optimizer(spec: ProblemSpec) -> np.ndarray:
    """
    The canonical global minimiser of the raw function of spec.
    """
    return spec.known_optimizer()


def make_spec(
    problem_id: str,
    name: str,
    bounds: Bounds,
    raw: RawFunction,
    optimizer: np.ndarray,
    optimum_shift: Optional[float],
    success_threshold: float,
) -> ProblemSpec:
    """
    Build a ProblemSpec; an optimum_shift of None means "the raw value at
    the optimizer", so the optimizer evaluates to exactly 0.
    """
    if optimum_shift is None:
        optimum_shift = raw(np.asarray(optimizer, dtype=float))
        log.debug(
            "%s shift computed at optimizer: %r", problem_id, optimum_shift
        )
    return ProblemSpec(
        problem_id,
        name,
        bounds,
        raw,
        optimizer,
        optimum_shift,
        success_threshold,
    )
