"""
The ten real-coded search operators.

Each operator maps its parents' genomes to a single offspring genome which
is clamped to the problem bounds. Operators that need to know which parent
is fitter (Wright's heuristic, swap, differential) read ``fitness`` from the
parents; all others only use ``genome``.
"""

from __future__ import annotations

import logging
from typing import Dict, Sequence

import numpy as np

from etvea import config
from etvea.custom_exceptions import ContractViolation, UnknownOperator
from etvea.problem import Bounds

log: logging.Logger = logging.getLogger(__name__)

RANDOM_MUTATION = 10


class SearchOperator(object):
    """
    Base class for all search operators.
    """

    operator_id = 0
    name = "operator"
    arity = 1

    def __repr__(self) -> str:
        return "<%s.%s %s>" % (
            self.__class__.__module__,
            self.__class__.__name__,
            str(self),
        )

    def __str__(self) -> str:
        return "%d %s" % (self.operator_id, self.name)

    def __call__(
        self,
        parents: Sequence["Individual"],
        bounds: Bounds,
        rng: np.random.Generator,
    ) -> np.ndarray:
        if len(parents) != self.arity:
            raise ContractViolation(
                "Operator %s takes %d parents, got %d"
                % (self, self.arity, len(parents))
            )
        child = self.apply(parents, bounds, rng)
        return bounds.clamp(child)

    def apply(self, parents, bounds, rng):
        raise NotImplementedError(
            "Please implement this method on %s" % self.__class__.__name__
        )


def _by_fitness(a, b):
    """(fitter, weaker); a wins exact ties as the first drawn parent."""
    if b.fitness > a.fitness:
        return b, a
    return a, b


class WrightHeuristic(SearchOperator):
    operator_id = 1
    name = "Wright's Heuristic Crossover"
    arity = 2

    def __init__(self, r: float = config.WRIGHT_R) -> None:
        self.r = r

    def apply(self, parents, bounds, rng):
        best, worst = _by_fitness(*parents)
        return self.r * (best.genome - worst.genome) + best.genome


class SimpleCrossover(SearchOperator):
    operator_id = 2
    name = "Simple Crossover"
    arity = 2

    def apply(self, parents, bounds, rng):
        a, b = parents[0].genome, parents[1].genome
        n = len(a)
        if n < 2:
            return a.copy()
        cut = int(rng.integers(1, n))
        return np.concatenate([a[:cut], b[cut:]])


class ExtendedLine(SearchOperator):
    operator_id = 3
    name = "Extended Line Crossover"
    arity = 2

    def __init__(self, alpha: float = config.LINE_ALPHA) -> None:
        self.alpha = alpha

    def apply(self, parents, bounds, rng):
        a, b = parents[0].genome, parents[1].genome
        return a + self.alpha * (b - a)


class UniformCrossover(SearchOperator):
    operator_id = 4
    name = "Uniform Crossover"
    arity = 2

    def apply(self, parents, bounds, rng):
        a, b = parents[0].genome, parents[1].genome
        mask = rng.random(len(a)) < 0.5
        return np.where(mask, a, b)


class BlendAlpha(SearchOperator):
    operator_id = 5
    name = "BLX-alpha"
    arity = 2

    def __init__(self, alpha: float = config.BLX_ALPHA) -> None:
        self.alpha = alpha

    def apply(self, parents, bounds, rng):
        a, b = parents[0].genome, parents[1].genome
        low = np.minimum(a, b)
        high = np.maximum(a, b)
        spread = self.alpha * (high - low)
        low, high = low - spread, high + spread
        return low + rng.random(len(a)) * (high - low)


class Differential(SearchOperator):
    operator_id = 6
    name = "Differential Operator"
    arity = 3

    def __init__(self, f: float = config.DIFFERENTIAL_F) -> None:
        self.f = f

    def apply(self, parents, bounds, rng):
        # the fittest is the base vector, the other two keep draw order
        order = sorted(
            range(3), key=lambda i: (-parents[i].fitness, i)
        )
        x1, x2, x3 = (parents[i].genome for i in order)
        return x1 + self.f * (x2 - x3)


class Swap(SearchOperator):
    operator_id = 7
    name = "Swap"
    arity = 2

    def apply(self, parents, bounds, rng):
        fitter, weaker = _by_fitness(*parents)
        gap = np.abs(fitter.genome - weaker.genome) / bounds.span
        gene = int(np.argmax(gap))
        child = fitter.genome.copy()
        child[gene] = weaker.genome[gene]
        return child


class Raise(SearchOperator):
    operator_id = 8
    name = "Raise"
    arity = 1

    def __init__(self, amplitude: float = config.RAISE_AMPLITUDE) -> None:
        self.amplitude = amplitude

    def apply(self, parents, bounds, rng):
        shift = rng.uniform(-1.0, 1.0)
        return parents[0].genome + shift * self.amplitude * bounds.span


class Creep(SearchOperator):
    operator_id = 9
    name = "Creep"
    arity = 1

    def __init__(self, amplitude: float = config.CREEP_AMPLITUDE) -> None:
        self.amplitude = amplitude

    def apply(self, parents, bounds, rng):
        child = parents[0].genome.copy()
        gene = int(rng.integers(len(child)))
        child[gene] += (
            rng.uniform(-1.0, 1.0) * self.amplitude * bounds.span[gene]
        )
        return child


class RandomMutation(SearchOperator):
    operator_id = RANDOM_MUTATION
    name = "Single Point Random Mutation"
    arity = 1

    def apply(self, parents, bounds, rng):
        child = parents[0].genome.copy()
        gene = int(rng.integers(len(child)))
        child[gene] = bounds.lower[gene] + rng.random() * bounds.span[gene]
        return child


def build_operators(params=None) -> Dict[int, SearchOperator]:
    """
    The operator table keyed by id, configured from an EAParameters
    instance (or the package defaults).
    """
    if params is None:
        from etvea.ea import EAParameters

        params = EAParameters()
    operators = [
        WrightHeuristic(params.wright_r),
        SimpleCrossover(),
        ExtendedLine(params.line_alpha),
        UniformCrossover(),
        BlendAlpha(params.blx_alpha),
        Differential(params.differential_f),
        Swap(),
        Raise(params.raise_amplitude),
        Creep(params.creep_amplitude),
        RandomMutation(),
    ]
    return {op.operator_id: op for op in operators}


DEFAULT_OPERATORS = None


def get_operator(operator_id: int, operators=None) -> SearchOperator:
    global DEFAULT_OPERATORS
    if operators is None:
        if DEFAULT_OPERATORS is None:
            DEFAULT_OPERATORS = build_operators()
        operators = DEFAULT_OPERATORS
    try:
        return operators[operator_id]
    except KeyError:
        raise UnknownOperator(operator_id)


def arity(operator_id: int) -> int:
    return get_operator(operator_id).arity


def apply_operator(
    operator_id: int,
    parents: Sequence["Individual"],
    bounds: Bounds,
    rng: np.random.Generator,
    operators=None,
) -> np.ndarray:
    """
    Apply one operator to its parents and return the clamped offspring.
    """
    return get_operator(operator_id, operators)(parents, bounds, rng)
