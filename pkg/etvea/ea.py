"""
The evolutionary algorithm: population lifecycle and generation loop.

One generation creates as many offspring as there are parents, each by
two mating tournaments, an operator draw (or the diversity-control
mutation) and uniqueness enforcement. Parents and offspring are then culled
back to the population size by tournaments without re-selection, credit is
assigned, and every adaptation interval the operator portfolio is updated
and the credit store purged.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence, Set

import numpy as np

from etvea import config
from etvea.adaptation import (
    OperatorPortfolio,
    get_interpreter,
    interpret_outliers,
)
from etvea.constants import INTERPRETATION_NONE, INTERPRETATION_OUTLIER
from etvea.credit import CreditStrategy, make_credit
from etvea.custom_exceptions import ContractViolation
from etvea.design import DesignSpec
from etvea.genealogy import (
    EventRecorder,
    dominant_parent,
    normalized_distance,
)
from etvea.individual import Individual
from etvea.operators import RANDOM_MUTATION, build_operators
from etvea.problem import ProblemSpec
from etvea.run_record import RunRecord
from etvea.utils.seeding import make_rng

log: logging.Logger = logging.getLogger(__name__)

ALL_OPERATORS = tuple(range(1, RANDOM_MUTATION + 1))


@dataclass(frozen=True)
class EAParameters:
    """
    Tunable constants of one run; defaults come from etvea.config.
    """

    population_size: int = config.POPULATION_SIZE
    beta: float = config.BETA
    lineage_depth: int = config.LINEAGE_DEPTH
    adaptation_interval: int = config.ADAPTATION_INTERVAL
    probability_floor: float = config.PROBABILITY_FLOOR
    outlier_z: float = config.OUTLIER_Z
    delta: float = config.DELTA
    mutation_p0: float = config.MUTATION_P0
    uniqueness_retries: int = config.UNIQUENESS_RETRIES
    wright_r: float = config.WRIGHT_R
    line_alpha: float = config.LINE_ALPHA
    blx_alpha: float = config.BLX_ALPHA
    differential_f: float = config.DIFFERENTIAL_F
    raise_amplitude: float = config.RAISE_AMPLITUDE
    creep_amplitude: float = config.CREEP_AMPLITUDE

    def as_dict(self) -> Dict[str, float]:
        return asdict(self)


def initialize_population(
    spec: ProblemSpec,
    rng: np.random.Generator,
    size: int = config.POPULATION_SIZE,
) -> List[Individual]:
    """
    ``size`` distinct individuals drawn uniformly within the bounds of
    spec, all created by the initialisation event.
    """
    population: List[Individual] = []
    seen: Set[bytes] = set()
    while len(population) < size:
        genome = spec.bounds.uniform(rng)
        key = genome.tobytes()
        if key in seen:
            log.debug("Re-sampling a duplicate initial genome")
            continue
        seen.add(key)
        population.append(Individual(genome, spec.evaluate(genome)))
    return population


def _tournament_index(
    pool: Sequence[Individual], rng: np.random.Generator
) -> int:
    first, second = (int(i) for i in rng.integers(len(pool), size=2))
    a, b = pool[first].fitness, pool[second].fitness
    if a > b:
        return first
    if b > a:
        return second
    return first if rng.random() < 0.5 else second


def tournament_pick(
    pool: Sequence[Individual], rng: np.random.Generator
) -> Individual:
    """
    Binary tournament with replacement; exact ties are broken at random.
    """
    if not pool:
        raise ContractViolation("Tournament on an empty pool")
    return pool[_tournament_index(pool, rng)]


def cull(
    pool: Sequence[Individual],
    target_size: int,
    rng: np.random.Generator,
) -> List[Individual]:
    """
    Select target_size survivors by repeated tournaments, removing every
    winner from the pool. Not elitist.
    """
    if len(pool) < target_size:
        raise ContractViolation(
            "Cannot cull %d individuals down to %d" % (len(pool), target_size)
        )
    if len(pool) == target_size:
        return list(pool)
    remaining = list(pool)
    survivors: List[Individual] = []
    while len(survivors) < target_size:
        survivors.append(remaining.pop(_tournament_index(remaining, rng)))
    return survivors


def mutation_probability(
    d: float, p0: float = config.MUTATION_P0, delta: float = config.DELTA
) -> float:
    """
    Diversity-control probability of the random mutation operator for two
    parents at normalised distance d.
    """
    if d < 0 or delta <= 0:
        raise ContractViolation(
            "mutation_probability needs d >= 0 and delta > 0"
        )
    return min(1.0, p0 + 0.5 ** (d / delta))


@dataclass
class EAState:
    population: List[Individual]
    portfolio: OperatorPortfolio
    credit: CreditStrategy
    rng: np.random.Generator
    generation: int = 0
    best_fitness: float = float("-inf")
    best_genome: Optional[np.ndarray] = None
    portfolio_history: List[tuple] = field(default_factory=list)


def make_portfolio(
    design: DesignSpec, params: EAParameters
) -> OperatorPortfolio:
    if design.fixed_portfolio is not None:
        return OperatorPortfolio(
            sorted(design.fixed_portfolio),
            design.fixed_portfolio,
            fixed=True,
            floor=params.probability_floor,
        )
    if design.diversity_control:
        operator_ids = [op for op in ALL_OPERATORS if op != RANDOM_MUTATION]
    else:
        operator_ids = list(ALL_OPERATORS)
    return OperatorPortfolio(operator_ids, floor=params.probability_floor)


class EvolutionaryAlgorithm(object):
    """
    One seeded run of one design on one problem.
    """

    def __init__(
        self,
        spec: ProblemSpec,
        design: DesignSpec,
        params: Optional[EAParameters] = None,
        seed: int = config.BASE_SEED,
        event_log=None,
        run_index: int = 0,
    ) -> None:
        self.spec: ProblemSpec = spec
        self.design: DesignSpec = design
        self.params: EAParameters = params or EAParameters()
        self.seed: int = seed
        self.run_index: int = run_index
        self.event_log = event_log
        self.operators = build_operators(self.params)
        self.recorder = EventRecorder(self.params.lineage_depth, event_log)
        if design.interpretation == INTERPRETATION_NONE:
            self.interpreter = None
        elif design.interpretation == INTERPRETATION_OUTLIER:
            self.interpreter = functools.partial(
                interpret_outliers, z_threshold=self.params.outlier_z
            )
        else:
            self.interpreter = get_interpreter(design.interpretation)

        rng = make_rng(seed)
        population = initialize_population(
            spec, rng, self.params.population_size
        )
        self.state = EAState(
            population=population,
            portfolio=make_portfolio(design, self.params),
            credit=make_credit(
                design.credit_mode,
                self.params.beta,
                self.params.lineage_depth,
            ),
            rng=rng,
        )
        for individual in population:
            self._track_best(individual)
        self.initial_best: float = self.state.best_fitness

    def __str__(self) -> str:
        return "%s on %s (seed %d)" % (
            self.design.name,
            self.spec.problem_id,
            self.seed,
        )

    def __repr__(self) -> str:
        return "<%s.%s %s>" % (
            self.__class__.__module__,
            self.__class__.__name__,
            str(self),
        )

    @property
    def population(self) -> List[Individual]:
        return self.state.population

    @property
    def generation(self) -> int:
        return self.state.generation

    @property
    def portfolio(self) -> OperatorPortfolio:
        return self.state.portfolio

    @property
    def credit(self) -> CreditStrategy:
        return self.state.credit

    def _track_best(self, individual: Individual) -> None:
        if individual.fitness > self.state.best_fitness:
            self.state.best_fitness = individual.fitness
            self.state.best_genome = individual.genome.copy()

    def _pick_operator(self, parents: Sequence[Individual]) -> int:
        rng = self.state.rng
        if self.design.diversity_control:
            d = normalized_distance(
                parents[0].genome, parents[1].genome, self.spec.bounds
            )
            p = mutation_probability(
                d, self.params.mutation_p0, self.params.delta
            )
            if rng.random() < p:
                return RANDOM_MUTATION
        return self.state.portfolio.draw(rng)

    def _distinct_pick(self, parents: Sequence[Individual]) -> Individual:
        """Tournament winner that is none of ``parents``."""
        while True:
            candidate = tournament_pick(self.state.population, self.state.rng)
            if all(candidate is not parent for parent in parents):
                return candidate

    def _variation(self):
        """
        Draw parents and an operator and apply it once.
        """
        population = self.state.population
        rng = self.state.rng
        mates = [
            tournament_pick(population, rng),
            tournament_pick(population, rng),
        ]
        operator_id = self._pick_operator(mates)
        operator = self.operators[operator_id]
        if operator.arity == 1:
            parents = mates[:1]
        else:
            # multi-parent operators need distinct individuals
            if mates[1] is mates[0]:
                mates[1] = self._distinct_pick(mates[:1])
            parents = mates
            if operator.arity == 3:
                parents = mates + [self._distinct_pick(mates)]
        return operator_id, parents, operator(parents, self.spec.bounds, rng)

    def _reproduce(self, seen: Set[bytes]) -> Individual:
        retries = self.params.uniqueness_retries
        for _ in range(retries + 1):
            operator_id, parents, genome = self._variation()
            if genome.tobytes() not in seen:
                break
        else:
            log.warning(
                "%s: no unique offspring after %d retries, resetting genes",
                self,
                retries,
            )
            operator_id = RANDOM_MUTATION
            parents = parents[:1]
            mutate = self.operators[RANDOM_MUTATION]
            while genome.tobytes() in seen:
                genome = mutate(parents, self.spec.bounds, self.state.rng)

        dominant = parents[dominant_parent(parents, genome, self.spec.bounds)]
        event_id, lineage = self.recorder.record_event(
            operator_id, dominant, parents, self.state.generation + 1
        )
        child = Individual(
            genome,
            self.spec.evaluate(genome),
            event_id,
            lineage,
            operator_id,
        )
        self._track_best(child)
        return child

    def adapt(self) -> None:
        """
        Update the portfolio from the stored measurements.
        """
        state = self.state
        if self.interpreter is None or state.portfolio.fixed:
            return
        measurements = [
            m
            for m in state.credit.measurements()
            if m.operator_id in state.portfolio
        ]
        scores = self.interpreter(measurements, state.portfolio.operator_ids)
        state.portfolio.update(scores)
        state.portfolio_history.append(
            (state.generation, state.portfolio.probabilities())
        )
        log.debug(
            "%s generation %d: %d measurements, portfolio %s",
            self,
            state.generation,
            len(measurements),
            state.portfolio,
        )

    def run_generation(self) -> EAState:
        state = self.state
        size = self.params.population_size
        seen = {individual.key for individual in state.population}
        offspring: List[Individual] = []
        for _ in range(size):
            child = self._reproduce(seen)
            seen.add(child.key)
            offspring.append(child)

        survivors = cull(state.population + offspring, size, state.rng)
        generation = state.generation + 1
        if self.event_log is not None:
            self.event_log.survivors(
                generation, [s.event_id for s in survivors]
            )
        state.credit.after_selection(
            offspring, survivors, self.recorder.operators
        )
        state.population = survivors
        state.generation = generation

        if generation % self.params.adaptation_interval == 0:
            self.adapt()
            state.credit.purge()
            self.recorder.prune(survivors)
            if self.event_log is not None:
                self.event_log.adapt(generation)
        return state

    def run(
        self,
        generations: int = config.GENERATIONS,
        checkpoint_interval: int = config.CHECKPOINT_INTERVAL,
    ) -> RunRecord:
        """
        Run ``generations`` more generations and return the record of the
        run, with best-so-far fitness at every checkpoint.
        """
        record = RunRecord(
            design=self.design.name,
            problem=self.spec.problem_id,
            run=self.run_index,
            seed=self.seed,
            initial_best=self.initial_best,
            parameters=self.params.as_dict(),
        )
        log.info("Starting %s", self)
        if self.spec.is_solved(self.state.best_fitness):
            record.solved_at = self.state.generation
        for _ in range(generations):
            state = self.run_generation()
            if record.solved_at is None and self.spec.is_solved(
                state.best_fitness
            ):
                record.solved_at = state.generation
            if state.generation % checkpoint_interval == 0:
                record.checkpoints.append(
                    (state.generation, state.best_fitness)
                )
        record.generations = self.state.generation
        record.best_fitness = self.state.best_fitness
        record.best_genome = [float(v) for v in self.state.best_genome]
        record.portfolio_history = list(self.state.portfolio_history)
        log.info("Finished %s", record)
        return record


def run_generation(ea: EvolutionaryAlgorithm) -> EAState:
    return ea.run_generation()
